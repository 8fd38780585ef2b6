#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace radolab {

enum class Errc {
  not_symmetric,
  degenerate_span,
  duplicate_point,
  dimension_mismatch,
  not_on_sphere,
  not_unit_norm,
  cross_check_failure,
  too_many_vertices,
  out_of_domain,
  not_injective,
  not_affine_basis,
  not_an_isometry,
  window_too_small,
  index_out_of_range,
  bad_rational,
  unknown_builtin,
  unknown_subcommand,
  invalid_argument,
  parse_error,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace radolab
