#include "radolab/error.hpp"

namespace radolab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::not_symmetric: return "NotSymmetric";
    case Errc::degenerate_span: return "DegenerateSpan";
    case Errc::duplicate_point: return "DuplicatePoint";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_on_sphere: return "NotOnSphere";
    case Errc::not_unit_norm: return "NotUnitNorm";
    case Errc::cross_check_failure: return "CrossCheckFailure";
    case Errc::too_many_vertices: return "TooManyVertices";
    case Errc::out_of_domain: return "OutOfDomain";
    case Errc::not_injective: return "NotInjective";
    case Errc::not_affine_basis: return "NotAffineBasis";
    case Errc::not_an_isometry: return "NotAnIsometry";
    case Errc::window_too_small: return "WindowTooSmall";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::bad_rational: return "BadRational";
    case Errc::unknown_builtin: return "UnknownBuiltin";
    case Errc::unknown_subcommand: return "UnknownSubcommand";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

}  // namespace radolab
