#pragma once

#include "radolab/io.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace radolab::cli {

struct ExperimentConfig {
  std::string subcommand;
  std::string ball_source;
  std::optional<PolytopeBall> ball;
  std::string map_path;
  std::string graph_path;
  std::string out;
  std::string format;
  std::string typicality = "both";
  std::size_t n = 100;
  std::size_t nu = 100;
  std::size_t fibre = 200;
  std::size_t budget = 50;
  std::size_t trials = 20;
  int kmax = 4;
  std::uint64_t seed = 0;
  Rational p = Rational(1, 2);
  Rational window = 1;
  Rational u_window = 400;
  Rational w_window = Rational(1, 2);

  /// Everything that determines the output, for report headers.
  io::Json to_json() const;
};

/// Parses argv-style arguments (without the program name). Throws Error with
/// UnknownSubcommand, BadRational, UnknownBuiltin or InvalidArgument.
ExperimentConfig parse_config(const std::vector<std::string>& args);

/// Runs a parsed config. Returns 0 on success, 1 when an audit or check fails.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// parse_config + run with error reporting; 2 on usage or input errors.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::vector<std::string> subcommands();

}  // namespace radolab::cli
