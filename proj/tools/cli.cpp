#include "cli.hpp"

#include "radolab/back_forth.hpp"
#include "radolab/error.hpp"
#include "radolab/parallel.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <iostream>
#include <sstream>

namespace radolab::cli {

std::vector<std::string> subcommands() {
  return {"decompose", "check-step-isometry", "sample-graph", "bj-audit", "agreement", "bf-run", "s0-experiment"};
}

io::Json ExperimentConfig::to_json() const {
  io::Json j{{"subcommand", subcommand}};
  if (!format.empty()) j["format"] = format;
  auto rat = [](const Rational& r) { return to_string(r); };
  if (subcommand == "decompose") {
    j["ball"] = ball_source;
  } else if (subcommand == "check-step-isometry") {
    j["ball"] = ball_source;
    j["map"] = map_path;
  } else if (subcommand == "sample-graph") {
    j.update({{"ball", ball_source}, {"n", n}, {"window", rat(window)}, {"p", rat(p)}, {"seed", seed},
              {"typicality", typicality}});
  } else if (subcommand == "bj-audit") {
    j.update({{"graph", graph_path}, {"kmax", kmax}});
  } else if (subcommand == "agreement") {
    j.update({{"p", rat(p)}, {"trials", trials}, {"seed", seed}});
  } else {
    j.update({{"ball", ball_source}, {"nu", nu}, {"fibre", fibre}, {"u_window", rat(u_window)},
              {"w_window", rat(w_window)}, {"p", rat(p)}, {"budget", budget}, {"seed", seed}});
    if (subcommand == "s0-experiment") j["trials"] = trials;
  }
  return j;
}

namespace {

std::uint64_t parse_count(const std::string& name, const std::string& text) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw Error(Errc::invalid_argument, "--" + name + ": expected a non-negative integer, got \"" + text + "\"");
  }
  return v;
}

Rational parse_field(const std::string& name, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw Error(Errc::bad_rational, "--" + name + ": \"" + text + "\" is not an exact rational (use p/q)");
  }
}

}  // namespace

ExperimentConfig parse_config(const std::vector<std::string>& args) {
  if (args.empty()) throw Error(Errc::unknown_subcommand, "no subcommand given");
  const auto names = subcommands();
  if (std::find(names.begin(), names.end(), args[0]) == names.end()) {
    throw Error(Errc::unknown_subcommand, "\"" + args[0] + "\"");
  }

  ExperimentConfig c;
  c.subcommand = args[0];
  std::string n, nu, fibre, budget, trials, kmax, seed, p, window, u_window, w_window;
  CLI::App app{"rado_lab " + c.subcommand};
  app.set_help_flag();
  auto opt = [&](const char* flag, std::string& dest) { app.add_option(flag, dest); };
  const bool fibred = c.subcommand == "bf-run" || c.subcommand == "s0-experiment";

  if (c.subcommand == "decompose") {
    app.add_option("--ball,ball", c.ball_source)->required();
    opt("--out", c.out);
  } else if (c.subcommand == "check-step-isometry") {
    app.add_option("ball", c.ball_source)->required();
    app.add_option("map", c.map_path)->required();
  } else if (c.subcommand == "sample-graph") {
    app.add_option("--ball", c.ball_source)->required();
    opt("--n", n);
    opt("--window", window);
    opt("--p", p);
    opt("--seed", seed);
    opt("--out", c.out);
    app.add_option("--typicality", c.typicality)->check(CLI::IsMember({"none", "linf", "fibre", "both"}));
  } else if (c.subcommand == "bj-audit") {
    app.add_option("--graph", c.graph_path)->required();
    opt("--kmax", kmax);
    opt("--out", c.out);
  } else if (c.subcommand == "agreement") {
    opt("--p", p);
    opt("--trials", trials);
    opt("--seed", seed);
  } else if (fibred) {
    c.ball_source = "builtin:cube_1";
    opt("--ball", c.ball_source);
    opt("--nu", nu);
    opt("--fibre", fibre);
    opt("--u-window", u_window);
    opt("--w-window", w_window);
    opt("--p", p);
    opt("--budget", budget);
    opt("--seed", seed);
    opt("--out", c.out);
    if (c.subcommand == "s0-experiment") opt("--trials", trials);
  }

  const bool tabular = c.subcommand == "bj-audit" || c.subcommand == "s0-experiment";
  if (c.subcommand != "check-step-isometry") {
    app.add_option("--format", c.format)->check(CLI::IsMember(tabular ? std::vector<std::string>{"csv", "json"}
                                                                      : std::vector<std::string>{"json"}));
  }
  app.set_config("--config");

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    throw Error(Errc::invalid_argument, c.subcommand + ": " + e.what());
  }

  if (c.format.empty()) c.format = tabular ? "csv" : "json";
  if (!n.empty()) c.n = parse_count("n", n);
  if (!nu.empty()) c.nu = parse_count("nu", nu);
  if (!fibre.empty()) c.fibre = parse_count("fibre", fibre);
  if (!budget.empty()) c.budget = parse_count("budget", budget);
  if (!trials.empty()) c.trials = parse_count("trials", trials);
  if (!kmax.empty()) c.kmax = static_cast<int>(parse_count("kmax", kmax));
  if (!seed.empty()) c.seed = parse_count("seed", seed);
  if (!p.empty()) c.p = parse_field("p", p);
  if (!window.empty()) c.window = parse_field("window", window);
  if (!u_window.empty()) c.u_window = parse_field("u-window", u_window);
  if (!w_window.empty()) c.w_window = parse_field("w-window", w_window);
  if (c.p < 0 || c.p > 1) throw Error(Errc::invalid_argument, "--p must lie in [0,1]");
  if (!c.ball_source.empty()) c.ball = io::load_ball(c.ball_source);
  return c;
}

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void emit(const ExperimentConfig& c, std::ostream& out, const std::string& text) {
  if (c.out.empty()) {
    out << text;
  } else {
    io::write_text_file(c.out, text);
  }
}

std::string csv_header(const ExperimentConfig& c) { return "# config: " + c.to_json().dump() + "\n"; }

int run_decompose(const ExperimentConfig& c, std::ostream& out) {
  const auto dec = linf_decomposition(*c.ball);
  io::Json j{{"config", c.to_json()}};
  j.update(io::decomposition_to_json(*c.ball, dec));
  emit(c, out, j.dump(2) + "\n");
  return 0;
}

int run_check(const ExperimentConfig& c, std::ostream& out) {
  const auto pairs = io::map_from_json(io::read_json_file(c.map_path));
  const auto check = verify_step_isometry(*c.ball, pairs);
  if (check) {
    out << "ok: " << pairs.size() << " pairs preserve every floor distance\n";
    return 0;
  }
  const auto& v = *check.violation;
  out << "counterexample: pairs " << v.first << " and " << v.second << "\n"
      << "  x = " << to_string(pairs[v.first].first) << ", " << to_string(pairs[v.second].first)
      << "  floor(norm(x_i - x_j)) = " << v.domain_floor.str() << "\n"
      << "  y = " << to_string(pairs[v.first].second) << ", " << to_string(pairs[v.second].second)
      << "  floor(norm(y_i - y_j)) = " << v.image_floor.str() << "\n";
  return 1;
}

Typicality typicality_of(const std::string& name) {
  return {name == "linf" || name == "both", name == "fibre" || name == "both"};
}

int run_sample_graph(const ExperimentConfig& c, std::ostream& out) {
  const auto dec = linf_decomposition(*c.ball);
  const auto sample = sample_typical_points(*c.ball, dec, c.window, c.n, c.seed, typicality_of(c.typicality));
  const auto g = bernoulli_subgraph(unit_graph(sample), c.p, derive_seed(c.seed, 1));
  io::Json j{{"config", c.to_json()}};
  j.update(io::graph_to_json(g));
  emit(c, out, j.dump() + "\n");
  return 0;
}

int run_bj_audit(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const auto g = io::graph_from_json(io::read_json_file(c.graph_path));
  // Loaded edges are re-audited: every stored edge must have norm < 1.
  PairNorms norms(g.sample);
  std::size_t unsound = 0;
  for (const auto& [i, j] : g.edges()) unsound += norms.floor_norm(i, j) != 0;
  const auto report = bj_audit(g, c.kmax);
  if (c.format == "json") {
    io::Json rows = io::Json::array();
    for (const auto& row : report.rows) {
      rows.push_back({{"k", row.k}, {"pairs", row.pairs}, {"satisfied", row.satisfied}, {"fraction", fixed(row.fraction())}});
    }
    io::Json j{{"config", c.to_json()},
               {"rows", std::move(rows)},
               {"one_sided_violations", report.one_sided_violations},
               {"connected_pairs", report.connected_pairs},
               {"unsound_edges", unsound}};
    emit(c, out, j.dump(2) + "\n");
  } else {
    std::ostringstream csv;
    csv << csv_header(c) << "k,pairs,satisfied,fraction\n";
    for (const auto& row : report.rows) {
      csv << row.k << "," << row.pairs << "," << row.satisfied << "," << fixed(row.fraction()) << "\n";
    }
    csv << "# one_sided_violations=" << report.one_sided_violations << " connected_pairs=" << report.connected_pairs
        << " unsound_edges=" << unsound << "\n";
    emit(c, out, csv.str());
  }
  if (report.one_sided_violations || unsound) {
    err << "audit failed: " << report.one_sided_violations << " one-sided violations, " << unsound
        << " edges with norm >= 1\n";
    return 1;
  }
  return 0;
}

int run_agreement(const ExperimentConfig& c, std::ostream& out) {
  const auto est = edge_agreement_probability(c.p, c.trials, c.seed);
  io::Json j{{"config", c.to_json()},
             {"trials", est.trials},
             {"agreements", est.agreements},
             {"fraction", fixed(est.fraction())},
             {"target", to_string(c.p * c.p + (1 - c.p) * (1 - c.p))}};
  out << j.dump(2) << "\n";
  return 0;
}

int run_bf(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const auto sample = std::make_shared<const FibredSample>(
      make_fibred_sample(*c.ball, c.nu, c.fibre, c.u_window, derive_seed(c.seed, 0), c.w_window));
  const FibredGraph g(sample, c.p, derive_seed(c.seed, 1)), g2(sample, c.p, derive_seed(c.seed, 2));
  const auto report = bf_run(g, g2, c.budget, c.seed);
  io::Json j{{"config", c.to_json()}, {"report", io::bf_report_to_json(report)}};
  emit(c, out, j.dump(2) + "\n");
  if (!report.audits_passed()) {
    err << "audit failed: partial isomorphism broke an invariant\n";
    return 1;
  }
  return 0;
}

int run_s0(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  S0Params params{*c.ball};
  params.n_u = c.nu;
  params.fibre_n = c.fibre;
  params.u_window = c.u_window;
  params.w_window = c.w_window;
  params.p = c.p;
  params.budget = c.budget;
  const auto result = s0_experiment(params, c.trials, c.seed);
  bool audits = true;
  for (const auto& t : result.trials) audits = audits && t.audits_passed;
  if (c.format == "json") {
    io::Json trials = io::Json::array();
    for (const auto& t : result.trials) {
      trials.push_back({{"trial", t.trial},
                        {"agreed", t.agreed},
                        {"bf_ran", t.bf_ran},
                        {"bf_completed", t.bf_completed},
                        {"audits_passed", t.audits_passed},
                        {"matched", t.matched},
                        {"reason", t.reason ? io::Json(block_reason_name(*t.reason)) : io::Json(nullptr)}});
    }
    io::Json j{{"config", c.to_json()},
               {"trials", std::move(trials)},
               {"agreement_rate", fixed(result.agreement_rate())},
               {"conditional_completion_rate", fixed(result.conditional_completion_rate())}};
    emit(c, out, j.dump(2) + "\n");
  } else {
    std::ostringstream csv;
    csv << csv_header(c) << "trial,agreed,bf_completed\n";
    for (const auto& t : result.trials) csv << t.trial << "," << t.agreed << "," << t.bf_completed << "\n";
    csv << "# agreement_rate=" << fixed(result.agreement_rate())
        << " conditional_completion_rate=" << fixed(result.conditional_completion_rate()) << "\n";
    emit(c, out, csv.str());
  }
  if (!audits) {
    err << "audit failed: a back-and-forth run broke an invariant\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  if (c.subcommand == "decompose") return run_decompose(c, out);
  if (c.subcommand == "check-step-isometry") return run_check(c, out);
  if (c.subcommand == "sample-graph") return run_sample_graph(c, out);
  if (c.subcommand == "bj-audit") return run_bj_audit(c, out, err);
  if (c.subcommand == "agreement") return run_agreement(c, out);
  if (c.subcommand == "bf-run") return run_bf(c, out, err);
  if (c.subcommand == "s0-experiment") return run_s0(c, out, err);
  throw Error(Errc::unknown_subcommand, "\"" + c.subcommand + "\"");
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    err << "usage: rado_lab <subcommand> [options]\nsubcommands:";
    for (const auto& s : subcommands()) err << " " << s;
    err << "\nthreads: RADO_LAB_THREADS (currently " << thread_limit() << ")\n";
    return args.empty() ? 2 : 0;
  }
  try {
    return run(parse_config(args), out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace radolab::cli
