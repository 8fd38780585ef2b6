#include "radolab/back_forth.hpp"

#include "radolab/builtins.hpp"
#include "radolab/error.hpp"
#include "radolab/parallel.hpp"
#include "radolab/step_isometry.hpp"

#include <algorithm>
#include <set>

namespace radolab {

namespace {

// R(2m - 2^32)/2^32 + jitter, m uniform in [1, 2^32 - 1].
Rational window_rational(Rng& rng, const Rational& window, const Rational& jitter) {
  const Rational grid = Rational(Integer(1) << 32);
  const auto m = static_cast<std::int64_t>(1 + uniform_below(rng, (std::uint64_t{1} << 32) - 1));
  return window * (Rational(2 * m) - grid) / grid + jitter;
}

Rational odd_jitter(Rng& rng, const Rational& window) {
  const auto odd = static_cast<std::int64_t>(2 * uniform_below(rng, 256)) - 255;
  return Rational(odd) / (Rational(denominator(window)) * Rational(Integer(1) << 40));
}

Vec random_u_point(Rng& rng, Eigen::Index dim, const Rational& window) {
  const Rational jitter = odd_jitter(rng, window);
  Vec u(dim);
  for (Eigen::Index i = 0; i < dim; ++i) u(i) = window_rational(rng, window, jitter);
  return u;
}

}  // namespace

Rational FibredSample::distance(std::size_t i, std::size_t j) const {
  return std::max(u_distance(fibre[i], fibre[j]), abs(w[i] - w[j]));
}

bool FibredSample::near(std::size_t i, std::size_t j) const {
  return u_distance(fibre[i], fibre[j]) < 1 && abs(w[i] - w[j]) < 1;
}

Vec FibredSample::point(std::size_t i) const {
  const Vec& u = u_points[fibre[i]];
  Vec x(u.size() + 1);
  x.head(u.size()) = u;
  x(u.size()) = w[i];
  return x;
}

std::vector<Vec> FibredSample::points() const {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(point(i));
  return out;
}

std::vector<std::vector<std::size_t>> FibredSample::members() const {
  std::vector<std::vector<std::size_t>> out(fibre_count());
  for (std::size_t i = 0; i < size(); ++i) out[fibre[i]].push_back(i);
  return out;
}

void FibredSample::refresh_norms() {
  const std::size_t n = fibre_count();
  Gauge gauge(u_ball);
  u_norms.assign(n * n, Rational(0));
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t g = f + 1; g < n; ++g) {
      u_norms[f * n + g] = u_norms[g * n + f] = gauge(Vec(u_points[f] - u_points[g]));
    }
  }
}

FibredSample empty_fibred_sample(const PolytopeBall& u_ball, Rational u_window, Rational w_window) {
  return FibredSample{u_ball, linf_sum(u_ball, cube_ball(1)), std::move(u_window), std::move(w_window), {}, {}, {}, {}};
}

FibredSample make_fibred_sample(const PolytopeBall& u_ball, std::size_t n_u, std::size_t fibre_n,
                                const Rational& u_window, std::uint64_t seed, std::optional<Rational> w_window) {
  if (n_u < 1 || fibre_n < 1) throw Error(Errc::invalid_argument, "n_u and fibre_n must be positive");
  const Rational w_win = w_window.value_or(u_window);
  if (u_window <= 0 || w_win <= 0) throw Error(Errc::invalid_argument, "windows must be positive");

  FibredSample s = empty_fibred_sample(u_ball, u_window, w_win);
  Rng rng(seed);
  const std::size_t guard = 100 * n_u * fibre_n;
  std::size_t attempts = 0;
  auto bump = [&] {
    if (++attempts > guard) {
      throw Error(Errc::window_too_small, "could not place a typical fibred sample in the window");
    }
  };

  std::set<Vec, LexLess> seen_u;
  while (s.u_points.size() < n_u) {
    bump();
    Vec u = random_u_point(rng, u_ball.dim(), u_window);
    if (seen_u.insert(u).second) s.u_points.push_back(std::move(u));
  }
  std::set<Rational> fracs;
  for (std::size_t j = 0; j < fibre_n; ++j) {
    for (std::size_t f = 0; f < n_u; ++f) {
      for (;;) {
        bump();
        Rational w = window_rational(rng, w_win, odd_jitter(rng, w_win));
        if (!fracs.insert(frac(w)).second) continue;
        s.fibre.push_back(f);
        s.w.push_back(std::move(w));
        break;
      }
    }
  }
  s.refresh_norms();
  return s;
}

bool fibred_invariants_hold(const FibredSample& s) {
  std::set<Rational> fracs;
  std::set<Vec, LexLess> us(s.u_points.begin(), s.u_points.end());
  if (us.size() != s.u_points.size()) return false;
  for (const auto& w : s.w) {
    if (!fracs.insert(frac(w)).second) return false;
  }
  return true;
}

FibredGraph::FibredGraph(std::shared_ptr<const FibredSample> sample, const Rational& p, std::uint64_t seed)
    : sample_(std::move(sample)), coin_(p), seed_(seed) {}

bool FibredGraph::adjacent(std::size_t i, std::size_t j) const {
  return i != j && sample_->near(i, j) && coin_.accepts(pair_hash(seed_, i, j));
}

std::pair<std::optional<Rational>, std::optional<Rational>> PartialIso::interval(
    const std::map<Rational, Rational>& lift, const Rational& w) {
  if (lift.empty()) return {std::nullopt, std::nullopt};
  const Rational base(floor(w));
  const Rational key = w - base;
  if (auto hit = lift.find(key); hit != lift.end()) return {hit->second + base, hit->second + base};
  const auto it = lift.upper_bound(key);
  const Rational succ = it == lift.end() ? lift.begin()->second + 1 : it->second;
  const Rational pred = it == lift.begin() ? lift.rbegin()->second - 1 : std::prev(it)->second;
  return {pred + base, succ + base};
}

std::pair<std::optional<Rational>, std::optional<Rational>> PartialIso::forward_interval(const Rational& w) const {
  return interval(forward_lift_, w);
}

std::pair<std::optional<Rational>, std::optional<Rational>> PartialIso::backward_interval(
    const Rational& w_image) const {
  return interval(backward_lift_, w_image);
}

bool PartialIso::lift_accepts(const std::map<Rational, Rational>& lift, const Rational& key, const Rational& value) {
  if (lift.empty()) return true;
  if (auto hit = lift.find(key); hit != lift.end()) return hit->second == value;
  const auto it = lift.upper_bound(key);
  const Rational succ = it == lift.end() ? lift.begin()->second + 1 : it->second;
  const Rational pred = it == lift.begin() ? lift.rbegin()->second - 1 : std::prev(it)->second;
  return pred < value && value < succ;
}

bool PartialIso::lift_valid(const std::map<Rational, Rational>& lift) {
  if (lift.empty()) return true;
  for (auto it = std::next(lift.begin()); it != lift.end(); ++it) {
    if (!(std::prev(it)->second < it->second)) return false;
  }
  return lift.rbegin()->second < lift.begin()->second + 1;
}

bool PartialIso::can_add(const FibredSample& s, std::size_t i, std::size_t j) const {
  if (has_domain(i) || has_image(j) || s.fibre[i] != s.fibre[j]) return false;
  const Rational& w = s.w[i];
  const Rational& w2 = s.w[j];
  const Rational fw(floor(w)), fw2(floor(w2));
  return lift_accepts(forward_lift_, w - fw, w2 - fw) && lift_accepts(backward_lift_, w2 - fw2, w - fw2);
}

bool PartialIso::add(const FibredSample& s, std::size_t i, std::size_t j) {
  if (!can_add(s, i, j)) return false;
  const Rational& w = s.w[i];
  const Rational& w2 = s.w[j];
  const Rational fw(floor(w)), fw2(floor(w2));
  forward_lift_.emplace(w - fw, w2 - fw);
  backward_lift_.emplace(w2 - fw2, w - fw2);
  to_image_[i] = j;
  to_domain_[j] = i;
  pairs_.emplace_back(i, j);
  return true;
}

bool PartialIso::frac_order_valid() const { return lift_valid(forward_lift_) && lift_valid(backward_lift_); }

const char* block_reason_name(BlockReason r) {
  return r == BlockReason::no_candidate_in_interval ? "NoCandidateInInterval" : "AdjacencyUnsatisfiable";
}

std::variant<PartialIso, BlockReason> bf_step(const FibredGraph& g, const FibredGraph& g2, const PartialIso& state,
                                              std::size_t vertex, Direction direction) {
  const FibredSample& s = g.sample();
  if (g2.sample().size() != s.size() || g2.sample().fibre != s.fibre) {
    throw Error(Errc::invalid_argument, "graphs must share the fibred sample structure");
  }
  if (vertex >= s.size()) throw Error(Errc::index_out_of_range, "vertex " + std::to_string(vertex));
  const bool forward = direction == Direction::forward;
  if (forward ? state.has_domain(vertex) : state.has_image(vertex)) {
    throw Error(Errc::invalid_argument, "vertex " + std::to_string(vertex) + " is already matched");
  }
  const FibredGraph& src = forward ? g : g2;
  const FibredGraph& dst = forward ? g2 : g;
  auto oriented = [&](std::pair<std::size_t, std::size_t> p) {
    return forward ? p : std::pair{p.second, p.first};
  };

  // Matched pairs whose fibre is within U-distance 1 are the only ones that can constrain adjacency.
  std::vector<std::pair<std::size_t, std::size_t>> nearby;
  for (const auto& p : state.pairs()) {
    const auto [x, y] = oriented(p);
    if (s.u_distance(s.fibre[vertex], s.fibre[x]) < 1) nearby.emplace_back(x, y);
  }
  auto extendable = [&](std::size_t c) {
    return forward ? state.can_add(s, vertex, c) : state.can_add(s, c, vertex);
  };
  auto adjacency_ok = [&](std::size_t c) {
    for (const auto& [x, y] : nearby) {
      const bool near_src = s.near(vertex, x);
      if (near_src != s.near(c, y)) return false;
      if (near_src && src.adjacent(vertex, x) != dst.adjacent(c, y)) return false;
    }
    return true;
  };

  std::vector<std::size_t> candidates = {vertex};
  if (!state.empty()) {
    for (std::size_t c = 0; c < s.size(); ++c) {
      if (c != vertex && s.fibre[c] == s.fibre[vertex]) candidates.push_back(c);
    }
  }
  bool any_in_interval = false;
  for (std::size_t c : candidates) {
    if (!extendable(c)) continue;
    any_in_interval = true;
    if (!adjacency_ok(c)) continue;

    PartialIso next = state;
    const auto [i, j] = forward ? std::pair{vertex, c} : std::pair{c, vertex};
    next.add(s, i, j);
    // Re-audit the new pair against every earlier one, plus the lifted orders.
    for (const auto& [a, b] : state.pairs()) {
      if (floor(s.distance(i, a)) != floor(s.distance(j, b)) || g.adjacent(i, a) != g2.adjacent(j, b)) {
        throw Error(Errc::cross_check_failure, "back-and-forth step broke the partial isomorphism");
      }
    }
    if (!next.frac_order_valid()) throw Error(Errc::cross_check_failure, "lifted fractional order broken");
    return next;
  }
  return any_in_interval ? BlockReason::adjacency_unsatisfiable : BlockReason::no_candidate_in_interval;
}

bool edge_audit(const FibredGraph& g, const FibredGraph& g2, const PartialIso& state) {
  const auto& pairs = state.pairs();
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      if (g.adjacent(pairs[a].first, pairs[b].first) != g2.adjacent(pairs[a].second, pairs[b].second)) return false;
    }
  }
  return true;
}

BfReport bf_run(const FibredGraph& g, const FibredGraph& g2, std::size_t budget, std::uint64_t seed,
                std::optional<PartialIso> initial) {
  if (budget < 1) throw Error(Errc::invalid_argument, "budget must be positive");
  const FibredSample& s = g.sample();
  BfReport report;
  report.budget = budget;
  report.seed = seed;
  report.fibre_count = s.fibre_count();
  report.sample_size = s.size();
  PartialIso state = initial ? std::move(*initial) : PartialIso(s.size());

  std::size_t next_domain = 0, next_image = 0;
  for (std::size_t step = 0; step < budget; ++step) {
    const Direction dir = step % 2 == 0 ? Direction::forward : Direction::backward;
    std::size_t& cursor = dir == Direction::forward ? next_domain : next_image;
    auto matched = [&](std::size_t v) { return dir == Direction::forward ? state.has_domain(v) : state.has_image(v); };
    while (cursor < s.size() && matched(cursor)) ++cursor;
    if (cursor == s.size()) {
      report.exhausted = true;
      break;
    }
    ++report.steps_attempted;
    auto result = bf_step(g, g2, state, cursor, dir);
    if (auto* reason = std::get_if<BlockReason>(&result)) {
      report.blocked = true;
      report.reason = *reason;
      break;
    }
    state = std::move(std::get<PartialIso>(result));
    ++report.matched;
  }

  report.edge_audit_passed = edge_audit(g, g2, state);
  PointMap pairs;
  for (const auto& [i, j] : state.pairs()) pairs.emplace_back(s.point(i), s.point(j));
  report.step_isometry_audit_passed = static_cast<bool>(verify_step_isometry(s.ball, pairs));
  report.final_state = std::move(state);
  return report;
}

std::vector<std::pair<std::size_t, std::size_t>> unit_distance_pairs(const FibredSample& s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s.distance(i, j) == 1) out.emplace_back(i, j);
    }
  }
  return out;
}

S0Gadget attach_s0_gadget(FibredSample sample, std::uint64_t seed) {
  const Eigen::Index k = sample.u_ball.dim();
  const Vec zero = Vec::Zero(k);
  Rng rng(seed);
  Gauge gauge(sample.u_ball);
  const std::size_t guard = 100 * (sample.size() + sample.fibre_count() + 1);
  std::size_t attempts = 0;
  auto bump = [&] {
    if (++attempts > guard) throw Error(Errc::window_too_small, "could not clear unit distances around the gadget");
  };

  // U-points: none at 0, none at exact U-distance 1 from 0 or from each other.
  auto bad_u = [&](std::size_t f) {
    const Vec& u = sample.u_points[f];
    if (u == zero || gauge(u) == 1) return true;
    for (std::size_t g = 0; g < sample.fibre_count(); ++g) {
      if (g != f && (sample.u_points[g] == u || gauge(Vec(sample.u_points[g] - u)) == 1)) return true;
    }
    return false;
  };
  for (bool clean = false; !clean;) {
    clean = true;
    for (std::size_t f = 0; f < sample.fibre_count(); ++f) {
      while (bad_u(f)) {
        bump();
        clean = false;
        sample.u_points[f] = random_u_point(rng, k, sample.u_window);
      }
    }
  }

  // ℝ-components: gadget fractional parts are 0 and 1/2.
  std::set<Rational> fracs = {Rational(0), Rational(1, 2)};
  std::vector<std::size_t> redo;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (!fracs.insert(frac(sample.w[i])).second) redo.push_back(i);
  }
  for (std::size_t i : redo) {
    for (;;) {
      bump();
      Rational w = window_rational(rng, sample.w_window, odd_jitter(rng, sample.w_window));
      if (fracs.insert(frac(w)).second) {
        sample.w[i] = std::move(w);
        break;
      }
    }
  }

  const std::size_t f0 = sample.fibre_count();
  sample.u_points.push_back(zero);
  S0Gadget gadget{std::move(sample), {}, Vec::Unit(k + 1, k)};
  const Rational ws[] = {Rational(0), Rational(1), Rational(3, 2), Rational(5, 2)};
  for (std::size_t t = 0; t < 4; ++t) {
    gadget.points[t] = gadget.sample.size();
    gadget.sample.fibre.push_back(f0);
    gadget.sample.w.push_back(ws[t]);
  }
  gadget.sample.refresh_norms();
  return gadget;
}

PartialIso s0_identity(const S0Gadget& gadget) {
  PartialIso state(gadget.sample.size());
  for (std::size_t p : gadget.points) state.add(gadget.sample, p, p);
  return state;
}

std::size_t S0Result::agreements() const {
  return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.agreed; }));
}

std::size_t S0Result::completions() const {
  return static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const auto& t) { return t.bf_completed; }));
}

double S0Result::agreement_rate() const {
  return trials.empty() ? 0.0 : static_cast<double>(agreements()) / static_cast<double>(trials.size());
}

double S0Result::conditional_completion_rate() const {
  const std::size_t a = agreements();
  return a == 0 ? 0.0 : static_cast<double>(completions()) / static_cast<double>(a);
}

S0Result s0_experiment(const S0Params& params, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw Error(Errc::invalid_argument, "trials must be positive");
  const BernoulliThreshold coin(params.p);
  S0Result result;
  result.trials.resize(trials);
  // The gadget is appended after the regular points, so its edge indices are known up front.
  const std::size_t base = params.n_u * params.fibre_n;
  parallel_for(trials, [&](std::size_t t, std::size_t) {
    const std::uint64_t trial_seed = derive_seed(seed, t);
    const std::uint64_t seed_g = derive_seed(trial_seed, 1), seed_g2 = derive_seed(trial_seed, 2);
    S0Trial& row = result.trials[t];
    row.trial = t;
    row.agreed = coin.accepts(pair_hash(seed_g, base + 1, base + 2)) == coin.accepts(pair_hash(seed_g2, base + 1, base + 2));
    if (!row.agreed) return;

    auto sample = make_fibred_sample(params.u_ball, params.n_u, params.fibre_n, params.u_window,
                                     derive_seed(trial_seed, 0), params.w_window);
    auto gadget = attach_s0_gadget(std::move(sample), derive_seed(trial_seed, 3));
    const auto shared = std::make_shared<const FibredSample>(gadget.sample);
    const FibredGraph g(shared, params.p, seed_g), g2(shared, params.p, seed_g2);
    const auto [a, b] = gadget.edge();
    if (a != base + 1 || b != base + 2 || g.adjacent(a, b) != g2.adjacent(a, b)) {
      throw Error(Errc::cross_check_failure, "gadget edge indices drifted");
    }
    const auto report = bf_run(g, g2, params.budget, trial_seed, s0_identity(gadget));
    row.bf_ran = true;
    row.bf_completed = report.completed();
    row.audits_passed = report.audits_passed();
    row.matched = report.matched;
    row.reason = report.reason;
  });
  return result;
}

}  // namespace radolab
