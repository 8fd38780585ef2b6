#pragma once

// Back-and-forth construction of isomorphisms between two G_p graphs on a
// fibred sample of V = (U ⊕ ℝ)_∞, and the S₀ gadget experiment.

#include "radolab/ball.hpp"
#include "radolab/rng.hpp"

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace radolab {

/// Points u + w with u from a finite set of U-points and w ∈ ℝ. Flat index
/// order interleaves fibres: index j·n_u + f is the j-th point of fibre f.
/// Extra fibres (the gadget) are appended after the regular points.
struct FibredSample {
  PolytopeBall u_ball;
  PolytopeBall ball;  // unit ball of (U ⊕ ℝ)_∞, ℝ as the last coordinate
  Rational u_window;
  Rational w_window;
  std::vector<Vec> u_points;
  std::vector<std::size_t> fibre;  // per point
  std::vector<Rational> w;         // per point
  std::vector<Rational> u_norms;   // fibre × fibre table

  std::size_t size() const { return w.size(); }
  std::size_t fibre_count() const { return u_points.size(); }
  const Rational& u_distance(std::size_t f, std::size_t g) const { return u_norms[f * fibre_count() + g]; }
  Rational distance(std::size_t i, std::size_t j) const;
  bool near(std::size_t i, std::size_t j) const;  // distance < 1
  Vec point(std::size_t i) const;
  std::vector<Vec> points() const;
  std::vector<std::vector<std::size_t>> members() const;  // indices per fibre, ascending

  /// Recomputes u_norms after u_points change.
  void refresh_norms();
};

/// An empty sample over U (no fibres); used to build gadget-only samples.
FibredSample empty_fibred_sample(const PolytopeBall& u_ball, Rational u_window, Rational w_window);

/// n_u random U-points in [-u_window, u_window]^k, fibre_n ℝ-components per
/// fibre in [-w_window, w_window], no two ℝ-components differing by an integer.
FibredSample make_fibred_sample(const PolytopeBall& u_ball, std::size_t n_u, std::size_t fibre_n,
                                const Rational& u_window, std::uint64_t seed,
                                std::optional<Rational> w_window = std::nullopt);

/// Exact audit of the sample invariants (distinct ℝ fractional parts).
bool fibred_invariants_hold(const FibredSample& s);

/// G_p on a fibred sample with adjacency evaluated lazily from pair hashes.
class FibredGraph {
 public:
  FibredGraph(std::shared_ptr<const FibredSample> sample, const Rational& p, std::uint64_t seed);

  const FibredSample& sample() const { return *sample_; }
  const std::shared_ptr<const FibredSample>& shared_sample() const { return sample_; }
  const Rational& p() const { return coin_.probability(); }
  std::uint64_t seed() const { return seed_; }
  bool adjacent(std::size_t i, std::size_t j) const;

 private:
  std::shared_ptr<const FibredSample> sample_;
  BernoulliThreshold coin_;
  std::uint64_t seed_;
};

/// Partial map that fixes U-components and whose ℝ part extends to an
/// increasing f with f(x + 1) = f(x) + 1. The extension is tracked through
/// the lifted values F(frac w) = w' - floor(w), which must increase strictly
/// in frac(w) and stay within one unit of each other.
class PartialIso {
 public:
  PartialIso() = default;
  explicit PartialIso(std::size_t n) : to_image_(n), to_domain_(n) {}

  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  bool has_domain(std::size_t i) const { return to_image_.at(i).has_value(); }
  bool has_image(std::size_t j) const { return to_domain_.at(j).has_value(); }
  std::optional<std::size_t> image_of(std::size_t i) const { return to_image_.at(i); }
  std::optional<std::size_t> preimage_of(std::size_t j) const { return to_domain_.at(j); }
  const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }

  /// Open interval of admissible w' for a new domain point w (or, backward,
  /// of admissible w for a new image point w'). nullopt bounds mean unbounded.
  std::pair<std::optional<Rational>, std::optional<Rational>> forward_interval(const Rational& w) const;
  std::pair<std::optional<Rational>, std::optional<Rational>> backward_interval(const Rational& w_image) const;

  /// Adds i ↦ j if it keeps the U-part fixed and the ℝ part extendable.
  bool add(const FibredSample& s, std::size_t i, std::size_t j);

  /// Re-checks both lifted orders from scratch.
  bool frac_order_valid() const;

  bool can_add(const FibredSample& s, std::size_t i, std::size_t j) const;

 private:
  static std::pair<std::optional<Rational>, std::optional<Rational>> interval(
      const std::map<Rational, Rational>& lift, const Rational& w);
  static bool lift_accepts(const std::map<Rational, Rational>& lift, const Rational& key, const Rational& value);
  static bool lift_valid(const std::map<Rational, Rational>& lift);

  std::vector<std::optional<std::size_t>> to_image_;
  std::vector<std::optional<std::size_t>> to_domain_;
  std::vector<std::pair<std::size_t, std::size_t>> pairs_;
  std::map<Rational, Rational> forward_lift_;   // frac(w) → w' - floor(w)
  std::map<Rational, Rational> backward_lift_;  // frac(w') → w - floor(w')
};

enum class Direction { forward, backward };
enum class BlockReason { no_candidate_in_interval, adjacency_unsatisfiable };
const char* block_reason_name(BlockReason r);

/// One back-and-forth step. Forward maps an unmatched vertex of g into g2,
/// backward finds a preimage in g for an unmatched vertex of g2. The first
/// step maps the vertex to itself; later steps take the vertex itself when
/// admissible and otherwise the smallest admissible index.
std::variant<PartialIso, BlockReason> bf_step(const FibredGraph& g, const FibredGraph& g2, const PartialIso& state,
                                              std::size_t vertex, Direction direction);

struct BfReport {
  std::size_t budget = 0;
  std::size_t steps_attempted = 0;
  std::size_t matched = 0;  // successful steps, excluding the initial state
  bool blocked = false;
  std::optional<BlockReason> reason;
  bool exhausted = false;
  bool edge_audit_passed = true;
  bool step_isometry_audit_passed = true;
  std::uint64_t seed = 0;
  std::size_t fibre_count = 0;
  std::size_t sample_size = 0;
  PartialIso final_state;

  bool completed() const { return !blocked && (matched == budget || exhausted); }
  bool audits_passed() const { return edge_audit_passed && step_isometry_audit_passed; }
};

/// Alternates forward and backward steps over the flat index order until the
/// budget is spent, a side is exhausted, or a step blocks. The final state is
/// audited edge by edge and with verify_step_isometry.
BfReport bf_run(const FibredGraph& g, const FibredGraph& g2, std::size_t budget, std::uint64_t seed,
                std::optional<PartialIso> initial = std::nullopt);

/// True iff every matched pair is joined in g exactly when the images are joined in g2.
bool edge_audit(const FibredGraph& g, const FibredGraph& g2, const PartialIso& state);

struct S0Gadget {
  FibredSample sample;
  std::array<std::size_t, 4> points;  // 0, u, 3u/2, 5u/2
  Vec u;

  std::pair<std::size_t, std::size_t> edge() const { return {points[1], points[2]}; }
};

/// Appends {0, u, 3u/2, 5u/2} with u = e_ℝ on a new fibre over U-point 0,
/// resampling sample points until the only exact unit distances are 0–u and
/// 3u/2–5u/2 and no ℝ-component differs from a gadget one by an integer.
S0Gadget attach_s0_gadget(FibredSample sample, std::uint64_t seed);

/// All pairs at exact norm 1.
std::vector<std::pair<std::size_t, std::size_t>> unit_distance_pairs(const FibredSample& s);

/// Identity on the four gadget points.
PartialIso s0_identity(const S0Gadget& gadget);

struct S0Params {
  PolytopeBall u_ball;
  std::size_t n_u = 100;
  std::size_t fibre_n = 200;
  Rational u_window = 400;
  Rational w_window = Rational(1, 2);
  Rational p = Rational(1, 2);
  std::size_t budget = 50;
};

struct S0Trial {
  std::size_t trial = 0;
  bool agreed = false;
  bool bf_ran = false;
  bool bf_completed = false;
  bool audits_passed = true;
  std::size_t matched = 0;
  std::optional<BlockReason> reason;
};

struct S0Result {
  std::vector<S0Trial> trials;

  std::size_t agreements() const;
  std::size_t completions() const;
  double agreement_rate() const;
  double conditional_completion_rate() const;  // among agreeing trials
};

/// Per trial: two independent G_p's on a gadgeted sample; when they agree on
/// the gadget edge, a back-and-forth run seeded with the identity on S₀.
S0Result s0_experiment(const S0Params& params, std::size_t trials, std::uint64_t seed);

}  // namespace radolab
