#pragma once

// Finite samples of typical dense sets, the unit-distance graph G₀, its
// Bernoulli subgraphs G_p and the Bonato–Janssen audit.

#include "radolab/ball.hpp"
#include "radolab/decomposition.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace radolab {

struct Typicality {
  bool linf = false;   // no integer differences in any ℓ∞ coordinate
  bool fibre = false;  // distinct U-components (only meaningful when U ≠ {0})

  friend bool operator==(const Typicality&, const Typicality&) = default;
};

/// Points over a common integer denominator, used for fast exact norm floors.
struct IntegerForm {
  std::vector<std::int64_t> numerators;  // row-major, one row per point
  std::int64_t denominator = 1;
};

struct PointSample {
  PolytopeBall ball;
  std::vector<Vec> points;
  Rational window;  // points lie in [-window, window]^d
  std::uint64_t seed = 0;
  Typicality typicality;
  std::optional<IntegerForm> integer_form;

  std::size_t size() const { return points.size(); }
};

/// Wraps an explicit point list, checking dimensions and distinctness.
PointSample make_sample(PolytopeBall ball, std::vector<Vec> points, Rational window = 0, std::uint64_t seed = 0,
                        Typicality typicality = {});

/// Coordinates R(2m - 2^32)/2^32 plus a per-point odd jitter below 2^-32/den(R).
/// Violating points are resampled; throws Errc::window_too_small after 100n draws.
PointSample sample_typical_points(const PolytopeBall& ball, const LinfDecomposition& decomposition,
                                  const Rational& window, std::size_t n, std::uint64_t seed,
                                  Typicality constraints);

/// Exact audit of the typicality flags recorded on the sample.
bool is_typical(const PointSample& sample, const LinfDecomposition& decomposition);

/// floor(norm(x_i - x_j)) for a sample, via the integer path when available.
class PairNorms {
 public:
  explicit PairNorms(const PointSample& sample);
  std::int64_t floor_norm(std::size_t i, std::size_t j);

 private:
  const PointSample* sample_;
  Gauge gauge_;
  std::vector<std::int64_t> diff_;
};

struct GeomGraph {
  PointSample sample;
  std::vector<std::vector<std::uint32_t>> adjacency;  // sorted neighbour lists
  Rational p = 1;
  std::uint64_t rng_seed = 0;

  std::size_t vertex_count() const { return adjacency.size(); }
  std::size_t edge_count() const;
  bool adjacent(std::size_t i, std::size_t j) const;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;  // i < j, sorted
};

/// G₀: i ~ j iff norm(x_i - x_j) < 1.
GeomGraph unit_graph(const PointSample& sample);

/// Keeps edge {i,j} iff the pair's seeded hash passes Bernoulli(p).
GeomGraph bernoulli_subgraph(const GeomGraph& g0, const Rational& p, std::uint64_t seed);

/// Hop count, or nullopt when unreachable.
std::optional<std::size_t> graph_distance(const GeomGraph& g, std::size_t i, std::size_t j);

struct BjRow {
  int k = 0;
  std::uint64_t pairs = 0;
  std::uint64_t satisfied = 0;
  double fraction() const { return pairs ? static_cast<double>(satisfied) / static_cast<double>(pairs) : 1.0; }
};

struct BjReport {
  std::vector<BjRow> rows;                 // k = 2..k_max
  std::uint64_t one_sided_violations = 0;  // d_G = m but norm >= m
  std::uint64_t connected_pairs = 0;       // pairs on which the one-sided check ran

  double overall_fraction() const;
};

/// Checks norm < k ⇔ d_G ≤ k for every pair and 2 ≤ k ≤ k_max, and the exact
/// implication d_G = m ⇒ norm < m for every connected pair.
BjReport bj_audit(const GeomGraph& g, int k_max);

struct AgreementEstimate {
  std::uint64_t trials = 0;
  std::uint64_t agreements = 0;
  double fraction() const { return static_cast<double>(agreements) / static_cast<double>(trials); }
};

/// Two independent Bernoulli(p) indicators per trial; fraction that agree.
AgreementEstimate edge_agreement_probability(const Rational& p, std::uint64_t trials, std::uint64_t seed);

}  // namespace radolab
