#pragma once

// Symmetric polytopal unit balls in vertex representation and the norms they
// define. Every predicate is decided by exact linear programming.

#include "radolab/rational.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace radolab {

class PolytopeBall;

/// Builds a ball from a point set: rejects asymmetric, duplicated or
/// degenerate input and drops points that are not extreme.
PolytopeBall validate_ball(std::vector<Vec> points);

class PolytopeBall {
 public:
  Eigen::Index dim() const { return dim_; }
  /// Vertices in descending lexicographic order.
  const std::vector<Vec>& vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  /// d × m matrix whose columns are the vertices.
  const Mat& vertex_matrix() const { return vertex_matrix_; }

  std::optional<std::size_t> vertex_index(const Vec& v) const;
  bool has_vertex(const Vec& v) const { return vertex_index(v).has_value(); }

  friend bool operator==(const PolytopeBall& a, const PolytopeBall& b) {
    return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
  }

 private:
  friend PolytopeBall validate_ball(std::vector<Vec> points);
  PolytopeBall(Eigen::Index dim, std::vector<Vec> vertices);

  Eigen::Index dim_;
  std::vector<Vec> vertices_;
  Mat vertex_matrix_;
};

struct LexGreater {
  bool operator()(const Vec& a, const Vec& b) const { return lex_compare(a, b) > 0; }
};

/// Minkowski gauge min{t >= 0 : x in tB}, by LP over conic coefficients.
Rational norm(const PolytopeBall& ball, const Vec& x);

/// True iff v is not a convex combination of the other vertices.
/// Requires norm(v) == 1.
bool is_extreme_point(const PolytopeBall& ball, const Vec& v);

/// Metric test: v is extreme iff B(0,1) ∩ B(2v,1) = {v}. Requires norm(v) == 1.
bool is_extreme_via_balls(const PolytopeBall& ball, const Vec& v);

bool closed_ball_membership(const PolytopeBall& ball, const Vec& center, const Rational& radius,
                            const Vec& x);

/// Norm evaluator that remembers optimal simplicial cones of the gauge LP.
/// A cached cone is an invertible vertex basis B with 1ᵀB⁻¹v <= 1 for every
/// vertex v; for x with B⁻¹x >= 0 this certifies norm(x) = 1ᵀB⁻¹x, so the
/// cached answer is exact. Not thread-safe; use one instance per thread.
class Gauge {
 public:
  explicit Gauge(const PolytopeBall& ball);

  const PolytopeBall& ball() const { return ball_; }

  Rational operator()(const Vec& x);

  /// floor(norm(z / denominator)) for an integer vector z. Uses 128-bit
  /// integer arithmetic when a cached cone has small scaled entries.
  /// Requires |z_i| < 2^62 and 0 < denominator < 2^62.
  std::int64_t floor_norm(std::span<const std::int64_t> z, std::int64_t denominator);

  std::size_t cached_cones() const { return cones_.size(); }

 private:
  struct Cone {
    Mat inverse;
    bool integral = false;
    std::int64_t scale = 1;
    std::vector<std::int64_t> scaled;  // row-major scale * inverse
  };

  void learn(const Vec& x);

  PolytopeBall ball_;
  std::vector<Cone> cones_;
  std::size_t last_hit_ = 0;
};

}  // namespace radolab
