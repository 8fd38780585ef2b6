#pragma once

// Extreme lines, ℓ∞-directions and the ℓ∞-decomposition V = (U ⊕ ℓ∞^d)_∞ of a
// polytopal normed space. The decomposition is computed twice: W from the
// ℓ∞-directions, U as the maximal well-spanned subspace; the two must be
// complementary.

#include "radolab/ball.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace radolab {

struct ExtremeLine {
  Vec first;      // vertex
  Vec second;     // vertex
  Vec direction;  // canonical: norm 1, first nonzero coordinate positive
};

struct LinfDirection {
  Vec direction;
  /// (i, j) vertex indices with vertex_i - vertex_j = 2·direction.
  std::vector<std::pair<std::size_t, std::size_t>> pairing;
  /// Basis of W = span of the pair midpoints; dim = d_V - 1.
  std::vector<Vec> complement_basis;
};

enum class LinfRejectionReason { unpaired_vertex, midpoint_span_wrong };

struct LinfRejection {
  LinfRejectionReason reason;
  Vec witness;  // the unpaired vertex, or the direction itself
};

using LinfCheck = std::variant<LinfDirection, LinfRejection>;

struct LinfDecomposition {
  std::vector<LinfDirection> linf;  // ℓ∞-directions, lexicographic
  std::vector<Vec> u_basis;
  std::string method;

  Eigen::Index d_inf() const { return static_cast<Eigen::Index>(linf.size()); }
  Eigen::Index ambient_dim() const { return d_inf() + static_cast<Eigen::Index>(u_basis.size()); }
  std::vector<Vec> linf_basis() const;

  /// Columns: ℓ∞-directions, then the U basis.
  Mat basis_matrix() const;

  struct Coordinates {
    Vec linf;  // coefficients on the ℓ∞-directions
    Vec u;     // coefficients on the U basis
  };
  Coordinates split(const Vec& x) const;
  Vec combine(const Vec& linf_coords, const Vec& u_coords) const;
};

struct LatticeCoeffs {
  std::vector<Vec> spanning_extremes;
  std::vector<Integer> coeffs;

  Vec point() const;
};

struct LinearIsometry {
  Mat matrix;
};

/// Scales x to norm 1 and flips it so its first nonzero coordinate is positive.
Vec canonical_direction(Gauge& gauge, const Vec& x);

std::vector<ExtremeLine> extreme_lines(const PolytopeBall& ball);
/// Distinct canonical extreme-line directions in lexicographic order.
std::vector<Vec> extreme_line_directions(const PolytopeBall& ball);

LinfCheck is_linf_direction(const PolytopeBall& ball, const Vec& x);
std::vector<LinfDirection> linf_directions(const PolytopeBall& ball);

/// Coloop elimination over the extreme-line directions; returns a basis of
/// the span of what survives.
std::vector<Vec> max_well_spanned_subspace(const PolytopeBall& ball);

LinfDecomposition linf_decomposition(const PolytopeBall& ball);

LatticeCoeffs lattice_cover(const PolytopeBall& ball, const Vec& v);

/// True iff `m` permutes the vertex set of the ball.
bool preserves_vertices(const PolytopeBall& ball, const Mat& m);

std::vector<LinearIsometry> linear_isometry_group(const PolytopeBall& ball,
                                                  std::size_t max_vertices = 48);

}  // namespace radolab
