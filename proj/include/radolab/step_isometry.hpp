#pragma once

// Step-isometries: bijections that preserve floor(norm(x - y)). The explicit
// ℓ∞^d family is x ↦ f(0) + Σ (g_i(frac x_i) + floor x_i) ε_i e_σ(i) with
// increasing bijections g_i of [0,1); a general space factorises as an
// isometry of U times such a map on the ℓ∞ part.

#include "radolab/ball.hpp"
#include "radolab/decomposition.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace radolab {

/// Continuous, strictly increasing, piecewise-linear bijection of [0,1) with
/// rational breakpoints. Breakpoints start at (0,0); (1,1) is implied.
class MonotoneBijection01 {
 public:
  MonotoneBijection01();  // identity
  explicit MonotoneBijection01(std::vector<std::pair<Rational, Rational>> breakpoints);

  const std::vector<std::pair<Rational, Rational>>& breakpoints() const { return points_; }
  bool is_identity() const;

  /// Exact evaluation; throws Errc::out_of_domain unless 0 <= t < 1.
  Rational operator()(const Rational& t) const;
  MonotoneBijection01 inverse() const;

  friend bool operator==(const MonotoneBijection01&, const MonotoneBijection01&) = default;

 private:
  std::vector<std::pair<Rational, Rational>> points_;
};

inline Rational eval_g(const MonotoneBijection01& g, const Rational& t) { return g(t); }

struct StepIsometrySpec {
  std::vector<std::size_t> sigma;  // permutation of {0..d-1}
  std::vector<int> eps;            // ±1
  std::vector<MonotoneBijection01> g;
  Vec offset;                      // f(0)

  Eigen::Index dim() const { return offset.size(); }
  /// Throws Errc::invalid_argument if the fields are inconsistent.
  void validate() const;
};

StepIsometrySpec identity_spec(Eigen::Index dim);

Vec apply_linf(const StepIsometrySpec& spec, const Vec& x);

/// Spec of the inverse map: apply_linf(inverse, apply_linf(spec, x)) == x.
StepIsometrySpec inverse_spec(const StepIsometrySpec& spec);

/// Uniform permutation and signs, `breakpoint_count` sorted random interior
/// breakpoints per coordinate and a small rational offset.
StepIsometrySpec random_step_isometry(Eigen::Index dim, std::size_t breakpoint_count, std::uint64_t seed);

struct AffineMap {
  Mat linear;
  Vec translation;

  Vec operator()(const Vec& x) const { return linear * x + translation; }
};

/// The unique affine map sending domain[i] to image[i] (d+1 points each);
/// accepted only if its linear part permutes the ball's vertices.
AffineMap affine_isometry_from_basis(const PolytopeBall& ball, const std::vector<Vec>& domain,
                                     const std::vector<Vec>& image);

/// f(u + w) = f_U(u) + f_W(w) in decomposition coordinates, with f_U an
/// affine isometry of U (acting on U-basis coordinates) and f_W an ℓ∞ spec.
struct FactorizedStepIsometry {
  LinfDecomposition decomposition;
  Mat u_linear;
  Vec u_translation;
  StepIsometrySpec w_map;
};

/// Validates the pieces; throws Errc::not_an_isometry if u_linear fails to
/// preserve the norm on a deterministic battery of U vectors.
FactorizedStepIsometry make_factorized(const PolytopeBall& ball, LinfDecomposition decomposition,
                                       Mat u_linear, Vec u_translation, StepIsometrySpec w_map);

Vec apply_factorized(const FactorizedStepIsometry& f, const Vec& x);

using PointMap = std::vector<std::pair<Vec, Vec>>;

struct StepViolation {
  std::size_t first;
  std::size_t second;
  Integer domain_floor;
  Integer image_floor;
};

struct StepCheck {
  std::optional<StepViolation> violation;
  explicit operator bool() const { return !violation; }
};

/// Checks floor(norm(x_i - x_j)) == floor(norm(y_i - y_j)) for all i < j.
/// Throws Errc::not_injective on repeated domain or image points.
StepCheck verify_step_isometry(const PolytopeBall& ball, const PointMap& pairs);

/// Necessary conditions for a finite map to factor over the decomposition with
/// an isometric U part: U-components are mapped consistently, injectively and
/// with all observed U-distances preserved.
bool check_factorization_consistency(const PolytopeBall& ball, const LinfDecomposition& decomposition,
                                     const PointMap& pairs);

}  // namespace radolab
