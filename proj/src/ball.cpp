#include "radolab/ball.hpp"

#include "radolab/error.hpp"
#include "radolab/linalg.hpp"
#include "radolab/simplex.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace radolab {

namespace {

// Is x in the convex hull of the columns of `points`?
bool in_convex_hull(const Mat& points, const Vec& x) {
  if (points.cols() == 0) return false;
  LpProblem<Rational> lp(points.cols());
  for (Eigen::Index i = 0; i < points.rows(); ++i) lp.add(points.row(i).transpose(), Sense::eq, x(i));
  lp.add(Vec::Ones(points.cols()), Sense::eq, Rational(1));
  return solve_lp(lp).status == LpStatus::optimal;
}

Mat columns_except(const std::vector<Vec>& points, Eigen::Index dim, std::size_t skip) {
  Mat m(dim, static_cast<Eigen::Index>(points.size() - (skip < points.size() ? 1 : 0)));
  Eigen::Index c = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i != skip) m.col(c++) = points[i];
  }
  return m;
}

void require_on_sphere(const PolytopeBall& ball, const Vec& v) {
  require_same_dim(ball.dim(), v.size(), "point");
  if (norm(ball, v) != 1) throw Error(Errc::not_on_sphere, "norm of " + to_string(v) + " is not 1");
}

}  // namespace

PolytopeBall::PolytopeBall(Eigen::Index dim, std::vector<Vec> vertices)
    : dim_(dim), vertices_(std::move(vertices)), vertex_matrix_(linalg::columns(vertices_, dim)) {}

std::optional<std::size_t> PolytopeBall::vertex_index(const Vec& v) const {
  if (v.size() != dim_) return std::nullopt;
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v, LexGreater{});
  if (it == vertices_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vertices_.begin());
}

PolytopeBall validate_ball(std::vector<Vec> points) {
  if (points.empty()) throw Error(Errc::degenerate_span, "empty vertex set");
  const Eigen::Index dim = points.front().size();
  if (dim == 0) throw Error(Errc::degenerate_span, "zero-dimensional points");
  for (const auto& p : points) require_same_dim(dim, p.size(), "ball vertex");

  std::sort(points.begin(), points.end(), LexGreater{});
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] == points[i - 1]) throw Error(Errc::duplicate_point, to_string(points[i]));
  }
  for (const auto& p : points) {
    const Vec neg = -p;
    if (!std::binary_search(points.begin(), points.end(), neg, LexGreater{})) {
      throw Error(Errc::not_symmetric, to_string(p) + " has no antipode");
    }
  }
  if (linalg::rank(linalg::columns(points, dim)) != dim) {
    throw Error(Errc::degenerate_span, "points do not span the ambient space");
  }

  // A point of a finite set is extreme in its hull iff it is not in the hull of the rest.
  std::vector<Vec> extreme;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!in_convex_hull(columns_except(points, dim, i), points[i])) extreme.push_back(points[i]);
  }
  return PolytopeBall(dim, std::move(extreme));
}

Rational norm(const PolytopeBall& ball, const Vec& x) {
  require_same_dim(ball.dim(), x.size(), "norm argument");
  const Mat& v = ball.vertex_matrix();
  LpProblem<Rational> lp(v.cols());
  lp.objective.setConstant(Rational(-1));
  for (Eigen::Index i = 0; i < v.rows(); ++i) lp.add(v.row(i).transpose(), Sense::eq, x(i));
  const auto result = solve_lp(lp);
  // Symmetric spanning vertices generate the whole space as a cone, so the LP is
  // always feasible and bounded.
  return -result.value;
}

bool is_extreme_point(const PolytopeBall& ball, const Vec& v) {
  require_on_sphere(ball, v);
  const auto idx = ball.vertex_index(v);
  const std::size_t skip = idx ? *idx : ball.vertex_count();
  return !in_convex_hull(columns_except(ball.vertices(), ball.dim(), skip), v);
}

bool is_extreme_via_balls(const PolytopeBall& ball, const Vec& v) {
  require_on_sphere(ball, v);
  const Eigen::Index d = ball.dim();
  const Mat& verts = ball.vertex_matrix();
  const Eigen::Index m = verts.cols();
  // Variables: y (free, d) | lambda (m) | mu (m).
  //   y = V·lambda, sum lambda <= 1     (y in B(0,1))
  //   y - 2v = V·mu, sum mu <= 1        (y in B(2v,1))
  LpProblem<Rational> lp(d + 2 * m);
  for (Eigen::Index i = 0; i < d; ++i) lp.free_variable[static_cast<std::size_t>(i)] = true;
  for (Eigen::Index i = 0; i < d; ++i) {
    Vec row = Vec::Zero(d + 2 * m);
    row(i) = 1;
    row.segment(d, m) = -verts.row(i).transpose();
    lp.add(row, Sense::eq, Rational(0));
    row.segment(d, m).setZero();
    row.segment(d + m, m) = -verts.row(i).transpose();
    lp.add(row, Sense::eq, Rational(2) * v(i));
  }
  Vec sum_lambda = Vec::Zero(d + 2 * m);
  sum_lambda.segment(d, m).setOnes();
  lp.add(sum_lambda, Sense::le, Rational(1));
  Vec sum_mu = Vec::Zero(d + 2 * m);
  sum_mu.segment(d + m, m).setOnes();
  lp.add(sum_mu, Sense::le, Rational(1));

  for (Eigen::Index i = 0; i < d; ++i) {
    lp.objective.setZero();
    lp.objective(i) = 1;
    const Rational hi = solve_lp(lp).value;
    lp.objective(i) = -1;
    const Rational lo = -solve_lp(lp).value;
    if (hi != lo) return false;
  }
  return true;
}

bool closed_ball_membership(const PolytopeBall& ball, const Vec& center, const Rational& radius,
                            const Vec& x) {
  require_same_dim(ball.dim(), center.size(), "ball center");
  require_same_dim(ball.dim(), x.size(), "point");
  if (radius < 0) throw Error(Errc::invalid_argument, "negative radius");
  return norm(ball, x - center) <= radius;
}

// --- Gauge -----------------------------------------------------------------

namespace {

constexpr std::int64_t kScaledLimit = std::int64_t{1} << 40;

bool fits_scaled(const Integer& v) { return v > -Integer(kScaledLimit) && v < Integer(kScaledLimit); }

}  // namespace

Gauge::Gauge(const PolytopeBall& ball) : ball_(ball) {}

Rational Gauge::operator()(const Vec& x) {
  require_same_dim(ball_.dim(), x.size(), "norm argument");
  for (std::size_t k = 0; k < cones_.size(); ++k) {
    const std::size_t c = (k + last_hit_) % cones_.size();
    const Vec lambda = cones_[c].inverse * x;
    if ((lambda.array() >= Rational(0)).all()) {
      last_hit_ = c;
      return lambda.sum();
    }
  }
  learn(x);
  return norm(ball_, x);
}

std::int64_t Gauge::floor_norm(std::span<const std::int64_t> z, std::int64_t denominator) {
  const auto d = static_cast<std::size_t>(ball_.dim());
  require_same_dim(ball_.dim(), static_cast<Eigen::Index>(z.size()), "norm argument");
  for (std::size_t k = 0; k < cones_.size(); ++k) {
    const std::size_t c = (k + last_hit_) % cones_.size();
    const Cone& cone = cones_[c];
    if (!cone.integral) continue;
    __int128 total = 0;
    bool inside = true;
    for (std::size_t i = 0; i < d && inside; ++i) {
      __int128 s = 0;
      for (std::size_t j = 0; j < d; ++j) s += static_cast<__int128>(cone.scaled[i * d + j]) * z[j];
      inside = s >= 0;
      total += s;
    }
    if (!inside) continue;
    last_hit_ = c;
    return static_cast<std::int64_t>(total / (static_cast<__int128>(cone.scale) * denominator));
  }
  Vec x(static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < d; ++i) x(static_cast<Eigen::Index>(i)) = Rational(z[i], denominator);
  return static_cast<std::int64_t>(floor((*this)(x)));
}

void Gauge::learn(const Vec& x) {
  const Eigen::Index d = ball_.dim();
  const Mat& verts = ball_.vertex_matrix();
  // Nudge x off any lower-dimensional cone so the optimal basis is a full
  // simplicial cone; the nudged point's basis is a valid cone whether or not it
  // also contains x.
  Vec nudged = x;
  const Rational eps = (Rational(1) + x.cwiseAbs().sum()) / Rational(1 << 20);
  static constexpr int kPrimes[] = {3, 7, 13, 29, 53, 97, 193, 389};
  for (Eigen::Index i = 0; i < d; ++i) nudged(i) += eps / Rational(kPrimes[i % 8] + i / 8);

  LpProblem<Rational> lp(verts.cols());
  lp.objective.setConstant(Rational(-1));
  for (Eigen::Index i = 0; i < d; ++i) lp.add(verts.row(i).transpose(), Sense::eq, nudged(i));
  const auto result = solve_lp(lp);
  if (result.status != LpStatus::optimal || static_cast<Eigen::Index>(result.basic_vars.size()) != d) return;

  Mat basis(d, d);
  for (Eigen::Index i = 0; i < d; ++i) basis.col(i) = verts.col(result.basic_vars[static_cast<std::size_t>(i)]);
  auto inv = linalg::inverse(basis);
  if (!inv) return;
  const Vec dual = inv->transpose() * Vec::Ones(d);
  if (((verts.transpose() * dual).array() > Rational(1)).any()) return;

  Cone cone;
  cone.inverse = std::move(*inv);
  Integer scale = 1;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) scale = lcm(scale, denominator(cone.inverse(i, j)));
  }
  cone.integral = fits_scaled(scale);
  if (cone.integral) {
    cone.scale = scale.convert_to<std::int64_t>();
    for (Eigen::Index i = 0; i < d && cone.integral; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        const Integer entry = numerator(cone.inverse(i, j)) * (scale / denominator(cone.inverse(i, j)));
        if (!fits_scaled(entry)) { cone.integral = false; break; }
        cone.scaled.push_back(entry.convert_to<std::int64_t>());
      }
    }
  }
  cones_.push_back(std::move(cone));
}

}  // namespace radolab
