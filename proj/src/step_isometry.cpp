#include "radolab/step_isometry.hpp"

#include "radolab/error.hpp"
#include "radolab/linalg.hpp"
#include "radolab/rng.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace radolab {

MonotoneBijection01::MonotoneBijection01() : points_{{Rational(0), Rational(0)}} {}

MonotoneBijection01::MonotoneBijection01(std::vector<std::pair<Rational, Rational>> breakpoints)
    : points_(std::move(breakpoints)) {
  if (points_.empty() || points_.front() != std::pair<Rational, Rational>{0, 0}) {
    throw Error(Errc::invalid_argument, "breakpoints must start at (0,0)");
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const auto& [t, g] = points_[i];
    if (!(points_[i - 1].first < t && points_[i - 1].second < g && t < 1 && g < 1)) {
      throw Error(Errc::invalid_argument, "breakpoints must increase strictly inside [0,1)");
    }
  }
}

bool MonotoneBijection01::is_identity() const {
  return std::all_of(points_.begin(), points_.end(), [](const auto& p) { return p.first == p.second; });
}

Rational MonotoneBijection01::operator()(const Rational& t) const {
  if (t < 0 || t >= 1) throw Error(Errc::out_of_domain, to_string(t) + " not in [0,1)");
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](const Rational& v, const auto& p) { return v < p.first; });
  const auto& [t0, g0] = *std::prev(it);
  const Rational t1 = it == points_.end() ? Rational(1) : it->first;
  const Rational g1 = it == points_.end() ? Rational(1) : it->second;
  return g0 + (g1 - g0) * (t - t0) / (t1 - t0);
}

MonotoneBijection01 MonotoneBijection01::inverse() const {
  std::vector<std::pair<Rational, Rational>> swapped;
  for (const auto& [t, g] : points_) swapped.emplace_back(g, t);
  return MonotoneBijection01(std::move(swapped));
}

void StepIsometrySpec::validate() const {
  const auto d = static_cast<std::size_t>(dim());
  if (sigma.size() != d || eps.size() != d || g.size() != d) {
    throw Error(Errc::invalid_argument, "spec fields disagree on the dimension");
  }
  std::vector<bool> seen(d, false);
  for (std::size_t s : sigma) {
    if (s >= d || seen[s]) throw Error(Errc::invalid_argument, "sigma is not a permutation");
    seen[s] = true;
  }
  for (int e : eps) {
    if (e != 1 && e != -1) throw Error(Errc::invalid_argument, "signs must be ±1");
  }
}

StepIsometrySpec identity_spec(Eigen::Index dim) {
  StepIsometrySpec spec;
  spec.sigma.resize(static_cast<std::size_t>(dim));
  std::iota(spec.sigma.begin(), spec.sigma.end(), std::size_t{0});
  spec.eps.assign(static_cast<std::size_t>(dim), 1);
  spec.g.assign(static_cast<std::size_t>(dim), MonotoneBijection01());
  spec.offset = Vec::Zero(dim);
  return spec;
}

namespace {

// x ↦ floor x + g(frac x) and its inverse.
Rational staircase(const MonotoneBijection01& g, const Rational& x) {
  const Rational whole(floor(x));
  return whole + g(x - whole);
}

}  // namespace

Vec apply_linf(const StepIsometrySpec& spec, const Vec& x) {
  require_same_dim(spec.dim(), x.size(), "apply_linf argument");
  Vec y = spec.offset;
  for (std::size_t i = 0; i < spec.sigma.size(); ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    y(static_cast<Eigen::Index>(spec.sigma[i])) += Rational(spec.eps[i]) * staircase(spec.g[i], x(ii));
  }
  return y;
}

StepIsometrySpec inverse_spec(const StepIsometrySpec& spec) {
  spec.validate();
  const Eigen::Index d = spec.dim();
  StepIsometrySpec inv;
  inv.sigma.resize(static_cast<std::size_t>(d));
  inv.eps.resize(static_cast<std::size_t>(d));
  inv.g.resize(static_cast<std::size_t>(d));
  inv.offset = Vec::Zero(d);
  for (std::size_t i = 0; i < spec.sigma.size(); ++i) {
    // Output coordinate i is recovered from input coordinate j = σ(i):
    //   x_i = k(y_j) with k(y) = h⁻¹(ε(y - o_j)), h = staircase(g_i).
    const std::size_t j = spec.sigma[i];
    const int e = spec.eps[i];
    const Rational o = spec.offset(static_cast<Eigen::Index>(j));
    const MonotoneBijection01 g_inv = spec.g[i].inverse();
    auto k = [&](const Rational& y) { return staircase(g_inv, Rational(e) * (y - o)); };
    const Rational k0 = k(0);

    // k has kinks where ε(t - o) hits n + (a breakpoint of g⁻¹).
    std::set<Rational> kinks;
    for (const auto& [s, unused] : g_inv.breakpoints()) {
      const Integer base = floor(Rational(Rational(e) * (-o) - s));
      for (int n = -1; n <= 2; ++n) {
        const Rational t = o + Rational(e) * (Rational(base + n) + s);
        if (t > 0 && t < 1) kinks.insert(t);
      }
    }
    std::vector<std::pair<Rational, Rational>> points = {{0, 0}};
    for (const auto& t : kinks) points.emplace_back(t, Rational(e) * (k(t) - k0));

    inv.sigma[j] = i;
    inv.eps[j] = e;
    inv.g[j] = MonotoneBijection01(std::move(points));
    inv.offset(static_cast<Eigen::Index>(i)) = k0;
  }
  return inv;
}

namespace {

std::vector<Rational> sorted_unit_fractions(Rng& rng, std::size_t count) {
  constexpr std::uint64_t kDen = std::uint64_t{1} << 16;
  std::set<std::uint64_t> nums;
  while (nums.size() < count) nums.insert(1 + uniform_below(rng, kDen - 1));
  std::vector<Rational> out;
  for (auto n : nums) out.emplace_back(Rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(kDen)));
  return out;
}

}  // namespace

StepIsometrySpec random_step_isometry(Eigen::Index dim, std::size_t breakpoint_count, std::uint64_t seed) {
  if (dim < 1) throw Error(Errc::invalid_argument, "dimension must be positive");
  Rng rng(seed);
  StepIsometrySpec spec = identity_spec(dim);
  for (std::size_t i = spec.sigma.size(); i > 1; --i) {
    std::swap(spec.sigma[i - 1], spec.sigma[uniform_below(rng, i)]);
  }
  for (auto& e : spec.eps) e = uniform_below(rng, 2) ? 1 : -1;
  for (auto& g : spec.g) {
    const auto ts = sorted_unit_fractions(rng, breakpoint_count);
    const auto gs = sorted_unit_fractions(rng, breakpoint_count);
    std::vector<std::pair<Rational, Rational>> points = {{0, 0}};
    for (std::size_t k = 0; k < breakpoint_count; ++k) points.emplace_back(ts[k], gs[k]);
    g = MonotoneBijection01(std::move(points));
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto num = static_cast<std::int64_t>(uniform_below(rng, 101)) - 50;
    const auto den = static_cast<std::int64_t>(uniform_below(rng, 16)) + 1;
    spec.offset(i) = Rational(num, den);
  }
  return spec;
}

AffineMap affine_isometry_from_basis(const PolytopeBall& ball, const std::vector<Vec>& domain,
                                     const std::vector<Vec>& image) {
  const Eigen::Index d = ball.dim();
  if (domain.size() != static_cast<std::size_t>(d + 1) || image.size() != domain.size()) {
    throw Error(Errc::not_affine_basis, "expected " + std::to_string(d + 1) + " domain and image points");
  }
  for (const auto& p : domain) require_same_dim(d, p.size(), "domain point");
  for (const auto& p : image) require_same_dim(d, p.size(), "image point");
  Mat from(d, d), to(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    from.col(i) = domain[static_cast<std::size_t>(i + 1)] - domain[0];
    to.col(i) = image[static_cast<std::size_t>(i + 1)] - image[0];
  }
  const auto from_inv = linalg::inverse(from);
  if (!from_inv) throw Error(Errc::not_affine_basis, "domain points are affinely dependent");
  AffineMap map{to * *from_inv, Vec()};
  map.translation = image[0] - map.linear * domain[0];
  if (!preserves_vertices(ball, map.linear)) {
    throw Error(Errc::not_an_isometry, "linear part does not permute the ball's vertices");
  }
  return map;
}

FactorizedStepIsometry make_factorized(const PolytopeBall& ball, LinfDecomposition decomposition,
                                       Mat u_linear, Vec u_translation, StepIsometrySpec w_map) {
  const auto k = static_cast<Eigen::Index>(decomposition.u_basis.size());
  require_same_dim(ball.dim(), decomposition.ambient_dim(), "decomposition");
  require_same_dim(decomposition.d_inf(), w_map.dim(), "ℓ∞ spec");
  if (u_linear.rows() != k || u_linear.cols() != k) {
    throw Error(Errc::dimension_mismatch, "U map must be " + std::to_string(k) + "×" + std::to_string(k));
  }
  require_same_dim(k, u_translation.size(), "U translation");
  w_map.validate();
  if (k > 0 && linalg::rank(u_linear) != k) throw Error(Errc::not_an_isometry, "U map is singular");

  Gauge gauge(ball);
  const Mat u_cols = linalg::columns(decomposition.u_basis, ball.dim());
  auto preserved = [&](const Vec& mu) { return gauge(Vec(u_cols * mu)) == gauge(Vec(u_cols * (u_linear * mu))); };
  std::vector<Vec> battery;
  for (Eigen::Index i = 0; i < k; ++i) {
    battery.push_back(Vec::Unit(k, i));
    for (Eigen::Index j = i + 1; j < k; ++j) {
      battery.push_back(Vec::Unit(k, i) + Vec::Unit(k, j));
      battery.push_back(Vec::Unit(k, i) - Vec::Unit(k, j));
    }
  }
  Rng rng(0xfac7);
  for (int s = 0; s < 100 && k > 0; ++s) {
    Vec mu(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      mu(i) = Rational(static_cast<std::int64_t>(uniform_below(rng, 41)) - 20,
                       static_cast<std::int64_t>(uniform_below(rng, 9)) + 1);
    }
    battery.push_back(mu);
  }
  for (const auto& mu : battery) {
    if (!preserved(mu)) throw Error(Errc::not_an_isometry, "U map changes the norm of " + to_string(mu));
  }
  return {std::move(decomposition), std::move(u_linear), std::move(u_translation), std::move(w_map)};
}

Vec apply_factorized(const FactorizedStepIsometry& f, const Vec& x) {
  const auto parts = f.decomposition.split(x);
  const Vec u = f.u_linear * parts.u + f.u_translation;
  const Vec w = apply_linf(f.w_map, parts.linf);
  return f.decomposition.combine(w, u);
}

namespace {

void require_injective(const PointMap& pairs, Eigen::Index dim) {
  std::set<Vec, LexLess> xs, ys;
  for (const auto& [x, y] : pairs) {
    require_same_dim(dim, x.size(), "domain point");
    require_same_dim(dim, y.size(), "image point");
    if (!xs.insert(x).second) throw Error(Errc::not_injective, "repeated domain point " + to_string(x));
    if (!ys.insert(y).second) throw Error(Errc::not_injective, "repeated image point " + to_string(y));
  }
}

}  // namespace

StepCheck verify_step_isometry(const PolytopeBall& ball, const PointMap& pairs) {
  require_injective(pairs, ball.dim());
  Gauge gauge(ball);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = i + 1; j < pairs.size(); ++j) {
      Integer before = floor(gauge(Vec(pairs[i].first - pairs[j].first)));
      Integer after = floor(gauge(Vec(pairs[i].second - pairs[j].second)));
      if (before != after) return {StepViolation{i, j, std::move(before), std::move(after)}};
    }
  }
  return {};
}

bool check_factorization_consistency(const PolytopeBall& ball, const LinfDecomposition& decomposition,
                                     const PointMap& pairs) {
  require_injective(pairs, ball.dim());
  std::map<Vec, Vec, LexLess> forward, backward;
  for (const auto& [x, y] : pairs) {
    Vec ux = decomposition.split(x).u;
    Vec uy = decomposition.split(y).u;
    auto [fit, fnew] = forward.emplace(ux, uy);
    if (!fnew && fit->second != uy) return false;
    auto [bit, bnew] = backward.emplace(uy, ux);
    if (!bnew && bit->second != ux) return false;
  }
  Gauge gauge(ball);
  const Mat u_cols = linalg::columns(decomposition.u_basis, ball.dim());
  for (auto a = forward.begin(); a != forward.end(); ++a) {
    for (auto b = std::next(a); b != forward.end(); ++b) {
      if (gauge(Vec(u_cols * (a->first - b->first))) != gauge(Vec(u_cols * (a->second - b->second)))) return false;
    }
  }
  return true;
}

}  // namespace radolab
