#include "radolab/decomposition.hpp"

#include "radolab/error.hpp"
#include "radolab/linalg.hpp"
#include "radolab/rng.hpp"
#include "radolab/simplex.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace radolab {

namespace {

// Representations of the midpoint of [v, w] as a convex combination of
// vertices: the segment is an edge iff no representation puts weight on any
// other vertex.
bool is_edge(const Mat& verts, std::size_t i, std::size_t j) {
  const Eigen::Index m = verts.cols();
  const Eigen::Index d = verts.rows();
  const Vec mid = (verts.col(static_cast<Eigen::Index>(i)) + verts.col(static_cast<Eigen::Index>(j))) / Rational(2);
  LpProblem<Rational> lp(m);
  for (Eigen::Index r = 0; r < d; ++r) lp.add(verts.row(r).transpose(), Sense::eq, mid(r));
  lp.add(Vec::Ones(m), Sense::eq, Rational(1));
  lp.objective.setOnes();
  lp.objective(static_cast<Eigen::Index>(i)) = 0;
  lp.objective(static_cast<Eigen::Index>(j)) = 0;
  const auto result = solve_lp(lp);
  return result.status == LpStatus::optimal && result.value == 0;
}

void sort_unique(std::vector<Vec>& vs) {
  std::sort(vs.begin(), vs.end(), LexLess{});
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

// Small rational combination of the given basis vectors.
Vec random_combination(Rng& rng, const std::vector<Vec>& basis, Eigen::Index dim) {
  Vec out = Vec::Zero(dim);
  for (const auto& b : basis) {
    const auto num = static_cast<std::int64_t>(uniform_below(rng, 41)) - 20;
    const auto den = static_cast<std::int64_t>(uniform_below(rng, 8)) + 1;
    out += Rational(num, den) * b;
  }
  return out;
}

[[noreturn]] void cross_check_failure(const std::string& what) { throw Error(Errc::cross_check_failure, what); }

// norm(αx + u) = max(|α|, norm(u)) over vertices, pairwise midpoints and
// seeded random vectors of the complement.
void verify_max_formula(Gauge& gauge, const Vec& x, const std::vector<Vec>& midpoints,
                        const std::vector<Vec>& complement) {
  static const Rational kAlphas[] = {Rational(0), Rational(1, 3), Rational(-1), Rational(2), Rational(-5, 4),
                                     Rational(7, 2)};
  std::size_t k = 0;
  auto check = [&](const Vec& u) {
    const Rational& alpha = kAlphas[k++ % std::size(kAlphas)];
    const Rational lhs = gauge(Vec(alpha * x + u));
    const Rational rhs = std::max(abs(alpha), gauge(u));
    if (lhs != rhs) cross_check_failure("max formula fails for direction " + to_string(x) + " at u=" + to_string(u));
  };
  for (const auto& c : midpoints) {
    if (gauge(Vec(c + x)) != 1 || gauge(c) > 1) cross_check_failure("vertex " + to_string(Vec(c + x)));
  }
  for (std::size_t i = 0; i < midpoints.size(); ++i) {
    check(midpoints[i]);
    for (std::size_t j = i + 1; j < midpoints.size(); ++j) check((midpoints[i] + midpoints[j]) / Rational(2));
  }
  Rng rng(0x5eed);
  for (int s = 0; s < 100; ++s) check(random_combination(rng, complement, x.size()));
}

}  // namespace

std::vector<Vec> LinfDecomposition::linf_basis() const {
  std::vector<Vec> out;
  for (const auto& l : linf) out.push_back(l.direction);
  return out;
}

Mat LinfDecomposition::basis_matrix() const {
  std::vector<Vec> cols = linf_basis();
  cols.insert(cols.end(), u_basis.begin(), u_basis.end());
  return linalg::columns(cols, ambient_dim());
}

LinfDecomposition::Coordinates LinfDecomposition::split(const Vec& x) const {
  require_same_dim(ambient_dim(), x.size(), "decomposition argument");
  const auto coords = linalg::solve(basis_matrix(), x);
  if (!coords) cross_check_failure("decomposition basis is singular");
  return {coords->head(d_inf()), coords->tail(static_cast<Eigen::Index>(u_basis.size()))};
}

Vec LinfDecomposition::combine(const Vec& linf_coords, const Vec& u_coords) const {
  require_same_dim(d_inf(), linf_coords.size(), "ℓ∞ coordinates");
  require_same_dim(static_cast<Eigen::Index>(u_basis.size()), u_coords.size(), "U coordinates");
  Vec coords(ambient_dim());
  coords << linf_coords, u_coords;
  return basis_matrix() * coords;
}

Vec LatticeCoeffs::point() const {
  if (spanning_extremes.empty()) return {};
  Vec out = Vec::Zero(spanning_extremes.front().size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) out += Rational(coeffs[i]) * spanning_extremes[i];
  return out;
}

Vec canonical_direction(Gauge& gauge, const Vec& x) {
  if (x.isZero()) throw Error(Errc::invalid_argument, "zero direction");
  Vec out = x / gauge(x);
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) == 0) continue;
    if (out(i) < 0) out = -out;
    break;
  }
  return out;
}

std::vector<ExtremeLine> extreme_lines(const PolytopeBall& ball) {
  Gauge gauge(ball);
  const auto& vs = ball.vertices();
  std::vector<ExtremeLine> lines;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const Vec mid = (vs[i] + vs[j]) / Rational(2);
      // In dimension >= 2 a midpoint inside the ball rules out a common face. In
      // dimension 1 the whole ball [-v, v] is the extreme line.
      if (ball.dim() > 1 && gauge(mid) != 1) continue;
      if (!is_edge(ball.vertex_matrix(), i, j)) continue;
      lines.push_back({vs[i], vs[j], canonical_direction(gauge, Vec(vs[j] - vs[i]))});
    }
  }
  return lines;
}

std::vector<Vec> extreme_line_directions(const PolytopeBall& ball) {
  std::vector<Vec> dirs;
  for (auto& line : extreme_lines(ball)) dirs.push_back(std::move(line.direction));
  sort_unique(dirs);
  return dirs;
}

LinfCheck is_linf_direction(const PolytopeBall& ball, const Vec& x) {
  require_same_dim(ball.dim(), x.size(), "direction");
  Gauge gauge(ball);
  if (gauge(x) != 1) throw Error(Errc::not_unit_norm, to_string(x));

  const auto& vs = ball.vertices();
  const Vec two_x = Rational(2) * x;
  LinfDirection out;
  out.direction = x;
  std::vector<Vec> midpoints;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto down = ball.vertex_index(Vec(vs[i] - two_x));
    const auto up = ball.vertex_index(Vec(vs[i] + two_x));
    if (!down && !up) return LinfRejection{LinfRejectionReason::unpaired_vertex, vs[i]};
    if (down) {
      out.pairing.emplace_back(i, *down);
      midpoints.push_back(vs[i] - x);
    }
  }
  const Eigen::Index d = ball.dim();
  out.complement_basis = linalg::span_basis(midpoints, d);
  if (static_cast<Eigen::Index>(out.complement_basis.size()) != d - 1 ||
      linalg::in_span(out.complement_basis, x)) {
    return LinfRejection{LinfRejectionReason::midpoint_span_wrong, x};
  }
  verify_max_formula(gauge, x, midpoints, out.complement_basis);
  return out;
}

std::vector<LinfDirection> linf_directions(const PolytopeBall& ball) {
  std::vector<LinfDirection> out;
  for (const auto& dir : extreme_line_directions(ball)) {
    auto check = is_linf_direction(ball, dir);
    if (auto* accepted = std::get_if<LinfDirection>(&check)) out.push_back(std::move(*accepted));
  }
  return out;
}

std::vector<Vec> max_well_spanned_subspace(const PolytopeBall& ball) {
  std::vector<Vec> dirs = extreme_line_directions(ball);
  for (bool removed = true; removed;) {
    removed = false;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      std::vector<Vec> others;
      for (std::size_t j = 0; j < dirs.size(); ++j) {
        if (j != i) others.push_back(dirs[j]);
      }
      if (!linalg::in_span(others, dirs[i])) {  // coloop
        dirs.erase(dirs.begin() + static_cast<std::ptrdiff_t>(i));
        removed = true;
        break;
      }
    }
  }
  return linalg::span_basis(dirs, ball.dim());
}

LinfDecomposition linf_decomposition(const PolytopeBall& ball) {
  LinfDecomposition dec;
  dec.method = "linf-directions+well-spanned";
  dec.linf = linf_directions(ball);
  dec.u_basis = max_well_spanned_subspace(ball);

  const Eigen::Index d = ball.dim();
  std::vector<Vec> w = dec.linf_basis();
  if (linalg::rank(linalg::columns(w, d)) != dec.d_inf()) cross_check_failure("ℓ∞-directions are dependent");
  if (dec.ambient_dim() != d || linalg::rank(dec.basis_matrix()) != d) {
    cross_check_failure("span of ℓ∞-directions (dim " + std::to_string(dec.d_inf()) +
                        ") and maximal well-spanned subspace (dim " + std::to_string(dec.u_basis.size()) +
                        ") are not complementary");
  }

  Gauge gauge(ball);
  Rng rng(0xdec0);
  for (int s = 0; s < 100; ++s) {
    const Vec u = random_combination(rng, dec.u_basis, d);
    const Vec wv = random_combination(rng, w, d);
    if (gauge(Vec(u + wv)) != std::max(gauge(u), gauge(wv))) {
      cross_check_failure("max formula fails at u=" + to_string(u) + ", w=" + to_string(wv));
    }
  }
  return dec;
}

LatticeCoeffs lattice_cover(const PolytopeBall& ball, const Vec& v) {
  require_same_dim(ball.dim(), v.size(), "lattice_cover argument");
  LatticeCoeffs out;
  for (std::size_t i : linalg::independent_prefix(ball.vertices(), ball.dim())) {
    out.spanning_extremes.push_back(ball.vertices()[i]);
  }
  const auto a = linalg::solve(linalg::columns(out.spanning_extremes, ball.dim()), v);
  for (Eigen::Index i = 0; i < a->size(); ++i) out.coeffs.push_back(floor(Rational((*a)(i) + Rational(1, 2))));
  return out;
}

bool preserves_vertices(const PolytopeBall& ball, const Mat& m) {
  if (m.rows() != ball.dim() || m.cols() != ball.dim()) return false;
  if (linalg::rank(m) != ball.dim()) return false;
  for (const auto& v : ball.vertices()) {
    if (!ball.has_vertex(Vec(m * v))) return false;
  }
  return true;
}

namespace {

struct MatLess {
  bool operator()(const Mat& a, const Mat& b) const {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a(i) < b(i)) return true;
      if (b(i) < a(i)) return false;
    }
    return false;
  }
};

}  // namespace

std::vector<LinearIsometry> linear_isometry_group(const PolytopeBall& ball, std::size_t max_vertices) {
  const auto& vs = ball.vertices();
  if (vs.size() > max_vertices) {
    throw Error(Errc::too_many_vertices, std::to_string(vs.size()) + " > " + std::to_string(max_vertices));
  }
  const Eigen::Index d = ball.dim();
  const auto basis_idx = linalg::independent_prefix(vs, d);
  std::vector<Vec> basis;
  for (std::size_t i : basis_idx) basis.push_back(vs[i]);
  const Mat basis_inv = *linalg::inverse(linalg::columns(basis, d));

  // Pairwise distance table: an isometry must preserve norm(b_i ± b_j).
  Gauge gauge(ball);
  const std::size_t m = vs.size();
  std::vector<Rational> diff(m * m), sum(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      diff[i * m + j] = gauge(Vec(vs[i] - vs[j]));
      sum[i * m + j] = gauge(Vec(vs[i] + vs[j]));
    }
  }

  std::set<Mat, MatLess> found;
  std::vector<LinearIsometry> group;
  std::vector<std::size_t> image(basis_idx.size());
  auto search = [&](auto&& self, std::size_t depth) -> void {
    if (depth == basis_idx.size()) {
      std::vector<Vec> cols;
      for (std::size_t k : image) cols.push_back(vs[k]);
      Mat candidate = linalg::columns(cols, d) * basis_inv;
      if (preserves_vertices(ball, candidate) && found.insert(candidate).second) {
        group.push_back({std::move(candidate)});
      }
      return;
    }
    const std::size_t bi = basis_idx[depth];
    for (std::size_t c = 0; c < m; ++c) {
      bool ok = true;
      for (std::size_t prev = 0; prev < depth && ok; ++prev) {
        const std::size_t bp = basis_idx[prev];
        ok = image[prev] != c && diff[c * m + image[prev]] == diff[bi * m + bp] &&
             sum[c * m + image[prev]] == sum[bi * m + bp];
      }
      if (!ok) continue;
      image[depth] = c;
      self(self, depth + 1);
    }
  };
  search(search, 0);

  for (const auto& a : group) {
    if (!found.count(*linalg::inverse(a.matrix))) cross_check_failure("isometry group not closed under inverse");
    for (const auto& b : group) {
      if (!found.count(a.matrix * b.matrix)) cross_check_failure("isometry group not closed under composition");
    }
  }
  return group;
}

}  // namespace radolab
