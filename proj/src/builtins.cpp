#include "radolab/builtins.hpp"

#include "radolab/error.hpp"
#include "radolab/linalg.hpp"
#include "radolab/rng.hpp"

#include <charconv>

namespace radolab {

namespace {

void require_dim(int dim, int max_dim) {
  if (dim < 1 || dim > max_dim) {
    throw Error(Errc::invalid_argument, "dimension " + std::to_string(dim) + " out of range");
  }
}

}  // namespace

PolytopeBall cube_ball(int dim) {
  require_dim(dim, 10);
  std::vector<Vec> points;
  for (unsigned mask = 0; mask < (1u << dim); ++mask) {
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = (mask >> i) & 1u ? 1 : -1;
    points.push_back(v);
  }
  return validate_ball(std::move(points));
}

PolytopeBall cross_polytope_ball(int dim) {
  require_dim(dim, 10);
  std::vector<Vec> points;
  for (int i = 0; i < dim; ++i) {
    for (int s : {1, -1}) {
      Vec v = Vec::Zero(dim);
      v(i) = s;
      points.push_back(v);
    }
  }
  return validate_ball(std::move(points));
}

PolytopeBall square_ball() { return cube_ball(2); }

PolytopeBall l1_plane_ball() { return cross_polytope_ball(2); }

PolytopeBall hexagon_ball() {
  std::vector<Vec> points;
  for (int s : {1, -1}) {
    points.push_back(make_vec({s, 0}));
    points.push_back(make_vec({0, s}));
    points.push_back(make_vec({s, s}));
  }
  return validate_ball(std::move(points));
}

PolytopeBall hexagonal_prism_ball() { return linf_sum(hexagon_ball(), cube_ball(1)); }

PolytopeBall linf_sum(const PolytopeBall& a, const PolytopeBall& b) {
  std::vector<Vec> points;
  for (const auto& va : a.vertices()) {
    for (const auto& vb : b.vertices()) {
      Vec v(a.dim() + b.dim());
      v << va, vb;
      points.push_back(std::move(v));
    }
  }
  return validate_ball(std::move(points));
}

PolytopeBall builtin_ball(std::string_view name) {
  if (name == "square") return square_ball();
  if (name == "hexagon") return hexagon_ball();
  if (name == "hexagonal_prism") return hexagonal_prism_ball();
  if (name == "l1_plane") return l1_plane_ball();
  auto suffix_dim = [&](std::string_view prefix) -> int {
    if (name.substr(0, prefix.size()) != prefix) return 0;
    const auto rest = name.substr(prefix.size());
    int d = 0;
    auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), d);
    if (ec != std::errc{} || ptr != rest.data() + rest.size() || d < 1 || d > 4) return 0;
    return d;
  };
  if (int d = suffix_dim("cube_")) return cube_ball(d);
  if (int d = suffix_dim("cross_polytope_")) return cross_polytope_ball(d);
  throw Error(Errc::unknown_builtin, std::string(name));
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> names = {"square", "hexagon", "hexagonal_prism", "l1_plane"};
  for (int d = 1; d <= 4; ++d) {
    names.push_back("cube_" + std::to_string(d));
    names.push_back("cross_polytope_" + std::to_string(d));
  }
  return names;
}

namespace {

std::int64_t draw(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

// Symmetrized cloud of small integer points; retried until it spans.
PolytopeBall random_cloud(int dim, Rng& rng) {
  for (;;) {
    const int count = dim + static_cast<int>(draw(rng, 0, 4));
    std::vector<Vec> points;
    for (int k = 0; k < count; ++k) {
      Vec v(dim);
      for (int i = 0; i < dim; ++i) v(i) = draw(rng, -3, 3);
      if (v.isZero()) continue;
      bool fresh = true;
      for (const auto& p : points) fresh = fresh && p != v && p != Vec(-v);
      if (!fresh) continue;
      points.push_back(v);
      points.push_back(-v);
    }
    if (points.empty() || linalg::rank(linalg::columns(points, dim)) != dim) continue;
    return validate_ball(std::move(points));
  }
}

}  // namespace

PolytopeBall random_symmetric_ball(int dim, std::uint64_t seed) {
  require_dim(dim, 6);
  Rng rng(seed);
  const auto kind = draw(rng, 0, 2);
  PolytopeBall ball = random_cloud(dim, rng);
  if (kind >= 1 && dim >= 2) {
    const int cube_dim = static_cast<int>(draw(rng, 1, dim - 1));
    ball = linf_sum(random_cloud(dim - cube_dim, rng), cube_ball(cube_dim));
  }
  if (kind == 2) {
    Mat map(dim, dim);
    do {
      for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) map(i, j) = draw(rng, -2, 2);
      }
    } while (linalg::rank(map) != dim);
    std::vector<Vec> image;
    for (const auto& v : ball.vertices()) image.push_back(map * v);
    ball = validate_ball(std::move(image));
  }
  return ball;
}

}  // namespace radolab
