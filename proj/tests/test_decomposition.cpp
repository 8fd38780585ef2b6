#include "radolab/builtins.hpp"
#include "radolab/decomposition.hpp"
#include "radolab/error.hpp"
#include "radolab/linalg.hpp"
#include "test_helpers.hpp"

#include <catch_amalgamated.hpp>

#include <set>

using namespace radolab;
using radolab::testing::small_vec;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

std::set<Vec, LexLess> as_set(const std::vector<Vec>& vs) { return {vs.begin(), vs.end()}; }

std::vector<Vec> directions_of(const std::vector<LinfDirection>& ls) {
  std::vector<Vec> out;
  for (const auto& l : ls) out.push_back(l.direction);
  return out;
}

// 3×3 determinant, used as an independent rank oracle below.
Rational det3(const Vec& a, const Vec& b, const Vec& c) {
  return a(0) * (b(1) * c(2) - b(2) * c(1)) - a(1) * (b(0) * c(2) - b(2) * c(0)) +
         a(2) * (b(0) * c(1) - b(1) * c(0));
}

bool parallel3(const Vec& a, const Vec& b) {
  return a(0) * b(1) == a(1) * b(0) && a(0) * b(2) == a(2) * b(0) && a(1) * b(2) == a(2) * b(1);
}

}  // namespace

TEST_CASE("extreme lines of the square and cube") {
  CHECK(extreme_lines(square_ball()).size() == 4);
  CHECK(as_set(extreme_line_directions(square_ball())) == as_set({make_vec({0, 1}), make_vec({1, 0})}));
  CHECK(extreme_lines(cube_ball(3)).size() == 12);
  CHECK(extreme_line_directions(cube_ball(3)).size() == 3);
}

TEST_CASE("extreme lines of the octahedron match a facet-count oracle") {
  // Oracle: the octahedron's facets are {x : s·x = 1} for the 8 sign vectors s.
  // In 3D a vertex pair spans an edge iff the two vertices share at least two facets.
  const auto octa = cross_polytope_ball(3);
  const auto& vs = octa.vertices();
  std::set<std::pair<std::size_t, std::size_t>> oracle;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      int shared = 0;
      for (int mask = 0; mask < 8; ++mask) {
        Vec s(3);
        for (int k = 0; k < 3; ++k) s(k) = (mask >> k) & 1 ? 1 : -1;
        if (s.dot(vs[i]) == 1 && s.dot(vs[j]) == 1) ++shared;
      }
      if (shared >= 2) oracle.emplace(i, j);
    }
  }
  REQUIRE(oracle.size() == 12);
  const auto lines = extreme_lines(octa);
  std::set<std::pair<std::size_t, std::size_t>> computed;
  for (const auto& l : lines) computed.emplace(*octa.vertex_index(l.first), *octa.vertex_index(l.second));
  CHECK(computed == oracle);

  const auto dirs = extreme_line_directions(octa);
  CHECK(dirs.size() == 6);
  CHECK(as_set(dirs).count(make_vec({q(1, 2), q(-1, 2), 0})) == 1);
  for (const auto& d : dirs) CHECK(norm(octa, d) == 1);
}

TEST_CASE("is_linf_direction examples") {
  SECTION("square, e1") {
    const auto square = square_ball();
    auto check = is_linf_direction(square, make_vec({1, 0}));
    REQUIRE(std::holds_alternative<LinfDirection>(check));
    const auto& dir = std::get<LinfDirection>(check);
    std::set<std::pair<Vec, Vec>, bool (*)(const std::pair<Vec, Vec>&, const std::pair<Vec, Vec>&)> pairs(
        [](const std::pair<Vec, Vec>& a, const std::pair<Vec, Vec>& b) {
          return lex_compare(a.first, b.first) < 0 ||
                 (a.first == b.first && lex_compare(a.second, b.second) < 0);
        });
    for (auto [i, j] : dir.pairing) pairs.emplace(square.vertices()[i], square.vertices()[j]);
    CHECK(pairs.size() == 2);
    CHECK(pairs.count({make_vec({1, 1}), make_vec({-1, 1})}) == 1);
    CHECK(pairs.count({make_vec({1, -1}), make_vec({-1, -1})}) == 1);
    REQUIRE(dir.complement_basis.size() == 1);
    CHECK(dir.complement_basis[0](0) == 0);
  }
  SECTION("diamond, (1/2,1/2), with a brute-force pairing oracle") {
    const Vec x = make_vec({q(1, 2), q(1, 2)});
    const std::vector<Vec> verts = {make_vec({1, 0}), make_vec({-1, 0}), make_vec({0, 1}), make_vec({0, -1})};
    for (const auto& v : verts) {
      int partners = 0;
      for (const auto& w : verts) partners += (w == Vec(v - 2 * x)) || (w == Vec(v + 2 * x));
      CHECK(partners == 1);
    }
    auto check = is_linf_direction(l1_plane_ball(), x);
    REQUIRE(std::holds_alternative<LinfDirection>(check));
    const auto& basis = std::get<LinfDirection>(check).complement_basis;
    REQUIRE(basis.size() == 1);
    CHECK(basis[0](0) == -basis[0](1));
  }
  SECTION("octahedron, e1: e2 is unpaired") {
    auto check = is_linf_direction(cross_polytope_ball(3), make_vec({1, 0, 0}));
    REQUIRE(std::holds_alternative<LinfRejection>(check));
    CHECK(std::get<LinfRejection>(check).reason == LinfRejectionReason::unpaired_vertex);
    CHECK(std::get<LinfRejection>(check).witness == make_vec({0, 1, 0}));
  }
  SECTION("not unit norm") {
    CHECK_THROWS_AS(is_linf_direction(square_ball(), make_vec({2, 0})), Error);
  }
}

TEST_CASE("linf_directions") {
  CHECK(as_set(directions_of(linf_directions(square_ball()))) == as_set({make_vec({1, 0}), make_vec({0, 1})}));
  CHECK(linf_directions(cross_polytope_ball(3)).empty());
  const auto prism = linf_directions(hexagonal_prism_ball());
  REQUIRE(prism.size() == 1);
  CHECK(prism[0].direction == make_vec({0, 0, 1}));
}

TEST_CASE("max_well_spanned_subspace") {
  CHECK(max_well_spanned_subspace(square_ball()).empty());
  CHECK(max_well_spanned_subspace(cross_polytope_ball(3)).size() == 3);
  CHECK(max_well_spanned_subspace(hexagon_ball()).size() == 2);
}

TEST_CASE("octahedron directions: every direction lies in a circuit (brute-force oracle)") {
  // A direction is a non-coloop iff it is parallel to another direction or lies in
  // a dependent triple; determinants decide this without the library's rank code.
  const auto dirs = extreme_line_directions(cross_polytope_ball(3));
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    bool in_circuit = false;
    for (std::size_t j = 0; j < dirs.size() && !in_circuit; ++j) {
      if (j == i) continue;
      if (parallel3(dirs[i], dirs[j])) in_circuit = true;
      for (std::size_t k = j + 1; k < dirs.size() && !in_circuit; ++k) {
        if (k == i || parallel3(dirs[j], dirs[k]) || parallel3(dirs[i], dirs[k])) continue;
        in_circuit = det3(dirs[i], dirs[j], dirs[k]) == 0;
      }
    }
    CHECK(in_circuit);
  }
}

TEST_CASE("linf_decomposition on canonical balls") {
  struct Case {
    const char* name;
    Eigen::Index d_inf;
  };
  for (const Case c : {Case{"cube_1", 1}, Case{"cube_2", 2}, Case{"cube_3", 3}, Case{"cube_4", 4},
                       Case{"cross_polytope_3", 0}, Case{"l1_plane", 2}, Case{"hexagon", 0},
                       Case{"hexagonal_prism", 1}}) {
    INFO(c.name);
    const auto ball = builtin_ball(c.name);
    const auto dec = linf_decomposition(ball);
    CHECK(dec.d_inf() == c.d_inf);
    CHECK(static_cast<Eigen::Index>(dec.u_basis.size()) == ball.dim() - c.d_inf);
  }
  const auto prism = linf_decomposition(hexagonal_prism_ball());
  for (const auto& u : prism.u_basis) CHECK(u(2) == 0);
}

TEST_CASE("decomposition invariants on random polytopes") {
  Rng rng(17);
  for (std::uint64_t s = 0; s < 9; ++s) {
    const int dim = 2 + static_cast<int>(s % 3);
    const auto ball = random_symmetric_ball(dim, 1000 + s);
    INFO("seed " << 1000 + s);
    const auto dec = linf_decomposition(ball);
    const auto ext_dirs = as_set(extreme_line_directions(ball));
    for (const auto& l : dec.linf) CHECK(ext_dirs.count(l.direction) == 1);
    for (const auto& line : extreme_lines(ball)) {
      for (const auto& l : dec.linf) {
        if (line.direction == l.direction) {
          const Vec diff = line.second - line.first;
          CHECK((diff == Vec(2 * l.direction) || diff == Vec(-2 * l.direction)));
        }
      }
    }
    // Decomposition coordinates round-trip.
    for (int k = 0; k < 5; ++k) {
      const Vec x = small_vec(rng, dim);
      const auto parts = dec.split(x);
      CHECK(dec.combine(parts.linf, parts.u) == x);
    }
  }
}

TEST_CASE("lattice_cover") {
  SECTION("zero") {
    const auto cover = lattice_cover(hexagon_ball(), Vec::Zero(2));
    for (const auto& c : cover.coeffs) CHECK(c == 0);
    CHECK(cover.point().isZero());
  }
  SECTION("square, hand-computed rounding") {
    const auto square = square_ball();
    const auto cover = lattice_cover(square, make_vec({q(1, 4), q(3, 4)}));
    REQUIRE(cover.spanning_extremes.size() == 2);
    CHECK(cover.spanning_extremes[0] == make_vec({1, 1}));
    CHECK(cover.spanning_extremes[1] == make_vec({1, -1}));
    CHECK(cover.coeffs == std::vector<Integer>{1, 0});
    CHECK(cover.point() == make_vec({1, 1}));
    CHECK(norm(square, Vec(make_vec({q(1, 4), q(3, 4)}) - cover.point())) == q(3, 4));
  }
  SECTION("l1 plane attains the d/2 bound") {
    const auto diamond = l1_plane_ball();
    const Vec v = make_vec({q(1, 2), q(1, 2)});
    CHECK(norm(diamond, Vec(v - lattice_cover(diamond, v).point())) == 1);
  }
  SECTION("bound holds on random points") {
    Rng rng(23);
    for (const auto& name : builtin_names()) {
      const auto ball = builtin_ball(name);
      Gauge gauge(ball);
      for (int i = 0; i < 40; ++i) {
        const Vec v = small_vec(rng, ball.dim(), 200, 17);
        CHECK(gauge(Vec(v - lattice_cover(ball, v).point())) <= Rational(ball.dim(), 2));
      }
    }
  }
}

TEST_CASE("linear isometry groups") {
  CHECK(linear_isometry_group(square_ball()).size() == 8);
  CHECK(linear_isometry_group(cube_ball(3)).size() == 48);

  // Oracle for the hexagon: vertex-permuting maps send e1, e2 to vertices, so all
  // such maps are among the 3^4 integer matrices with entries in {-1,0,1}.
  const auto hex = hexagon_ball();
  std::size_t oracle = 0;
  for (int code = 0; code < 81; ++code) {
    Mat m(2, 2);
    int c = code;
    for (Eigen::Index k = 0; k < 4; ++k, c /= 3) m(k) = c % 3 - 1;
    if (m.determinant() == 0) continue;
    bool ok = true;
    for (const auto& v : hex.vertices()) ok = ok && hex.has_vertex(Vec(m * v));
    oracle += ok;
  }
  const auto group = linear_isometry_group(hex);
  CHECK(group.size() == oracle);
  bool has_identity = false, has_negation = false;
  for (const auto& g : group) {
    has_identity = has_identity || g.matrix == Mat::Identity(2, 2);
    has_negation = has_negation || g.matrix == Mat(-Mat::Identity(2, 2));
  }
  CHECK(has_identity);
  CHECK(has_negation);

  CHECK_THROWS_AS(linear_isometry_group(cube_ball(3), 4), Error);
}

TEST_CASE("isometries permute ℓ∞-directions up to sign") {
  for (const auto& ball : {square_ball(), cube_ball(3), hexagonal_prism_ball(), l1_plane_ball()}) {
    const auto dirs = as_set(directions_of(linf_directions(ball)));
    for (const auto& g : linear_isometry_group(ball)) {
      for (const auto& x : dirs) {
        const Vec image = g.matrix * x;
        CHECK((dirs.count(image) == 1 || dirs.count(Vec(-image)) == 1));
      }
    }
  }
}
