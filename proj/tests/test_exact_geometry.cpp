#include "radolab/ball.hpp"
#include "radolab/builtins.hpp"
#include "radolab/error.hpp"
#include "radolab/simplex.hpp"
#include "test_helpers.hpp"

#include <catch_amalgamated.hpp>

using namespace radolab;
using radolab::testing::l1_norm;
using radolab::testing::max_norm;
using radolab::testing::small_vec;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected radolab::Error");
  return Errc::parse_error;
}

}  // namespace

TEST_CASE("rational parsing is exact and rejects floats") {
  CHECK(parse_rational("3/10") == q(3, 10));
  CHECK(parse_rational("-7") == q(-7));
  CHECK(parse_rational("6/4") == q(3, 2));
  CHECK(error_code([] { parse_rational("0.3"); }) == Errc::bad_rational);
  CHECK(error_code([] { parse_rational("1e3"); }) == Errc::bad_rational);
  CHECK(error_code([] { parse_rational("1/0"); }) == Errc::bad_rational);
  CHECK(error_code([] { parse_rational(""); }) == Errc::bad_rational);
  CHECK(to_string(q(-3, 4)) == "-3/4");
}

TEST_CASE("floor and frac") {
  CHECK(floor(q(7, 2)) == 3);
  CHECK(floor(q(-1, 4)) == -1);
  CHECK(floor(q(-2)) == -2);
  CHECK(frac(q(-1, 4)) == q(3, 4));
  CHECK(frac(q(5)) == 0);
}

TEST_CASE("simplex: textbook optimum with certificate") {
  LpProblem<Rational> lp(2);
  lp.objective << 1, 1;
  lp.add(make_vec({1, 2}), Sense::le, 4);
  lp.add(make_vec({3, 1}), Sense::le, 6);
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.value == q(14, 5));
  CHECK(r.point == make_vec({q(8, 5), q(6, 5)}));
  CHECK(satisfies(lp, r.point));
}

TEST_CASE("simplex: Beale's cycling example terminates under Bland's rule") {
  LpProblem<Rational> lp(4);
  lp.objective << q(3, 4), -20, q(1, 2), -6;
  lp.add(make_vec({q(1, 4), -8, -1, 9}), Sense::le, 0);
  lp.add(make_vec({q(1, 2), -12, q(-1, 2), 3}), Sense::le, 0);
  lp.add(make_vec({0, 0, 1, 0}), Sense::le, 1);
  const auto r = solve_lp(lp);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.value == q(5, 4));
  CHECK(satisfies(lp, r.point));
}

TEST_CASE("simplex: infeasible, unbounded, free variables, equalities") {
  SECTION("infeasible") {
    LpProblem<Rational> lp(1);
    lp.add(make_vec({1}), Sense::ge, 2);
    lp.add(make_vec({1}), Sense::le, 1);
    CHECK(solve_lp(lp).status == LpStatus::infeasible);
  }
  SECTION("unbounded") {
    LpProblem<Rational> lp(2);
    lp.objective << 1, 0;
    lp.add(make_vec({1, -1}), Sense::le, 1);
    CHECK(solve_lp(lp).status == LpStatus::unbounded);
  }
  SECTION("free variable reaches a negative optimum") {
    LpProblem<Rational> lp(1);
    lp.free_variable[0] = true;
    lp.objective << -1;
    lp.add(make_vec({1}), Sense::ge, q(-5, 3));
    const auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.point(0) == q(-5, 3));
  }
  SECTION("redundant equalities") {
    LpProblem<Rational> lp(2);
    lp.objective << 1, 2;
    lp.add(make_vec({1, 1}), Sense::eq, 1);
    lp.add(make_vec({2, 2}), Sense::eq, 2);
    lp.add(make_vec({-1, 0}), Sense::le, q(-1, 3));
    const auto r = solve_lp(lp);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.value == q(5, 3));
    CHECK(satisfies(lp, r.point));
  }
}

TEST_CASE("validate_ball") {
  SECTION("square keeps its four vertices") {
    std::vector<Vec> pts;
    for (int a : {1, -1}) for (int b : {1, -1}) pts.push_back(make_vec({a, b}));
    CHECK(validate_ball(pts).vertex_count() == 4);
  }
  SECTION("diamond drops edge midpoints") {
    std::vector<Vec> pts = {make_vec({1, 0}), make_vec({-1, 0}), make_vec({0, 1}), make_vec({0, -1}),
                            make_vec({q(1, 2), q(1, 2)}), make_vec({q(-1, 2), q(-1, 2)})};
    const auto ball = validate_ball(pts);
    CHECK(ball.vertex_count() == 4);
    CHECK_FALSE(ball.has_vertex(make_vec({q(1, 2), q(1, 2)})));
  }
  SECTION("errors") {
    CHECK(error_code([] { validate_ball({make_vec({1, 0}), make_vec({0, 1})}); }) == Errc::not_symmetric);
    CHECK(error_code([] { validate_ball({make_vec({1, 1}), make_vec({-1, -1})}); }) == Errc::degenerate_span);
    CHECK(error_code([] {
            validate_ball({make_vec({1, 0}), make_vec({-1, 0}), make_vec({1, 0}), make_vec({0, 1}),
                           make_vec({0, -1})});
          }) == Errc::duplicate_point);
    CHECK(error_code([] { validate_ball({make_vec({1, 0}), make_vec({-1})}); }) == Errc::dimension_mismatch);
    CHECK(error_code([] { validate_ball({}); }) == Errc::degenerate_span);
  }
  SECTION("vertices are stored in descending lexicographic order") {
    const auto square = square_ball();
    const auto& v = square.vertices();
    CHECK(v.front() == make_vec({1, 1}));
    CHECK(v.back() == make_vec({-1, -1}));
  }
}

TEST_CASE("norm examples") {
  CHECK(norm(square_ball(), make_vec({q(1, 2), q(-3, 4)})) == q(3, 4));
  CHECK(norm(l1_plane_ball(), make_vec({q(1, 2), q(1, 2)})) == 1);
  CHECK(norm(hexagon_ball(), Vec::Zero(2)) == 0);
  CHECK(norm(cube_ball(3), Vec::Zero(3)) == 0);
  CHECK(error_code([] { norm(square_ball(), make_vec({1, 2, 3})); }) == Errc::dimension_mismatch);
}

TEST_CASE("norm agrees with closed forms on random vectors") {
  Rng rng(11);
  const auto square = square_ball();
  const auto cube = cube_ball(3);
  const auto diamond = l1_plane_ball();
  const auto octahedron = cross_polytope_ball(3);
  for (int i = 0; i < 60; ++i) {
    const Vec x2 = small_vec(rng, 2);
    const Vec x3 = small_vec(rng, 3);
    CHECK(norm(square, x2) == max_norm(x2));
    CHECK(norm(diamond, x2) == l1_norm(x2));
    CHECK(norm(cube, x3) == max_norm(x3));
    CHECK(norm(octahedron, x3) == l1_norm(x3));
  }
}

TEST_CASE("norm axioms hold exactly") {
  Rng rng(5);
  std::vector<PolytopeBall> balls = {hexagon_ball(), hexagonal_prism_ball(), cross_polytope_ball(3)};
  for (std::uint64_t s = 0; s < 3; ++s) balls.push_back(random_symmetric_ball(3, 100 + s));
  for (const auto& ball : balls) {
    for (const auto& v : ball.vertices()) CHECK(norm(ball, v) == 1);
    for (int i = 0; i < 15; ++i) {
      const Vec x = small_vec(rng, ball.dim());
      const Vec y = small_vec(rng, ball.dim());
      const Rational s = radolab::testing::small_rational(rng);
      const Rational nx = norm(ball, x);
      CHECK(norm(ball, Vec(s * x)) == abs(s) * nx);
      CHECK(norm(ball, Vec(x + y)) <= nx + norm(ball, y));
      CHECK(norm(ball, Vec(-x)) == nx);
      CHECK((nx == 0) == x.isZero());
    }
  }
}

TEST_CASE("extreme point predicates") {
  const auto square = square_ball();
  const auto diamond = l1_plane_ball();
  CHECK(is_extreme_point(square, make_vec({1, 1})));
  CHECK_FALSE(is_extreme_point(square, make_vec({1, 0})));
  CHECK(is_extreme_point(diamond, make_vec({1, 0})));

  CHECK(is_extreme_via_balls(square, make_vec({1, 1})));
  CHECK_FALSE(is_extreme_via_balls(square, make_vec({1, 0})));
  CHECK(is_extreme_via_balls(diamond, make_vec({1, 0})));
  CHECK(error_code([&] { is_extreme_via_balls(diamond, make_vec({q(1, 2), q(1, 4)})); }) == Errc::not_on_sphere);
  CHECK(error_code([&] { is_extreme_point(square, make_vec({q(1, 2), 0})); }) == Errc::not_on_sphere);
}

TEST_CASE("ball intersection for square at (1,0) has more than one point (oracle)") {
  // (1,0) and (1,1/2) lie in both B(0,1) and B((2,0),1) for the max norm.
  const Vec center = make_vec({2, 0});
  for (const Vec& y : {make_vec({1, 0}), make_vec({1, q(1, 2)})}) {
    CHECK(max_norm(y) <= 1);
    CHECK(max_norm(Vec(y - center)) <= 1);
  }
}

TEST_CASE("extreme predicates agree on every vertex and on sphere points") {
  std::vector<PolytopeBall> balls = {square_ball(), hexagon_ball(), cross_polytope_ball(3),
                                     hexagonal_prism_ball()};
  for (std::uint64_t s = 0; s < 4; ++s) balls.push_back(random_symmetric_ball(2 + static_cast<int>(s % 2), 7 + s));
  for (const auto& ball : balls) {
    for (const auto& v : ball.vertices()) {
      CHECK(is_extreme_point(ball, v));
      CHECK(is_extreme_via_balls(ball, v));
    }
    // Edge midpoints of adjacent vertices are on the sphere but never extreme.
    const auto& vs = ball.vertices();
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
      const Vec mid = (vs[i] + vs[i + 1]) / Rational(2);
      if (norm(ball, mid) != 1) continue;
      CHECK(is_extreme_point(ball, mid) == is_extreme_via_balls(ball, mid));
      CHECK_FALSE(is_extreme_point(ball, mid));
    }
  }
}

TEST_CASE("closed_ball_membership") {
  const auto square = square_ball();
  const Vec zero = Vec::Zero(2);
  CHECK(closed_ball_membership(square, zero, 1, make_vec({1, 1})));
  CHECK_FALSE(closed_ball_membership(square, zero, 1, make_vec({1, q(1001, 1000)})));
  const Vec x = make_vec({q(3, 7), -5});
  CHECK(closed_ball_membership(square, x, 0, x));
  CHECK(error_code([&] { closed_ball_membership(square, zero, -1, x); }) == Errc::invalid_argument);
  CHECK(error_code([&] { closed_ball_membership(square, zero, 1, make_vec({1})); }) == Errc::dimension_mismatch);
}

TEST_CASE("gauge cache returns exactly the LP norm") {
  Rng rng(3);
  std::vector<PolytopeBall> balls = {square_ball(), hexagon_ball(), hexagonal_prism_ball(),
                                     cross_polytope_ball(4), random_symmetric_ball(3, 1)};
  for (const auto& ball : balls) {
    Gauge gauge(ball);
    for (int i = 0; i < 80; ++i) {
      const Vec x = small_vec(rng, ball.dim());
      CHECK(gauge(x) == norm(ball, x));
    }
    CHECK(gauge.cached_cones() > 0);
  }
}

TEST_CASE("gauge integer floor path matches exact floors") {
  Rng rng(9);
  for (const auto& ball : {square_ball(), hexagon_ball(), cube_ball(3), hexagonal_prism_ball()}) {
    Gauge gauge(ball);
    const std::int64_t den = std::int64_t{1} << 40;
    for (int i = 0; i < 300; ++i) {
      std::vector<std::int64_t> z(static_cast<std::size_t>(ball.dim()));
      Vec x(ball.dim());
      for (std::size_t k = 0; k < z.size(); ++k) {
        z[k] = static_cast<std::int64_t>(uniform_below(rng, std::uint64_t{1} << 44)) - (std::int64_t{1} << 43);
        x(static_cast<Eigen::Index>(k)) = Rational(z[k], den);
      }
      CHECK(gauge.floor_norm(z, den) == floor(norm(ball, x)));
    }
  }
}
