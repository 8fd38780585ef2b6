#include "radolab/builtins.hpp"
#include "radolab/error.hpp"
#include "radolab/random_graphs.hpp"
#include "test_helpers.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>

using namespace radolab;
using radolab::testing::max_norm;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

GeomGraph square_graph(std::size_t n, std::uint64_t seed, const Rational& p, const Rational& window = q(3, 2)) {
  const auto ball = cube_ball(2);
  const auto sample = sample_typical_points(ball, linf_decomposition(ball), window, n, seed, {true, false});
  const auto g0 = unit_graph(sample);
  return p == 1 ? g0 : bernoulli_subgraph(g0, p, seed ^ 0xabcdef);
}

GeomGraph line_graph(std::vector<Rational> xs) {
  std::vector<Vec> pts;
  for (auto& x : xs) pts.push_back(make_vec({x}));
  return unit_graph(make_sample(cube_ball(1), pts));
}

}  // namespace

TEST_CASE("sampler basics", "[sample]") {
  const auto ball = cube_ball(2);
  const auto dec = linf_decomposition(ball);
  const auto one = sample_typical_points(ball, dec, q(1), 1, 3, {true, true});
  CHECK(one.size() == 1);
  CHECK(is_typical(one, dec));

  const auto a = sample_typical_points(ball, dec, q(3, 2), 50, 9, {true, false});
  const auto b = sample_typical_points(ball, dec, q(3, 2), 50, 9, {true, false});
  CHECK(a.points == b.points);
  CHECK(sample_typical_points(ball, dec, q(3, 2), 50, 10, {true, false}).points != a.points);

  CHECK_THROWS_AS(sample_typical_points(ball, dec, q(0), 5, 1, {}), Error);
  CHECK_THROWS_AS(sample_typical_points(ball, dec, q(1), 0, 1, {}), Error);
}

TEST_CASE("ℓ∞² sample has no integer coordinate differences", "[sample]") {
  const auto ball = cube_ball(2);
  const auto s = sample_typical_points(ball, linf_decomposition(ball), q(3, 2), 100, 77, {true, false});
  REQUIRE(s.size() == 100);
  std::size_t audited = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (Eigen::Index c = 0; c < 2; ++c) {
      CHECK(abs(s.points[i](c)) <= q(3, 2));
    }
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      for (Eigen::Index c = 0; c < 2; ++c) {
        const Rational diff = s.points[i](c) - s.points[j](c);
        CHECK(Rational(floor(diff)) != diff);
      }
      ++audited;
    }
  }
  CHECK(audited == 4950);
}

TEST_CASE("fibre typicality on the hexagonal prism", "[sample]") {
  const auto ball = hexagonal_prism_ball();
  const auto dec = linf_decomposition(ball);
  const auto s = sample_typical_points(ball, dec, q(2), 200, 5, {true, true});
  CHECK(is_typical(s, dec));
  // U is the plane z = 0 and e3 spans the ℓ∞ part, so U-components are (x, y).
  std::set<std::pair<Rational, Rational>> us;
  std::set<Rational> zfrac;
  for (const auto& p : s.points) {
    CHECK(us.emplace(p(0), p(1)).second);
    CHECK(zfrac.insert(frac(p(2))).second);
  }

  auto collided = make_sample(ball, {make_vec({q(0), q(0), q(1, 3)}), make_vec({q(0), q(0), q(1, 2)})}, q(1), 0,
                              {false, true});
  CHECK_FALSE(is_typical(collided, dec));
}

TEST_CASE("unit_graph examples", "[graph]") {
  const auto g = line_graph({q(0), q(1, 2), q(9, 8)});
  CHECK(g.edges() == std::vector<std::pair<std::uint32_t, std::uint32_t>>{{0, 1}, {1, 2}});
  CHECK(g.p == 1);

  CHECK(line_graph({q(1, 3), q(4, 3)}).edge_count() == 0);
  const auto sq = unit_graph(make_sample(square_ball(), {make_vec({q(0), q(0)}), make_vec({q(1), q(-1, 2)})}));
  CHECK(sq.edge_count() == 0);

  std::vector<Vec> tight;
  Rng rng(1);
  for (int i = 0; i < 12; ++i) tight.push_back(make_vec({q(i, 25), q(-i, 30)}));
  const auto complete = unit_graph(make_sample(cube_ball(2), tight));
  CHECK(complete.edge_count() == 12 * 11 / 2);
}

TEST_CASE("edge soundness: full audit against the sup norm", "[graph][property]") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto g0 = square_graph(150, seed, 1);
    const auto& pts = g0.sample.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        CHECK(g0.adjacent(i, j) == (max_norm(pts[i] - pts[j]) < 1));
      }
    }
    const auto gp = bernoulli_subgraph(g0, q(2, 3), seed);
    for (const auto& [i, j] : gp.edges()) {
      CHECK(g0.adjacent(i, j));
      CHECK(gp.adjacent(j, i));
    }
  }
}

TEST_CASE("integer and rational norm paths agree", "[graph]") {
  const auto ball = hexagon_ball();
  auto sample = sample_typical_points(ball, linf_decomposition(ball), q(2), 120, 31, {});
  REQUIRE(sample.integer_form);
  const auto fast = unit_graph(sample);
  sample.integer_form.reset();
  const auto slow = unit_graph(sample);
  CHECK(fast.adjacency == slow.adjacency);
  CHECK(fast.edge_count() > 0);
}

TEST_CASE("bernoulli_subgraph", "[graph]") {
  const auto g0 = square_graph(300, 4, 1);
  CHECK(bernoulli_subgraph(g0, 1, 8).adjacency == g0.adjacency);
  CHECK(bernoulli_subgraph(g0, 0, 8).edge_count() == 0);
  const auto e = static_cast<double>(g0.edge_count());
  REQUIRE(e >= 10000);
  const auto kept = static_cast<double>(bernoulli_subgraph(g0, q(1, 2), 8).edge_count());
  CHECK(std::abs(kept - e / 2) <= 4 * std::sqrt(e / 4));
  CHECK(bernoulli_subgraph(g0, q(1, 2), 8).adjacency == bernoulli_subgraph(g0, q(1, 2), 8).adjacency);
  CHECK(bernoulli_subgraph(g0, q(1, 2), 9).adjacency != bernoulli_subgraph(g0, q(1, 2), 8).adjacency);
  CHECK_THROWS_AS(bernoulli_subgraph(bernoulli_subgraph(g0, q(1, 2), 1), q(1, 2), 2), Error);
}

TEST_CASE("graph_distance", "[graph]") {
  const auto g = line_graph({q(0), q(3, 4), q(3, 2), q(9)});
  CHECK(graph_distance(g, 1, 1) == 0u);
  CHECK(graph_distance(g, 0, 1) == 1u);
  CHECK(graph_distance(g, 0, 2) == 2u);
  CHECK_FALSE(graph_distance(g, 0, 3));
  CHECK_THROWS_AS(graph_distance(g, 0, 4), Error);
}

TEST_CASE("bj_audit examples", "[bj]") {
  const auto pair = bj_audit(line_graph({q(0), q(3, 2)}), 2);
  REQUIRE(pair.rows.size() == 1);
  CHECK(pair.rows[0].pairs == 1);
  CHECK(pair.rows[0].satisfied == 0);
  CHECK(pair.one_sided_violations == 0);
  CHECK_THROWS_AS(bj_audit(line_graph({q(0)}), 1), Error);
}

TEST_CASE("bj_audit matches a brute-force oracle", "[bj]") {
  const auto g = square_graph(70, 12, q(1, 2), q(2));
  const int k_max = 5;
  const auto report = bj_audit(g, k_max);
  std::vector<std::uint64_t> satisfied(k_max + 1, 0);
  std::uint64_t connected = 0;
  const auto& pts = g.sample.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const auto d = graph_distance(g, i, j);
      const Rational norm = max_norm(pts[i] - pts[j]);
      if (d) {
        ++connected;
        CHECK(norm < Rational(static_cast<long>(*d)));
      }
      for (int k = 2; k <= k_max; ++k) {
        if ((norm < k) == (d && *d <= static_cast<std::size_t>(k))) ++satisfied[k];
      }
    }
  }
  CHECK(report.connected_pairs == connected);
  CHECK(report.one_sided_violations == 0);
  for (const auto& row : report.rows) {
    CHECK(row.pairs == 70 * 69 / 2);
    CHECK(row.satisfied == satisfied[static_cast<std::size_t>(row.k)]);
  }
}

TEST_CASE("one-sided implication holds on many graphs", "[bj][property]") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    for (const auto& ball : {cube_ball(2), hexagon_ball(), l1_plane_ball(), hexagonal_prism_ball()}) {
      const auto dec = linf_decomposition(ball);
      const auto s = sample_typical_points(ball, dec, q(2), 80, seed, {true, true});
      const auto g = bernoulli_subgraph(unit_graph(s), q(1, 3 + seed % 3), seed);
      CHECK(bj_audit(g, 3).one_sided_violations == 0);
    }
  }
}

TEST_CASE("biconditional fraction rises with density", "[bj][property]") {
  const std::vector<std::size_t> levels = {30, 60, 120, 240, 480};
  std::vector<double> mean(levels.size(), 0);
  for (std::size_t l = 0; l < levels.size(); ++l) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      mean[l] += bj_audit(square_graph(levels[l], 100 + seed, q(1, 2)), 4).overall_fraction() / 10;
    }
  }
  INFO("lowest " << mean.front() << " highest " << mean.back());
  CHECK(mean.back() > mean.front());
}

TEST_CASE("edge_agreement_probability", "[agreement]") {
  CHECK(edge_agreement_probability(1, 1000, 3).fraction() == 1.0);
  CHECK(edge_agreement_probability(0, 1000, 3).fraction() == 1.0);
  CHECK(std::abs(edge_agreement_probability(q(1, 2), 10000, 3).fraction() - 0.5) <= 0.02);
  CHECK(std::abs(edge_agreement_probability(q(3, 10), 10000, 3).fraction() - 0.58) <= 0.02);
  CHECK(edge_agreement_probability(q(3, 10), 500, 8).agreements == edge_agreement_probability(q(3, 10), 500, 8).agreements);
  CHECK_THROWS_AS(edge_agreement_probability(q(3, 2), 10, 1), Error);
}
