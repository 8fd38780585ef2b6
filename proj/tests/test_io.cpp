#include "radolab/builtins.hpp"
#include "radolab/error.hpp"
#include "radolab/io.hpp"
#include "test_helpers.hpp"

#include <catch_amalgamated.hpp>

#include <cstdio>

using namespace radolab;
using radolab::testing::small_vec;

namespace {

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

TEST_CASE("rationals travel as strings; floats are refused") {
  CHECK(io::rational_from_json(io::Json("-7/3")) == Rational(-7, 3));
  CHECK(io::rational_from_json(io::Json(5)) == Rational(5));
  CHECK(io::to_json(Rational(6, 4)) == io::Json("3/2"));
  CHECK(error_code([] { io::rational_from_json(io::Json(0.3)); }) == Errc::bad_rational);
  CHECK(error_code([] { io::rational_from_json(io::Json("0.3")); }) == Errc::bad_rational);
  CHECK(error_code([] { io::rational_from_json(io::Json(true)); }) == Errc::bad_rational);
}

TEST_CASE("every builtin ball round-trips through JSON") {
  for (const auto& name : builtin_names()) {
    const auto ball = builtin_ball(name);
    const auto text = io::ball_to_json(ball).dump();
    CHECK(io::ball_from_json(io::Json::parse(text)) == ball);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const auto ball = random_symmetric_ball(3, derive_seed(11, trial));
    CHECK(io::ball_from_json(io::Json::parse(io::ball_to_json(ball).dump())) == ball);
  }
}

TEST_CASE("ball parsing rejects malformed input") {
  CHECK(error_code([] { io::ball_from_json(io::Json::parse(R"({"vertices":[["1"],["-1"]]})")); }) ==
        Errc::parse_error);
  CHECK(error_code([] { io::ball_from_json(io::Json::parse(R"({"dim":2,"vertices":[["1"],["-1"]]})")); }) ==
        Errc::dimension_mismatch);
  CHECK(error_code([] { io::ball_from_json(io::Json::parse(R"({"dim":1,"vertices":[["1"],["-2"]]})")); }) ==
        Errc::not_symmetric);
}

TEST_CASE("point maps round-trip exactly") {
  Rng rng(5);
  PointMap pairs;
  for (int i = 0; i < 30; ++i) pairs.emplace_back(small_vec(rng, 3, 1000, 997), small_vec(rng, 3, 1000, 997));
  const auto back = io::map_from_json(io::Json::parse(io::map_to_json(pairs).dump()));
  REQUIRE(back.size() == pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(back[i].first == pairs[i].first);
    CHECK(back[i].second == pairs[i].second);
  }
}

TEST_CASE("graphs round-trip with identical points and edges") {
  const auto ball = builtin_ball("hexagon");
  const auto sample = sample_typical_points(ball, linf_decomposition(ball), Rational(4), 150, 9, {true, true});
  const auto g = bernoulli_subgraph(unit_graph(sample), Rational(1, 2), 10);
  const auto text = io::graph_to_json(g).dump();
  const auto back = io::graph_from_json(io::Json::parse(text));
  CHECK(back.sample.ball == g.sample.ball);
  CHECK(back.sample.points == g.sample.points);
  CHECK(back.sample.window == g.sample.window);
  CHECK(back.sample.seed == g.sample.seed);
  CHECK(back.sample.typicality == g.sample.typicality);
  CHECK(back.p == g.p);
  CHECK(back.rng_seed == g.rng_seed);
  CHECK(back.adjacency == g.adjacency);
  CHECK(io::graph_to_json(back).dump() == text);
}

TEST_CASE("graph parsing rejects bad edges") {
  const auto ball = builtin_ball("square");
  const auto sample = sample_typical_points(ball, linf_decomposition(ball), Rational(2), 10, 1, {true, true});
  auto j = io::graph_to_json(unit_graph(sample));
  auto bad = j;
  bad["edges"].push_back(io::Json::array({0, 10}));
  CHECK(error_code([&] { io::graph_from_json(bad); }) == Errc::index_out_of_range);
  bad = j;
  bad["edges"].push_back(io::Json::array({3, 3}));
  CHECK(error_code([&] { io::graph_from_json(bad); }) == Errc::index_out_of_range);
  bad = j;
  bad["points"][1] = bad["points"][0];
  CHECK(error_code([&] { io::graph_from_json(bad); }) == Errc::duplicate_point);
}

TEST_CASE("load_ball resolves builtins and files") {
  CHECK(io::load_ball("builtin:cube_3").vertex_count() == 8);
  CHECK(error_code([] { io::load_ball("builtin:nonsense"); }) == Errc::unknown_builtin);
  CHECK(error_code([] { io::load_ball("/nonexistent/ball.json"); }) == Errc::parse_error);
  const std::string path = "test_io_ball.json";
  io::write_text_file(path, io::ball_to_json(builtin_ball("l1_plane")).dump());
  CHECK(io::load_ball(path) == builtin_ball("l1_plane"));
  std::remove(path.c_str());
}
