#include "radolab/io.hpp"

#include "radolab/builtins.hpp"
#include "radolab/error.hpp"

#include <fstream>
#include <sstream>

namespace radolab::io {

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw Error(Errc::bad_rational, "expected an exact rational, got " + j.dump());
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) throw Error(Errc::parse_error, "expected a coordinate array, got " + j.dump());
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = rational_from_json(j[i]);
  return v;
}

Json to_json(const Rational& r) { return to_string(r); }

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(Errc::parse_error, std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::uint64_t u64_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw Error(Errc::parse_error, std::string("field \"") + name + "\" must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

}  // namespace

PolytopeBall ball_from_json(const Json& j) {
  const Json& dim = field(j, "dim");
  if (!dim.is_number_integer() || dim.get<std::int64_t>() < 1) throw Error(Errc::parse_error, "dim must be a positive integer");
  const Json& verts = field(j, "vertices");
  if (!verts.is_array()) throw Error(Errc::parse_error, "vertices must be an array");
  std::vector<Vec> points;
  for (const auto& v : verts) {
    points.push_back(vec_from_json(v));
    require_same_dim(dim.get<std::int64_t>(), points.back().size(), "vertex");
  }
  return validate_ball(std::move(points));
}

Json ball_to_json(const PolytopeBall& ball) {
  Json verts = Json::array();
  for (const auto& v : ball.vertices()) verts.push_back(to_json(v));
  return Json{{"dim", ball.dim()}, {"vertices", std::move(verts)}};
}

PointMap map_from_json(const Json& j) {
  const Json& pairs = field(j, "pairs");
  if (!pairs.is_array()) throw Error(Errc::parse_error, "pairs must be an array");
  PointMap out;
  for (const auto& p : pairs) {
    if (!p.is_array() || p.size() != 2) throw Error(Errc::parse_error, "each pair must be [[x...], [y...]]");
    out.emplace_back(vec_from_json(p[0]), vec_from_json(p[1]));
  }
  return out;
}

Json map_to_json(const PointMap& pairs) {
  Json arr = Json::array();
  for (const auto& [x, y] : pairs) arr.push_back(Json::array({to_json(x), to_json(y)}));
  return Json{{"pairs", std::move(arr)}};
}

Json graph_to_json(const GeomGraph& g) {
  Json points = Json::array();
  for (const auto& p : g.sample.points) points.push_back(to_json(p));
  Json edges = Json::array();
  for (const auto& [i, j] : g.edges()) edges.push_back(Json::array({i, j}));
  return Json{{"ball", ball_to_json(g.sample.ball)},
              {"window", to_json(g.sample.window)},
              {"sample_seed", g.sample.seed},
              {"typicality", {{"linf", g.sample.typicality.linf}, {"fibre", g.sample.typicality.fibre}}},
              {"p", to_json(g.p)},
              {"rng_seed", g.rng_seed},
              {"points", std::move(points)},
              {"edges", std::move(edges)}};
}

GeomGraph graph_from_json(const Json& j) {
  PolytopeBall ball = ball_from_json(field(j, "ball"));
  std::vector<Vec> points;
  for (const auto& p : field(j, "points")) points.push_back(vec_from_json(p));
  const Json& typ = field(j, "typicality");
  Typicality t{field(typ, "linf").get<bool>(), field(typ, "fibre").get<bool>()};
  GeomGraph g{make_sample(std::move(ball), std::move(points), rational_from_json(field(j, "window")),
                          u64_field(j, "sample_seed"), t),
              {}, rational_from_json(field(j, "p")), u64_field(j, "rng_seed")};
  g.adjacency.resize(g.sample.size());
  for (const auto& e : field(j, "edges")) {
    if (!e.is_array() || e.size() != 2) throw Error(Errc::parse_error, "edges must be [i, j] pairs");
    const auto a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>();
    if (a >= g.vertex_count() || b >= g.vertex_count() || a == b) {
      throw Error(Errc::index_out_of_range, "edge " + e.dump() + " out of range");
    }
    g.adjacency[a].push_back(static_cast<std::uint32_t>(b));
    g.adjacency[b].push_back(static_cast<std::uint32_t>(a));
  }
  for (auto& nb : g.adjacency) {
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end()) throw Error(Errc::parse_error, "repeated edge");
  }
  return g;
}

Json decomposition_to_json(const PolytopeBall& ball, const LinfDecomposition& dec) {
  Json dirs = Json::array();
  for (const auto& l : dec.linf) dirs.push_back(to_json(l.direction));
  Json u = Json::array();
  for (const auto& b : dec.u_basis) u.push_back(to_json(b));
  return Json{{"dim", ball.dim()},
              {"vertex_count", ball.vertex_count()},
              {"d_inf", dec.d_inf()},
              {"u_dim", dec.u_basis.size()},
              {"linf_directions", std::move(dirs)},
              {"u_basis", std::move(u)}};
}

Json bf_report_to_json(const BfReport& r) {
  Json pairs = Json::array();
  for (const auto& [i, j] : r.final_state.pairs()) pairs.push_back(Json::array({i, j}));
  return Json{{"budget", r.budget},
              {"steps_attempted", r.steps_attempted},
              {"matched", r.matched},
              {"blocked", r.blocked},
              {"reason", r.reason ? Json(block_reason_name(*r.reason)) : Json(nullptr)},
              {"exhausted", r.exhausted},
              {"completed", r.completed()},
              {"edge_audit_passed", r.edge_audit_passed},
              {"step_isometry_audit_passed", r.step_isometry_audit_passed},
              {"seed", r.seed},
              {"fibre_count", r.fibre_count},
              {"sample_size", r.sample_size},
              {"pairs", std::move(pairs)}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse_error, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::parse_error, "cannot write " + path);
  out << text;
}

PolytopeBall load_ball(const std::string& source) {
  constexpr std::string_view prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) return builtin_ball(std::string_view(source).substr(prefix.size()));
  return ball_from_json(read_json_file(source));
}

}  // namespace radolab::io
