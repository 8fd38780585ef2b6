#pragma once

// JSON encodings. Rationals are written as "p/q" strings; JSON integers are
// accepted on input, JSON floats are refused.

#include "radolab/back_forth.hpp"
#include "radolab/decomposition.hpp"
#include "radolab/random_graphs.hpp"
#include "radolab/step_isometry.hpp"

#include <json.hpp>

#include <string>

namespace radolab::io {

using Json = nlohmann::ordered_json;

Rational rational_from_json(const Json& j);
Vec vec_from_json(const Json& j);
Json to_json(const Rational& r);
Json to_json(const Vec& v);

/// {"dim": d, "vertices": [["p/q", ...], ...]}
PolytopeBall ball_from_json(const Json& j);
Json ball_to_json(const PolytopeBall& ball);

/// {"pairs": [[[x...], [y...]], ...]}
PointMap map_from_json(const Json& j);
Json map_to_json(const PointMap& pairs);

Json graph_to_json(const GeomGraph& g);
GeomGraph graph_from_json(const Json& j);

Json decomposition_to_json(const PolytopeBall& ball, const LinfDecomposition& dec);
Json bf_report_to_json(const BfReport& report);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// "builtin:NAME" or a path to a ball JSON file.
PolytopeBall load_ball(const std::string& source);

}  // namespace radolab::io
