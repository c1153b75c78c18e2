#pragma once

#include <string>

#include <json.hpp>

#include "arbor/apps.hpp"
#include "arbor/comm_series.hpp"
#include "arbor/free_series.hpp"
#include "arbor/trees.hpp"

namespace arbor {

using Json = nlohmann::ordered_json;

// Wire formats. Maps:
//   {"kind":"comm","convention":"divided-power","dimension":N,"truncation":D,
//    "components":[{"coeffs":[{"alpha":[...],"value":"p/q"},...]},...]}
//   {"kind":"free","convention":"plain",...,"components":[{"coeffs":
//    [{"word":[...],"value":"p/q"},...]},...]}
// Single series use kind "comm-series"/"free-series" with a top-level
// "coeffs" array. Coefficients are emitted in canonical key order
// (graded-lex / length-then-lex) with canonical rational rendering, so
// serialization is a fixed point under re-parsing.

Json to_json(const CommSeries& s);
Json to_json(const CommMap& m);
Json to_json(const FreeSeries& s);
Json to_json(const FreeMap& m);
Json to_json(const LabelledTree& t);
Json to_json(const PlanarTree& t);

CommSeries comm_series_from_json(const Json& j);
CommMap comm_map_from_json(const Json& j);
FreeSeries free_series_from_json(const Json& j);
FreeMap free_map_from_json(const Json& j);

/// Parses text into JSON, mapping parse failures to malformed-json.
Json parse_json_text(const std::string& text);

} // namespace arbor
