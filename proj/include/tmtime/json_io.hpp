#pragma once

#include <json.hpp>

#include "tmtime/compactness.hpp"
#include "tmtime/gadgets.hpp"
#include "tmtime/part.hpp"
#include "tmtime/simulator.hpp"

// JSON forms of the library's results. Words are written in the machine's
// word syntax, states by name and big numbers as decimal strings. Every
// from_json replays what it reads against the machine, so a document that
// parses back is also valid.
namespace tmtime::json {

using nlohmann::json;

json to_json(const Machine& m, const Computation& c);
Computation computation_from_json(const Machine& m, const json& j);

json to_json(const Machine& m, const RunViolation& v);
RunViolation violation_from_json(const Machine& m, const json& j);

json to_json(const Machine& m, const PartComputation& p);
PartComputation part_from_json(const Machine& m, const json& j);

json to_json(const Machine& m, const CrsEntry& e);
CrsEntry crs_entry_from_json(const Machine& m, const json& j);

json to_json(const Machine& m, const Witness& w);
Witness witness_from_json(const Machine& m, const json& j);

json to_json(const Machine& m, const DecisionReport& r);
DecisionReport report_from_json(const Machine& m, const json& j);

json to_json(const SearchStats& s);
json to_json(const gadgets::Manifest& mf);

}  // namespace tmtime::json
