#pragma once

#include <json.hpp>

#include "instances.hpp"
#include "oracle.hpp"

namespace sparseapprox {

using Json = nlohmann::json;

// All numbers cross the JSON boundary as decimal strings ("p" or "p/q") so
// arbitrary precision survives bit-exactly; keys serialize sorted, so equal
// values always produce identical bytes.

// Field helpers shared by every JSON consumer; all failures surface as
// Errc::parse_error.
const Json& json_require(const Json& j, const char* key);
Int json_int(const Json& j);
Rat json_rat(const Json& j);
int json_small_int(const Json& j, const char* what);

Json matrix_to_json(const IntMat& a);
IntMat matrix_from_json(const Json& j);

Json vec_to_json(const IntVec& v);
IntVec vec_from_json(const Json& j);

Json solution_to_json(const SparseSolution& s);
Json oracle_report_to_json(const OracleReport& r);

Json instance_to_json(const InstanceSpec& spec);
InstanceSpec instance_from_json(const Json& j);

// Parse with library exceptions mapped onto Errc::parse_error.
Json parse_json(const std::string& text);

// dump(2) plus a trailing newline; the one serialization used everywhere.
std::string pretty(const Json& j);

}  // namespace sparseapprox
