#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "cppforge/constructions.hpp"
#include "cppforge/inversion.hpp"
#include "cppforge/poly.hpp"
#include "cppforge/verify.hpp"

namespace cppforge {

using Json = nlohmann::ordered_json;

// Elements are lowercase hex without prefix; exponents are decimal strings.
// Every *_from_json throws Error(ParseError) on malformed input and rebuilds
// constructed objects through their factories, so preconditions are
// re-checked on load.

Json to_json(const BinaryField& field);
FieldRef field_from_json(const Json& j);

Json to_json(const SparsePoly& p);
SparsePoly poly_from_json(const Json& j);

Json to_json(const SeedCpp& seed);
/// The stored g_table must match the recomputed one.
SeedCpp seed_from_json(const Json& j);

Json to_json(const StructuredCpp& F);
StructuredCpp structured_from_json(const Json& j);

Json to_json(const LookupTable& table);
LookupTable table_from_json(const Json& j);

/// Deterministic: no timings.
Json to_json(const VerificationReport& report);

/// Anything `verify`, `eval` and `invert` accept as a polynomial.
using AnyPoly = std::variant<SparsePoly, StructuredCpp, LookupTable>;
AnyPoly any_poly_from_json(const Json& j);
Json to_json(const AnyPoly& p);
FieldRef field_of(const AnyPoly& p);
Evaluator evaluator_of(const AnyPoly& p);
std::string describe(const AnyPoly& p);

Json read_json_file(const std::string& path);

}  // namespace cppforge
