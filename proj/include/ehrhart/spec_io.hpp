#pragma once

#include "ehrhart/polytope.hpp"

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

namespace ehrhart {

/// PolytopeSpec documents:
///
///   { "kind": "simplex", "vertices": [[0,0,0],[1,0,0],[0,1,0],[1,1,13]] }
///   { "kind": "box", "intervals": [[0,2],[0,2]] }            // optional "allow_degenerate": true
///   { "kind": "product", "factors": [ <spec>, <spec> ] }
///   { "kind": "hrep", "dim": 2, "inequalities": [{"normal":[1,0],"rhs":1}], "bbox": [[0,1],[0,1]] }
///
/// Integers may be JSON numbers or decimal strings (for values beyond int64).
/// Errors are ParseError; where() is a JSON pointer such as "/factors/1/vertices"
/// or "byte 17" for syntax errors.
LatticePolytope parse_spec(std::string_view text);
LatticePolytope spec_from_json(const nlohmann::json& j);

nlohmann::ordered_json spec_to_json(const LatticePolytope& p);
/// Canonical compact form; parse_spec(serialize_spec(p)) == p.
std::string serialize_spec(const LatticePolytope& p);

/// FNV-1a 64 over the canonical serialization, as 16 lowercase hex digits.
std::string spec_hash(const LatticePolytope& p);

}  // namespace ehrhart
