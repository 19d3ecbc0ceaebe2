#pragma once

// JSON forms of the exact objects.  Rationals travel as decimal strings so a
// round trip is bit-exact.
//
//   MultiPoly:  {"vars": ["E", "zeta"], "terms": [{"exps": [2, 0], "num": "2", "den": "1"}, ...]}
//
// Terms are listed leading term first (graded lex, E > zeta > N > g).

#include <json.hpp>

#include "qes/recurrence.hpp"
#include "qes/realroots.hpp"

namespace qes {

nlohmann::json to_json(const MultiPoly& p);
/// Throws std::invalid_argument on malformed input (unknown variable, wrong
/// exponent arity, zero denominator, non-integer strings).
MultiPoly multipoly_from_json(const nlohmann::json& j);

/// {"family": "c"|"s", "first": 0|1, "last": n, "N": "3/2"|null, "symbolic_N": bool,
///  "generator": ..., "members": [{"index": n, "poly": MultiPoly}, ...]}
nlohmann::json to_json(const PolyFamily& f);
PolyFamily polyfamily_from_json(const nlohmann::json& j);

/// Univariate rational polynomial as a MultiPoly in `v`.
nlohmann::json to_json(const RatPoly& p, Var v);

}  // namespace qes
