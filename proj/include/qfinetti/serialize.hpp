#pragma once

// JSON encodings. Rationals are always "p/q" strings (just "p" for integers);
// float-mode values only appear in objects tagged "float": true.

#include <string>
#include <vector>

#include <json.hpp>

#include "qfinetti/boundary.hpp"
#include "qfinetti/galois.hpp"
#include "qfinetti/laws.hpp"

namespace qfin {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const VArray& array);
VArray varray_from_json(const Json& j);

Json to_json(const TildeArray& tilde);
TildeArray tilde_from_json(const Json& j);

/// {"n": N, "probs": {"0101": "1/16", ...}} with words in index order.
Json to_json(const FiniteLaw& law);

Json to_json(const BoundaryMeasure& mu);
BoundaryMeasure measure_from_json(const Json& j);

Json to_json(const FloatBoundaryMeasure& mu);

/// {"p", "m", "n", "basis"}; for m > 1 each entry is its coefficient list.
Json to_json(const Subspace& x);

/// One rational table as rows of strings.
Json triangle_json(const Triangle& rows);
Triangle triangle_from_json(const Json& j);

}  // namespace qfin
