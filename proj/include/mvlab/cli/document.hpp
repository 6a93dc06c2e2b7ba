#pragma once

// PolytopeDocument JSON:
//   {"dim": 2, "name": "...", "vertices": [[[0,1],[0,1]], [[1,1],[0,1]], ...]}
// Each coordinate is a [numerator, denominator] pair. Integers outside the
// int64 range are written as decimal strings; both forms are accepted.

#include "mvlab/polytope.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace mvlab::cli {

using Json = nlohmann::ordered_json;

Json integer_to_json(const Integer& z);
Json rational_to_json(const Rational& q);
Json vector_to_json(const Vector& v);
Json normal_to_json(const PrimitiveNormal& z);

Integer integer_from_json(const Json& j, const std::string& where);
Rational rational_from_json(const Json& j, const std::string& where);

/// Canonical form: sorted vertices, reduced fractions.
Json serialize_polytope(const Polytope& p, const std::optional<std::string>& name = std::nullopt);

/// Throws Error(ParseError) naming the offending field or line.
Polytope parse_polytope(const Json& doc);
Polytope parse_polytope_text(std::string_view text);
Polytope load_polytope(const std::string& path);

/// serialize(parse(doc)), keeping the name.
Json canonicalize(const Json& doc);

std::string sha256_hex(std::string_view bytes);

}  // namespace mvlab::cli
