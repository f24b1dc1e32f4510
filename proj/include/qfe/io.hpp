#pragma once

// JSON encodings. Rationals are strings ("3", "-7/2"); field elements of a
// quadratic layer are {"a": .., "b": .., "delta": ..} with the same encoding
// nested for the coordinates and for delta. Gaussian rationals may also be
// written as strings such as "2+i", "-i" or "1/2-3/2i".

#include "qfe/extend.hpp"
#include "qfe/lattice.hpp"

#include <json.hpp>

#include <string_view>

namespace qfe::io {

using Json = nlohmann::json;

Json to_json(const Rational& r);
Json to_json(const FieldElement& x);
Json to_json(const Matrix& m);
Json to_json(const Vector& v);
Json to_json(const std::vector<Integer>& v);
Json to_json(const std::vector<Rational>& v);
Json to_json(const Place& p);
Json to_json(const std::vector<Place>& places);
Json field_to_json(const FieldPtr& field);
/// {"field": .., "gram": [[..]]}
Json to_json(const QuadraticForm& f);
/// {"rank", "signature": [[p, q], ..], "disc", "hasse": {"2": 1, "inf": 1}}
Json to_json(const InvariantProfile& profile);
Json to_json(const MoebiusElement& x);
Json to_json(const ObstructionCertificate& c);

Rational parse_rational_json(const Json& j);
FieldElement parse_field_element(const Json& j);
/// "Q", or {"delta": ..} over Q, or {"delta": .., "base": ..} for a tower.
FieldPtr parse_field(const Json& j);
Matrix parse_matrix(const Json& j);
/// {"gram": [[..]]} or {"diag": [..]}, optionally with "field".
QuadraticForm parse_form(const Json& j);
/// {"a", "b", "c", "d"} or [[a, b], [c, d]].
MoebiusElement parse_moebius(const Json& j);
std::vector<Place> parse_places(std::string_view comma_separated);

Json parse_text(std::string_view text);
Json read_file(const std::string& path);

} // namespace qfe::io
