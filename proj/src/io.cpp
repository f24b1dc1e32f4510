#include "qfe/io.hpp"

#include "qfe/errors.hpp"

#include <fstream>
#include <sstream>

namespace qfe::io {

Json to_json(const Rational& r)
{
    return format_rational(r);
}

Json to_json(const FieldElement& x)
{
    if (x.height() == 0) {
        return to_json(x.rational());
    }
    return Json{{"a", to_json(x.a())}, {"b", to_json(x.b())}, {"delta", to_json(x.field()->delta())}};
}

Json to_json(const Matrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const Vector& v)
{
    Json out = Json::array();
    for (const auto& x : v) {
        out.push_back(to_json(x));
    }
    return out;
}

Json to_json(const std::vector<Integer>& v)
{
    Json out = Json::array();
    for (const auto& x : v) {
        out.push_back(x.get_str());
    }
    return out;
}

Json to_json(const std::vector<Rational>& v)
{
    Json out = Json::array();
    for (const auto& x : v) {
        out.push_back(to_json(x));
    }
    return out;
}

Json to_json(const Place& p)
{
    return p.to_string();
}

Json to_json(const std::vector<Place>& places)
{
    Json out = Json::array();
    for (const auto& p : places) {
        out.push_back(p.to_string());
    }
    return out;
}

Json field_to_json(const FieldPtr& field)
{
    if (!field || field->is_rationals()) {
        return "Q";
    }
    Json out{{"delta", to_json(field->delta())}};
    if (field->height() == 2) {
        out["base"] = field_to_json(field->base());
    }
    return out;
}

Json to_json(const QuadraticForm& f)
{
    return Json{{"field", field_to_json(f.field())}, {"gram", to_json(f.gram())}};
}

Json to_json(const InvariantProfile& profile)
{
    Json sig = Json::array();
    for (const auto& s : profile.signatures) {
        sig.push_back(Json::array({s.plus, s.minus}));
    }
    Json hasse = Json::object();
    for (const auto& [place, value] : profile.hasse) {
        hasse[place.to_string()] = value;
    }
    return Json{{"rank", profile.rank},
                {"signature", sig},
                {"disc", profile.disc.to_string()},
                {"hasse", hasse}};
}

Json to_json(const MoebiusElement& x)
{
    return Json{{"a", to_json(x.a())}, {"b", to_json(x.b())}, {"c", to_json(x.c())}, {"d", to_json(x.d())}};
}

Json to_json(const ObstructionCertificate& c)
{
    return Json{{"place", c.place.to_string()},
                {"t", to_json(c.t)},
                {"minus_d", c.minus_d.to_string()},
                {"t_over_minus_d_is_local_square", c.same_class_as_minus_d},
                {"hilbert_minus_one_minus_d", c.hilbert_minus_one},
                {"epsilon", c.epsilon}};
}

// --- parsing -----------------------------------------------------------------

Rational parse_rational_json(const Json& j)
{
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Rational(Integer(j.get<long>()));
    }
    throw ParseError("expected a rational string, got " + j.dump());
}

namespace {

// "a+bi", "a-bi", "bi", "i", "-i", with rational a, b.
FieldElement parse_gaussian_text(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (c != ' ') {
            s.push_back(c);
        }
    }
    if (s.empty() || s.back() != 'i') {
        throw ParseError("malformed Gaussian rational '" + std::string(text) + "'");
    }
    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
            split = k;
            break;
        }
    }
    std::string re = split == std::string::npos ? "0" : s.substr(0, split);
    std::string im = split == std::string::npos ? s : s.substr(split);
    if (im.empty() || im == "+") {
        im = "1";
    } else if (im == "-") {
        im = "-1";
    }
    return gaussian(parse_rational(re), parse_rational(im));
}

} // namespace

FieldElement parse_field_element(const Json& j)
{
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        if (s.find('i') != std::string::npos) {
            return parse_gaussian_text(s);
        }
        return FieldElement(parse_rational(s));
    }
    if (j.is_number_integer()) {
        return FieldElement(parse_rational_json(j));
    }
    if (j.is_object()) {
        if (!j.contains("a") || !j.contains("b") || !j.contains("delta")) {
            throw ParseError("field element object needs a, b and delta: " + j.dump());
        }
        FieldElement delta = parse_field_element(j.at("delta"));
        FieldPtr field = Field::extend(delta.field(), delta);
        return FieldElement(field, parse_field_element(j.at("a")), parse_field_element(j.at("b")));
    }
    throw ParseError("expected a field element, got " + j.dump());
}

FieldPtr parse_field(const Json& j)
{
    if (j.is_string() && j.get<std::string>() == "Q") {
        return Field::rationals();
    }
    if (j.is_object() && j.contains("delta")) {
        FieldPtr base = j.contains("base") ? parse_field(j.at("base")) : Field::rationals();
        FieldElement delta = parse_field_element(j.at("delta"));
        return Field::extend(base, delta);
    }
    throw ParseError("expected \"Q\" or {\"delta\": ..}, got " + j.dump());
}

Matrix parse_matrix(const Json& j)
{
    if (!j.is_array() || j.empty()) {
        throw ParseError("expected a non-empty array of rows");
    }
    const std::size_t rows = j.size();
    const std::size_t cols = j.at(0).is_array() ? j.at(0).size() : 0;
    if (cols == 0) {
        throw ParseError("expected non-empty rows");
    }
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j.at(r).is_array() || j.at(r).size() != cols) {
            throw ParseError("ragged matrix at row " + std::to_string(r));
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = parse_field_element(j.at(r).at(c));
        }
    }
    return m;
}

QuadraticForm parse_form(const Json& j)
{
    if (!j.is_object()) {
        throw ParseError("form must be a JSON object");
    }
    FieldPtr field = j.contains("field") ? parse_field(j.at("field")) : nullptr;
    auto lifted = [&](Matrix m) {
        if (!field) {
            return m;
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                m(r, c) = m(r, c).lift(field);
            }
        }
        return m;
    };
    if (j.contains("gram")) {
        return QuadraticForm(lifted(parse_matrix(j.at("gram"))), field);
    }
    if (j.contains("diag")) {
        const Json& d = j.at("diag");
        if (!d.is_array() || d.empty()) {
            throw ParseError("\"diag\" must be a non-empty array");
        }
        Vector coeffs;
        for (const auto& e : d) {
            coeffs.push_back(parse_field_element(e));
        }
        return QuadraticForm(lifted(Matrix::diagonal(coeffs)), field);
    }
    throw ParseError("form needs \"gram\" or \"diag\"");
}

MoebiusElement parse_moebius(const Json& j)
{
    if (j.is_object()) {
        return {parse_field_element(j.at("a")), parse_field_element(j.at("b")),
                parse_field_element(j.at("c")), parse_field_element(j.at("d"))};
    }
    Matrix m = parse_matrix(j);
    if (m.rows() != 2 || m.cols() != 2) {
        throw ParseError("expected a 2x2 matrix");
    }
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

std::vector<Place> parse_places(std::string_view text)
{
    std::vector<Place> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view item = text.substr(start, end - start);
        if (!item.empty()) {
            out.push_back(Place::parse(item));
        }
        start = end + 1;
    }
    return out;
}

Json parse_text(std::string_view text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

Json read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

} // namespace qfe::io
