#include "qfe/commands.hpp"

#include "qfe/catalog.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <functional>
#include <map>
#include <set>

#ifndef QFE_VERSION
#define QFE_VERSION "0.0.0"
#endif

namespace qfe::cli {

namespace {

Json payload(Json verdicts, Json witnesses, Json places)
{
    return Json{{"verdicts", std::move(verdicts)},
                {"witnesses", std::move(witnesses)},
                {"places_checked", std::move(places)}};
}

long height_bound(const Json& inputs)
{
    return inputs.value("height_bound", 200L);
}

std::vector<Place> extra_places(const Json& inputs)
{
    std::vector<Place> out;
    if (inputs.contains("places")) {
        for (const auto& p : inputs.at("places")) {
            out.push_back(Place::parse(p.get<std::string>()));
        }
    }
    return out;
}

Json optional_place(const std::optional<Place>& p)
{
    return p ? Json(p->to_string()) : Json(nullptr);
}

Json optional_bool(const std::optional<bool>& b)
{
    return b ? Json(*b) : Json("not computed");
}

Json signatures_of(const QuadraticForm& f)
{
    Json out = Json::array();
    std::vector<Embedding> embeddings{Embedding::identity};
    if (f.field()->is_real_quadratic()) {
        embeddings.push_back(Embedding::conjugate);
    }
    for (auto e : embeddings) {
        Signature s = signature(f, e);
        out.push_back(Json::array({s.plus, s.minus}));
    }
    return out;
}

bool is_integral_matrix(const Matrix& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            auto r = m(i, j).to_rational();
            if (!r || r->get_den() != 1) {
                return false;
            }
        }
    }
    return true;
}

bool is_gaussian_integral(const MoebiusElement& x)
{
    for (const auto* e : {&x.a(), &x.b(), &x.c(), &x.d()}) {
        auto [re, im] = gaussian_parts(*e);
        if (re.get_den() != 1 || im.get_den() != 1) {
            return false;
        }
    }
    return true;
}

// --- commands ------------------------------------------------------------------

Json cmd_analyze(const Json& inputs)
{
    QuadraticForm f = io::parse_form(inputs.at("form"));
    Json verdicts{{"dimension", f.dimension()}, {"field", io::field_to_json(f.field())}};
    if (!f.is_rational()) {
        verdicts["signature"] = signatures_of(f);
        verdicts["admissible"] = is_admissible(f);
        verdicts["isotropic"] = "not computed";
        return payload(verdicts, Json::object(), Json::array());
    }
    auto extra = extra_places(inputs);
    InvariantProfile profile = invariant_profile(f, extra);
    IsotropyResult iso = is_isotropic_global(f, {.height_bound = height_bound(inputs)});
    verdicts["profile"] = io::to_json(profile);
    verdicts["admissible"] = is_admissible(f);
    verdicts["isotropic"] = iso.isotropic;
    verdicts["obstruction"] = optional_place(iso.obstruction);
    verdicts["hasse_product"] = profile.hasse_product();
    Json witnesses = Json::object();
    if (iso.witness) {
        witnesses["isotropic_vector"] = io::to_json(*iso.witness);
    }
    std::vector<Place> places;
    for (const auto& [p, v] : profile.hasse) {
        places.push_back(p);
    }
    return payload(verdicts, witnesses, io::to_json(places));
}

Json cmd_isotropy(const Json& inputs)
{
    QuadraticForm f = io::parse_form(inputs.at("form"));
    IsotropyResult iso = is_isotropic_global(f, {.height_bound = height_bound(inputs)});
    std::set<Place> places(iso.places_checked.begin(), iso.places_checked.end());
    for (const auto& p : extra_places(inputs)) {
        places.insert(p);
    }
    Json local = Json::object();
    for (const auto& p : places) {
        local[p.to_string()] = is_isotropic_local(f, p);
    }
    Json verdicts{{"isotropic", iso.isotropic},
                  {"obstruction", optional_place(iso.obstruction)},
                  {"local", local}};
    Json witnesses = Json::object();
    if (iso.witness) {
        witnesses["isotropic_vector"] = io::to_json(*iso.witness);
    }
    return payload(verdicts, witnesses, io::to_json(std::vector<Place>(places.begin(), places.end())));
}

Json cmd_represents(const Json& inputs)
{
    QuadraticForm f = io::parse_form(inputs.at("form"));
    Rational q = io::parse_rational_json(inputs.at("q"));
    RepresentationResult r = represents(f, q, {.height_bound = height_bound(inputs)});
    Json verdicts{{"q", io::to_json(q)},
                  {"represents", r.represents},
                  {"failing_places", io::to_json(r.failing_places)},
                  {"via_isotropy", represents_via_isotropy(f, q)}};
    Json witnesses = Json::object();
    if (r.witness) {
        witnesses["vector"] = io::to_json(*r.witness);
    }
    return payload(verdicts, witnesses, io::to_json(r.places_checked));
}

Json cmd_equiv(const Json& inputs)
{
    QuadraticForm a = io::parse_form(inputs.at("left"));
    QuadraticForm b = io::parse_form(inputs.at("right"));
    EquivalenceReport report = equivalent_over_Q(a, b);
    Json items = Json::array();
    for (const auto& item : report.items) {
        items.push_back(Json{{"invariant", item.invariant},
                             {"left", item.left},
                             {"right", item.right},
                             {"agree", item.agree}});
    }
    Json verdicts{{"equivalent", report.equivalent}, {"comparisons", items}};
    return payload(verdicts, Json::object(), io::to_json(report.places_checked));
}

ExtensionOptions extension_options(const Json& inputs)
{
    ExtensionOptions options;
    if (inputs.contains("q") && !inputs.at("q").is_null()) {
        options.forced_q = io::parse_field_element(inputs.at("q"));
    }
    return options;
}

Json cmd_extend(const Json& inputs)
{
    QuadraticForm f = io::parse_form(inputs.at("form"));
    ExtensionResult ext = extend_form(f, extension_options(inputs));
    bool congruence = ext.that.transpose() * ext.g_scaled.gram() * ext.that == ext.g0.gram();
    Json verdicts{
        {"case", to_string(ext.extension_case)},
        {"field_is_Q", ext.field_is_Q},
        {"q", io::to_json(ext.q)},
        {"scale", io::to_json(ext.normalized.scale)},
        {"y_coefficient", io::to_json(ext.g.gram()(0, 0))},
        {"admissible_g", is_admissible(ext.g)},
        {"signature_g", signatures_of(ext.g)},
        {"input_isotropic", optional_bool(ext.input_isotropic)},
        {"output_isotropic", optional_bool(ext.output_isotropic)},
        {"congruence_identity", congruence},
    };
    Json witnesses{
        {"f", io::to_json(ext.f)},
        {"normalized_coeffs", io::to_json(ext.normalized.coeffs)},
        {"basechange", io::to_json(ext.normalized.basechange)},
        {"that", io::to_json(ext.that)},
        {"g0", io::to_json(ext.g0)},
        {"g_scaled", io::to_json(ext.g_scaled)},
        {"g", io::to_json(ext.g)},
    };
    Json places = Json::array();
    if (ext.obstruction) {
        witnesses["obstruction"] = io::to_json(*ext.obstruction);
        places.push_back(ext.obstruction->place.to_string());
    }
    return payload(verdicts, witnesses, places);
}

Json cmd_missing(const Json& inputs)
{
    QuadraticForm f = io::parse_form(inputs.at("form"));
    std::string s = inputs.at("sign").get<std::string>();
    if (s != "+" && s != "-") {
        throw ParseError("sign must be + or -, got '" + s + "'");
    }
    Rational t = find_nonrepresented(f, s == "+" ? 1 : -1);
    auto cert = validate_nonrepresented(f, t);
    RepresentationResult r = represents(f, t, {.search_witness = false});
    Json verdicts{{"t", io::to_json(t)},
                  {"represents", r.represents},
                  {"obstruction_places", io::to_json(obstruction_places(f))}};
    Json witnesses = Json::object();
    if (cert) {
        witnesses["obstruction"] = io::to_json(*cert);
    }
    return payload(verdicts, witnesses, io::to_json(r.places_checked));
}

Json cmd_lift(const Json& inputs)
{
    QuadraticForm f = io::parse_form(inputs.at("form"));
    Matrix m = io::parse_matrix(inputs.at("matrix"));
    ExtensionResult ext = extend_form(f, extension_options(inputs));
    Matrix lifted = lift_isometry(m, f, ext.g);
    Json verdicts{{"det", io::to_json(lifted.determinant())},
                  {"isometry_of_g", is_isometry(lifted, ext.g)},
                  {"preserves_sheet", preserves_positive_sheet(lifted, ext.g)},
                  {"in_so_plus", in_so_plus(lifted, ext.g)},
                  {"q", io::to_json(ext.q)}};
    Json witnesses{{"g", io::to_json(ext.g)}, {"lift", io::to_json(lifted)}};
    return payload(verdicts, witnesses, Json::array());
}

Json psl2_verdicts(const MoebiusElement& x, const Matrix& y)
{
    QuadraticForm f = bianchi_form();
    return Json{{"convention", kPsl2Convention},
                {"invariant", is_isometry(y, f)},
                {"det", io::to_json(y.determinant())},
                {"preserves_sheet", preserves_positive_sheet(y, f)},
                {"integral_input", is_gaussian_integral(x)},
                {"integral_image", is_integral_matrix(y)}};
}

Json cmd_psl2(const Json& inputs)
{
    MoebiusElement x = io::parse_moebius(inputs.at("element"));
    Matrix y = psl2_to_so13(x);
    return payload(psl2_verdicts(x, y), Json{{"image", io::to_json(y)}}, Json::array());
}

// --- demos -----------------------------------------------------------------------

FieldElement param_element(const Json& params, const char* key, const char* fallback)
{
    return io::parse_field_element(params.value(key, Json(fallback)));
}

Integer param_integer(const Json& params, const char* key, long fallback)
{
    Rational r = io::parse_rational_json(params.value(key, Json(std::to_string(fallback))));
    if (r.get_den() != 1) {
        throw ParseError(std::string(key) + " must be an integer");
    }
    return r.get_num();
}

Json demo_bianchi(const Json&)
{
    FieldElement i = gaussian(0, 1);
    std::vector<std::pair<std::string, MoebiusElement>> gens{
        {"T", {1, 1, 0, 1}}, {"Ti", {1, i, 0, 1}}, {"S", {0, 1, -1, 0}}, {"D", {i, 0, 0, -i}}};
    Json verdicts = Json::object();
    Json witnesses = Json::object();
    bool all_so_plus = true;
    bool all_integral = true;
    for (const auto& [name, g] : gens) {
        Matrix y = psl2_to_so13(g);
        Json v = psl2_verdicts(g, y);
        all_so_plus = all_so_plus && v["invariant"].get<bool>() && v["det"] == "1"
                   && v["preserves_sheet"].get<bool>();
        all_integral = all_integral && v["integral_image"].get<bool>();
        verdicts[name] = v;
        witnesses[name] = io::to_json(y);
    }
    bool homomorphism = true;
    for (const auto& [na, a] : gens) {
        for (const auto& [nb, b] : gens) {
            homomorphism = homomorphism && psl2_to_so13(a * b) == psl2_to_so13(a) * psl2_to_so13(b);
        }
    }
    verdicts["all_in_so_plus"] = all_so_plus;
    verdicts["all_integral"] = all_integral;
    verdicts["homomorphism_on_pairs"] = homomorphism;
    verdicts["convention"] = kPsl2Convention;
    return payload(verdicts, witnesses, Json::array());
}

Json demo_sl3(const Json& params)
{
    Integer n = param_integer(params, "n", 2);
    Integer p = param_integer(params, "P", 1);
    Sl3Obstruction o = sl3_obstruction(n, p);
    Json verdicts{{"n", n.get_str()},
                  {"P", p.get_str()},
                  {"entry_23", io::to_json(o.entry_23)},
                  {"integral", o.integral}};
    Json witnesses{{"gamma", io::to_json(o.gamma)},
                   {"x", io::to_json(o.x)},
                   {"conjugate", io::to_json(o.conjugate)}};
    return payload(verdicts, witnesses, Json::array());
}

Json demo_gamma0(const Json& params)
{
    Integer n = param_integer(params, "n", 5);
    FieldElement pi = param_element(params, "pi", "2+i");
    const long nl = n.get_si();
    std::vector<MoebiusElement> samples{
        {1, 1, 0, 1}, {1, 0, nl, 1}, {1, -1, 0, 1}, {1 + nl, 1, nl, 1}, {1, 0, -2 * nl, 1}};
    Json rows = Json::array();
    bool all_members = true;
    bool all_agree = true;
    for (const auto& g : samples) {
        TauConjugate t = tau_conjugate(g, n);
        all_members = all_members && t.member;
        all_agree = all_agree && t.paths_agree;
        rows.push_back(Json{{"gamma", io::to_json(g)},
                            {"conjugate", io::to_json(t.conjugate)},
                            {"member", t.member},
                            {"paths_agree", t.paths_agree}});
    }
    Json gaussian_rows = Json::array();
    bool gaussian_members = true;
    for (const auto& g : gamma0_samples(pi)) {
        bool member = gamma0_membership(g, pi);
        gaussian_members = gaussian_members && member;
        gaussian_rows.push_back(Json{{"element", io::to_json(g)}, {"member", member}});
    }
    Json verdicts{{"n", n.get_str()},
                  {"pi", io::to_json(pi)},
                  {"tau_conjugates_in_gamma0", all_members},
                  {"closed_form_matches_direct", all_agree},
                  {"gaussian_samples_in_gamma0", gaussian_members}};
    return payload(verdicts, Json{{"tau_conjugates", rows}, {"gaussian_samples", gaussian_rows}},
                   Json::array());
}

Json demo_tau_cert(const Json& params)
{
    FieldElement pi = param_element(params, "pi", "2+i");
    TauEntryCertificate c = tau_entry_certificate(pi);
    Json verdicts{{"pi", io::to_json(pi)},
                  {"norm", c.norm.get_str()},
                  {"entry_squared", io::to_json(c.entry_squared)},
                  {"rational_square", c.rational_square},
                  {"entry_rational", c.rational_square}};
    return payload(verdicts, Json{{"tau", io::to_json(bianchi_tau(pi))}}, Json::array());
}

Json demo_squares(const Json& params)
{
    FieldElement pi = param_element(params, "pi", "2+i");
    Integer length = param_integer(params, "L", 2);
    std::vector<MoebiusElement> gens = gamma0_samples(pi);
    gens.push_back(bianchi_tau(pi));
    auto samples = mod2_squares_sample(gens, static_cast<int>(length.get_si()));
    bool all_gaussian = true;
    bool all_rational = true;
    bool all_so_plus = true;
    Json rows = Json::array();
    for (const auto& s : samples) {
        all_gaussian = all_gaussian && s.square_in_gaussian;
        all_rational = all_rational && s.image_rational;
        all_so_plus = all_so_plus && s.image_in_so_plus;
        Json row{{"word", s.word},
                 {"tower_parity", s.tower_parity},
                 {"square", io::to_json(s.square)},
                 {"image_rational", s.image_rational}};
        if (s.image) {
            row["image"] = io::to_json(*s.image);
        }
        rows.push_back(std::move(row));
    }
    Json verdicts{{"pi", io::to_json(pi)},
                  {"L", length.get_str()},
                  {"generators", gens.size()},
                  {"words", samples.size()},
                  {"all_squares_in_gaussian", all_gaussian},
                  {"all_images_rational", all_rational},
                  {"all_images_in_so_plus", all_so_plus}};
    return payload(verdicts, Json{{"samples", rows}}, Json::array());
}

Json cmd_demo(const Json& inputs)
{
    static const std::map<std::string, std::function<Json(const Json&)>> demos{
        {"bianchi", demo_bianchi}, {"sl3", demo_sl3},       {"gamma0", demo_gamma0},
        {"tau-cert", demo_tau_cert}, {"squares", demo_squares},
    };
    std::string name = inputs.at("name").get<std::string>();
    auto it = demos.find(name);
    if (it == demos.end()) {
        throw ParseError("unknown demo '" + name + "' (bianchi, sl3, gamma0, tau-cert, squares)");
    }
    return it->second(inputs.value("params", Json::object()));
}

Json cmd_catalog(const Json& inputs)
{
    QuadraticForm f = io::parse_form(inputs.at("form"));
    Json verdicts{{"action", inputs.at("action")}, {"key", catalog_key(f)}};
    if (inputs.contains("target")) {
        verdicts["target_key"] = catalog_key(io::parse_form(inputs.at("target")));
    }
    return payload(verdicts, Json::object(), Json::array());
}

} // namespace

Json run_command(const std::string& command, const Json& inputs)
{
    static const std::map<std::string, std::function<Json(const Json&)>> commands{
        {"analyze", cmd_analyze}, {"isotropy", cmd_isotropy}, {"represents", cmd_represents},
        {"equiv", cmd_equiv},     {"extend", cmd_extend},     {"missing", cmd_missing},
        {"lift", cmd_lift},       {"psl2", cmd_psl2},         {"demo", cmd_demo},
        {"catalog", cmd_catalog},
    };
    auto it = commands.find(command);
    if (it == commands.end()) {
        throw ParseError("unknown command '" + command + "'");
    }
    return it->second(inputs);
}

Json provenance()
{
    std::time_t now = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        now = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    }
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return Json{{"timestamp", buf}, {"version", QFE_VERSION}};
}

Json make_certificate(const std::string& command, const Json& inputs, const Json& payload)
{
    Json cert = payload;
    cert["schema_version"] = kSchemaVersion;
    cert["command"] = command;
    cert["inputs"] = inputs;
    cert["provenance"] = provenance();
    return cert;
}

VerifyOutcome verify_certificate(const Json& certificate)
{
    if (!certificate.is_object()) {
        throw ParseError("certificate must be a JSON object");
    }
    if (!certificate.contains("schema_version") || !certificate.at("schema_version").is_string()) {
        throw ParseError("certificate has no schema_version");
    }
    std::string version = certificate.at("schema_version").get<std::string>();
    if (version != kSchemaVersion) {
        throw UnsupportedSchema("unsupported schema_version '" + version + "' (this build reads '"
                                + kSchemaVersion + "')");
    }
    for (const char* key : {"command", "inputs", "verdicts", "witnesses", "places_checked"}) {
        if (!certificate.contains(key)) {
            throw ParseError(std::string("certificate is missing \"") + key + "\"");
        }
    }
    Json stored = payload(certificate.at("verdicts"), certificate.at("witnesses"),
                          certificate.at("places_checked"));
    Json fresh = run_command(certificate.at("command").get<std::string>(), certificate.at("inputs"));
    VerifyOutcome out;
    out.ok = stored == fresh;
    if (!out.ok) {
        out.diff = Json::diff(stored, fresh);
    }
    return out;
}

} // namespace qfe::cli
