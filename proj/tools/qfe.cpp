// qfe: command-line front end. Every command prints a JSON certificate.
//
// Exit codes: 0 ok, 1 mathematical mismatch, 2 usage or parse error.

#include "qfe/catalog.hpp"
#include "qfe/commands.hpp"
#include "qfe/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>

namespace {

using qfe::cli::Json;
namespace io = qfe::io;
namespace cli = qfe::cli;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

struct GlobalOptions {
    std::string json_out;
    std::string places;
    long height_bound = 200;
};

Json form_input(const std::string& path)
{
    return io::read_file(path);
}

void add_common(Json& inputs, const GlobalOptions& g)
{
    inputs["height_bound"] = g.height_bound;
    if (!g.places.empty()) {
        Json places = Json::array();
        for (const auto& p : io::parse_places(g.places)) {
            places.push_back(p.to_string());
        }
        inputs["places"] = places;
    }
}

void emit(const Json& out, const GlobalOptions& g)
{
    std::string text = out.dump(2);
    std::cout << text << '\n';
    if (!g.json_out.empty()) {
        std::ofstream file(g.json_out);
        if (!file) {
            throw qfe::ParseError("cannot write " + g.json_out);
        }
        file << text << '\n';
    }
}

Json certify(const std::string& command, const Json& inputs)
{
    return cli::make_certificate(command, inputs, cli::run_command(command, inputs));
}

// Inline JSON, or a path to a JSON file.
Json json_argument(const std::string& text)
{
    try {
        return io::parse_text(text);
    } catch (const qfe::ParseError&) {
        return io::read_file(text);
    }
}

int run_verify(const std::string& path)
{
    Json doc = io::read_file(path);
    std::vector<Json> certs = doc.is_array() ? doc.get<std::vector<Json>>() : std::vector<Json>{doc};
    bool ok = true;
    for (const auto& cert : certs) {
        cli::VerifyOutcome outcome = cli::verify_certificate(cert);
        std::string command = cert.value("command", "?");
        if (outcome.ok) {
            std::cout << "verified: " << command << '\n';
        } else {
            ok = false;
            std::cout << "MISMATCH: " << command << '\n' << outcome.diff.dump(2) << '\n';
        }
    }
    return ok ? kOk : kMismatch;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact invariants, extensions and certificates for rational quadratic forms"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--json-out", g.json_out, "Also write the certificate to this path");
    app.add_option("--places", g.places, "Extra places for Hasse invariants, e.g. 2,3,7,inf");
    app.add_option("--height-bound", g.height_bound, "Witness search height")
        ->check(CLI::Range(1L, 1L << 20));

    std::vector<std::string> analyze_files;
    int jobs = 1;
    auto* analyze = app.add_subcommand("analyze", "Invariant profile and isotropy of form files");
    analyze->add_option("forms", analyze_files, "Form files")->required();
    analyze->add_option("--jobs", jobs, "Parallel workers for several files")
        ->check(CLI::Range(1, 256));

    std::string form_file;
    auto* isotropy = app.add_subcommand("isotropy", "Local and global isotropy");
    isotropy->add_option("form", form_file)->required();

    std::string q_text;
    auto* repr = app.add_subcommand("represents", "Whether the form represents q over Q");
    repr->add_option("q", q_text, "Rational q")->required();
    repr->add_option("form", form_file)->required();

    std::string other_file;
    auto* equiv = app.add_subcommand("equiv", "Equivalence over Q");
    equiv->add_option("left", form_file)->required();
    equiv->add_option("right", other_file)->required();

    std::string forced_q;
    auto* extend = app.add_subcommand("extend", "Extend f to g = c y^2 + f");
    extend->add_option("form", form_file)->required();
    extend->add_option("--q", forced_q, "Use this q instead of the default choice");

    std::string sign;
    auto* missing = app.add_subcommand("missing", "A square-free integer the ternary form misses");
    missing->add_option("form", form_file)->required();
    missing->add_option("--sign", sign)->required()->check(CLI::IsMember({"+", "-"}));

    std::string matrix_file;
    auto* lift = app.add_subcommand("lift", "Lift an element of O+(f) to SO+(g)");
    lift->add_option("form", form_file)->required();
    lift->add_option("matrix", matrix_file, "Matrix JSON (inline or file)")->required();
    lift->add_option("--q", forced_q);

    std::string element_text;
    auto* psl2 = app.add_subcommand("psl2", "Image of an element of PSL(2, Q(i))");
    psl2->add_option("element", element_text, "[[a,b],[c,d]] or {a,b,c,d} (inline or file)")
        ->required();

    std::string demo_name;
    std::string demo_n;
    std::string demo_p;
    std::string demo_pi;
    std::string demo_l;
    auto* demo = app.add_subcommand("demo", "Scripted constructions: bianchi, sl3, gamma0, tau-cert, squares");
    demo->add_option("name", demo_name)->required();
    demo->add_option("--n", demo_n);
    demo->add_option("--P", demo_p);
    demo->add_option("--pi", demo_pi);
    demo->add_option("--L", demo_l);

    std::string catalog_path = cli::Catalog::default_path();
    std::string catalog_action;
    std::vector<std::string> catalog_files;
    auto* catalog = app.add_subcommand("catalog", "Persistent catalog of form classes");
    catalog->add_option("action", catalog_action)->required()->check(CLI::IsMember({"add", "query", "link"}));
    catalog->add_option("forms", catalog_files, "Form file (link: f and optionally g)")->required();
    catalog->add_option("--q", forced_q);
    catalog->add_option("--catalog", catalog_path, "Catalog path (default $QFE_CATALOG)");

    std::string cert_file;
    auto* verify = app.add_subcommand("verify", "Recompute a certificate");
    verify->add_option("certificate", cert_file)->required();

    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*verify) {
            return run_verify(cert_file);
        }
        if (*analyze) {
            std::vector<Json> certs(analyze_files.size());
            auto work = [&](std::size_t i) {
                Json inputs{{"form", form_input(analyze_files[i])}};
                add_common(inputs, g);
                certs[i] = certify("analyze", inputs);
            };
            std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), certs.size());
            std::vector<std::future<void>> pool;
            for (std::size_t w = 0; w < workers; ++w) {
                pool.push_back(std::async(std::launch::async, [&, w] {
                    for (std::size_t i = w; i < certs.size(); i += workers) {
                        work(i);
                    }
                }));
            }
            for (auto& f : pool) {
                f.get();
            }
            emit(certs.size() == 1 ? certs[0] : Json(certs), g);
            return kOk;
        }
        Json inputs;
        std::string command = app.get_subcommands().front()->get_name();
        if (*isotropy) {
            inputs = {{"form", form_input(form_file)}};
        } else if (*repr) {
            inputs = {{"form", form_input(form_file)}, {"q", q_text}};
        } else if (*equiv) {
            inputs = {{"left", form_input(form_file)}, {"right", form_input(other_file)}};
        } else if (*extend) {
            inputs = {{"form", form_input(form_file)}};
            if (!forced_q.empty()) {
                inputs["q"] = forced_q;
            }
        } else if (*missing) {
            inputs = {{"form", form_input(form_file)}, {"sign", sign}};
        } else if (*lift) {
            inputs = {{"form", form_input(form_file)}, {"matrix", json_argument(matrix_file)}};
            if (!forced_q.empty()) {
                inputs["q"] = forced_q;
            }
        } else if (*psl2) {
            inputs = {{"element", json_argument(element_text)}};
        } else if (*demo) {
            Json params = Json::object();
            if (!demo_n.empty()) params["n"] = demo_n;
            if (!demo_p.empty()) params["P"] = demo_p;
            if (!demo_pi.empty()) params["pi"] = demo_pi;
            if (!demo_l.empty()) params["L"] = demo_l;
            inputs = {{"name", demo_name}, {"params", params}};
        } else if (*catalog) {
            if (catalog_files.size() > (catalog_action == "link" ? 2u : 1u)) {
                throw qfe::ParseError("too many form files for catalog " + catalog_action);
            }
            inputs = {{"action", catalog_action}, {"form", form_input(catalog_files[0])}};
            cli::Catalog store(catalog_path);
            qfe::QuadraticForm f = io::parse_form(inputs["form"]);
            Json state;
            if (catalog_action == "add") {
                state = store.add(f);
            } else if (catalog_action == "query") {
                state = store.query(f);
            } else {
                qfe::ExtensionOptions options;
                if (!forced_q.empty()) {
                    options.forced_q = io::parse_field_element(Json(forced_q));
                }
                qfe::ExtensionResult ext = qfe::extend_form(f, options);
                qfe::QuadraticForm target = ext.g;
                if (catalog_files.size() == 2) {
                    target = io::parse_form(form_input(catalog_files[1]));
                    // g must be c y^2 + f for some c > 0.
                    qfe::lift_isometry(qfe::Matrix::identity(f.dimension()), f, target);
                    if (qfe::sign_at(target.gram()(0, 0), qfe::Embedding::identity) <= 0) {
                        throw qfe::PreconditionError("link target has a non-positive y coefficient");
                    }
                }
                inputs["target"] = io::to_json(target);
                state = store.link(f, target, target.gram()(0, 0));
            }
            Json cert = certify("catalog", inputs);
            cert["catalog"] = state;
            cert["catalog"]["path"] = store.path();
            emit(cert, g);
            return kOk;
        }
        add_common(inputs, g);
        emit(certify(command, inputs), g);
        return kOk;
    } catch (const cli::IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << '\n';
        return kMismatch;
    } catch (const cli::MismatchError& e) {
        std::cerr << "mismatch: " << e.what() << '\n';
        return kMismatch;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "malformed input: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
