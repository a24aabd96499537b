// Command-line front end: run the built-in derivations, certify differential
// specs, and canonicalize expressions.
//
// Exit codes: 0 all claims pass / certified, 1 a claim or certification
// failed, 2 usage or input errors.

#include "gradform/json_io.hpp"
#include "gradform/latex.hpp"
#include "gradform/models.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#ifdef _WIN32
#define GRADFORM_ISATTY() false
#else
#include <unistd.h>
#define GRADFORM_ISATTY() (isatty(fileno(stdout)) != 0)
#endif

namespace {

using namespace gradform;

bool use_color() {
    const char* env = std::getenv("GRADFORM_COLOR");
    if (env && std::string(env) == "0") return false;
    return GRADFORM_ISATTY();
}

std::string verdict(bool pass) {
    if (!use_color()) return pass ? "[PASS]" : "[FAIL]";
    return pass ? "\033[32m[PASS]\033[0m" : "\033[31m[FAIL]\033[0m";
}

void print_plain(const DerivationReport& rep, int verbosity) {
    std::cout << "derivation: " << rep.name << "\n";
    for (const auto& c : rep.claims) {
        std::cout << "  " << verdict(c.pass) << " " << c.id << ": " << c.description << "\n";
        if (verbosity > 0 || !c.pass)
            std::cout << "         expected " << c.expected << "; computed " << c.computed
                      << "\n";
    }
    if (verbosity > 0) {
        for (const auto& [label, text] : rep.artifacts)
            std::cout << "  -- " << label << ": " << text << "\n";
        std::cout << "  elapsed: " << rep.elapsed_ms << " ms\n";
    }
    std::cout << (rep.all_pass() ? "all claims hold" : "some claims FAILED") << "\n";
}

int emit_report(const DerivationReport& rep, const std::string& format, int verbosity) {
    if (format == "json")
        std::cout << report_to_json(rep, verbosity > 0).dump(2) << "\n";
    else if (format == "latex")
        std::cout << latex(rep);
    else
        print_plain(rep, verbosity);
    return rep.all_pass() ? 0 : 1;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

DerivationReport run_seesaw(double m_re, double m_im, double M) {
    DerivationReport rep;
    rep.name = "seesaw";
    SeesawResult r = seesaw_masses({m_re, m_im}, M);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", r.light);
    std::string light = buf;
    std::snprintf(buf, sizeof(buf), "%.10g", r.heavy);
    std::string heavy = buf;
    rep.claim("eigenvalues", "mass eigenvalues of [[0, m],[conj(m), M]]",
              "(M -+ sqrt(M^2 + 4|m|^2))/2", "light = " + light + ", heavy = " + heavy, true);
    double prod = r.light * r.heavy;
    double expect = -(m_re * m_re + m_im * m_im);
    bool det_ok = std::abs(prod - expect) <= 1e-9 * std::abs(expect == 0 ? 1.0 : expect);
    std::snprintf(buf, sizeof(buf), "%.10g", prod);
    rep.claim("determinant", "light * heavy = -|m|^2", std::to_string(expect), buf, det_ok);
    bool tr_ok = std::abs((r.light + r.heavy) - M) <= 1e-9 * std::abs(M);
    rep.claim("trace", "light + heavy = M", std::to_string(M),
              std::to_string(r.light + r.heavy), tr_ok);
    return rep;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic engine for extended graded differential algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "plain";
    int verbosity = 0;
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"plain", "latex", "json"}));
    app.add_flag("-v,--verbose", verbosity, "include artifacts and timing");

    auto* derive = app.add_subcommand("derive", "run a built-in derivation");
    std::string model;
    std::string family_path, manifest_path;
    double m_re = 1.0, m_im = 0.0, big_m = 100.0;
    int na = 1, nb = 1;
    derive->add_option("model", model, "one of axion, dilaton, electroweak, two-point, seesaw, dirac-mass")
        ->required()
        ->check(CLI::IsMember({"axion", "dilaton", "electroweak", "two-point", "seesaw",
                               "dirac-mass"}));
    derive->add_option("--family", family_path, "metric family manifest (dilaton)");
    derive->add_option("--manifest", manifest_path, "field declaration manifest");
    derive->add_option("--m", m_re, "Dirac mass (seesaw)");
    derive->add_option("--m-imag", m_im, "imaginary part of the Dirac mass (seesaw)");
    derive->add_option("--M", big_m, "Majorana mass (seesaw)");
    derive->add_option("--na", na, "first block size (two-point)");
    derive->add_option("--nb", nb, "second block size (two-point)");

    auto* check = app.add_subcommand("check", "certify a differential spec");
    std::string spec_path;
    check->add_option("spec", spec_path, "differential spec JSON")->required();
    check->add_option("--manifest", manifest_path, "field declaration manifest");

    auto* simplify = app.add_subcommand("simplify", "canonicalize an expression");
    std::string expr_text;
    simplify->add_option("expr", expr_text, "expression text")->required();
    simplify->add_option("--manifest", manifest_path, "field declaration manifest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (!manifest_path.empty()) load_manifest(load_json_file(manifest_path));

        if (*derive) {
            DerivationReport rep;
            if (model == "axion") {
                rep = derive_axion();
            } else if (model == "dilaton") {
                if (!family_path.empty()) {
                    auto gm = load_manifest(load_json_file(family_path));
                    if (!gm) throw Error("family manifest does not describe a metric");
                    rep = derive_dilaton(*gm);
                } else {
                    rep = derive_dilaton();
                }
            } else if (model == "electroweak") {
                rep = derive_electroweak();
            } else if (model == "two-point") {
                rep = two_point_quartic_vanishing(na, nb);
            } else if (model == "seesaw") {
                rep = run_seesaw(m_re, m_im, big_m);
            } else {
                rep = dirac_mass_connection();
            }
            return emit_report(rep, format, verbosity);
        }

        if (*check) {
            DifferentialSpec spec = diffspec_from_json(load_json_file(spec_path));
            NilpotencyResult r = check_nilpotent(spec);
            if (format == "json") {
                std::cout << nilpotency_to_json(r).dump(2) << "\n";
            } else if (r.certified) {
                std::cout << verdict(true) << " nilpotency certified\n";
            } else {
                std::cout << verdict(false) << " violation (" << r.violation->reason << ")";
                if (r.violation->reason == "square") {
                    std::cout << " at monomial [";
                    for (size_t i = 0; i < r.violation->monomial.size(); ++i)
                        std::cout << (i ? " " : "") << int(r.violation->monomial[i]);
                    std::cout << "] with coefficient " << r.violation->coeff_text;
                } else {
                    std::cout << ": " << r.violation->coeff_text;
                }
                std::cout << "\n";
            }
            return r.certified ? 0 : 1;
        }

        if (*simplify) {
            ScalarExpr e = parse_expr(expr_text);
            if (format == "latex")
                std::cout << latex(e) << "\n";
            else if (format == "json")
                std::cout << json{{"canonical", to_string(e)}}.dump(2) << "\n";
            else
                std::cout << to_string(e) << "\n";
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
