// brauer: run jobs, verify bundled examples, inspect torsion and pairings.
//
// Exit codes: 0 pass, 1 computational error, 2 verification mismatch (or a
// caveat under --strict), 3 configuration or usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "brauer/errors.hpp"
#include "brauer/report.hpp"

using namespace brauer;

namespace {

enum Exit { kPass = 0, kCompute = 1, kMismatch = 2, kConfig = 3 };

bool config_error(const Error& e) {
    return e.code() == "ConfigInvalid" || e.code() == "UnknownExample" || e.code() == "ReportInvalid";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) fail("ConfigInvalid", "cannot write " + path);
    f << text;
}

JobConfig load(const std::string& path, int degree_cap) {
    JobConfig c = load_config(path);
    if (degree_cap > 0) c.degree_cap = degree_cap;
    return c;
}

int cmd_run(const std::string& path, const std::string& output, bool as_json, bool strict, int cap, bool timing) {
    JobConfig c = load(path, cap);
    Report r = run_job(c, {timing, false});
    std::string js = to_json(r).dump(2) + "\n";
    std::string out = output.empty() ? c.output : output;
    if (!out.empty()) write_file(out, js);
    std::cout << (as_json ? js : render_text(r));
    if (strict && !r.caveats.empty()) {
        std::cerr << "strict: " << r.caveats.size() << " caveat(s)\n";
        return kMismatch;
    }
    return kPass;
}

int cmd_verify(const std::string& id, const std::string& output, bool as_json, bool strict) {
    std::vector<std::string> ids = id == "all" ? example_names() : std::vector<std::string>{id};
    nlohmann::json all = nlohmann::json::array();
    bool pass = true;
    for (auto& n : ids) {
        VerifyResult v = verify_example(n);
        pass = pass && v.pass;
        if (strict)
            for (auto& c : v.checks) pass = pass && c.ok;
        nlohmann::json j{{"example", v.name}, {"pass", v.pass}, {"checks", nlohmann::json::array()}};
        for (auto& c : v.checks)
            j["checks"].push_back(
                {{"what", c.what}, {"expected", c.expected}, {"got", c.got}, {"ok", c.ok}, {"flagged", c.flagged}});
        all.push_back(j);
        if (!as_json) std::cout << render_text(v);
    }
    if (as_json) std::cout << all.dump(2) << "\n";
    if (!output.empty()) write_file(output, all.dump(2) + "\n");
    return pass ? kPass : kMismatch;
}

int cmd_torsion(const std::string& path, bool as_json, int cap) {
    JobResult J = run_pipeline(load(path, cap), {false, true});
    const Report& r = J.report;
    if (as_json) {
        nlohmann::json j{{"curve", r.curve}, {"k", r.k},          {"L", r.L},
                         {"degree", r.degree}, {"P", r.P},         {"Q", r.Q},
                         {"case", r.case_tag}, {"matrices", r.matrices}, {"notes", r.notes}};
        std::cout << j.dump(2) << "\n";
        return kPass;
    }
    std::cout << "curve: " << r.curve << "\nL: " << r.L << "  [L:k] = " << r.degree << "\n";
    std::cout << "P = (" << r.P[0] << ", " << r.P[1] << ")\nQ = (" << r.Q[0] << ", " << r.Q[1] << ")\n";
    for (size_t i = 0; i < J.G.order(); ++i) {
        const Mat2& m = J.G.matrices[i];
        std::cout << to_string(J.B.tower, J.G.group[i]) << "  ↦  [[" << m.a << ", " << m.b << "], [" << m.c << ", "
                  << m.d << "]]\n";
    }
    std::cout << "case: " << r.case_tag << "\n";
    for (auto& n : r.notes) std::cout << "note: " << n << "\n";
    return kPass;
}

int cmd_pairing(const std::string& path, bool as_json, int cap) {
    JobResult J = run_pipeline(load(path, cap), {false, true});
    const TorsionBasis& B = J.B;
    const int q = B.q;
    auto t = pairing_table(B);
    // indices follow B.all(): point (i, j) = iP + jQ at i*q + j
    bool bilinear = true, alternating = true;
    for (int a = 0; a < q * q; ++a) {
        alternating = alternating && t[a][a] == 0;
        for (int b = 0; b < q * q; ++b)
            for (int c = 0; c < q * q; ++c) {
                int s = ((a / q + b / q) % q) * q + (a % q + b % q) % q;
                bilinear = bilinear && t[s][c] == (t[a][c] + t[b][c]) % q;
            }
    }
    bool nondeg = t[1 * q + 0][0 * q + 1] == 1;
    if (as_json) {
        std::cout << nlohmann::json{{"table", t}, {"bilinear", bilinear}, {"alternating", alternating},
                                    {"e(P,Q) = rho", nondeg}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "e(iP + jQ, i'P + j'Q) as powers of " << to_string(B.rho) << ":\n";
        for (auto& row : t) {
            for (int v : row) std::cout << ' ' << v;
            std::cout << "\n";
        }
        std::cout << "bilinear: " << bilinear << "  alternating: " << alternating << "  e(P, Q) = ρ: " << nondeg
                  << "\n";
    }
    return bilinear && alternating && nondeg ? kPass : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Brauer group q-torsion of elliptic curves"};
    app.require_subcommand(1);
    // global flags are also accepted after the subcommand
    app.fallthrough();
    std::string output;
    bool as_json = false, strict = false, timing = false;
    int cap = 0;
    app.add_option("--output", output, "write the JSON report to this path");
    app.add_flag("--json", as_json, "print JSON instead of text");
    app.add_flag("--strict", strict, "fail on any caveat");
    app.add_option("--degree-cap", cap, "cap on the total degree handed to factorization")->check(CLI::PositiveNumber);

    std::string cfg, id;
    auto* run = app.add_subcommand("run", "run a job from a config file");
    run->add_option("config", cfg)->required();
    run->add_flag("--timing", timing, "record wall time in the report");
    auto* verify = app.add_subcommand("verify", "check a bundled example against its reference values");
    verify->add_option("example", id, "example id, or 'all'")->required();
    auto* torsion = app.add_subcommand("torsion", "torsion basis, Galois matrices and case");
    torsion->add_option("config", cfg)->required();
    auto* pairing = app.add_subcommand("pairing", "Weil pairing table on the torsion basis");
    pairing->add_option("config", cfg)->required();
    app.add_subcommand("examples", "list bundled example ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kPass : kConfig;
    }
    try {
        if (*run) return cmd_run(cfg, output, as_json, strict, cap, timing);
        if (*verify) return cmd_verify(id, output, as_json, strict);
        if (*torsion) return cmd_torsion(cfg, as_json, cap);
        if (*pairing) return cmd_pairing(cfg, as_json, cap);
        for (auto& n : example_names()) std::cout << n << "\n";
        return kPass;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return config_error(e) ? kConfig : kCompute;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCompute;
    }
}
