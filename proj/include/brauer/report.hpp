#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "brauer/config.hpp"
#include "brauer/engine.hpp"

namespace brauer {

inline constexpr int kReportSchemaVersion = 1;

struct SymbolOut {
    std::string coeff;     // constant slot as text; empty for a parameter slot
    std::string param;     // parameter name, e.g. "a"
    std::string domain;    // parameter range
    std::string function;  // function slot as text
    std::array<std::vector<std::string>, 3> uvw;  // (u + v·y)/w, coefficients low to high
};

struct TensorOut {
    std::string field;
    std::string text;
    std::vector<SymbolOut> terms;
};

struct RelationOut {
    TensorOut tensor;
    std::string source;
    std::array<std::string, 2> pair;  // Kummer pair behind the relation, when known
};

struct FunctionOut {
    std::string name;
    std::string expr;
    std::string field;
    std::string scaling;
    std::string divisor;
    bool exact_identity = false;
    bool certified = false;
    int samples = 0;
};

struct Report {
    int schema_version = kReportSchemaVersion;
    std::string job;
    std::string input;  // canonical config text
    // fields and curve
    std::string k, L, rho, curve;
    int degree = 1;
    std::string torsion_mode;
    std::array<std::string, 2> P, Q;
    // classification
    std::string case_tag;
    int galois_order = 1;
    std::vector<std::array<int, 4>> matrices;  // (a, b, c, d) per group element
    std::string lprime, lq;
    // Mordell–Weil input
    std::string mw_source;
    bool mw_complete = false;
    std::vector<std::array<std::string, 2>> mw_generators;
    // output
    std::vector<FunctionOut> functions;
    std::string decomposition;
    std::vector<TensorOut> generators;
    std::vector<RelationOut> relations;
    std::vector<std::string> caveats, notes;
    std::optional<long> delta_image_size, pair_group_size;
    bool I_trivial = false;
    std::vector<std::string> steps;
    std::optional<double> seconds;  // only when timing is requested
};

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

// Everything computed by a job, for callers that need more than the report.
struct JobResult {
    JobConfig config;
    BaseField base;
    Names names;  // k and tower generators
    TorsionBasis B;
    GaloisAction G;
    CaseInfo C;
    CertifiedFunction tP, tQ, nQ;
    MWData mw;
    GroupData EL;
    std::optional<Inflation> inflation;
    Presentation presentation;
    Report report;
};

struct RunOptions {
    bool timing = false;
    bool torsion_only = false;  // stop after classification
};

// Errors keep their module code; the message is prefixed with the failing step.
JobResult run_pipeline(const JobConfig& c, const RunOptions& opt = {});
Report run_job(const JobConfig& c, const RunOptions& opt = {});

// Weil pairing table e(iP + jQ, i′P + j′Q) as ρ-exponents, row-major over (i, j).
std::vector<std::vector<int>> pairing_table(const TorsionBasis& B);

struct VerifyCheck {
    std::string what;
    std::string expected;
    std::string got;
    bool ok = false;
    bool flagged = false;  // expected value of doubtful standing: reported, not counted
};

struct VerifyResult {
    std::string name;
    bool pass = false;
    std::vector<VerifyCheck> checks;
    double seconds = 0;
};

std::vector<std::string> example_names();
// Bundled configuration text of an example; UnknownExample otherwise.
std::string example_config(const std::string& name);
VerifyResult verify_example(const std::string& name);

std::string render_text(const Report& r);
std::string render_text(const VerifyResult& v);

}  // namespace brauer
