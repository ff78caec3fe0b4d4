#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "brauer/field.hpp"
#include "brauer/poly.hpp"

namespace brauer {

// TOML subset: [table] headers, `key = value` with strings, integers, booleans
// and (nested) arrays of those, `#` comments. Tables become JSON objects.
// Errors: ConfigInvalid with the line number.
nlohmann::json parse_toml(const std::string& text);

using Names = std::map<std::string, Elem>;

// Arithmetic expression over F: integers, declared names, + − * / ^ and
// parentheses, e.g. "8*w + 4" or "(6 - 8*s)/19". Errors: ConfigInvalid.
Elem parse_element(const std::string& expr, const FieldPtr& F, const Names& names);
// Polynomial in var over F whose coefficients may use names, e.g. "w^2 + w + 1".
Poly parse_polynomial(const std::string& expr, const std::string& var, const FieldPtr& F, const Names& names);

using PointSpec = std::array<std::string, 2>;
using Adjoin = std::pair<std::string, std::string>;  // name, modulus

struct JobConfig {
    std::string name;
    // [field]
    std::string base = "Q";       // "Q" or "F<p>"
    std::vector<Adjoin> adjoin;   // k = base(adjoin...)
    std::string rho;              // optional; otherwise the least primitive q-th root found
    int q = 3;
    // [curve]
    std::string A = "0", B;
    // [torsion]
    std::string torsion_mode = "auto";  // auto | supplied | xcubed | finite
    std::vector<Adjoin> torsion_adjoin;  // L over k for supplied points
    std::vector<PointSpec> torsion_points;  // P, Q when supplied
    // [mordell_weil]
    std::vector<PointSpec> mw_k, mw_L;
    bool mw_attested = false;
    long search_height = 0;
    // [options]
    std::string case_override;  // must agree with the computed case when set
    int degree_cap = 0;
    std::string output;

    // Canonical TOML text; parse_config(c.canonical()) reproduces c.
    std::string canonical() const;
};

// Unknown tables or keys, wrong types, or missing required keys: ConfigInvalid.
JobConfig parse_config(const std::string& text);
JobConfig load_config(const std::string& path);

// k with its generator names, built from the [field] block.
struct BaseField {
    FieldPtr k;
    Names names;
};
BaseField build_base_field(const JobConfig& c);

}  // namespace brauer
