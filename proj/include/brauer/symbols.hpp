#pragma once

#include <optional>
#include <string>
#include <vector>

#include "brauer/function_field.hpp"

namespace brauer {

// (a, b) in K^×/(K^×)^q × K^×/(K^×)^q.
struct KummerPair {
    Elem a, b;
};

KummerPair operator*(const KummerPair& x, const KummerPair& y);
KummerPair pow(const KummerPair& x, long e);
// Both slots compared modulo q-th powers.
bool same_class(const KummerPair& x, const KummerPair& y, int q);
bool is_trivial(const KummerPair& x, int q);
std::string to_string(const KummerPair& x);

// q-th power test that answers "unknown" instead of throwing where the field
// machinery has no decision procedure.
std::optional<bool> try_is_qth_power(const Elem& a, int q);
// a·b^(q−1) is a q-th power.
bool same_qth_class(const Elem& a, const Elem& b, int q);

// (a, f) with both slots in the function field; when param is set the first slot
// is a free parameter ranging over param_domain and a is unset.
struct Symbol {
    Elem a, f;
    std::string param;
    std::string param_domain;
};

struct SymbolTensor {
    FunctionField ff;
    std::vector<Symbol> terms;
    std::string tag;  // "k(E)", "L(E)", "L'(E)", ...
    bool empty() const { return terms.empty(); }
    size_t length() const { return terms.size(); }
};

// Pretty slot: constants are printed in the constant field.
std::string slot_string(const FunctionField& ff, const Elem& e);
std::string to_string(const SymbolTensor& t);

// Drop terms with a slot equal to ±1 or a known q-th power; merge terms sharing a
// slot (bilinearity). Never reorders the surviving terms.
SymbolTensor simplify(const SymbolTensor& t, int q);

// Largest tensor length the symbol-length bound allows.
inline int symbol_length_bound(int q) { return 2 * (q - 1) * (q + 1); }

// Function-field element with coefficients in a subfield, expressed in the
// function field over that subfield.
std::optional<Elem> descend_function(const Elem& f, const FunctionField& from, const FunctionField& to);
// Element of the constant field, if f is constant.
std::optional<Elem> constant_value(const FunctionField& ff, const Elem& f);

}  // namespace brauer
