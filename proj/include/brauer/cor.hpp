#pragma once

#include <string>
#include <vector>

#include "brauer/galois.hpp"
#include "brauer/symbols.hpp"

namespace brauer {

// L/K of prime degree p with a generator σ of Gal(L/K), acting on L(E)
// coefficientwise.
struct CyclicStep {
    FunctionField lower;  // K(E)
    FunctionField upper;  // L(E)
    Tower tower;          // K ⊂ L, one level
    Automorphism sigma;
    int degree = 0;

    const FieldPtr& K() const { return tower.base(); }
    const FieldPtr& L() const { return tower.top(); }
};

// upper must be the function field over a simple extension L of K. Errors:
// NotPrimeDegree, NotGalois.
CyclicStep cyclic_step(const FunctionField& upper, const FieldPtr& K);

// σ^i applied to the coefficients of f ∈ L(E).
Elem conjugate(const CyclicStep& st, const Elem& f, int i);
// N_{L(E)/K(E)}(f) as an element of K(E).
Elem norm(const CyclicStep& st, const Elem& f);

SymbolTensor restrict_symbol(const SymbolTensor& t, const CyclicStep& st);

struct CorTrace {
    std::string route;  // "projection-first", "projection-second", "rosset-tate"
    std::vector<std::string> steps;
};

// Cor_{L(E)/K(E)} of one symbol over L(E). Errors: ChainFailure when a slot is
// not of degree ≤ 1 in the generator of L/K and its places cannot be resolved.
SymbolTensor corestrict_symbol(const Symbol& s, const CyclicStep& st, int q, CorTrace* trace = nullptr);
SymbolTensor corestrict(const SymbolTensor& t, const CyclicStep& st, int q);

// Raw term n·{a, b} of a K_2 expression.
struct K2Term {
    Elem a, b;
    long n = 1;
};

// Weil reciprocity for {m, f, g} over K(t): Cor_{K(θ)/K}{f(θ), g(θ)} as a sum of
// symbols over K, where m is the minimal polynomial of θ and deg f, g < deg m.
// Terms involving −1 or trivial slots are kept; callers simplify.
std::vector<K2Term> rosset_tate(const Poly& m, const Poly& f, const Poly& g);

// Slot f ∈ L(E) as a polynomial in θ (the generator of L/K) over K(E).
Poly theta_form(const CyclicStep& st, const Elem& f);

}  // namespace brauer
