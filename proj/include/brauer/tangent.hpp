#pragma once

#include <string>
#include <vector>

#include "brauer/function_field.hpp"

namespace brauer {

// t with div(t) = q(P) − q(0) and t∘[q] = g^q exactly.
struct CertifiedFunction {
    FunctionField ff;  // where t and g live
    Point P;
    int q = 0;
    Elem t;
    Elem g;
    Elem scaling;               // t = scaling · (monic tangent)
    bool exact_identity = false;  // g^q == t∘[q] as canonical forms
    int samples = 0;            // independent point evaluations that agreed
    Divisor div;
    std::vector<std::string> transcript;
};

// For q = 3 the starting function is the tangent line at P; otherwise the
// function with divisor q(P) − q(0).
CertifiedFunction normalize_tangent(const FunctionField& ff, const Point& P, int q);

// Independent re-check of a certificate: divisor, exact identity, sample points.
bool verify_certificate(const CertifiedFunction& c, std::string* why = nullptr);

// Pairs (u, v) standing for u(x) + v(x)·y in the coordinate ring.
struct CoordPoly {
    Poly u, v;
};
int pole_order(const CoordPoly& f);  // at 0; −1 for the zero polynomial

}  // namespace brauer
