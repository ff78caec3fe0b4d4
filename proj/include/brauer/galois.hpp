#pragma once

#include <string>
#include <vector>

#include "brauer/curve.hpp"
#include "brauer/function_field.hpp"

namespace brauer {

// k = levels[0] ⊂ levels[1] ⊂ … ⊂ levels.back() = L, each step a simple extension.
struct Tower {
    std::vector<FieldPtr> levels;

    static Tower between(const FieldPtr& L, const FieldPtr& k);
    const FieldPtr& base() const { return levels.front(); }
    const FieldPtr& top() const { return levels.back(); }
    int degree() const;  // [L:k]
    int level_of(const FieldPtr& F) const;  // index in levels, −1 if absent
};

// k-automorphism of L given by the images of the generators of levels[1..].
struct Automorphism {
    std::vector<Elem> images;
};

Elem apply(const Tower& T, const Automorphism& s, const Elem& a);
Point apply(const Tower& T, const Automorphism& s, const Point& P);
Poly apply(const Tower& T, const Automorphism& s, const Poly& f);
Automorphism compose(const Tower& T, const Automorphism& s, const Automorphism& t);  // s∘t
Automorphism identity(const Tower& T);
bool is_identity(const Tower& T, const Automorphism& s);
bool operator==(const Automorphism& a, const Automorphism& b);
int order(const Tower& T, const Automorphism& s);
// All k-automorphisms of L (sorted deterministically); NotGalois when fewer than [L:k].
std::vector<Automorphism> automorphisms(const Tower& T);
std::string to_string(const Tower& T, const Automorphism& s);

struct TorsionBasis {
    Curve Ek;       // over k
    Tower tower;    // k ⊂ … ⊂ L
    Curve EL;       // over L
    int q = 3;
    Point P, Q;     // over L, e(P, Q) = rho
    Elem rho;       // in k
    std::string mode;
    std::vector<std::string> notes;

    const FieldPtr& k() const { return tower.base(); }
    const FieldPtr& L() const { return tower.top(); }
    // R = iP + jQ
    std::pair<int, int> coords(const Point& R) const;
    Point combo(int i, int j) const;
    std::vector<Point> all() const;  // iP + jQ, i-major
};

// User-supplied points over L: verified on the curve, order q, independent, and
// reoriented so that e(P, Q) = rho.
TorsionBasis torsion_basis_supplied(const Curve& Ek, const FieldPtr& L, const Point& P, const Point& Q, int q,
                                    const Elem& rho);
// y² = x³ + B over k ∋ ω: P = (0, √B), Q = (∛(−4B), √(−3B)), tower built as needed.
TorsionBasis torsion_basis_xcubed(const Curve& Ek, const Elem& rho);
// Finite fields: least extension over which E[q] is rational.
TorsionBasis torsion_basis_finite(const Curve& Ek, int q, const Elem& rho);

// Ψ(σ): σ(P) = aP + cQ, σ(Q) = bP + dQ, entries mod q.
struct Mat2 {
    int a = 1, b = 0, c = 0, d = 1;
};
bool operator==(const Mat2& x, const Mat2& y);
Mat2 mul(const Mat2& x, const Mat2& y, int q);
int det(const Mat2& m, int q);

struct GaloisAction {
    std::vector<Automorphism> group;  // all of Gal(L/k), identity first
    std::vector<Mat2> matrices;       // Ψ of each group element
    std::vector<size_t> generators;   // indices into group
    size_t order() const { return group.size(); }
};

GaloisAction splitting_field_and_action(const TorsionBasis& B);
Mat2 matrix_of(const TorsionBasis& B, const Automorphism& s);

enum class CaseTag { Split, Coprime, QDivides };
std::string to_string(CaseTag t);

struct CaseInfo {
    CaseTag tag = CaseTag::Split;
    // q-divides only
    Automorphism sigma;   // σ(P) = P, σ(Q) = P ⊕ Q on the (changed) basis
    int lprime_level = 0;  // L′ = tower.levels[lprime_level]
    Elem l;               // l^q ∈ L′, L = L′(l)
    Elem lq;
    Mat2 basis_change;    // new (P, Q) in old coordinates: P_new = aP + cQ, Q_new = bP + dQ
    std::string note;
};

// May replace B.P, B.Q by the basis adapted to σ.
CaseInfo classify_case(TorsionBasis& B, const GaloisAction& G);

// a = m·r^n with m free of n-th powers (sign folded into r for odd n); a ∈ ℚ.
std::pair<mpq_class, mpq_class> power_free_part(const mpq_class& a, int n);

}  // namespace brauer
