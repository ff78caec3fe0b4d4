#pragma once

#include <string>
#include <vector>

#include "brauer/field.hpp"
#include "brauer/poly.hpp"

namespace brauer {

// Affine point or the identity. Coordinates carry their field of definition.
struct Point {
    bool inf = true;
    Elem x, y;

    static Point zero() { return {}; }
    static Point affine(Elem x, Elem y) { return {false, std::move(x), std::move(y)}; }
    bool is_zero() const { return inf; }
};

bool operator==(const Point& a, const Point& b);
inline bool operator!=(const Point& a, const Point& b) { return !(a == b); }
// Deterministic order: identity first, then by (x, y).
bool point_less(const Point& a, const Point& b);
std::string to_string(const Point& P);

// y² = x³ + Ax + B over F.
class Curve {
public:
    Curve() = default;
    Curve(Elem A, Elem B);

    const FieldPtr& field() const { return F_; }
    const Elem& A() const { return A_; }
    const Elem& B() const { return B_; }
    Curve over(const FieldPtr& L) const;

    // x³ + Ax + B
    Poly rhs() const;
    Elem rhs(const Elem& x) const;

    bool contains(const Point& P) const;
    // Checked constructor; PointNotOnCurve otherwise.
    Point point(const Elem& x, const Elem& y) const;
    Point embed(const Point& P, const FieldPtr& L) const;

    Point neg(const Point& P) const;
    Point add(const Point& P, const Point& Q) const;
    Point sub(const Point& P, const Point& Q) const { return add(P, neg(Q)); }
    Point mul(const mpz_class& n, const Point& P) const;
    Point mul(long n, const Point& P) const { return mul(mpz_class(n), P); }

    // Least m ≥ 1 with [m]P = 0, searching up to bound; 0 if none found.
    long order(const Point& P, long bound = 1000) const;

    // All points over a finite field, sorted by point_less.
    std::vector<Point> points() const;

    std::string describe() const;

private:
    FieldPtr F_;
    Elem A_, B_;
};

// ψ_n = p(x)·y^e with e ∈ {0,1}: e = 1 exactly for even n.
struct DivPoly {
    Poly p;
    int e = 0;
};
DivPoly division_polynomial_full(const Curve& E, int n);
// ψ_n for odd n as a polynomial in x; for q = 3 this is 3x⁴ + 6Ax² + 12Bx − A².
Poly division_polynomial(const Curve& E, int n);

// [n](x, y) = (xn(x)/xd(x), y·yn(x)/yd(x)).
struct MultMap {
    int n = 0;
    Poly xn, xd, yn, yd;
    // Returns identity when xd vanishes at x(S).
    Point apply(const Curve& E, const Point& S) const;
};
// cap guards the degree-n² blowup; default 3 over number fields, 13 over finite fields.
MultMap mult_by_q_map(const Curve& E, int q, int cap = 0);

enum class MWSource { Supplied, Search, Exhaustive };
std::string to_string(MWSource s);

struct MWData {
    MWSource source = MWSource::Supplied;
    bool complete = false;            // exact E(K)/qE(K)
    std::vector<Point> generators;    // generators of E(K) (or of the found part)
    std::vector<Point> reps;          // coset representatives of E(K)/qE(K), 0 first
};

// Representatives from user-supplied generators. attested marks the list as
// generating all of E(K).
MWData mw_from_generators(const Curve& E, const std::vector<Point>& gens, int q, bool attested);
// Rational x = n/d with |n|, d ≤ H; y found by square root in the base field.
MWData mw_search(const Curve& E, long H, int q);
// Complete answer over a finite field.
MWData mw_exhaustive(const Curve& E, int q);

// Group generated by gens, enumerated (must be finite, size ≤ limit).
std::vector<Point> span(const Curve& E, const std::vector<Point>& gens, size_t limit = 100000);

}  // namespace brauer
