#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brauer/curve.hpp"
#include "brauer/series.hpp"

namespace brauer {

// (u + v·y)/w with gcd(u, v, w) = 1 and w monic.
struct UVW {
    Poly u, v, w;
};

struct Divisor {
    std::vector<std::pair<Point, int>> terms;  // sorted by point_less, no zero multiplicities

    static Divisor of(std::vector<std::pair<Point, int>> t);
    int degree() const;
    Point sum(const Curve& E) const;
    int mult(const Point& P) const;
    bool empty() const { return terms.empty(); }
};
Divisor operator+(const Divisor& a, const Divisor& b);
Divisor operator-(const Divisor& a);
Divisor operator-(const Divisor& a, const Divisor& b);
Divisor operator*(int k, const Divisor& a);
bool operator==(const Divisor& a, const Divisor& b);
std::string to_string(const Divisor& D);

// K(E) = K(x)[y]/(y² − x³ − Ax − B).
class FunctionField {
public:
    FunctionField() = default;
    explicit FunctionField(const Curve& E);

    const Curve& curve() const { return E_; }
    const FieldPtr& base() const { return E_.field(); }
    const FieldPtr& rational_field() const { return Kx_; }  // K(x)
    const FieldPtr& field() const { return KE_; }
    FunctionField over(const FieldPtr& L) const { return FunctionField(E_.over(L)); }

    Elem x() const;
    Elem y() const;
    Elem constant(const Elem& a) const;
    Elem from_polys(const Poly& u, const Poly& v) const;  // u + v·y
    Elem from_uvw(const UVW& f) const;
    UVW uvw(const Elem& f) const;
    // Same function with coefficients pushed through phi (embedding or automorphism)
    // into another function field.
    template <class Map>
    Elem map_coeffs(const Elem& f, const FunctionField& target, Map phi) const {
        UVW a = uvw(f);
        auto mp = [&](const Poly& p) {
            std::vector<Elem> c;
            for (const Elem& e : p.c) c.push_back(phi(e));
            return Poly(target.base(), c);
        };
        return target.from_uvw({mp(a.u), mp(a.v), mp(a.w)});
    }
    // Coefficient inclusion from a function field over a subfield.
    Elem lift(const Elem& f, const FunctionField& from) const;

    // f(x, y) ↦ f([n](x, y))
    Elem compose(const Elem& f, const MultMap& m) const;

    // Value at P (over any extension of the base); nullopt at a pole.
    std::optional<Elem> eval(const Elem& f, const Point& P) const;
    int ord(const Elem& f, const Point& P) const;
    // Leading coefficient in the local parameter at P.
    Elem leading(const Elem& f, const Point& P) const;
    // Scaled so the leading coefficient at 0 in x/y is 1.
    Elem normalize(const Elem& f) const;

    // Divisor with support over L (default: the base field). NotRational when
    // a zero or pole is not defined over L.
    Divisor divisor(const Elem& f, const FieldPtr& L = nullptr) const;

    // Function with divisor D, normalized at 0. NotPrincipal unless deg D = 0 and
    // the sum of D is 0. Support points must be defined over the base field.
    Elem with_divisor(const Divisor& D) const;

    // Chord through A, B (tangent if equal) divided by the vertical at A ⊕ B:
    // divisor (A) + (B) − (A ⊕ B) − (0).
    Elem line_ratio(const Point& A, const Point& B) const;
    // Miller function f_{n,P}: divisor n(P) − ([n]P) − (n − 1)(0).
    Elem miller(long n, const Point& P) const;

private:
    // Nonzero-leading expansion at P.
    Series expand(const Elem& f, const Point& P) const;

    Curve E_;
    FieldPtr Kx_, KE_;
};

// Pointwise Miller evaluation f_{n,P}(Q); throws PoleAtEvaluation when Q meets
// the support of an intermediate line.
Elem miller_value(const Curve& E, long n, const Point& P, const Point& Q);

// e(S, T) oriented as g_T(X ⊕ S)/g_T(X) with g_T^q = t_T∘[q].
Elem weil_pairing(const Curve& E, const Point& S, const Point& T, int q);

}  // namespace brauer
