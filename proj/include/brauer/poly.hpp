#pragma once

#include <string>
#include <utility>
#include <vector>

#include "brauer/field.hpp"

namespace brauer {

// Dense univariate polynomial over a field, coefficients low to high, trimmed.
struct Poly {
    FieldPtr F;
    std::vector<Elem> c;

    Poly() = default;
    explicit Poly(FieldPtr f) : F(std::move(f)) {}
    Poly(FieldPtr f, std::vector<Elem> coeffs);

    static Poly constant(const Elem& a);
    static Poly constant(const FieldPtr& f, long v);
    static Poly monomial(const Elem& a, int d);
    static Poly x(const FieldPtr& f);
    // Coefficients given as small integers, low to high.
    static Poly from_ints(const FieldPtr& f, const std::vector<long>& ints);

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const Elem& lc() const { return c.back(); }
    Elem coeff(int i) const;
    void trim();
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(const Elem& k, const Poly& a);
bool operator==(const Poly& a, const Poly& b);
inline bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);

Poly monic(const Poly& a);
Poly gcd(const Poly& a, const Poly& b);
// Returns (g, s, t) with s·a + t·b = g, g monic.
struct Xgcd {
    Poly g, s, t;
};
Xgcd xgcd(const Poly& a, const Poly& b);

Elem eval(const Poly& f, const Elem& x);
Poly derivative(const Poly& f);
Poly pow(const Poly& f, int e);
Poly powmod(const Poly& f, const mpz_class& e, const Poly& m);
Poly compose(const Poly& f, const Poly& g);
Poly embed(const Poly& f, const FieldPtr& target);
Elem resultant(const Poly& a, const Poly& b);

// Polynomial x^n − 1 style helpers.
Poly x_pow_minus(const FieldPtr& f, int n, const Elem& a);

int compare(const Poly& a, const Poly& b);
std::string to_string(const Poly& f, const std::string& var = "X");

}  // namespace brauer
