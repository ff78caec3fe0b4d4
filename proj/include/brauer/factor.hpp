#pragma once

#include <optional>
#include <vector>

#include "brauer/poly.hpp"

namespace brauer {

struct Factor {
    Poly f;  // monic irreducible
    int mult;
};

// Cap on deg(f)·[K:ℚ] for factorization over number fields.
inline constexpr int kDefaultDegreeCap = 64;
void set_degree_cap(int cap);
int degree_cap();

// Monic irreducible factors with multiplicity, sorted by (degree, coefficients).
std::vector<Factor> factor(const Poly& f);
bool is_irreducible(const Poly& f);
// Distinct roots in the coefficient field, sorted by the lexicographic element order.
std::vector<Elem> roots(const Poly& f);

std::vector<Factor> squarefree_decomposition(const Poly& f);

// q-th root of a in its own field (least root in the lexicographic order), if any.
std::optional<Elem> qth_root(const Elem& a, int q);
inline bool is_qth_power(const Elem& a, int q) { return qth_root(a, q).has_value(); }

// Norm from a.field() down to the subfield K of its tower (product of conjugates,
// computed level by level as resultants against the defining polynomials).
Elem relative_norm(const Elem& a, const FieldPtr& K);

// Norm of a polynomial over K = F(θ) down to F[x].
Poly norm_poly(const Poly& g);

// Integer-polynomial factorization used for the ℚ case (coefficients low to high).
std::vector<std::vector<mpz_class>> zassenhaus(const std::vector<mpz_class>& f);

// Finite-field helpers.
std::vector<Factor> factor_finite(const Poly& f);
Poly least_irreducible(const FieldPtr& F, int degree);

}  // namespace brauer
