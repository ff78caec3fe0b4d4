#pragma once

#include <optional>

#include "brauer/field.hpp"

namespace brauer {

// Primitive q-th root of unity in F. A supplied candidate is verified; otherwise
// the least root of the q-th cyclotomic polynomial is taken.
// Errors: BadCharacteristic (char | 6q), NoRootOfUnity.
Elem find_rho(const FieldPtr& F, int q, const std::optional<Elem>& supplied = std::nullopt);

// i in [0, q) with u = rho^i. Errors: NotRootOfUnity.
int rho_index(const Elem& u, const Elem& rho, int q);

bool is_odd_prime(long q);

}  // namespace brauer
