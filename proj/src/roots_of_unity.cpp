#include "brauer/roots_of_unity.hpp"

#include "brauer/errors.hpp"
#include "brauer/factor.hpp"

namespace brauer {

bool is_odd_prime(long q) {
    if (q < 3 || q % 2 == 0) return false;
    for (long d = 3; d * d <= q; d += 2)
        if (q % d == 0) return false;
    return true;
}

Elem find_rho(const FieldPtr& F, int q, const std::optional<Elem>& supplied) {
    if (!is_odd_prime(q)) fail("BadPrime", "q must be an odd prime");
    std::int64_t p = F->characteristic();
    if (p != 0 && (6 * static_cast<std::int64_t>(q)) % p == 0)
        fail("BadCharacteristic", "characteristic divides 6q");
    if (supplied) {
        Elem r = embed(*supplied, F);
        if (r.is_one() || !pow(r, static_cast<long>(q)).is_one())
            fail("NoRootOfUnity", "supplied rho is not a primitive q-th root of unity");
        return r;
    }
    std::vector<long> cyclo(q, 1);
    auto rs = roots(Poly::from_ints(F, cyclo));
    if (rs.empty()) fail("NoRootOfUnity", "field has no primitive " + std::to_string(q) + "-th root of unity");
    return rs.front();
}

int rho_index(const Elem& u, const Elem& rho, int q) {
    Elem v = embed(u, rho.field());
    Elem acc = rho.field()->one();
    for (int i = 0; i < q; ++i) {
        if (acc == v) return i;
        acc = acc * rho;
    }
    fail("NotRootOfUnity", to_string(u) + " is not a power of rho");
}

}  // namespace brauer
