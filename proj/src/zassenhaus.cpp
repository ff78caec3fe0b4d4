// Factorization of primitive squarefree integer polynomials: modular factorization,
// quadratic Hensel lifting along a binary factor tree, subset recombination.
#include <algorithm>

#include "brauer/errors.hpp"
#include "brauer/factor.hpp"

namespace brauer {

namespace {

using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmod(ZPoly a, const mpz_class& m) {
    for (auto& x : a) {
        x %= m;
        if (x < 0) x += m;
    }
    ztrim(a);
    return a;
}

ZPoly zsym(ZPoly a, const mpz_class& m) {
    mpz_class half = m / 2;
    for (auto& x : a) {
        x %= m;
        if (x < 0) x += m;
        if (x > half) x -= m;
    }
    ztrim(a);
    return a;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    ztrim(r);
    return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
    ZPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    ztrim(r);
    return r;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const mpz_class& m) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return zmod(r, m);
}

mpz_class zinv(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t())) fail("Internal", "non-invertible modulus");
    return r;
}

// Division by a polynomial whose leading coefficient is a unit mod m.
std::pair<ZPoly, ZPoly> zdivmod(ZPoly a, const ZPoly& b, const mpz_class& m) {
    a = zmod(a, m);
    int db = static_cast<int>(b.size()) - 1;
    if (static_cast<int>(a.size()) - 1 < db) return {{}, a};
    mpz_class li = zinv(b.back(), m);
    ZPoly q(a.size() - db, 0);
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        mpz_class c = (a[i] * li) % m;
        if (c < 0) c += m;
        q[i - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) a[i - db + j] = (a[i - db + j] - c * b[j]) % m;
    }
    a = zmod(a, m);
    ztrim(q);
    return {q, a};
}

Poly to_fp(const ZPoly& a, const FieldPtr& Fp) {
    std::vector<Elem> c;
    for (auto& x : a) c.push_back(Fp->from_mpz(x));
    return Poly(Fp, c);
}

ZPoly from_fp(const Poly& a) {
    ZPoly r;
    for (auto& x : a.c) r.push_back(mpz_class(x.residue()));
    ztrim(r);
    return r;
}

struct Lifted {
    ZPoly g, h, s, t;
};

// One quadratic Hensel step: f ≡ g·h, s·g + t·h ≡ 1 (mod m)  →  same mod m².
Lifted hensel_step(const ZPoly& f, const Lifted& in, const mpz_class& m) {
    mpz_class m2 = m * m;
    ZPoly e = zmod(zsub(f, zmul(in.g, in.h, m2)), m2);
    auto [q, r] = zdivmod(zmul(in.s, e, m2), in.h, m2);
    ZPoly g2 = zmod(zadd(zadd(in.g, zmul(in.t, e, m2)), zmul(q, in.g, m2)), m2);
    ZPoly h2 = zmod(zadd(in.h, r), m2);
    ZPoly b = zmod(zsub(zadd(zmul(in.s, g2, m2), zmul(in.t, h2, m2)), ZPoly{1}), m2);
    auto [c, d] = zdivmod(zmul(in.s, b, m2), h2, m2);
    ZPoly s2 = zmod(zsub(in.s, d), m2);
    ZPoly t2 = zmod(zsub(zsub(in.t, zmul(in.t, b, m2)), zmul(c, g2, m2)), m2);
    return {g2, h2, s2, t2};
}

void multi_lift(const ZPoly& f, const std::vector<ZPoly>& facs, const mpz_class& p, const mpz_class& M,
                const FieldPtr& Fp, std::vector<ZPoly>& out) {
    if (facs.size() == 1) {
        mpz_class li = zinv(f.back(), M);
        ZPoly r = f;
        for (auto& x : r) x *= li;
        out.push_back(zmod(r, M));
        return;
    }
    size_t k = facs.size() / 2;
    ZPoly g0{f.back() % p}, h0{1};
    for (size_t i = 0; i < k; ++i) g0 = zmul(g0, facs[i], p);
    for (size_t i = k; i < facs.size(); ++i) h0 = zmul(h0, facs[i], p);
    Xgcd x = xgcd(to_fp(g0, Fp), to_fp(h0, Fp));
    Lifted cur{g0, h0, from_fp(x.s), from_fp(x.t)};
    mpz_class m = p;
    while (m < M) {
        cur = hensel_step(f, cur, m);
        m *= m;
    }
    std::vector<ZPoly> left(facs.begin(), facs.begin() + k), right(facs.begin() + k, facs.end());
    multi_lift(zmod(cur.g, M), left, p, M, Fp, out);
    multi_lift(zmod(cur.h, M), right, p, M, Fp, out);
}

mpz_class content(const ZPoly& a) {
    mpz_class g = 0;
    for (auto& x : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

ZPoly primitive(ZPoly a) {
    mpz_class g = content(a);
    if (g == 0) return a;
    if (a.back() < 0) g = -g;
    for (auto& x : a) x /= g;
    return a;
}

// Exact division over ℤ; returns false if b does not divide a.
bool zexact_div(const ZPoly& a, const ZPoly& b, ZPoly& q) {
    ZPoly r = a;
    int db = static_cast<int>(b.size()) - 1;
    int da = static_cast<int>(a.size()) - 1;
    if (da < db) return false;
    q.assign(da - db + 1, 0);
    for (int i = da; i >= db; --i) {
        if (r[i] == 0) continue;
        if (!mpz_divisible_p(r[i].get_mpz_t(), b.back().get_mpz_t())) return false;
        mpz_class c = r[i] / b.back();
        q[i - db] = c;
        for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
    }
    for (auto& x : r)
        if (x != 0) return false;
    ztrim(q);
    return true;
}

bool next_combination(std::vector<int>& idx, int n) {
    int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<ZPoly> zassenhaus(const ZPoly& f_in) {
    ZPoly f = primitive(f_in);
    ztrim(f);
    int n = static_cast<int>(f.size()) - 1;
    if (n <= 1) return {f};
    // linear factors of x (f(0) = 0) are handled by the general path since f is squarefree

    // prime selection: fewest modular factors among a few good primes
    mpz_class best_p = 0;
    std::vector<Factor> best_f;
    int good = 0;
    for (long pc = 3; good < 5 && pc < 2000; pc += 2) {
        if (!mpz_probab_prime_p(mpz_class(pc).get_mpz_t(), 25)) continue;
        if (mpz_divisible_ui_p(f.back().get_mpz_t(), pc)) continue;
        FieldPtr Fp = Field::prime(pc);
        Poly fp = to_fp(f, Fp);
        if (gcd(fp, derivative(fp)).deg() > 0) continue;
        auto fs = factor_finite(fp);
        ++good;
        if (best_p == 0 || fs.size() < best_f.size()) {
            best_p = pc;
            best_f = fs;
        }
        if (fs.size() == 1) break;
    }
    if (best_p == 0) fail("Internal", "no good prime for Zassenhaus");
    if (best_f.size() == 1) return {f};

    // coefficient bound for factors (Mignotte, generous)
    mpz_class maxc = 0;
    for (auto& x : f) {
        mpz_class ax = abs(x);
        if (ax > maxc) maxc = ax;
    }
    mpz_class nrm;
    mpz_sqrt(nrm.get_mpz_t(), mpz_class(maxc * maxc * (n + 1)).get_mpz_t());
    nrm += 1;
    mpz_class bound = nrm;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n);
    bound *= 2 * abs(f.back());
    mpz_class M = best_p;
    while (M <= bound) M *= M;

    FieldPtr Fp = Field::prime(best_p.get_si());
    std::vector<ZPoly> modf;
    for (auto& fm : best_f) modf.push_back(from_fp(fm.f));
    std::vector<ZPoly> lifted;
    multi_lift(zmod(f, M), modf, best_p, M, Fp, lifted);

    std::vector<ZPoly> result;
    std::vector<ZPoly> rem = lifted;
    ZPoly F = f;
    int d = 1;
    while (2 * d <= static_cast<int>(rem.size())) {
        bool found = false;
        std::vector<int> idx(d);
        for (int i = 0; i < d; ++i) idx[i] = i;
        do {
            ZPoly g{F.back()};
            for (int i : idx) g = zmul(g, rem[i], M);
            g = primitive(zsym(g, M));
            ZPoly q;
            if (zexact_div(F, g, q)) {
                result.push_back(g);
                F = q;
                std::vector<ZPoly> nr;
                for (int i = 0; i < static_cast<int>(rem.size()); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) nr.push_back(rem[i]);
                rem = nr;
                found = true;
                break;
            }
        } while (next_combination(idx, static_cast<int>(rem.size())));
        if (!found) ++d;
    }
    if (F.size() > 1) result.push_back(primitive(F));
    return result;
}

}  // namespace brauer
