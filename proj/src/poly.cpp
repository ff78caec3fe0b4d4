#include "brauer/poly.hpp"

#include "brauer/errors.hpp"

namespace brauer {

Poly::Poly(FieldPtr f, std::vector<Elem> coeffs) : F(std::move(f)), c(std::move(coeffs)) {
    for (auto& x : c)
        if (x.field() != F) x = embed(x, F);
    trim();
}

void Poly::trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

Poly Poly::constant(const Elem& a) { return Poly(a.field(), {a}); }
Poly Poly::constant(const FieldPtr& f, long v) { return Poly(f, {f->from_int(v)}); }

Poly Poly::monomial(const Elem& a, int d) {
    std::vector<Elem> c(d + 1, a.field()->zero());
    c[d] = a;
    return Poly(a.field(), std::move(c));
}

Poly Poly::x(const FieldPtr& f) { return monomial(f->one(), 1); }

Poly Poly::from_ints(const FieldPtr& f, const std::vector<long>& ints) {
    std::vector<Elem> c;
    for (long v : ints) c.push_back(f->from_int(v));
    return Poly(f, std::move(c));
}

Elem Poly::coeff(int i) const { return i >= 0 && i <= deg() ? c[i] : F->zero(); }

namespace {
FieldPtr common(const Poly& a, const Poly& b) {
    if (a.F == b.F) return a.F;
    if (a.F->contains(b.F)) return a.F;
    if (b.F->contains(a.F)) return b.F;
    fail("FieldMismatch", "polynomials over different fields");
}
}  // namespace

Poly embed(const Poly& f, const FieldPtr& target) {
    if (f.F == target) return f;
    std::vector<Elem> c;
    c.reserve(f.c.size());
    for (const auto& x : f.c) c.push_back(embed(x, target));
    Poly r(target);
    r.c = std::move(c);
    return r;
}

Poly operator+(const Poly& a0, const Poly& b0) {
    FieldPtr F = common(a0, b0);
    const Poly& a = a0.F == F ? a0 : embed(a0, F);
    const Poly& b = b0.F == F ? b0 : embed(b0, F);
    Poly r(F);
    size_t n = std::max(a.c.size(), b.c.size());
    r.c.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        if (i < a.c.size() && i < b.c.size()) r.c.push_back(a.c[i] + b.c[i]);
        else if (i < a.c.size()) r.c.push_back(a.c[i]);
        else r.c.push_back(b.c[i]);
    }
    r.trim();
    return r;
}

Poly operator-(const Poly& a) {
    Poly r(a.F);
    r.c.reserve(a.c.size());
    for (const auto& x : a.c) r.c.push_back(-x);
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a0, const Poly& b0) {
    FieldPtr F = common(a0, b0);
    if (a0.is_zero() || b0.is_zero()) return Poly(F);
    const Poly& a = a0.F == F ? a0 : embed(a0, F);
    const Poly& b = b0.F == F ? b0 : embed(b0, F);
    std::vector<Elem> c(a.c.size() + b.c.size() - 1, F->zero());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j].is_zero()) continue;
            c[i + j] += a.c[i] * b.c[j];
        }
    }
    Poly r(F);
    r.c = std::move(c);
    r.trim();
    return r;
}

Poly operator*(const Elem& k, const Poly& a) {
    if (k.is_zero()) return Poly(a.F);
    Poly r(a.F);
    r.c.reserve(a.c.size());
    for (const auto& x : a.c) r.c.push_back(k * x);
    if (r.c.size() && r.c[0].field() != a.F) r.F = r.c[0].field();
    r.trim();
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != b.c[i]) return false;
    return true;
}

std::pair<Poly, Poly> divmod(const Poly& a0, const Poly& b0) {
    if (b0.is_zero()) fail("DivisionByZero", "polynomial division by zero");
    FieldPtr F = common(a0, b0);
    Poly a = a0.F == F ? a0 : embed(a0, F);
    const Poly b = b0.F == F ? b0 : embed(b0, F);
    if (a.deg() < b.deg()) return {Poly(F), a};
    int db = b.deg();
    Elem li = b.lc().is_one() ? b.lc() : inverse(b.lc());
    std::vector<Elem> q(a.deg() - db + 1, F->zero());
    std::vector<Elem>& r = a.c;
    for (int i = a.deg(); i >= db; --i) {
        if (r[i].is_zero()) continue;
        Elem coef = r[i] * li;
        q[i - db] = coef;
        for (int j = 0; j < db; ++j)
            if (!b.c[j].is_zero()) r[i - db + j] -= coef * b.c[j];
        r[i] = F->zero();
    }
    Poly qq(F), rr(F);
    qq.c = std::move(q);
    qq.trim();
    rr.c = std::move(r);
    rr.trim();
    return {qq, rr};
}

Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly monic(const Poly& a) {
    if (a.is_zero() || a.lc().is_one()) return a;
    return inverse(a.lc()) * a;
}

Poly gcd(const Poly& a0, const Poly& b0) {
    Poly a = a0, b = b0;
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

Xgcd xgcd(const Poly& a, const Poly& b) {
    FieldPtr F = common(a, b);
    Poly r0 = a, r1 = b;
    Poly s0 = Poly::constant(F, 1), s1(F);
    Poly t0(F), t1 = Poly::constant(F, 1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Elem li = inverse(r0.lc());
    return {li * r0, li * s0, li * t0};
}

Elem eval(const Poly& f, const Elem& x) {
    Elem acc = x.field()->contains(f.F) ? x.field()->zero() : f.F->zero();
    for (int i = f.deg(); i >= 0; --i) acc = acc * x + f.c[i];
    return acc;
}

Poly derivative(const Poly& f) {
    Poly r(f.F);
    for (int i = 1; i <= f.deg(); ++i) r.c.push_back(f.F->from_int(i) * f.c[i]);
    r.trim();
    return r;
}

Poly pow(const Poly& f, int e) {
    Poly r = Poly::constant(f.F, 1), b = f;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Poly powmod(const Poly& f, const mpz_class& e, const Poly& m) {
    Poly r = Poly::constant(f.F, 1);
    Poly b = f % m;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        r = (r * r) % m;
        if (mpz_tstbit(e.get_mpz_t(), i)) r = (r * b) % m;
    }
    return r;
}

Poly compose(const Poly& f, const Poly& g) {
    Poly acc(g.F);
    for (int i = f.deg(); i >= 0; --i) acc = acc * g + Poly::constant(embed(f.c[i], g.F));
    return acc;
}

Elem resultant(const Poly& a0, const Poly& b0) {
    FieldPtr F = common(a0, b0);
    Poly a = embed(a0, F), b = embed(b0, F);
    if (a.is_zero() || b.is_zero()) return F->zero();
    Elem res = F->one();
    while (b.deg() > 0) {
        Poly r = a % b;
        if (r.is_zero()) return F->zero();
        // Res(a,b) = (-1)^{deg a deg b} lc(b)^{deg a - deg r} Res(b, r)
        if ((a.deg() % 2) && (b.deg() % 2)) res = -res;
        res = res * pow(b.lc(), static_cast<long>(a.deg() - r.deg()));
        a = std::move(b);
        b = std::move(r);
    }
    // b constant
    return res * pow(b.lc(), static_cast<long>(a.deg()));
}

Poly x_pow_minus(const FieldPtr& f, int n, const Elem& a) {
    std::vector<Elem> c(n + 1, f->zero());
    c[0] = -embed(a, f);
    c[n] = f->one();
    return Poly(f, std::move(c));
}

int compare(const Poly& a, const Poly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg() ? -1 : 1;
    for (int i = a.deg(); i >= 0; --i) {
        int c = compare(a.c[i], b.c[i]);
        if (c) return c;
    }
    return 0;
}

}  // namespace brauer
