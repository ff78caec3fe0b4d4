#include "brauer/series.hpp"

#include <algorithm>

#include "brauer/errors.hpp"

namespace brauer {

bool Series::normalize() {
    size_t k = 0;
    while (k < c.size() && c[k].is_zero()) ++k;
    if (k == c.size()) {
        val += static_cast<int>(k);
        c.clear();
        return false;
    }
    c.erase(c.begin(), c.begin() + static_cast<long>(k));
    val += static_cast<int>(k);
    return true;
}

Series series_const(const Elem& a, int prec) {
    Series s;
    s.val = 0;
    s.c.assign(std::max(prec, 0), a.field()->zero());
    if (prec > 0) s.c[0] = a;
    return s;
}

namespace {

const FieldPtr& field_of(const Series& a, const Series& b) {
    if (!a.c.empty()) return a.c[0].field();
    if (!b.c.empty()) return b.c[0].field();
    fail("Internal", "series with no coefficients");
}

}  // namespace

Series operator+(const Series& a, const Series& b) {
    const FieldPtr& L = field_of(a, b);
    int lo = std::min(a.val, b.val), hi = std::min(a.prec(), b.prec());
    Series r;
    r.val = lo;
    r.c.assign(std::max(hi - lo, 0), L->zero());
    for (int i = lo; i < hi; ++i) {
        Elem s = L->zero();
        if (i >= a.val && i < a.prec()) s = s + a.c[i - a.val];
        if (i >= b.val && i < b.prec()) s = s + b.c[i - b.val];
        r.c[i - lo] = s;
    }
    return r;
}

Series operator-(const Series& a, const Series& b) {
    Series nb = b;
    for (auto& e : nb.c) e = -e;
    return a + nb;
}

Series operator*(const Series& a0, const Series& b0) {
    Series a = a0, b = b0;
    a.normalize();
    b.normalize();
    const FieldPtr& L = field_of(a0, b0);
    Series r;
    r.val = a.val + b.val;
    // relative precision is the smaller of the two
    size_t n = std::min(a.c.size(), b.c.size());
    if (a.c.empty() || b.c.empty()) {
        // exact zero is unknown: result is O(t^k)
        r.val = std::min(a.prec() + (b.c.empty() ? b.prec() : b.val), b.prec() + (a.c.empty() ? a.prec() : a.val));
        return r;
    }
    r.c.assign(n, L->zero());
    for (size_t i = 0; i < n; ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; i + j < n; ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
    return r;
}

Series operator/(const Series& a0, const Series& b0) {
    Series a = a0, b = b0;
    a.normalize();
    if (!b.normalize()) fail("PoleAtEvaluation", "series division by zero to working precision");
    const FieldPtr& L = b.c[0].field();
    size_t n = std::min(a.c.size(), b.c.size());
    Series r;
    r.val = a.val - b.val;
    if (a.c.empty()) {
        r.val = a.prec() - b.val;
        return r;
    }
    // long division
    Elem inv0 = inverse(b.c[0]);
    std::vector<Elem> rem(a.c.begin(), a.c.begin() + static_cast<long>(n));
    r.c.assign(n, L->zero());
    for (size_t i = 0; i < n; ++i) {
        Elem q = rem[i] * inv0;
        r.c[i] = q;
        if (q.is_zero()) continue;
        for (size_t j = 0; i + j < n; ++j) rem[i + j] = rem[i + j] - q * b.c[j];
    }
    return r;
}

Series eval(const Poly& f, const Series& x, const FieldPtr& L) {
    int n = static_cast<int>(x.c.size());
    if (f.is_zero()) {
        Series z = series_const(L->zero(), n);
        return z;
    }
    Series acc = series_const(embed(f.lc(), L), n + std::max(0, -x.val) * f.deg() + 1);
    for (int i = f.deg() - 1; i >= 0; --i) acc = acc * x + series_const(embed(f.c[i], L), n + 64);
    return acc;
}

LocalCoords local_coords(const Curve& E0, const Point& P, int n) {
    FieldPtr L = P.inf ? E0.field() : P.x.field();
    if (!P.inf && P.y.field() != L) L = P.y.field()->contains(L) ? P.y.field() : L;
    Curve E = E0.field() == L ? E0 : E0.over(L);
    Elem A = E.A(), B = E.B(), zero = L->zero(), one = L->one();
    LocalCoords lc;
    if (P.inf) {
        // v = 1/y in w = x/y: v = w³ + A w v² + B v³
        Series w;
        w.val = 1;
        w.c.assign(n + 8, zero);
        w.c[0] = one;
        Series v;
        v.val = 3;
        v.c.assign(n + 8, zero);
        v.c[0] = one;
        Series w3 = w * w * w;
        for (int it = 0; it < n / 2 + 4; ++it) {
            Series nv = w3 + series_const(A, n + 12) * w * v * v + series_const(B, n + 12) * v * v * v;
            nv.normalize();
            nv.c.resize(n + 8, zero);
            v = nv;
        }
        Series one_s = series_const(one, n + 8);
        lc.x = w / v;
        lc.y = one_s / v;
        return lc;
    }
    Elem x0 = embed(P.x, L), y0 = embed(P.y, L);
    if (!y0.is_zero()) {
        lc.x.val = 0;
        lc.x.c.assign(n, zero);
        lc.x.c[0] = x0;
        if (n > 1) lc.x.c[1] = one;
        // y² = F(x0 + t)
        Poly Fs = compose(E.rhs(), Poly(L, {x0, one}));
        std::vector<Elem> y(n, zero);
        y[0] = y0;
        Elem inv2y = inverse(2 * y0);
        for (int k = 1; k < n; ++k) {
            Elem s = Fs.coeff(k);
            for (int i = 1; i < k; ++i) s = s - y[i] * y[k - i];
            y[k] = s * inv2y;
        }
        lc.y.val = 0;
        lc.y.c = y;
        return lc;
    }
    // 2-torsion: t = y, x = x0 + s with F'(x0)s + 3x0 s² + s³ = t²
    Elem d = 3 * x0 * x0 + A;
    Elem dinv = inverse(d);
    Series t;
    t.val = 1;
    t.c.assign(n + 4, zero);
    t.c[0] = one;
    Series t2 = t * t;
    Series s;
    s.val = 2;
    s.c.assign(n + 4, zero);
    s.c[0] = dinv;
    for (int it = 0; it < n / 2 + 4; ++it) {
        Series ns = (t2 - series_const(3 * x0, n + 8) * s * s - s * s * s) * series_const(dinv, n + 8);
        ns.normalize();
        ns.c.resize(n + 4, zero);
        s = ns;
    }
    lc.x = series_const(x0, n + 4) + s;
    lc.y = t;
    return lc;
}

}  // namespace brauer
