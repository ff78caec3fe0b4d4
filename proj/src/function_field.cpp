#include "brauer/function_field.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "brauer/errors.hpp"
#include "brauer/factor.hpp"

namespace brauer {

// ---- divisors ----

Divisor Divisor::of(std::vector<std::pair<Point, int>> t) {
    Divisor D;
    for (auto& [P, n] : t) D = D + Divisor{{{P, n}}};
    return D;
}

int Divisor::degree() const {
    int d = 0;
    for (auto& [P, n] : terms) d += n;
    return d;
}

Point Divisor::sum(const Curve& E) const {
    Point S = Point::zero();
    for (auto& [P, n] : terms) S = E.add(S, E.mul(n, P));
    return S;
}

int Divisor::mult(const Point& P) const {
    for (auto& [R, n] : terms)
        if (R == P) return n;
    return 0;
}

Divisor operator+(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    for (auto& [P, n] : b.terms) {
        auto it = std::find_if(r.terms.begin(), r.terms.end(), [&](auto& t) { return t.first == P; });
        if (it == r.terms.end()) {
            r.terms.push_back({P, n});
        } else {
            it->second += n;
        }
    }
    r.terms.erase(std::remove_if(r.terms.begin(), r.terms.end(), [](auto& t) { return t.second == 0; }),
                  r.terms.end());
    std::sort(r.terms.begin(), r.terms.end(), [](auto& s, auto& t) { return point_less(s.first, t.first); });
    return r;
}

Divisor operator*(int k, const Divisor& a) {
    if (k == 0) return {};
    Divisor r = a;
    for (auto& t : r.terms) t.second *= k;
    return r;
}

Divisor operator-(const Divisor& a) { return -1 * a; }
Divisor operator-(const Divisor& a, const Divisor& b) { return a + (-b); }

bool operator==(const Divisor& a, const Divisor& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (size_t i = 0; i < a.terms.size(); ++i)
        if (a.terms[i].first != b.terms[i].first || a.terms[i].second != b.terms[i].second) return false;
    return true;
}

std::string to_string(const Divisor& D) {
    if (D.terms.empty()) return "0";
    std::string s;
    for (auto& [P, n] : D.terms) {
        if (!s.empty()) s += n < 0 ? " - " : " + ";
        else if (n < 0) s += "-";
        int m = std::abs(n);
        if (m != 1) s += std::to_string(m);
        s += "(" + to_string(P) + ")";
    }
    return s;
}

// ---- function field ----

namespace {

struct FFCache {
    std::mutex mu;
    std::map<std::tuple<const Field*, std::string, std::string>, std::pair<FieldPtr, FieldPtr>> fields;
};

FFCache& cache() {
    static FFCache c;
    return c;
}

Poly lcm(const Poly& a, const Poly& b) { return monic(a * b / gcd(a, b)); }

}  // namespace

FunctionField::FunctionField(const Curve& E) : E_(E) {
    const FieldPtr& K = E.field();
    auto key = std::make_tuple(K.get(), to_string(E.A()), to_string(E.B()));
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    auto it = c.fields.find(key);
    if (it != c.fields.end()) {
        Kx_ = it->second.first;
        KE_ = it->second.second;
        return;
    }
    Kx_ = Field::rational_functions(K, "x");
    Elem F = Kx_->from_frac(E.rhs().c, {K->one()});
    KE_ = Field::extension(Kx_, {-F, Kx_->zero(), Kx_->one()}, "y", false);
    c.fields.emplace(key, std::make_pair(Kx_, KE_));
}

Elem FunctionField::x() const { return embed(Kx_->gen(), KE_); }
Elem FunctionField::y() const { return KE_->gen(); }
Elem FunctionField::constant(const Elem& a) const { return embed(embed(a, base()), KE_); }

Elem FunctionField::from_polys(const Poly& u, const Poly& v) const {
    return from_uvw({u, v, Poly::constant(base(), 1)});
}

Elem FunctionField::from_uvw(const UVW& f) const {
    if (f.w.is_zero()) fail("DivisionByZeroFunction", "zero denominator");
    const FieldPtr& K = base();
    Poly u = embed(f.u, K), v = embed(f.v, K), w = embed(f.w, K);
    Elem c0 = Kx_->from_frac(u.c, w.c), c1 = Kx_->from_frac(v.c, w.c);
    return KE_->from_coeffs({c0, c1});
}

UVW FunctionField::uvw(const Elem& f0) const {
    Elem f = embed(f0, KE_);
    const FieldPtr& K = base();
    const auto& c = f.coeffs();
    Poly n0(K, c[0].frac().num), d0(K, c[0].frac().den), n1(K, c[1].frac().num), d1(K, c[1].frac().den);
    Poly w = lcm(d0, d1);
    return {n0 * (w / d0), n1 * (w / d1), w};
}

Elem FunctionField::lift(const Elem& f, const FunctionField& from) const {
    return from.map_coeffs(f, *this, [&](const Elem& e) { return embed(e, base()); });
}

Elem FunctionField::compose(const Elem& f, const MultMap& m) const {
    UVW a = uvw(f);
    Elem xi = embed(Kx_->from_frac(m.xn.c, m.xd.c), KE_);
    Elem ups = y() * embed(Kx_->from_frac(m.yn.c, m.yd.c), KE_);
    auto horner = [&](const Poly& p) {
        Elem acc = KE_->zero();
        for (int i = p.deg(); i >= 0; --i) acc = acc * xi + constant(p.c[i]);
        return acc;
    };
    return (horner(a.u) + horner(a.v) * ups) / horner(a.w);
}

Series FunctionField::expand(const Elem& f, const Point& P) const {
    if (embed(f, KE_).is_zero()) fail("ZeroFunction", "expansion of zero");
    UVW a = uvw(f);
    FieldPtr L = P.inf ? base() : P.x.field();
    if (!P.inf && !L->contains(base())) L = base();
    Point PL = P.inf ? P : E_.over(L).embed(P, L);
    int n = 2 * (a.u.deg() + std::max(a.v.deg(), 0) + a.w.deg()) + 16;
    for (int attempt = 0; attempt < 6; ++attempt, n *= 2) {
        LocalCoords lc = local_coords(E_, PL, n);
        Series num = brauer::eval(a.u, lc.x, L) + brauer::eval(a.v, lc.x, L) * lc.y;
        Series den = brauer::eval(a.w, lc.x, L);
        if (!num.normalize() || !den.normalize()) continue;
        Series r = num / den;
        if (r.normalize()) return r;
    }
    fail("Internal", "expansion precision exhausted at " + to_string(P));
}

std::optional<Elem> FunctionField::eval(const Elem& f, const Point& P) const {
    if (!P.inf) {
        UVW a = uvw(f);
        Elem d = brauer::eval(a.w, P.x);
        if (!d.is_zero()) return (brauer::eval(a.u, P.x) + brauer::eval(a.v, P.x) * P.y) / d;
    }
    Series s = expand(f, P);
    if (s.val < 0) return std::nullopt;
    if (s.val > 0) return s.c[0].field()->zero();
    return s.c[0];
}

int FunctionField::ord(const Elem& f, const Point& P) const { return expand(f, P).val; }
Elem FunctionField::leading(const Elem& f, const Point& P) const { return expand(f, P).c[0]; }

Elem FunctionField::normalize(const Elem& f) const { return f / constant(leading(f, Point::zero())); }

Divisor FunctionField::divisor(const Elem& f, const FieldPtr& L0) const {
    FieldPtr L = L0 ? L0 : base();
    if (!L->contains(base())) fail("FieldMismatch", "divisor field must contain the base");
    if (embed(f, KE_).is_zero()) fail("ZeroFunction", "divisor of zero");
    UVW a = uvw(f);
    Poly F = E_.rhs();
    Poly N = a.u * a.u - a.v * a.v * F;
    Poly cand = embed(N * a.w, L);
    Curve EL = E_.over(L);
    std::vector<std::pair<Point, int>> terms;
    for (auto& fm : factor(cand)) {
        if (fm.f.deg() > 1) fail("NotRational", "support not defined over " + L->describe());
        Elem x0 = -fm.f.c[0];
        Elem r = EL.rhs(x0);
        if (r.is_zero()) {
            Point P = Point::affine(x0, r);
            if (int o = ord(f, P)) terms.push_back({P, o});
            continue;
        }
        if (auto y0 = qth_root(r, 2)) {
            for (const Elem& y : {*y0, -*y0}) {
                Point P = Point::affine(x0, y);
                if (int o = ord(f, P)) terms.push_back({P, o});
            }
        } else {
            FieldPtr L2 = Field::extension(L, {-r, L->zero(), L->one()}, "s", false);
            if (ord(f, Point::affine(embed(x0, L2), L2->gen())) != 0)
                fail("NotRational", "support point with x = " + to_string(x0) + " not over " + L->describe());
        }
    }
    if (int o = ord(f, Point::zero())) terms.push_back({Point::zero(), o});
    Divisor D = Divisor::of(terms);
    if (D.degree() != 0) fail("Internal", "divisor degree " + std::to_string(D.degree()));
    return D;
}

Elem FunctionField::line_ratio(const Point& A0, const Point& B0) const {
    if (A0.inf || B0.inf) return KE_->one();
    const FieldPtr& K = base();
    Point A = E_.embed(A0, K), B = E_.embed(B0, K);
    Elem X = x(), Y = y();
    if (A.x == B.x && (A.y + B.y).is_zero()) return X - constant(A.x);
    Elem lam = A.x == B.x ? (3 * A.x * A.x + E_.A()) / (2 * A.y) : (B.y - A.y) / (B.x - A.x);
    Elem line = Y - constant(A.y) - constant(lam) * (X - constant(A.x));
    Point C = E_.add(A, B);
    return line / (X - constant(C.x));
}

Elem FunctionField::miller(long n, const Point& P) const {
    if (n == 0 || P.inf) return KE_->one();
    long m = std::labs(n);
    int top = 63 - __builtin_clzl(static_cast<unsigned long>(m));
    Elem f = KE_->one();
    Point T = P;
    for (int b = top - 1; b >= 0; --b) {
        f = f * f * line_ratio(T, T);
        T = E_.add(T, T);
        if ((m >> b) & 1) {
            f = f * line_ratio(T, P);
            T = E_.add(T, P);
        }
    }
    if (n > 0) return f;
    Elem v = T.inf ? KE_->one() : x() - constant(T.x);
    return inverse(f * v);
}

Elem FunctionField::with_divisor(const Divisor& D) const {
    if (D.degree() != 0) fail("NotPrincipal", "degree " + std::to_string(D.degree()));
    if (!D.sum(E_).inf) fail("NotPrincipal", "divisor sum " + to_string(D.sum(E_)) + " is not 0");
    Elem f = KE_->one();
    std::vector<Point> Qs;
    for (auto& [P, n] : D.terms) {
        if (P.inf) continue;
        Point Pk = E_.embed(P, base());
        f = f * miller(n, Pk);
        Qs.push_back(E_.mul(n, Pk));
    }
    Point S = Point::zero();
    for (const Point& Q : Qs) {
        f = f * line_ratio(S, Q);
        S = E_.add(S, Q);
    }
    return normalize(f);
}

// ---- pointwise Miller and the Weil pairing ----

namespace {

Elem line_value(const Curve& E, const Point& A, const Point& B, const Point& Q) {
    if (A.inf || B.inf) return Q.x.field()->one();
    Elem num, den;
    if (A.x == B.x && (A.y + B.y).is_zero()) {
        num = Q.x - A.x;
        den = Q.x.field()->one();
    } else {
        Elem lam = A.x == B.x ? (3 * A.x * A.x + E.A()) / (2 * A.y) : (B.y - A.y) / (B.x - A.x);
        num = Q.y - A.y - lam * (Q.x - A.x);
        den = Q.x - E.add(A, B).x;
    }
    if (num.is_zero() || den.is_zero()) fail("PoleAtEvaluation", "line meets " + to_string(Q));
    return num / den;
}

}  // namespace

Elem miller_value(const Curve& E0, long n, const Point& P0, const Point& Q0) {
    if (Q0.inf) fail("PoleAtEvaluation", "evaluation at 0");
    FieldPtr L = Q0.x.field();
    if (!P0.inf && P0.x.field()->contains(L)) L = P0.x.field();
    Curve E = E0.over(L);
    Point P = E.embed(P0, L), Q = E.embed(Q0, L);
    if (n == 0 || P.inf) return L->one();
    long m = std::labs(n);
    int top = 63 - __builtin_clzl(static_cast<unsigned long>(m));
    Elem f = L->one();
    Point T = P;
    for (int b = top - 1; b >= 0; --b) {
        f = f * f * line_value(E, T, T, Q);
        T = E.add(T, T);
        if ((m >> b) & 1) {
            f = f * line_value(E, T, P, Q);
            T = E.add(T, P);
        }
    }
    if (n > 0) return f;
    Elem v = T.inf ? L->one() : Q.x - T.x;
    if (v.is_zero()) fail("PoleAtEvaluation", "vertical meets " + to_string(Q));
    return inverse(f * v);
}

Elem weil_pairing(const Curve& E0, const Point& S0, const Point& T0, int q) {
    FieldPtr L = E0.field();
    for (const Point* P : {&S0, &T0})
        if (!P->inf && P->x.field()->contains(L)) L = P->x.field();
    Curve E = E0.over(L);
    Point S = E.embed(S0, L), T = E.embed(T0, L);
    if (!E.contains(S) || !E.contains(T)) fail("PointNotOnCurve", "pairing arguments");
    if (!E.mul(q, S).inf || !E.mul(q, T).inf) fail("NotTorsion", "pairing needs q-torsion points");
    if (S.inf || T.inf) return L->one();
    for (int m = 1; m < q; ++m)
        if (E.mul(m, S) == T) return L->one();
    Elem r = miller_value(E, q, S, T) / miller_value(E, q, T, S);
    if (q % 2 == 1) r = -r;
    return inverse(r);
}

}  // namespace brauer
