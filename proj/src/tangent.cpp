#include "brauer/tangent.hpp"

#include "brauer/errors.hpp"
#include "brauer/factor.hpp"

namespace brauer {

int pole_order(const CoordPoly& f) {
    int a = f.u.is_zero() ? -1 : 2 * f.u.deg();
    int b = f.v.is_zero() ? -1 : 2 * f.v.deg() + 3;
    return std::max(a, b);
}

namespace {

Elem coord_lc(const CoordPoly& f) {
    int a = f.u.is_zero() ? -1 : 2 * f.u.deg();
    int b = f.v.is_zero() ? -1 : 2 * f.v.deg() + 3;
    return a > b ? f.u.lc() : f.v.lc();
}

CoordPoly cmul(const CoordPoly& a, const CoordPoly& b, const Poly& F) {
    return {a.u * b.u + a.v * b.v * F, a.u * b.v + a.v * b.u};
}

CoordPoly cpow(const CoordPoly& a, int e, const Poly& F) {
    CoordPoly r{Poly::constant(F.F, 1), Poly(F.F)};
    for (int i = 0; i < e; ++i) r = cmul(r, a, F);
    return r;
}

// x^i or x^i·y with the given pole order
CoordPoly monomial(const FieldPtr& K, int j, const Elem& c) {
    if (j % 2 == 0) return {Poly::monomial(c, j / 2), Poly(K)};
    return {Poly(K), Poly::monomial(c, (j - 3) / 2)};
}

CoordPoly cadd(const CoordPoly& a, const CoordPoly& b) { return {a.u + b.u, a.v + b.v}; }
CoordPoly csub(const CoordPoly& a, const CoordPoly& b) { return {a.u - b.u, a.v - b.v}; }

// Points X over K or a quadratic extension, avoiding E[q] and the supports.
int sample_check(const CertifiedFunction& c, int want, std::vector<std::string>* log) {
    const FunctionField& ff = c.ff;
    const Curve& E = ff.curve();
    const FieldPtr& K = ff.base();
    int good = 0;
    for (long i = 1; i < 200 && good < want; ++i) {
        Elem x0 = K->from_int(i);
        if (K->is_finite() && K->cardinality() <= i) break;
        Elem r = E.rhs(x0);
        if (r.is_zero()) continue;
        FieldPtr L = K;
        Elem y0;
        if (auto s = qth_root(r, 2)) {
            y0 = *s;
        } else {
            L = Field::extension(K, {-r, K->zero(), K->one()}, "s", false);
            y0 = L->gen();
            x0 = embed(x0, L);
        }
        Curve EL = E.over(L);
        Point X = EL.point(x0, y0);
        Point qX = EL.mul(c.q, X);
        if (qX.inf) continue;
        auto tv = ff.eval(c.t, qX);
        auto gv = ff.eval(c.g, X);
        if (!tv || !gv || tv->is_zero() || gv->is_zero()) continue;
        if (*tv != pow(*gv, static_cast<long>(c.q))) {
            if (log) log->push_back("sample mismatch at " + to_string(X));
            return -1;
        }
        ++good;
        if (log) log->push_back("sample ok at " + to_string(X));
    }
    return good;
}

}  // namespace

CertifiedFunction normalize_tangent(const FunctionField& ff, const Point& P0, int q) {
    const Curve& E = ff.curve();
    const FieldPtr& K = ff.base();
    if (P0.inf) fail("NotOrderQ", "identity has no tangent certificate");
    Point P = E.embed(P0, K);
    if (!E.mul(q, P).inf || E.order(P, q) != q) fail("NotOrderQ", to_string(P) + " does not have order " + std::to_string(q));
    CertifiedFunction c;
    c.ff = ff;
    c.P = P;
    c.q = q;
    Elem t0;
    if (q == 3) {
        Elem lam = (3 * P.x * P.x + E.A()) / (2 * P.y);
        t0 = ff.y() - ff.constant(P.y) - ff.constant(lam) * (ff.x() - ff.constant(P.x));
    } else {
        t0 = ff.with_divisor(Divisor::of({{P, q}, {Point::zero(), -q}}));
    }
    t0 = ff.normalize(t0);

    // H = (t0∘[q])·ψ_q^q lies in the coordinate ring with pole order q³
    MultMap m = mult_by_q_map(E, q, 64);
    Elem T = ff.compose(t0, m);
    Poly psi = division_polynomial(E, q);
    Elem Hf = T * pow(ff.from_polys(psi, Poly(K)), static_cast<long>(q));
    UVW hw = ff.uvw(Hf);
    if (hw.w.deg() != 0) fail("CertificateMismatch", "t∘[q]·ψ_q^q is not a polynomial");
    Elem winv = inverse(hw.w.lc());
    CoordPoly H{winv * hw.u, winv * hw.v};
    const int q2 = q * q;
    if (pole_order(H) != q * q2) fail("CertificateMismatch", "unexpected pole order of t∘[q]·ψ_q^q");
    Elem cst = coord_lc(H);
    Elem cinv = inverse(cst);
    CoordPoly G{cinv * H.u, cinv * H.v};

    // greedy q-th root: the coefficient at pole order j enters h^q at q²(q−1) + j with factor q
    Poly F = E.rhs();
    CoordPoly h = monomial(K, q2, K->one());
    Elem qinv = inverse(K->from_int(q));
    for (int step = 0; step <= q2; ++step) {
        CoordPoly r = csub(G, cpow(h, q, F));
        if (r.u.is_zero() && r.v.is_zero()) break;
        int j = pole_order(r) - q2 * (q - 1);
        if (j < 0 || j >= q2 || j == 1 || step == q2) fail("CertificateMismatch", "t∘[q] is not a q-th power");
        h = cadd(h, monomial(K, j, coord_lc(r) * qinv));
    }
    Elem g = ff.from_polys(h.u, h.v) / ff.from_polys(psi, Poly(K));
    c.transcript.push_back("lc(t∘[q]·psi^q) = " + to_string(cst));
    if (auto r = qth_root(cst, q)) {
        c.t = t0;
        c.scaling = K->one();
        c.g = ff.constant(*r) * g;
        c.transcript.push_back("constant is a q-th power; tangent kept");
    } else {
        c.t = ff.constant(cinv) * t0;
        c.scaling = cinv;
        c.g = g;
        c.transcript.push_back("tangent scaled by " + to_string(cinv));
    }
    c.exact_identity = ff.compose(c.t, m) == pow(c.g, static_cast<long>(q));
    if (!c.exact_identity) fail("CertificateMismatch", "g^q != t∘[q]");
    c.div = ff.divisor(c.t, P.x.field()->contains(K) ? P.x.field() : K);
    if (!(c.div == Divisor::of({{P, q}, {Point::zero(), -q}})))
        fail("CertificateMismatch", "div(t) = " + to_string(c.div));
    c.samples = sample_check(c, 3, &c.transcript);
    if (c.samples < 0) fail("CertificateMismatch", "sample evaluations disagree");
    return c;
}

bool verify_certificate(const CertifiedFunction& c, std::string* why) {
    auto no = [&](const std::string& s) {
        if (why) *why = s;
        return false;
    };
    const FunctionField& ff = c.ff;
    MultMap m = mult_by_q_map(ff.curve(), c.q, 64);
    if (ff.compose(c.t, m) != pow(c.g, static_cast<long>(c.q))) return no("g^q != t∘[q]");
    if (!(ff.divisor(c.t) == Divisor::of({{c.P, c.q}, {Point::zero(), -c.q}}))) return no("divisor");
    if (sample_check(c, 3, nullptr) < 0) return no("samples");
    return true;
}

}  // namespace brauer
