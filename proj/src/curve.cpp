#include "brauer/curve.hpp"

#include <algorithm>
#include <set>

#include "brauer/errors.hpp"
#include "brauer/factor.hpp"

namespace brauer {

bool operator==(const Point& a, const Point& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.x == b.x && a.y == b.y;
}

bool point_less(const Point& a, const Point& b) {
    if (a.inf || b.inf) return a.inf && !b.inf;
    int c = compare(a.x, b.x);
    if (c != 0) return c < 0;
    return compare(a.y, b.y) < 0;
}

std::string to_string(const Point& P) {
    if (P.inf) return "0";
    return "(" + to_string(P.x) + ", " + to_string(P.y) + ")";
}

Curve::Curve(Elem A, Elem B) {
    if (A.field() != B.field()) {
        if (A.field()->contains(B.field())) B = brauer::embed(B, A.field());
        else A = brauer::embed(A, B.field());
    }
    F_ = A.field();
    std::int64_t p = F_->characteristic();
    if (p == 2 || p == 3) fail("BadCharacteristic", "characteristic 2 or 3");
    Elem disc = 4 * pow(A, 3) + 27 * B * B;
    if (disc.is_zero()) fail("SingularCurve", "4A^3 + 27B^2 = 0");
    A_ = A;
    B_ = B;
}

Curve Curve::over(const FieldPtr& L) const { return Curve(brauer::embed(A_, L), brauer::embed(B_, L)); }

Poly Curve::rhs() const { return Poly(F_, {B_, A_, F_->zero(), F_->one()}); }

Elem Curve::rhs(const Elem& x) const { return x * x * x + A_ * x + B_; }

bool Curve::contains(const Point& P) const {
    if (P.inf) return true;
    return P.y * P.y == rhs(P.x);
}

Point Curve::point(const Elem& x, const Elem& y) const {
    Point P = Point::affine(x, y);
    if (!contains(P)) fail("PointNotOnCurve", to_string(P) + " on " + describe());
    return P;
}

Point Curve::embed(const Point& P, const FieldPtr& L) const {
    if (P.inf) return P;
    return Point::affine(brauer::embed(P.x, L), brauer::embed(P.y, L));
}

Point Curve::neg(const Point& P) const {
    if (P.inf) return P;
    return Point::affine(P.x, -P.y);
}

Point Curve::add(const Point& P, const Point& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    Elem lam;
    if (P.x == Q.x) {
        if ((P.y + Q.y).is_zero()) return Point::zero();
        lam = (3 * P.x * P.x + A_) / (2 * P.y);
    } else {
        lam = (Q.y - P.y) / (Q.x - P.x);
    }
    Elem x3 = lam * lam - P.x - Q.x;
    Elem y3 = lam * (P.x - x3) - P.y;
    return Point::affine(x3, y3);
}

Point Curve::mul(const mpz_class& n0, const Point& P) const {
    mpz_class n = abs(n0);
    Point acc = Point::zero(), base = P;
    while (n > 0) {
        if (mpz_odd_p(n.get_mpz_t())) acc = add(acc, base);
        n >>= 1;
        if (n > 0) base = add(base, base);
    }
    return n0 < 0 ? neg(acc) : acc;
}

long Curve::order(const Point& P, long bound) const {
    Point R = P;
    for (long m = 1; m <= bound; ++m) {
        if (R.inf) return m;
        R = add(R, P);
    }
    return 0;
}

std::vector<Point> Curve::points() const {
    if (!F_->is_finite()) fail("Unsupported", "point enumeration needs a finite field");
    std::vector<Point> out{Point::zero()};
    for (const Elem& x : F_->elements()) {
        Elem r = rhs(x);
        if (r.is_zero()) {
            out.push_back(Point::affine(x, r));
            continue;
        }
        for (const Elem& y : roots(Poly(F_, {-r, F_->zero(), F_->one()}))) out.push_back(Point::affine(x, y));
    }
    std::sort(out.begin(), out.end(), point_less);
    return out;
}

std::string Curve::describe() const {
    return "y^2 = x^3 + (" + to_string(A_) + ")x + (" + to_string(B_) + ") over " + F_->describe();
}

// ---- division polynomials ----

namespace {

DivPoly dmul(const DivPoly& a, const DivPoly& b, const Poly& F) {
    DivPoly r{a.p * b.p, a.e + b.e};
    while (r.e >= 2) {
        r.p = r.p * F;
        r.e -= 2;
    }
    return r;
}

DivPoly dsub(const DivPoly& a, const DivPoly& b) {
    if (a.p.is_zero()) return {-b.p, b.e};
    if (b.p.is_zero()) return a;
    if (a.e != b.e) fail("Internal", "division polynomial parity mismatch");
    return {a.p - b.p, a.e};
}

DivPoly dpow3(const DivPoly& a, const Poly& F) { return dmul(dmul(a, a, F), a, F); }

}  // namespace

DivPoly division_polynomial_full(const Curve& E, int n) {
    if (n < 0) fail("BadArgument", "negative index");
    const FieldPtr& K = E.field();
    const Elem &A = E.A(), &B = E.B();
    Poly F = E.rhs();
    std::vector<DivPoly> psi(std::max(n + 1, 5));
    psi[0] = {Poly(K), 0};
    psi[1] = {Poly::constant(K, 1), 0};
    psi[2] = {Poly::constant(K, 2), 1};
    psi[3] = {Poly(K, {-A * A, 12 * B, 6 * A, K->zero(), K->from_int(3)}), 0};
    psi[4] = {Poly(K, {K->from_int(-4) * (8 * B * B + A * A * A), K->from_int(-16) * A * B,
                       K->from_int(-20) * A * A, 80 * B, 20 * A, K->zero(), K->from_int(4)}),
              1};
    for (int m = 5; m <= n; ++m) {
        int h = m / 2;
        if (m % 2 == 1) {
            // ψ_{2h+1} = ψ_{h+2}ψ_h³ − ψ_{h−1}ψ_{h+1}³
            psi[m] = dsub(dmul(psi[h + 2], dpow3(psi[h], F), F), dmul(psi[h - 1], dpow3(psi[h + 1], F), F));
        } else {
            // ψ_{2h} = ψ_h (ψ_{h+2}ψ_{h−1}² − ψ_{h−2}ψ_{h+1}²) / (2y)
            DivPoly t = dsub(dmul(psi[h + 2], dmul(psi[h - 1], psi[h - 1], F), F),
                             dmul(psi[h - 2], dmul(psi[h + 1], psi[h + 1], F), F));
            DivPoly r = dmul(psi[h], t, F);
            // r carries y^(e); dividing by 2y: e = 1 → drop y, e = 0 → multiply by y / F
            Elem half = inverse(K->from_int(2));
            if (r.e == 1) {
                psi[m] = {half * r.p, 0};
            } else {
                auto [qt, rem] = divmod(r.p, F);
                if (!rem.is_zero()) fail("Internal", "division polynomial recurrence not exact");
                psi[m] = {half * qt, 1};
            }
        }
    }
    return psi[n];
}

Poly division_polynomial(const Curve& E, int n) {
    if (n % 2 == 0) fail("BadArgument", "division_polynomial expects odd n");
    return division_polynomial_full(E, n).p;
}

MultMap mult_by_q_map(const Curve& E, int q, int cap) {
    if (cap <= 0) cap = E.field()->is_finite() ? 13 : 3;
    if (q > cap) fail("CapExceeded", "multiplication map for q = " + std::to_string(q) + " exceeds cap " +
                                         std::to_string(cap));
    if (q < 3 || q % 2 == 0) fail("BadArgument", "q must be odd");
    Poly F = E.rhs();
    DivPoly pm = division_polynomial_full(E, q - 1), pq = division_polynomial_full(E, q),
            pp = division_polynomial_full(E, q + 1), p2 = division_polynomial_full(E, 2 * q);
    MultMap m;
    m.n = q;
    Poly X = Poly::x(E.field());
    Poly pq2 = pq.p * pq.p;
    // ψ_{q−1}ψ_{q+1} = F·p_{q−1}p_{q+1} for odd q
    m.xn = X * pq2 - F * pm.p * pp.p;
    m.xd = pq2;
    // ψ_{2q}/(2ψ_q⁴) = y·p_{2q}/(2p_q⁴)
    m.yn = p2.p;
    m.yd = E.field()->from_int(2) * pq2 * pq2;
    return m;
}

Point MultMap::apply(const Curve& E, const Point& S) const {
    if (S.inf) return S;
    Elem d = eval(xd, S.x);
    if (d.is_zero()) return Point::zero();
    Elem X = eval(xn, S.x) / d;
    Elem Y = S.y * eval(yn, S.x) / eval(yd, S.x);
    return E.point(X, Y);
}

// ---- Mordell–Weil data ----

std::string to_string(MWSource s) {
    switch (s) {
        case MWSource::Supplied: return "verified-supplied";
        case MWSource::Search: return "search-bounded";
        case MWSource::Exhaustive: return "exhaustive";
    }
    return "?";
}

std::vector<Point> span(const Curve& E, const std::vector<Point>& gens, size_t limit) {
    std::vector<Point> group{Point::zero()};
    auto has = [&](const Point& P) { return std::find(group.begin(), group.end(), P) != group.end(); };
    for (const Point& g : gens) {
        if (has(g)) continue;
        std::vector<Point> cur = group;
        Point m = g;
        while (!has(m)) {
            for (const Point& h : cur) {
                group.push_back(E.add(h, m));
                if (group.size() > limit) fail("GroupTooLarge", "span exceeds limit");
            }
            m = E.add(m, g);
        }
    }
    std::sort(group.begin(), group.end(), point_less);
    return group;
}

namespace {

// Torsion orders over the fields met here stay far below this.
constexpr long kTorsionBound = 30;

// Cosets of qG in a finite group G, least representative first; also a greedy
// generating set of G.
MWData quotient_data(const Curve& E, std::vector<Point> G, int q) {
    std::sort(G.begin(), G.end(), point_less);
    std::vector<Point> qG;
    for (const Point& P : G) {
        Point R = E.mul(q, P);
        if (std::find(qG.begin(), qG.end(), R) == qG.end()) qG.push_back(R);
    }
    MWData out;
    std::vector<Point> covered;
    for (const Point& P : G) {
        if (std::find(covered.begin(), covered.end(), P) != covered.end()) continue;
        out.reps.push_back(P);
        for (const Point& T : qG) covered.push_back(E.add(P, T));
    }
    std::vector<Point> sub{Point::zero()};
    for (const Point& P : G) {
        if (std::find(sub.begin(), sub.end(), P) != sub.end()) continue;
        out.generators.push_back(P);
        sub = span(E, out.generators);
    }
    return out;
}

}  // namespace

MWData mw_from_generators(const Curve& E, const std::vector<Point>& gens, int q, bool attested) {
    for (const Point& g : gens)
        if (!E.contains(g)) fail("SuppliedPointNotOnCurve", to_string(g));
    bool finite = true;
    for (const Point& g : gens)
        if (E.order(g, kTorsionBound) == 0) finite = false;
    MWData out;
    if (finite) {
        out = quotient_data(E, span(E, gens), q);
        out.generators = gens;
    } else {
        // free part assumed independent; torsion of order prime to q lies in qE
        std::vector<Point> useful;
        for (const Point& g : gens) {
            long o = E.order(g, kTorsionBound);
            if (o != 0 && o % q != 0) continue;
            useful.push_back(g);
        }
        std::vector<Point> reps{Point::zero()};
        for (const Point& g : useful) {
            std::vector<Point> next;
            for (const Point& r : reps)
                for (int c = 0; c < q; ++c) next.push_back(E.add(r, E.mul(c, g)));
            reps.clear();
            for (const Point& P : next)
                if (std::find(reps.begin(), reps.end(), P) == reps.end()) reps.push_back(P);
        }
        out.reps = reps;
        out.generators = gens;
    }
    out.source = MWSource::Supplied;
    out.complete = attested;
    return out;
}

MWData mw_search(const Curve& E, long H, int q) {
    const FieldPtr& K = E.field();
    if (K->is_finite()) return mw_exhaustive(E, q);
    std::vector<Point> found;
    for (long d = 1; d <= H; ++d) {
        for (long n = -H; n <= H; ++n) {
            if (std::gcd(n, d) != 1) continue;
            Elem x = K->from_mpq(mpq_class(n, d));
            Elem r = E.rhs(x);
            if (r.is_zero()) {
                found.push_back(Point::affine(x, r));
                continue;
            }
            if (auto y = qth_root(r, 2)) {
                found.push_back(Point::affine(x, *y));
                found.push_back(Point::affine(x, -*y));
            }
        }
    }
    std::sort(found.begin(), found.end(), point_less);
    found.erase(std::unique(found.begin(), found.end()), found.end());
    MWData out;
    out.generators = found;
    out.reps.push_back(Point::zero());
    out.reps.insert(out.reps.end(), found.begin(), found.end());
    out.source = MWSource::Search;
    out.complete = false;
    return out;
}

MWData mw_exhaustive(const Curve& E, int q) {
    MWData out = quotient_data(E, E.points(), q);
    out.source = MWSource::Exhaustive;
    out.complete = true;
    return out;
}

}  // namespace brauer
