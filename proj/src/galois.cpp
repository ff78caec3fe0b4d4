#include "brauer/galois.hpp"

#include <algorithm>
#include <numeric>

#include "brauer/errors.hpp"
#include "brauer/factor.hpp"
#include "brauer/roots_of_unity.hpp"

namespace brauer {

// ---- towers and automorphisms ----

Tower Tower::between(const FieldPtr& L, const FieldPtr& k) {
    Tower T;
    FieldPtr cur = L;
    while (cur != k) {
        if (!cur || cur->kind() != FieldKind::Extension)
            fail("FieldMismatch", k->describe() + " is not below " + L->describe());
        T.levels.push_back(cur);
        cur = cur->base();
    }
    T.levels.push_back(k);
    std::reverse(T.levels.begin(), T.levels.end());
    return T;
}

int Tower::degree() const {
    int d = 1;
    for (size_t i = 1; i < levels.size(); ++i) d *= levels[i]->degree();
    return d;
}

int Tower::level_of(const FieldPtr& F) const {
    for (size_t i = 0; i < levels.size(); ++i)
        if (levels[i] == F) return static_cast<int>(i);
    return -1;
}

Elem apply(const Tower& T, const Automorphism& s, const Elem& a) {
    int i = T.level_of(a.field());
    if (i <= 0) return embed(a, T.top());
    const auto& c = a.coeffs();
    Elem acc = T.top()->zero();
    for (size_t j = c.size(); j-- > 0;) acc = acc * s.images[i - 1] + apply(T, s, c[j]);
    return acc;
}

Point apply(const Tower& T, const Automorphism& s, const Point& P) {
    if (P.inf) return P;
    return Point::affine(apply(T, s, P.x), apply(T, s, P.y));
}

Poly apply(const Tower& T, const Automorphism& s, const Poly& f) {
    std::vector<Elem> c;
    for (const Elem& e : f.c) c.push_back(apply(T, s, e));
    return Poly(T.top(), c);
}

Automorphism compose(const Tower& T, const Automorphism& s, const Automorphism& t) {
    Automorphism r;
    for (const Elem& e : t.images) r.images.push_back(apply(T, s, e));
    return r;
}

Automorphism identity(const Tower& T) {
    Automorphism r;
    for (size_t i = 1; i < T.levels.size(); ++i) r.images.push_back(embed(T.levels[i]->gen(), T.top()));
    return r;
}

bool operator==(const Automorphism& a, const Automorphism& b) { return a.images == b.images; }

bool is_identity(const Tower& T, const Automorphism& s) { return s == identity(T); }

int order(const Tower& T, const Automorphism& s) {
    Automorphism cur = s;
    for (int n = 1; n <= T.degree(); ++n) {
        if (is_identity(T, cur)) return n;
        cur = compose(T, s, cur);
    }
    fail("Internal", "automorphism order exceeds the degree");
}

namespace {

// Roots in the top field; quadratics over towers without factorization support
// are split by the known root g and its conjugate −c₁/c₂ − g.
std::vector<Elem> modulus_roots(const Poly& f, const Elem& g) {
    try {
        return roots(f);
    } catch (const Error& e) {
        if (e.code() != "Unsupported" || f.deg() != 2) throw;
        std::vector<Elem> out;
        for (const Elem& r : {g, -(f.c[1] / f.c[2]) - g})
            if (eval(f, r).is_zero()) out.push_back(r);
        if (out.size() == 2 && out[0] == out[1]) out.pop_back();
        std::sort(out.begin(), out.end(), lex_less);
        return out;
    }
}

}  // namespace

std::vector<Automorphism> automorphisms(const Tower& T) {
    std::vector<Automorphism> partial{{}};
    for (size_t i = 1; i < T.levels.size(); ++i) {
        // images of levels[1..i-1] fixed; roots of the conjugated modulus extend them
        std::vector<Automorphism> next;
        for (const Automorphism& s : partial) {
            std::vector<Elem> c;
            for (const Elem& e : T.levels[i]->modulus()) c.push_back(apply(T, s, e));
            for (const Elem& r : modulus_roots(Poly(T.top(), c), embed(T.levels[i]->gen(), T.top()))) {
                Automorphism t = s;
                t.images.push_back(r);
                next.push_back(t);
            }
        }
        partial = next;
    }
    if (static_cast<int>(partial.size()) != T.degree())
        fail("NotGalois", "tower has " + std::to_string(partial.size()) + " automorphisms, degree " +
                              std::to_string(T.degree()));
    Automorphism id = identity(T);
    std::sort(partial.begin(), partial.end(), [&](const Automorphism& a, const Automorphism& b) {
        if (a == id || b == id) return a == id && !(b == id);
        for (size_t i = 0; i < a.images.size(); ++i) {
            int c = compare(a.images[i], b.images[i]);
            if (c != 0) return c < 0;
        }
        return false;
    });
    return partial;
}

std::string to_string(const Tower& T, const Automorphism& s) {
    std::string out;
    for (size_t i = 0; i < s.images.size(); ++i) {
        if (i) out += ", ";
        out += T.levels[i + 1]->name() + " -> " + to_string(s.images[i]);
    }
    return out.empty() ? "id" : out;
}

// ---- torsion bases ----

std::pair<int, int> TorsionBasis::coords(const Point& R0) const {
    Point R = EL.embed(R0, L());
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            if (combo(i, j) == R) return {i, j};
    fail("NotTorsion", to_string(R0) + " is not in the span of the basis");
}

Point TorsionBasis::combo(int i, int j) const {
    return EL.add(EL.mul(((i % q) + q) % q, P), EL.mul(((j % q) + q) % q, Q));
}

std::vector<Point> TorsionBasis::all() const {
    std::vector<Point> out;
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) out.push_back(combo(i, j));
    return out;
}

namespace {

int inv_mod(int a, int q) {
    a = ((a % q) + q) % q;
    for (int b = 1; b < q; ++b)
        if (a * b % q == 1) return b;
    fail("Internal", "no inverse mod q");
}

}  // namespace

TorsionBasis torsion_basis_supplied(const Curve& Ek, const FieldPtr& L, const Point& P0, const Point& Q0, int q,
                                    const Elem& rho) {
    TorsionBasis B;
    B.Ek = Ek;
    B.tower = Tower::between(L, Ek.field());
    B.EL = Ek.over(L);
    B.q = q;
    B.rho = rho;
    B.mode = "user-supplied";
    Point P = B.EL.embed(P0, L), Q = B.EL.embed(Q0, L);
    for (const Point* R : {&P, &Q}) {
        if (!B.EL.contains(*R)) fail("VerificationFailed", to_string(*R) + " is not on the curve");
        if (R->inf || B.EL.order(*R, q) != q) fail("WrongOrder", to_string(*R) + " does not have order q");
    }
    for (int m = 0; m < q; ++m)
        if (B.EL.mul(m, P) == Q) fail("NotABasis", "Q lies in <P>");
    Elem e = weil_pairing(B.EL, P, Q, q);
    int idx = rho_index(e, embed(rho, L), q);
    if (idx == 0) fail("NotABasis", "pairing is trivial");
    if (idx != 1) {
        Q = B.EL.mul(inv_mod(idx, q), Q);
        B.notes.push_back("Q replaced by [" + std::to_string(inv_mod(idx, q)) + "]Q so that e(P,Q) = rho");
    }
    B.P = P;
    B.Q = Q;
    if (weil_pairing(B.EL, B.P, B.Q, q) != embed(rho, L)) fail("VerificationFailed", "orientation");
    return B;
}

std::pair<mpq_class, mpq_class> power_free_part(const mpq_class& a, int n) {
    if (a == 0) fail("ZeroInput", "power_free_part of zero");
    mpz_class den = a.get_den();
    mpz_class N = a.get_num();
    for (int i = 1; i < n; ++i) N *= den;
    int sign = N < 0 ? -1 : 1;
    N = abs(N);
    mpz_class m = 1, r = 1;
    for (mpz_class p = 2; p * p <= N && p < 1000000; ++p) {
        int e = 0;
        while (N % p == 0) {
            N /= p;
            ++e;
        }
        for (int i = 0; i < e / n; ++i) r *= p;
        for (int i = 0; i < e % n; ++i) m *= p;
    }
    m *= N;
    mpq_class rr(r, den);
    rr.canonicalize();
    if (sign < 0) {
        if (n % 2 == 1) rr = -rr;
        else m = -m;
    }
    return {mpq_class(m), rr};
}

TorsionBasis torsion_basis_xcubed(const Curve& Ek, const Elem& rho) {
    const FieldPtr& k = Ek.field();
    if (!Ek.A().is_zero()) fail("BadArgument", "closed form needs A = 0");
    if (pow(rho, 3L) != k->one() || rho.is_one()) fail("NoRootOfUnity", "closed form needs a cube root of unity in k");
    const Elem& Bk = Ek.B();
    FieldPtr F = k;
    std::vector<std::string> notes;
    auto is_rat = [](const Elem& e) { return lies_in(e, Field::rationals()); };
    // √B
    Elem sB;
    if (auto r = qth_root(Bk, 2)) {
        sB = *r;
        // positive root when rational
        if (is_rat(sB) && descend(sB, Field::rationals()).rational() < 0) sB = -sB;
    } else {
        Elem m = Bk, scale = k->one();
        if (is_rat(Bk)) {
            auto [mm, rr] = power_free_part(descend(Bk, Field::rationals()).rational(), 2);
            m = k->from_mpq(mm);
            scale = k->from_mpq(rr);
        }
        F = Field::extension(k, {-m, k->zero(), k->one()}, "s");
        sB = embed(scale, F) * F->gen();
        notes.push_back("sqrt(B) = " + to_string(sB));
    }
    // ∛(−4B)
    Elem c = embed(-4 * Bk, F), xQ;
    if (auto r = qth_root(c, 3)) {
        xQ = *r;
    } else {
        Elem m = c, scale = F->one();
        if (is_rat(c)) {
            auto [mm, rr] = power_free_part(descend(c, Field::rationals()).rational(), 3);
            m = F->from_mpq(mm);
            scale = F->from_mpq(rr);
        }
        FieldPtr G = Field::extension(F, {-m, F->zero(), F->zero(), F->one()}, "l");
        xQ = embed(scale, G) * G->gen();
        F = G;
        notes.push_back("cbrt(-4B) = " + to_string(xQ));
    }
    auto s3 = qth_root(k->from_int(-3), 2);
    if (!s3) fail("Internal", "sqrt(-3) missing from k");
    Elem yQ = embed(*s3, F) * embed(sB, F);
    Curve EL = Ek.over(F);
    Point P = EL.point(F->zero(), embed(sB, F)), Q = EL.point(xQ, yQ);
    TorsionBasis B = torsion_basis_supplied(Ek, F, P, Q, 3, rho);
    B.mode = "closed-form-xcubed-plus-B";
    B.notes.insert(B.notes.begin(), notes.begin(), notes.end());
    return B;
}

TorsionBasis torsion_basis_finite(const Curve& Ek, int q, const Elem& rho) {
    const FieldPtr& k = Ek.field();
    if (!k->is_finite()) fail("BadArgument", "finite-field mode over " + k->describe());
    for (int m = 1; m <= q * q; ++m) {
        FieldPtr L = k;
        if (m > 1) {
            if (m % q == 0 && m > q) {
                FieldPtr L1 = Field::extension(k, least_irreducible(k, m / q).c, "u");
                L = Field::extension(L1, least_irreducible(L1, q).c, "v");
            } else {
                L = Field::extension(k, least_irreducible(k, m).c, "v");
            }
        }
        Curve EL = Ek.over(L);
        std::vector<Point> pts;
        for (const Elem& x0 : roots(division_polynomial(EL, q))) {
            Elem r = EL.rhs(x0);
            if (auto y = qth_root(r, 2)) {
                pts.push_back(Point::affine(x0, *y));
                pts.push_back(Point::affine(x0, -*y));
            }
        }
        if (static_cast<int>(pts.size()) != q * q - 1) continue;
        std::sort(pts.begin(), pts.end(), point_less);
        Point P = pts.front();
        for (const Point& Q : pts) {
            if (!weil_pairing(EL, P, Q, q).is_one()) {
                TorsionBasis B = torsion_basis_supplied(Ek, L, P, Q, q, rho);
                B.mode = "finite-field-auto";
                B.notes.push_back("E[q] rational over degree " + std::to_string(m) + " extension");
                return B;
            }
        }
    }
    fail("Internal", "no splitting field found");
}

// ---- action ----

bool operator==(const Mat2& x, const Mat2& y) { return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d; }

Mat2 mul(const Mat2& x, const Mat2& y, int q) {
    auto md = [q](int v) { return ((v % q) + q) % q; };
    return {md(x.a * y.a + x.b * y.c), md(x.a * y.b + x.b * y.d), md(x.c * y.a + x.d * y.c), md(x.c * y.b + x.d * y.d)};
}

int det(const Mat2& m, int q) { return (((m.a * m.d - m.b * m.c) % q) + q) % q; }

Mat2 matrix_of(const TorsionBasis& B, const Automorphism& s) {
    auto [a, c] = B.coords(apply(B.tower, s, B.P));
    auto [b, d] = B.coords(apply(B.tower, s, B.Q));
    return {a, b, c, d};
}

GaloisAction splitting_field_and_action(const TorsionBasis& B) {
    GaloisAction G;
    G.group = automorphisms(B.tower);
    const Tower& T = B.tower;
    Elem rhoL = embed(B.rho, T.top());
    for (const Automorphism& s : G.group) {
        Mat2 m = matrix_of(B, s);
        if (det(m, B.q) != 1) fail("MatrixNotSL2", "det = " + std::to_string(det(m, B.q)));
        if (weil_pairing(B.EL, apply(T, s, B.P), apply(T, s, B.Q), B.q) != rhoL)
            fail("MatrixNotSL2", "pairing not preserved");
        if (!is_identity(T, s) && m == Mat2{}) fail("VerificationFailed", "L is larger than the kernel field");
        G.matrices.push_back(m);
    }
    // greedy generators via matrices (the representation is faithful)
    std::vector<Mat2> sub{Mat2{}};
    for (size_t i = 0; i < G.group.size(); ++i) {
        if (std::find(sub.begin(), sub.end(), G.matrices[i]) != sub.end()) continue;
        G.generators.push_back(i);
        bool grew = true;
        while (grew) {
            grew = false;
            for (size_t a = 0; a < sub.size(); ++a)
                for (size_t g : G.generators) {
                    Mat2 p = mul(G.matrices[g], sub[a], B.q);
                    if (std::find(sub.begin(), sub.end(), p) == sub.end()) {
                        sub.push_back(p);
                        grew = true;
                    }
                }
        }
    }
    return G;
}

std::string to_string(CaseTag t) {
    switch (t) {
        case CaseTag::Split: return "split";
        case CaseTag::Coprime: return "coprime-to-q";
        case CaseTag::QDivides: return "q-divides";
    }
    return "?";
}

CaseInfo classify_case(TorsionBasis& B, const GaloisAction& G) {
    CaseInfo ci;
    const int q = B.q;
    const Tower& T = B.tower;
    int n = static_cast<int>(G.order());
    if (n == 1) {
        ci.tag = CaseTag::Split;
        return ci;
    }
    if (n % q != 0) {
        ci.tag = CaseTag::Coprime;
        return ci;
    }
    ci.tag = CaseTag::QDivides;
    int r = static_cast<int>(T.levels.size()) - 1;
    if (T.top()->degree() != q)
        fail("Unsupported", "the degree-q layer must be the top step of the tower");
    // order-q subgroup fixing L′ = levels[r−1]
    Automorphism id = identity(T);
    std::optional<Automorphism> s0;
    for (const Automorphism& s : G.group) {
        if (s == id) continue;
        bool fixes = true;
        for (int i = 0; i + 1 < r; ++i)
            if (s.images[i] != id.images[i]) fixes = false;
        if (fixes) {
            s0 = s;
            break;
        }
    }
    if (!s0) fail("NoUnipotentGenerator", "no automorphism of order q fixes the penultimate level");
    ci.lprime_level = r - 1;
    Mat2 m0 = matrix_of(B, *s0);
    // fixed line and complement
    auto act = [&](const Mat2& m, int i, int j) {
        return std::make_pair(((m.a * i + m.b * j) % q + q) % q, ((m.c * i + m.d * j) % q + q) % q);
    };
    std::vector<Point> M = B.all();
    std::optional<std::pair<int, int>> fix, other;
    std::vector<std::pair<Point, std::pair<int, int>>> cand;
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) cand.push_back({B.combo(i, j), {i, j}});
    std::sort(cand.begin(), cand.end(), [](auto& x, auto& y) { return point_less(x.first, y.first); });
    // keep the supplied P when σ fixes it
    if (act(m0, 1, 0) == std::make_pair(1, 0)) fix = std::make_pair(1, 0);
    for (auto& [R, ij] : cand) {
        if (R.inf || fix) continue;
        if (act(m0, ij.first, ij.second) == ij) {
            fix = ij;
            break;
        }
    }
    if (!fix) fail("NoUnipotentGenerator", "sigma has no fixed point in M");
    Point Pp = B.combo(fix->first, fix->second);
    Point Qp;
    std::pair<int, int> qij;
    for (auto& [R, ij] : cand) {
        bool in_line = false;
        for (int t = 0; t < q; ++t)
            if (B.EL.mul(t, Pp) == R) in_line = true;
        if (!in_line) {
            Qp = R;
            qij = ij;
            break;
        }
    }
    // σ0(Q′) − Q′ = d·P′
    Point diff = B.EL.sub(apply(T, *s0, Qp), Qp);
    int d = -1;
    for (int t = 1; t < q; ++t)
        if (B.EL.mul(t, Pp) == diff) d = t;
    if (d < 0) fail("NoUnipotentGenerator", "sigma is not unipotent on the chosen basis");
    int mexp = rho_index(weil_pairing(B.EL, Pp, Qp, q), embed(B.rho, T.top()), q);
    int v = inv_mod(mexp, q);
    Point Qn = B.EL.mul(v, Qp);
    int j = inv_mod(d * v, q);
    Automorphism s = *s0;
    for (int t = 1; t < j; ++t) s = compose(T, *s0, s);
    if (apply(T, s, Pp) != Pp || apply(T, s, Qn) != B.EL.add(Qn, Pp))
        fail("NoUnipotentGenerator", "basis change failed");
    ci.basis_change = {fix->first, (qij.first * v) % q, fix->second, (qij.second * v) % q};
    B.P = Pp;
    B.Q = Qn;
    ci.sigma = s;
    if (weil_pairing(B.EL, B.P, B.Q, q) != embed(B.rho, T.top())) fail("Internal", "orientation lost");

    // Kummer generator of L/L′
    const FieldPtr& L = T.top();
    const FieldPtr& Lp = T.levels[r - 1];
    const auto& mod = L->modulus();
    bool pure = true;
    for (int i = 1; i < q; ++i)
        if (!mod[i].is_zero()) pure = false;
    Elem l;
    if (pure) {
        l = L->gen();
    } else {
        Elem rho = embed(B.rho, L);
        for (int e = 1; e < q && !l.valid(); ++e) {
            Elem th = pow(L->gen(), static_cast<long>(e)), acc = L->zero(), cur = th;
            for (int i = 0; i < q; ++i) {
                acc = acc + pow(inverse(rho), static_cast<long>(i)) * cur;
                cur = apply(T, s, cur);
            }
            if (!acc.is_zero()) l = acc;
        }
        if (!l.valid()) fail("Internal", "no Kummer generator");
    }
    Elem lq = pow(l, static_cast<long>(q));
    if (!lies_in(lq, Lp)) fail("Internal", "l^q not in L'");
    if (lies_in(lq, Field::rationals())) {
        auto [mm, rr] = power_free_part(descend(lq, Field::rationals()).rational(), q);
        l = l / L->from_mpq(rr);
        lq = pow(l, static_cast<long>(q));
    }
    ci.l = l;
    ci.lq = descend(lq, Lp);
    ci.note = "L' = " + Lp->describe() + " (fixed field of the order-q subgroup fixing the penultimate tower level)";
    return ci;
}

}  // namespace brauer
