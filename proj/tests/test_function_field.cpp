#include <gtest/gtest.h>

#include <random>

#include "brauer/errors.hpp"
#include "brauer/factor.hpp"
#include "brauer/function_field.hpp"
#include "brauer/roots_of_unity.hpp"
#include "brauer/tangent.hpp"

using namespace brauer;

namespace {

FieldPtr qomega() {
    FieldPtr Q = Field::rationals();
    return Field::extension(Q, Poly::from_ints(Q, {1, 1, 1}).c, "w");
}

std::vector<Point> torsion(const Curve& E, int q) {
    std::vector<Point> out;
    for (auto& P : E.points())
        if (E.mul(q, P).inf) out.push_back(P);
    return out;
}

// Curves over prime fields whose full 3-torsion is rational, least (p, A, B) first.
std::vector<Curve> full_three_torsion_curves(size_t n) {
    std::vector<Curve> out;
    for (long p : {7, 13, 19, 31, 37, 43}) {
        FieldPtr F = Field::prime(p);
        for (long A = 0; A < p && out.size() < n; ++A) {
            bool found = false;
            for (long B = 1; B < p; ++B) {
                if ((4 * A * A * A + 27 * B * B) % p == 0) continue;
                Curve E(F->from_int(A), F->from_int(B));
                if (torsion(E, 3).size() == 9) {
                    out.push_back(E);
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        if (out.size() >= n) break;
    }
    return out;
}

}  // namespace

TEST(FunctionField, CanonicalArithmetic) {
    FieldPtr Q = Field::rationals();
    Curve E(Q->zero(), Q->from_int(16));
    FunctionField ff(E);
    Elem x = ff.x(), y = ff.y();
    EXPECT_EQ((y - ff.constant(Q->from_int(4))) * (y + ff.constant(Q->from_int(4))), x * x * x);
    UVW inv = ff.uvw(inverse(y));
    EXPECT_TRUE(inv.u.is_zero());
    EXPECT_EQ(inv.v, Poly::constant(Q, 1));
    EXPECT_EQ(inv.w, Poly::from_ints(Q, {16, 0, 0, 1}));
    EXPECT_THROW(inverse(ff.field()->zero()), Error);
}

TEST(FunctionField, EvaluateTangentAtQ) {
    FieldPtr k = qomega();
    Elem w = k->gen();
    Curve E(k->zero(), k->from_int(16));
    FunctionField ff(E);
    Point Q = E.point(k->from_int(-4), 8 * w + k->from_int(4));
    Elem tP = ff.y() - ff.constant(k->from_int(4));
    // 4√3 i − 4 with √3 i = 2ω + 1
    EXPECT_EQ(*ff.eval(tP, Q), 4 * (2 * w + k->one()) - k->from_int(4));
    EXPECT_FALSE(ff.eval(tP, Point::zero()).has_value());
}

TEST(FunctionField, DivisorsOfSimpleFunctions) {
    FieldPtr Q = Field::rationals();
    Curve E(Q->zero(), Q->from_int(16));
    FunctionField ff(E);
    Point P = E.point(Q->zero(), Q->from_int(4)), Pm = E.neg(P);
    EXPECT_EQ(ff.divisor(ff.y() - ff.constant(Q->from_int(4))), Divisor::of({{P, 3}, {Point::zero(), -3}}));
    EXPECT_EQ(ff.divisor(ff.x()), Divisor::of({{P, 1}, {Pm, 1}, {Point::zero(), -2}}));
    EXPECT_TRUE(ff.divisor(ff.constant(Q->from_int(5))).empty());
    EXPECT_THROW(ff.divisor(ff.field()->zero()), Error);
    // support outside ℚ
    EXPECT_THROW(ff.divisor(ff.x() - ff.constant(Q->from_int(1))), Error);
}

TEST(FunctionField, WithDivisor) {
    FieldPtr Q = Field::rationals();
    Curve E(Q->zero(), Q->from_int(16));
    FunctionField ff(E);
    Point P = E.point(Q->zero(), Q->from_int(4));
    EXPECT_EQ(ff.with_divisor(Divisor::of({{P, 3}, {Point::zero(), -3}})), ff.y() - ff.constant(Q->from_int(4)));
    EXPECT_EQ(ff.with_divisor(Divisor::of({{P, 1}, {E.neg(P), 1}, {Point::zero(), -2}})), ff.x());
    try {
        ff.with_divisor(Divisor::of({{P, 1}, {Point::zero(), -1}}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "NotPrincipal");
    }
}

TEST(FunctionField, DivisorPropertiesOverFiniteFields) {
    std::mt19937_64 rng(11);
    for (const Curve& E : full_three_torsion_curves(3)) {
        FunctionField ff(E);
        auto pts = E.points();
        std::uniform_int_distribution<size_t> pick(1, pts.size() - 1);
        for (int trial = 0; trial < 6; ++trial) {
            // random principal divisor: random points, closed up by their negated sum
            auto random_div = [&]() {
                Divisor D;
                Point S = Point::zero();
                for (int i = 0; i < 3; ++i) {
                    Point R = pts[pick(rng)];
                    D = D + Divisor::of({{R, 1}, {Point::zero(), -1}});
                    S = E.add(S, R);
                }
                return D - Divisor::of({{S, 1}, {Point::zero(), -1}});
            };
            Divisor D1 = random_div(), D2 = random_div();
            Elem f = ff.with_divisor(D1), g = ff.with_divisor(D2);
            EXPECT_EQ(ff.divisor(f), D1) << to_string(D1);
            EXPECT_EQ(ff.divisor(f * g), D1 + D2);
            EXPECT_EQ(ff.divisor(f).degree(), 0);
            EXPECT_TRUE(ff.divisor(f).sum(E).inf);
            EXPECT_TRUE(ff.leading(f, Point::zero()).is_one());
        }
    }
}

TEST(WeilPairing, ExhaustivePropertiesOnThreeCurves) {
    auto curves = full_three_torsion_curves(3);
    ASSERT_EQ(curves.size(), 3u);
    for (const Curve& E : curves) {
        auto M = torsion(E, 3);
        ASSERT_EQ(M.size(), 9u);
        Elem rho = find_rho(E.field(), 3);
        for (auto& P : M) {
            EXPECT_TRUE(weil_pairing(E, P, P, 3).is_one());
            for (auto& Q : M) {
                Elem e = weil_pairing(E, P, Q, 3);
                EXPECT_TRUE(pow(e, 3).is_one());
                EXPECT_EQ(e * weil_pairing(E, Q, P, 3), E.field()->one());
                bool independent = !P.inf && !Q.inf && Q != P && Q != E.neg(P);
                EXPECT_EQ(!e.is_one(), independent);
                for (auto& R : M) EXPECT_EQ(weil_pairing(E, E.add(P, R), Q, 3), e * weil_pairing(E, R, Q, 3));
            }
        }
        (void)rho;
    }
}

TEST(WeilPairing, FrobeniusEquivariance) {
    // E[3] rational only over F_{p²}: y² = x³ + 1 over F_11 (p ≡ 2 mod 3)
    FieldPtr F11 = Field::prime(11);
    FieldPtr F = Field::extension(F11, least_irreducible(F11, 2).c, "t");
    Curve E(F->zero(), F->one());
    auto M = torsion(E, 3);
    ASSERT_EQ(M.size(), 9u);
    auto frob = [&](const Point& P) { return P.inf ? P : Point::affine(F->frobenius(P.x), F->frobenius(P.y)); };
    for (auto& P : M)
        for (auto& Q : M) EXPECT_EQ(weil_pairing(E, frob(P), frob(Q), 3), F->frobenius(weil_pairing(E, P, Q, 3)));
}

TEST(Tangent, CertificateOverF7AndRatioDefinition) {
    FieldPtr F7 = Field::prime(7);
    Curve E(F7->zero(), F7->from_int(2));
    FunctionField ff(E);
    FieldPtr F49 = Field::extension(F7, least_irreducible(F7, 2).c, "t");
    Curve E49 = E.over(F49);
    auto pts49 = E49.points();
    auto M = torsion(E, 3);
    int checked = 0;
    for (auto& T : M) {
        if (T.inf) continue;
        CertifiedFunction c = normalize_tangent(ff, T, 3);
        EXPECT_TRUE(c.exact_identity);
        EXPECT_GE(c.samples, 3);
        EXPECT_EQ(c.div, Divisor::of({{T, 3}, {Point::zero(), -3}}));
        std::string why;
        EXPECT_TRUE(verify_certificate(c, &why)) << why;
        // g^3 = t∘[3] at every point of E(F_49) where both sides are finite
        MultMap m = mult_by_q_map(E, 3);
        for (auto& X : pts49) {
            if (X.inf) continue;
            auto gv = ff.eval(c.g, X);
            Point qX = E49.mul(3, X);
            auto tv = qX.inf ? std::nullopt : ff.eval(c.t, qX);
            EXPECT_EQ(gv.has_value(), tv.has_value());
            if (gv && tv) EXPECT_EQ(pow(*gv, 3), *tv);
        }
        // e(S, T) = g_T(X ⊕ S)/g_T(X)
        for (auto& S : M) {
            Elem e = weil_pairing(E, S, T, 3);
            for (auto& X : pts49) {
                if (X.inf) continue;
                Point XS = E49.add(X, S);
                if (XS.inf) continue;
                auto a = ff.eval(c.g, XS), b = ff.eval(c.g, X);
                if (!a || !b || a->is_zero() || b->is_zero()) continue;
                EXPECT_EQ(*a / *b, embed(e, F49)) << to_string(S) << " " << to_string(T) << " at " << to_string(X);
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 500);
}

TEST(Tangent, CertificateAgreesWithDivisorConstruction) {
    // g also has divisor Σ_{R∈M} (P′ ⊕ R) − (R); build that over the field of P′
    FieldPtr F7 = Field::prime(7);
    Curve E(F7->zero(), F7->from_int(2));
    FunctionField ff(E);
    Point P = E.point(F7->zero(), F7->from_int(3));
    CertifiedFunction c = normalize_tangent(ff, P, 3);
    MultMap m = mult_by_q_map(E, 3);
    for (int k = 1; k <= 6; ++k) {
        FieldPtr L = k == 1 ? F7 : Field::extension(F7, least_irreducible(F7, k).c, "t");
        Curve EL = E.over(L);
        Poly fiber = embed(m.xn, L) - embed(P.x, L) * embed(m.xd, L);
        std::optional<Point> Pp;
        for (auto& x0 : roots(fiber)) {
            Elem r = EL.rhs(x0);
            if (auto y0 = qth_root(r, 2)) {
                for (const Elem& y : {*y0, -*y0})
                    if (EL.mul(3, Point::affine(x0, y)) == EL.embed(P, L)) Pp = Point::affine(x0, y);
            }
            if (Pp) break;
        }
        if (!Pp) continue;
        FunctionField ffL(EL);
        Divisor D;
        for (auto& R : torsion(E, 3)) {
            Point RL = EL.embed(R, L);
            D = D + Divisor::of({{EL.add(*Pp, RL), 1}, {RL, -1}});
        }
        Elem g2 = ffL.with_divisor(D);
        Elem ratio = ffL.lift(c.g, ff) / g2;
        EXPECT_TRUE(lies_in(ratio, L)) << "k = " << k;
        EXPECT_EQ(ffL.divisor(ffL.lift(c.g, ff)), D);
        return;
    }
    FAIL() << "no field of definition for P' up to degree 6";
}

TEST(Tangent, WorkedExampleOverQOmega) {
    FieldPtr k = qomega();
    Curve E(k->zero(), k->from_int(16));
    FunctionField ff(E);
    Point P = E.point(k->zero(), k->from_int(4));
    CertifiedFunction c = normalize_tangent(ff, P, 3);
    EXPECT_TRUE(c.exact_identity);
    EXPECT_GE(c.samples, 3);
    EXPECT_TRUE(is_qth_power(c.scaling, 3));
    EXPECT_EQ(c.t, ff.y() - ff.constant(k->from_int(4)));
    EXPECT_THROW(normalize_tangent(ff, Point::zero(), 3), Error);
}

TEST(Tangent, GeneralQViaDivisor) {
    // 5-torsion point over a prime field: y² = x³ + 1 over F_... searched
    for (long p : {11, 31, 41, 61, 71}) {
        FieldPtr F = Field::prime(p);
        for (long B = 1; B < p; ++B) {
            Curve E(F->one(), F->from_int(B));
            if ((4 + 27 * B * B) % p == 0) continue;
            for (auto& P : E.points()) {
                if (P.inf || !E.mul(5, P).inf) continue;
                FunctionField ff(E);
                CertifiedFunction c = normalize_tangent(ff, P, 5);
                EXPECT_TRUE(c.exact_identity);
                EXPECT_EQ(c.div, Divisor::of({{P, 5}, {Point::zero(), -5}}));
                return;
            }
        }
    }
    FAIL() << "no 5-torsion point found";
}
