#include <gtest/gtest.h>

#include "brauer/errors.hpp"
#include "brauer/factor.hpp"
#include "brauer/galois.hpp"
#include "brauer/roots_of_unity.hpp"

using namespace brauer;

namespace {

FieldPtr qomega() {
    FieldPtr Q = Field::rationals();
    return Field::extension(Q, Poly::from_ints(Q, {1, 1, 1}).c, "w");
}

// Ψ(σ) acting on coordinates agrees with σ on every point of M; det = 1.
void check_action(const TorsionBasis& B, const GaloisAction& G) {
    for (size_t n = 0; n < G.order(); ++n) {
        const Mat2& m = G.matrices[n];
        EXPECT_EQ(det(m, B.q), 1);
        for (int i = 0; i < B.q; ++i)
            for (int j = 0; j < B.q; ++j) {
                Point img = apply(B.tower, G.group[n], B.combo(i, j));
                EXPECT_EQ(img, B.combo(m.a * i + m.b * j, m.c * i + m.d * j));
            }
        EXPECT_EQ(weil_pairing(B.EL, apply(B.tower, G.group[n], B.P), apply(B.tower, G.group[n], B.Q), B.q),
                  embed(B.rho, B.L()));
    }
}

// Σ σ^i(R) = 0 for every R ∈ M when σ is unipotent
void check_norm_sum(const TorsionBasis& B, const Automorphism& s) {
    for (const Point& R : B.all()) {
        Point S = Point::zero(), cur = R;
        for (int i = 0; i < B.q; ++i) {
            S = B.EL.add(S, cur);
            cur = apply(B.tower, s, cur);
        }
        EXPECT_TRUE(S.inf) << to_string(R);
    }
}

}  // namespace

TEST(PowerFree, Rationals) {
    auto [m, r] = power_free_part(mpq_class(-16), 3);
    EXPECT_EQ(m, 2);
    EXPECT_EQ(r, -2);
    auto [m2, r2] = power_free_part(mpq_class(-1024), 2);
    EXPECT_EQ(m2, -1);
    EXPECT_EQ(r2, 32);
    auto [m3, r3] = power_free_part(mpq_class(3, 4), 3);
    EXPECT_EQ(m3 * r3 * r3 * r3, mpq_class(3, 4));
}

TEST(Torsion, SplitWorkedExample) {
    FieldPtr k = qomega();
    Elem w = k->gen();
    Curve E(k->zero(), k->from_int(16));
    Elem rho = find_rho(k, 3, w);
    TorsionBasis B = torsion_basis_supplied(E, k, E.point(k->zero(), k->from_int(4)),
                                            E.point(k->from_int(-4), 8 * w + k->from_int(4)), 3, rho);
    EXPECT_EQ(weil_pairing(B.EL, B.P, B.Q, 3), w);
    GaloisAction G = splitting_field_and_action(B);
    EXPECT_EQ(G.order(), 1u);
    EXPECT_TRUE(G.generators.empty());
    EXPECT_EQ(classify_case(B, G).tag, CaseTag::Split);
}

TEST(Torsion, SuppliedDataRejected) {
    FieldPtr k = qomega();
    Curve E(k->zero(), k->from_int(16));
    Elem rho = find_rho(k, 3, k->gen());
    Point P = E.point(k->zero(), k->from_int(4));
    try {
        torsion_basis_supplied(E, k, P, E.neg(P), 3, rho);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "NotABasis");
    }
    FieldPtr Q = Field::rationals();
    Curve E2(Q->zero(), Q->from_int(-2));
    EXPECT_THROW(torsion_basis_supplied(E2, Q, E2.point(Q->from_int(3), Q->from_int(5)),
                                        E2.point(Q->from_int(3), Q->from_int(-5)), 3, Q->one()),
                 Error);
}

TEST(Torsion, CoprimeWorkedExample) {
    FieldPtr k = qomega();
    Elem rho = find_rho(k, 3, k->gen());
    for (long Bv : {2L, -1024L}) {
        Curve E(k->zero(), k->from_int(Bv));
        TorsionBasis B = torsion_basis_xcubed(E, rho);
        EXPECT_EQ(B.tower.degree(), 2);
        GaloisAction G = splitting_field_and_action(B);
        ASSERT_EQ(G.order(), 2u);
        EXPECT_EQ(G.matrices[1], (Mat2{2, 0, 0, 2}));
        check_action(B, G);
        EXPECT_EQ(classify_case(B, G).tag, CaseTag::Coprime);
    }
}

TEST(Torsion, QDividesWorkedExample) {
    FieldPtr k = qomega();
    Elem rho = find_rho(k, 3, k->gen());
    Curve E(k->zero(), k->from_int(4));
    TorsionBasis B = torsion_basis_xcubed(E, rho);
    EXPECT_EQ(B.tower.degree(), 3);
    GaloisAction G = splitting_field_and_action(B);
    ASSERT_EQ(G.order(), 3u);
    check_action(B, G);
    CaseInfo ci = classify_case(B, G);
    ASSERT_EQ(ci.tag, CaseTag::QDivides);
    EXPECT_EQ(ci.lprime_level, 0);
    EXPECT_EQ(ci.lq, k->from_int(2));
    EXPECT_EQ(pow(ci.l, 3L), embed(k->from_int(2), B.L()));
    EXPECT_EQ(apply(B.tower, ci.sigma, B.P), B.P);
    EXPECT_EQ(apply(B.tower, ci.sigma, B.Q), B.EL.add(B.P, B.Q));
    EXPECT_EQ(matrix_of(B, ci.sigma), (Mat2{1, 1, 0, 1}));
    EXPECT_EQ(weil_pairing(B.EL, B.P, B.Q, 3), embed(rho, B.L()));
    // P stays the k-rational point (0, 2) up to sign
    EXPECT_TRUE(lies_in(B.P.x, k) && lies_in(B.P.y, k));
    check_norm_sum(B, ci.sigma);
}

TEST(Torsion, FiniteFieldWorkedExample) {
    FieldPtr F7 = Field::prime(7);
    Curve E(F7->zero(), F7->from_int(2));
    Elem rho = find_rho(F7, 3);
    TorsionBasis B = torsion_basis_finite(E, 3, rho);
    EXPECT_EQ(B.L(), F7);
    EXPECT_EQ(B.all().size(), 9u);
    GaloisAction G = splitting_field_and_action(B);
    EXPECT_EQ(classify_case(B, G).tag, CaseTag::Split);
}

TEST(Torsion, FiniteFieldTowers) {
    // scan small curves for each case shape; require at least one degree-3 and one degree-2 example
    bool saw_q = false, saw_coprime = false, saw_six = false;
    for (long p : {7L, 13L}) {
        FieldPtr F = Field::prime(p);
        Elem rho = find_rho(F, 3);
        for (long A = 0; A < p; ++A)
            for (long Bv = 1; Bv < p; ++Bv) {
                if ((4 * A * A * A + 27 * Bv * Bv) % p == 0) continue;
                Curve E(F->from_int(A), F->from_int(Bv));
                TorsionBasis B = torsion_basis_finite(E, 3, rho);
                int deg = B.tower.degree();
                if (deg == 1) continue;
                if (deg == 3 && saw_q) continue;
                if (deg == 2 && saw_coprime) continue;
                if (deg == 6 && saw_six) continue;
                GaloisAction G = splitting_field_and_action(B);
                EXPECT_EQ(static_cast<int>(G.order()), deg);
                check_action(B, G);
                CaseInfo ci = classify_case(B, G);
                if (deg % 3 == 0) {
                    EXPECT_EQ(ci.tag, CaseTag::QDivides);
                    EXPECT_EQ(matrix_of(B, ci.sigma), (Mat2{1, 1, 0, 1}));
                    EXPECT_EQ(pow(ci.l, 3L), embed(ci.lq, B.L()));
                    check_norm_sum(B, ci.sigma);
                    (deg == 3 ? saw_q : saw_six) = true;
                } else {
                    EXPECT_EQ(ci.tag, CaseTag::Coprime);
                    saw_coprime = true;
                }
            }
    }
    EXPECT_TRUE(saw_q);
    EXPECT_TRUE(saw_coprime);
}
