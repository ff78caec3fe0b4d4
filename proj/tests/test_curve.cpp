#include <gtest/gtest.h>

#include <set>

#include "brauer/curve.hpp"
#include "brauer/errors.hpp"
#include "brauer/factor.hpp"

using namespace brauer;

namespace {

FieldPtr qomega() {
    FieldPtr Q = Field::rationals();
    return Field::extension(Q, Poly::from_ints(Q, {1, 1, 1}).c, "w");
}

Curve curve_f(long p, long A, long B) {
    FieldPtr F = Field::prime(p);
    return Curve(F->from_int(A), F->from_int(B));
}

Point pt(const Curve& E, long x, long y) { return E.point(E.field()->from_int(x), E.field()->from_int(y)); }

// P ⊕ Q = R iff P, Q, ⊖R lie on one line (tangent when P = Q), checked with the
// chord's cubic: x³ + Ax + B − (λx + ν)² = (x − x_P)(x − x_Q)(x − x_R).
bool collinear_law(const Curve& E, const Point& P, const Point& Q, const Point& R) {
    if (P.inf) return Q == R;
    if (Q.inf) return P == R;
    if (R.inf) return P.x == Q.x && (P.y + Q.y).is_zero();
    const FieldPtr& K = E.field();
    Elem lam;
    if (P.x != Q.x) {
        lam = (Q.y - P.y) / (Q.x - P.x);
    } else {
        if (P.y != Q.y || P.y.is_zero()) return false;
        lam = (3 * P.x * P.x + E.A()) / (2 * P.y);
    }
    Elem nu = P.y - lam * P.x;
    // −R must lie on the line
    if (-R.y != lam * R.x + nu) return false;
    Poly lhs = E.rhs() - pow(Poly(K, {nu, lam}), 2);
    Poly rhs = Poly(K, {-P.x, K->one()}) * Poly(K, {-Q.x, K->one()}) * Poly(K, {-R.x, K->one()});
    return lhs == rhs;
}

}  // namespace

TEST(Curve, RejectsSingular) {
    FieldPtr Q = Field::rationals();
    EXPECT_THROW(Curve(Q->from_int(-3), Q->from_int(2)), Error);
    EXPECT_THROW(curve_f(3, 1, 1), Error);
}

TEST(Curve, PointsOverF7) {
    Curve E = curve_f(7, 0, 2);
    auto pts = E.points();
    std::vector<std::pair<long, long>> got;
    for (auto& P : pts)
        if (!P.inf) got.push_back({P.x.residue(), P.y.residue()});
    std::vector<std::pair<long, long>> want{{0, 3}, {0, 4}, {3, 1}, {3, 6}, {5, 1}, {5, 6}, {6, 1}, {6, 6}};
    EXPECT_EQ(got, want);
    EXPECT_EQ(pts.size(), 9u);
    EXPECT_THROW(E.point(E.field()->from_int(1), E.field()->from_int(1)), Error);
}

TEST(Curve, GroupLawSmallExamples) {
    Curve E = curve_f(7, 0, 2);
    Point P = pt(E, 0, 3);
    EXPECT_EQ(E.add(P, Point::zero()), P);
    EXPECT_EQ(E.mul(2, P), pt(E, 0, 4));
    EXPECT_TRUE(E.mul(3, P).inf);
    EXPECT_EQ(E.mul(-1, P), E.neg(P));
}

TEST(Curve, GroupAxiomsExhaustive) {
    for (auto [p, A, B] : std::vector<std::tuple<long, long, long>>{{7, 0, 2}, {13, 2, 5}, {19, 1, 1}}) {
        Curve E = curve_f(p, A, B);
        auto pts = E.points();
        for (auto& P : pts)
            for (auto& Q : pts) {
                Point R = E.add(P, Q);
                ASSERT_TRUE(E.contains(R));
                EXPECT_EQ(R, E.add(Q, P));
                EXPECT_TRUE(collinear_law(E, P, Q, R)) << to_string(P) << " + " << to_string(Q);
            }
        for (size_t i = 0; i < pts.size(); i += 3)
            for (size_t j = 0; j < pts.size(); j += 2)
                for (size_t k = 0; k < pts.size(); ++k)
                    EXPECT_EQ(E.add(E.add(pts[i], pts[j]), pts[k]), E.add(pts[i], E.add(pts[j], pts[k])));
        for (auto& P : pts) EXPECT_TRUE(E.add(P, E.neg(P)).inf);
    }
}

TEST(DivisionPolynomial, ClosedForms) {
    FieldPtr Q = Field::rationals();
    EXPECT_EQ(division_polynomial(Curve(Q->zero(), Q->from_int(16)), 3), Poly::from_ints(Q, {0, 192, 0, 0, 3}));
    EXPECT_EQ(division_polynomial(Curve(Q->one(), Q->zero()), 3), Poly::from_ints(Q, {-1, 0, 6, 0, 3}));
    Curve E = curve_f(7, 0, 2);
    Poly psi3 = division_polynomial(E, 3);
    EXPECT_EQ(psi3, Poly::from_ints(E.field(), {0, 3, 0, 0, 3}));
    std::vector<long> rs;
    for (auto& r : roots(psi3)) rs.push_back(r.residue());
    EXPECT_EQ(rs, (std::vector<long>{0, 3, 5, 6}));
    EXPECT_EQ(division_polynomial(Curve(Q->from_int(2), Q->from_int(3)), 5).deg(), 12);
    EXPECT_EQ(division_polynomial(Curve(Q->from_int(2), Q->from_int(3)), 7).deg(), 24);
}

TEST(DivisionPolynomial, RootsAreTorsionXCoordinates) {
    // over F_{p²}: roots of ψ_n with rational y are exactly x(T) for T ∈ E[n] \ 0
    for (auto [p, A, B, n] : std::vector<std::tuple<long, long, long, int>>{{7, 0, 2, 3}, {11, 1, 3, 5}, {13, 2, 5, 3}}) {
        FieldPtr Fp = Field::prime(p);
        FieldPtr F2 = Field::extension(Fp, least_irreducible(Fp, 2).c, "t");
        Curve E = Curve(F2->from_int(A), F2->from_int(B));
        std::set<std::string> tors, rts;
        for (auto& P : E.points())
            if (!P.inf && E.mul(n, P).inf) tors.insert(to_string(P.x));
        for (auto& r : roots(division_polynomial(E, n)))
            if (E.rhs(r).is_zero() || is_qth_power(E.rhs(r), 2))
                rts.insert(to_string(r));
        EXPECT_EQ(tors, rts) << p << " " << n;
    }
}

TEST(MultMap, AgreesWithScalarMultiplication) {
    for (auto [p, A, B, q] : std::vector<std::tuple<long, long, long, int>>{{7, 0, 2, 3}, {31, 3, 7, 3}, {23, 1, 4, 5}}) {
        Curve E = curve_f(p, A, B);
        MultMap m = mult_by_q_map(E, q);
        EXPECT_EQ(m.xn.deg(), q * q);
        EXPECT_EQ(m.xd.deg(), q * q - 1);
        for (auto& P : E.points()) EXPECT_EQ(m.apply(E, P), E.mul(q, P)) << to_string(P);
    }
    FieldPtr Q = Field::rationals();
    EXPECT_THROW(mult_by_q_map(Curve(Q->one(), Q->one()), 5), Error);
}

TEST(MultMap, NumberFieldPoint) {
    FieldPtr Q = Field::rationals();
    Curve E(Q->zero(), Q->from_int(-2));
    Point P = E.point(Q->from_int(3), Q->from_int(5));
    MultMap m = mult_by_q_map(E, 3);
    EXPECT_EQ(m.apply(E, P), E.mul(3, P));
}

TEST(MordellWeil, FiniteExhaustive) {
    Curve E = curve_f(7, 0, 2);
    MWData mw = mw_exhaustive(E, 3);
    EXPECT_TRUE(mw.complete);
    EXPECT_EQ(mw.reps.size(), 9u);
    EXPECT_EQ(mw.generators.size(), 2u);
    for (auto& P : E.points()) EXPECT_TRUE(E.mul(3, P).inf);
    // |G/3G| = |G| / |3G| by brute force
    for (auto [p, A, B] : std::vector<std::tuple<long, long, long>>{{13, 2, 5}, {19, 1, 1}, {31, 3, 7}}) {
        Curve Ep = curve_f(p, A, B);
        auto pts = Ep.points();
        std::set<std::string> triple;
        for (auto& P : pts) triple.insert(to_string(Ep.mul(3, P)));
        EXPECT_EQ(mw_exhaustive(Ep, 3).reps.size(), pts.size() / triple.size());
        EXPECT_EQ(span(Ep, mw_exhaustive(Ep, 3).generators).size(), pts.size());
    }
}

TEST(MordellWeil, SuppliedWorkedExample) {
    FieldPtr k = qomega();
    Elem w = k->gen();
    Curve E(k->zero(), k->from_int(16));
    Point P = E.point(k->zero(), k->from_int(4));
    Point Q = E.point(k->from_int(-4), 8 * w + k->from_int(4));
    MWData mw = mw_from_generators(E, {P, Q}, 3, true);
    EXPECT_EQ(mw.reps.size(), 9u);
    EXPECT_EQ(mw.source, MWSource::Supplied);
    EXPECT_THROW(mw_from_generators(E, {Point::affine(k->one(), k->one())}, 3, true), Error);

    Curve E2(k->zero(), k->from_int(-1024));
    MWData triv = mw_from_generators(E2, {}, 3, true);
    ASSERT_EQ(triv.reps.size(), 1u);
    EXPECT_TRUE(triv.reps[0].inf);
}

TEST(MordellWeil, SearchIsFlaggedIncomplete) {
    FieldPtr Q = Field::rationals();
    Curve E(Q->zero(), Q->from_int(-2));
    MWData mw = mw_search(E, 5, 3);
    EXPECT_FALSE(mw.complete);
    EXPECT_EQ(mw.source, MWSource::Search);
    bool found = false;
    for (auto& P : mw.reps)
        if (!P.inf && P.x == Q->from_int(3)) found = true;
    EXPECT_TRUE(found);
}
