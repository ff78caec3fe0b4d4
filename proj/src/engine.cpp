#include "brauer/engine.hpp"

#include <algorithm>

#include "brauer/errors.hpp"
#include "brauer/factor.hpp"
#include "brauer/roots_of_unity.hpp"

namespace brauer {

namespace {

// The larger of two fields in one tower.
FieldPtr larger(const FieldPtr& a, const FieldPtr& b) { return a->contains(b) ? a : b; }

FieldPtr field_of(const Point& R) { return R.inf ? nullptr : R.x.field()->contains(R.y.field()) ? R.x.field() : R.y.field(); }

Point lift_point(const Curve& E, const Point& R, const FieldPtr& F) {
    if (R.inf) return R;
    return E.over(F).embed(R, F);
}

Elem value(const CertifiedFunction& c, const Point& R, const FieldPtr& F) {
    auto v = c.ff.eval(c.t, R);
    if (!v || v->is_zero())
        fail("PoleAtEvaluation", "t at " + to_string(c.P) + " meets its support at " + to_string(R));
    return embed(*v, F);
}

Elem lift_to(const FunctionField& target, const CertifiedFunction& c) {
    if (c.ff.field() == target.field()) return c.t;
    return target.lift(c.t, c.ff);
}

FunctionField common_ff(const CertifiedFunction& a, const CertifiedFunction& b) {
    return a.ff.base()->contains(b.ff.base()) ? a.ff : b.ff;
}

Elem sigma_pow(const Tower& T, const Automorphism& s, int i, const Elem& e) {
    Elem r = e;
    for (int k = 0; k < i; ++k) r = apply(T, s, r);
    return r;
}

}  // namespace

KummerPair kummer_delta(const Point& R0, const CertifiedFunction& tP, const CertifiedFunction& tQ) {
    FieldPtr F = larger(tP.ff.base(), tQ.ff.base());
    if (!R0.inf) F = larger(F, field_of(R0));
    const Curve E = tP.ff.curve().over(F);
    Point R = lift_point(E, R0, F), P = lift_point(E, tP.P, F), Q = lift_point(E, tQ.P, F);
    if (R.inf) return {F->one(), F->one()};
    if (R == P) {
        Point PQ = E.add(P, Q);
        return {value(tQ, P, F), value(tP, PQ, F) / value(tP, Q, F)};
    }
    if (R == Q) {
        Point PQ = E.add(P, Q);
        return {value(tQ, PQ, F) / value(tQ, P, F), value(tP, Q, F)};
    }
    return {value(tQ, R, F), value(tP, R, F)};
}

SymbolTensor epsilon_to_symbols(const KummerPair& pair, const CertifiedFunction& tP, const CertifiedFunction& tQ,
                                const std::string& tag) {
    FunctionField ff = common_ff(tP, tQ);
    SymbolTensor t{ff, {}, tag};
    int q = tP.q;
    auto trivial = [&](const Elem& e) {
        auto r = try_is_qth_power(e, q);
        return r && *r;
    };
    if (!trivial(pair.a)) t.terms.push_back({ff.constant(embed(pair.a, ff.base())), lift_to(ff, tP), "", ""});
    if (!trivial(pair.b)) t.terms.push_back({ff.constant(embed(pair.b, ff.base())), lift_to(ff, tQ), "", ""});
    return t;
}

CertifiedFunction build_nQ(const TorsionBasis& B, const CaseInfo& C, const CertifiedFunction& tQ) {
    if (C.tag != CaseTag::QDivides) fail("WrongCase", "n_Q needs the q-divides case");
    const Tower& T = B.tower;
    const int q = B.q;
    const FieldPtr& L = T.top();
    const FieldPtr& Lp = T.levels[C.lprime_level];
    FunctionField ffL(B.EL);
    FunctionField ffLp(B.Ek.over(Lp));
    Elem tq = tQ.ff.field() == ffL.field() ? tQ.t : ffL.lift(tQ.t, tQ.ff);

    CertifiedFunction out;
    out.ff = ffLp;
    out.P = B.Q;
    out.q = q;
    Elem N = ffL.field()->one();
    for (int i = 0; i < q; ++i)
        N = N * ffL.map_coeffs(tq, ffL, [&](const Elem& e) { return sigma_pow(T, C.sigma, i, e); });
    std::vector<std::pair<Point, int>> terms;
    for (int i = 0; i < q; ++i) terms.push_back({B.EL.add(B.EL.mul(i, B.P), B.Q), 1});
    terms.push_back({Point::zero(), -q});
    out.div = Divisor::of(terms);
    Elem f = ffL.with_divisor(out.div);
    out.transcript.push_back("orbit divisor " + to_string(out.div));
    auto c = constant_value(ffL, N / pow(f, static_cast<long>(q)));
    if (!c) fail("Internal", "N(t_Q)/f^q is not constant");
    out.scaling = L->one();
    if (!c->is_one()) {
        auto r = qth_root(*c, q);
        if (!r) fail("Internal", "N(t_Q)/f^q is not a q-th power in L");
        f = f * ffL.constant(*r);
        out.scaling = *r;
        out.transcript.push_back("scaled by " + to_string(*r));
    }
    auto fd = descend_function(f, ffL, ffLp);
    if (!fd) fail("Internal", "n_Q not defined over L'");
    out.t = *fd;
    out.exact_identity = pow(f, static_cast<long>(q)) == N;
    out.transcript.push_back("n_Q^q = N(t_Q): " + std::string(out.exact_identity ? "exact" : "FAILED"));
    return out;
}

Inflation inflation_generator(const TorsionBasis& B, const CaseInfo& C, const CertifiedFunction& nQ,
                              const MWData& mw_k, const GroupData& EL) {
    if (C.tag != CaseTag::QDivides) fail("WrongCase", "inflation generator needs the q-divides case");
    const int q = B.q;
    Inflation inf;
    inf.generator = SymbolTensor{nQ.ff, {{nQ.ff.constant(C.lq), nQ.t, "", ""}}, "L'(E)"};
    if (!mw_k.complete) inf.caveats.push_back("E(k)/qE(k) from search-bounded data");
    if (!EL.attested) inf.caveats.push_back("E(L) generators not attested complete");
    if (EL.generators.empty() && !EL.attested) {
        inf.caveats.push_back("IncompleteMWData: no E(L) data; quotient (E(k) ∩ qE(L))/qE(k) undecided");
        return inf;
    }
    const FieldPtr& L = B.L();
    std::vector<Point> gens;
    for (auto& g : EL.generators) gens.push_back(lift_point(B.EL, g, L));
    std::vector<Point> group = span(B.EL, gens);
    std::vector<Point> qEL;
    for (auto& S : group) {
        Point T = B.EL.mul(q, S);
        if (std::find(qEL.begin(), qEL.end(), T) == qEL.end()) qEL.push_back(T);
    }
    for (auto& R : mw_k.reps) {
        if (R.inf) continue;
        Point RL = lift_point(B.EL, R, L);
        if (std::find(qEL.begin(), qEL.end(), RL) != qEL.end()) inf.quotient_witnesses.push_back(R);
    }
    inf.quotient_nontrivial = !inf.quotient_witnesses.empty();
    inf.quotient_known = inf.quotient_nontrivial || (mw_k.complete && EL.attested);
    inf.generator_trivial = inf.quotient_nontrivial;
    return inf;
}

CheckResult fixed_set_check(const KummerPair& pair, const TorsionBasis& B, const CaseInfo& C) {
    const Tower& T = B.tower;
    const int q = B.q;
    Elem a = embed(pair.a, T.top()), b = embed(pair.b, T.top());
    Elem sa = apply(T, C.sigma, a), s2a = apply(T, C.sigma, sa);
    CheckResult r;
    if (!same_qth_class(b, a / sa, q)) {
        r.why = "b is not a/σ(a) modulo q-th powers";
        return r;
    }
    if (!same_qth_class(sa * sa, s2a * a, q)) {
        r.why = "σ(a)² ≢ σ²(a)·a";
        return r;
    }
    r.ok = true;
    return r;
}

CheckResult restriction_image_check(const KummerPair& pair, const TorsionBasis& B, const CaseInfo& C) {
    const Tower& T = B.tower;
    const int q = B.q;
    const FieldPtr& L = T.top();
    const FieldPtr& Lp = T.levels[C.lprime_level];
    Elem a = embed(pair.a, L), b = embed(pair.b, L);
    CheckResult r;
    if (!is_qth_power(b, q)) {
        r.why = "second slot is not a q-th power in L";
        return r;
    }
    if (lies_in(a, Lp)) {
        r.ok = true;
        r.witness = descend(a, Lp);
        return r;
    }
    Elem u = apply(T, C.sigma, a) / a;
    auto ws = roots(x_pow_minus(L, q, u));
    if (ws.empty()) {
        r.why = "σ(a)/a is not a q-th power in L";
        return r;
    }
    // N(w) does not depend on the root chosen
    Elem Nw = L->one();
    for (int i = 0; i < q; ++i) Nw = Nw * sigma_pow(T, C.sigma, i, ws.front());
    if (!Nw.is_one()) {
        r.why = "N_{L/L'}(w) ≠ 1 for w^q = σ(a)/a";
        return r;
    }
    std::stable_sort(ws.begin(), ws.end(), [](const Elem& x, const Elem& y) { return x.is_one() && !y.is_one(); });
    const Elem& w = ws.front();
    // Hilbert 90: b′ = Σ c_i σ^i(θ), c_0 = 1, c_i = c_{i−1}·σ^{i−1}(w); σ(b′)/b′ = 1/w
    Elem bp;
    for (int e = 0; e < q && !(bp.valid() && !bp.is_zero()); ++e) {
        Elem th = pow(C.l, static_cast<long>(e));
        bp = L->zero();
        Elem c = L->one();
        for (int i = 0; i < q; ++i) {
            bp = bp + c * sigma_pow(T, C.sigma, i, th);
            c = c * sigma_pow(T, C.sigma, i, w);
        }
    }
    if (bp.is_zero()) fail("Internal", "Hilbert 90 sum vanished for every basis element");
    Elem wit = a * pow(bp, static_cast<long>(q));
    if (!lies_in(wit, Lp)) fail("Internal", "Hilbert 90 witness not in L'");
    r.ok = true;
    r.witness = descend(wit, Lp);
    return r;
}

bool is_two_cocycle(const Tower& T, const std::vector<Automorphism>& G, const std::vector<std::vector<Elem>>& c) {
    auto idx = [&](const Automorphism& s) {
        for (size_t i = 0; i < G.size(); ++i)
            if (G[i] == s) return i;
        fail("Internal", "group not closed");
    };
    for (size_t g = 0; g < G.size(); ++g)
        for (size_t t = 0; t < G.size(); ++t)
            for (size_t u = 0; u < G.size(); ++u) {
                size_t tu = idx(compose(T, G[t], G[u])), gt = idx(compose(T, G[g], G[t]));
                Elem lhs = apply(T, G[g], c[t][u]) * c[g][tu];
                Elem rhs = c[gt][u] * c[g][t];
                if (lhs != rhs) return false;
            }
    return true;
}

CocycleTables symbol_cocycle_oracle(const Elem& a, const Elem& b, const Elem& rho, int q) {
    const FieldPtr& F = a.field();
    if (!F->is_finite()) fail("NotFiniteQuotient", "cocycle tables need a finite base field");
    FieldPtr F1 = F;
    Elem alpha;
    if (auto r = qth_root(a, q)) {
        alpha = *r;
    } else {
        F1 = Field::extension(F, x_pow_minus(F, q, a).c, "α");
        alpha = F1->gen();
    }
    FieldPtr F2 = F1;
    Elem beta;
    Elem b1 = embed(b, F1);
    if (auto r = qth_root(b1, q)) {
        beta = *r;
    } else {
        F2 = Field::extension(F1, x_pow_minus(F1, q, b1).c, "β");
        beta = F2->gen();
    }
    alpha = embed(alpha, F2);
    CocycleTables out;
    out.tower = F2 == F ? Tower{{F}} : Tower::between(F2, F);
    const Tower& T = out.tower;
    out.group = automorphisms(T);
    const auto& G = out.group;
    Elem rh = embed(rho, F2);
    for (auto& s : G) {
        out.i_index.push_back(rho_index(apply(T, s, alpha) / alpha, rh, q));
        out.j_index.push_back(rho_index(apply(T, s, beta) / beta, rh, q));
        out.g.push_back(pow(alpha, static_cast<long>(out.j_index.back())));
    }
    size_t n = G.size();
    auto idx = [&](const Automorphism& s) {
        for (size_t i = 0; i < n; ++i)
            if (G[i] == s) return i;
        fail("Internal", "group not closed");
    };
    Elem A = embed(a, F2);
    out.weil.assign(n, std::vector<Elem>(n));
    out.standard.assign(n, std::vector<Elem>(n));
    out.differ_by_dg = true;
    for (size_t g = 0; g < n; ++g)
        for (size_t t = 0; t < n; ++t) {
            out.weil[g][t] = pow(rh, -static_cast<long>(out.i_index[g] * out.j_index[t]));
            out.standard[g][t] = out.j_index[g] + out.j_index[t] >= q ? A : F2->one();
            size_t gt = idx(compose(T, G[g], G[t]));
            Elem dg = apply(T, G[g], out.g[t]) * out.g[g] / out.g[gt];
            if (out.standard[g][t] != out.weil[g][t] * dg) out.differ_by_dg = false;
        }
    out.weil_is_cocycle = is_two_cocycle(T, G, out.weil);
    out.standard_is_cocycle = is_two_cocycle(T, G, out.standard);
    return out;
}

void check_symbol_lengths(const Presentation& p, int q) {
    auto chk = [&](const SymbolTensor& t) {
        if (static_cast<int>(t.length()) > symbol_length_bound(q))
            fail("SymbolLengthExceeded", "tensor of length " + std::to_string(t.length()));
    };
    for (auto& t : p.generators) chk(t);
    for (auto& t : p.relations) chk(t);
}

std::optional<SymbolTensor> corestrict_down(const SymbolTensor& t, const Tower& T, int from, int to, int q,
                                            std::string* why) {
    SymbolTensor cur = t;
    for (int lvl = from; lvl > to; --lvl) {
        try {
            FunctionField up = cur.ff.over(T.levels[lvl]);
            SymbolTensor lifted{up, {}, cur.tag};
            for (auto& s : cur.terms) {
                Symbol r = s;
                if (s.param.empty()) r.a = embed(s.a, up.field());
                r.f = embed(s.f, up.field());
                if (cur.ff.field() != up.field()) {
                    if (s.param.empty()) r.a = up.lift(embed(s.a, cur.ff.field()), cur.ff);
                    r.f = up.lift(embed(s.f, cur.ff.field()), cur.ff);
                }
                lifted.terms.push_back(r);
            }
            CyclicStep st = cyclic_step(up, T.levels[lvl - 1]);
            cur = corestrict(lifted, st, q);
        } catch (const Error& e) {
            if (why) *why = e.what();
            return std::nullopt;
        }
    }
    cur.tag = to == 0 ? "k(E)" : "L" + std::to_string(to) + "(E)";
    return cur;
}

namespace {

std::string group_domain(const std::string& F) { return F + "^×/(" + F + "^×)^q"; }

// Number of distinct classes among pairs.
size_t distinct_classes(const std::vector<KummerPair>& v, int q) {
    std::vector<KummerPair> seen;
    for (auto& x : v) {
        bool dup = false;
        for (auto& y : seen) dup = dup || same_class(x, y, q);
        if (!dup) seen.push_back(x);
    }
    return seen.size();
}

}  // namespace

Presentation presentation_split(const TorsionBasis& B, const CertifiedFunction& tP, const CertifiedFunction& tQ,
                                const MWData& mw) {
    if (B.L() != B.k()) fail("WrongCase", "split case needs E[q] rational over k");
    const int q = B.q;
    Presentation p;
    p.tag = CaseTag::Split;
    p.decomposition = "Br(E)[q] = Br(k)[q] ⊕ I";
    FunctionField ff = common_ff(tP, tQ);
    p.generators.push_back(SymbolTensor{
        ff, {{Elem(), tP.t, "a", group_domain("k")}, {Elem(), tQ.t, "b", group_domain("k")}}, "k(E)"});
    if (mw.generators.empty()) {
        p.relations.push_back(SymbolTensor{ff, {}, "k(E)"});
        p.relation_sources.push_back("E(k) = 0");
        p.relation_pairs.push_back({B.k()->one(), B.k()->one()});
    }
    for (const Point& R : mw.generators) {
        KummerPair d = kummer_delta(R, tP, tQ);
        p.relations.push_back(epsilon_to_symbols(d, tP, tQ));
        p.relation_sources.push_back("ε∘δ(" + to_string(R) + ")");
        p.relation_pairs.push_back(d);
    }
    if (!mw.complete) p.caveats.push_back("Mordell–Weil data search-bounded: relation set may be incomplete");
    if (B.k()->is_finite()) {
        std::vector<KummerPair> img;
        for (auto& R : mw.reps) img.push_back(kummer_delta(R, tP, tQ));
        p.delta_image_size = distinct_classes(img, q);
        mpz_class g;
        mpz_class m = B.k()->cardinality() - 1, qq = q;
        mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), qq.get_mpz_t());
        p.pair_group_size = g.get_ui() * g.get_ui();
        p.I_trivial = mw.complete && *p.delta_image_size == *p.pair_group_size;
        p.notes.push_back("|image δ| = " + std::to_string(*p.delta_image_size) + ", |(k^×/q)²| = " +
                          std::to_string(*p.pair_group_size));
    }
    check_symbol_lengths(p, q);
    return p;
}

Presentation presentation_coprime(const TorsionBasis& B, const GaloisAction& G, const CertifiedFunction& tP,
                                  const CertifiedFunction& tQ, const MWData& mw_k) {
    const int q = B.q;
    if (G.order() == 1 || G.order() % q == 0) fail("WrongCase", "coprime case needs q ∤ [L:k] > 1");
    Presentation p;
    p.tag = CaseTag::Coprime;
    p.decomposition = "Br(E)[q] = Br(k)[q] ⊕ I, I = Cor_{L(E)/k(E)}(I_L)";
    FunctionField ffL = common_ff(tP, tQ);
    const Tower& T = B.tower;
    int top = static_cast<int>(T.levels.size()) - 1;
    std::string dom = "L^× with N_{L/k}(·) = 1";
    p.generators.push_back(SymbolTensor{ffL, {{Elem(), tP.t, "a", dom}, {Elem(), tQ.t, "b", dom}}, "Cor L(E)/k(E)"});
    for (const Point& R : mw_k.generators) {
        KummerPair d = kummer_delta(R, tP, tQ);
        SymbolTensor tl = epsilon_to_symbols(d, tP, tQ, "L(E)");
        std::string why;
        auto c = corestrict_down(tl, T, top, 0, q, &why);
        if (c) {
            p.relations.push_back(*c);
        } else {
            p.relations.push_back(tl);
            p.caveats.push_back("corestriction of ε∘δ(" + to_string(R) + ") unavailable (" + why +
                                "); relation kept over L(E)");
        }
        p.relation_sources.push_back("Cor ε_L∘δ_L(res " + to_string(R) + ")");
        p.relation_pairs.push_back(d);
    }
    if (mw_k.generators.empty()) p.notes.push_back("E(k) = 0: no relations");
    p.caveats.push_back("corestriction is not injective: relations from its kernel are not listed");
    if (!mw_k.complete) p.caveats.push_back("Mordell–Weil data search-bounded: relation set may be incomplete");
    check_symbol_lengths(p, q);
    return p;
}

Presentation presentation_q_divides(const TorsionBasis& B, const GaloisAction& G, const CaseInfo& C,
                                    const CertifiedFunction& tP, const CertifiedFunction& tQ,
                                    const CertifiedFunction& nQ, const MWData& mw_k, const GroupData& EL) {
    (void)G;
    if (C.tag != CaseTag::QDivides) fail("WrongCase", "q-divides presentation needs the q-divides case");
    const int q = B.q;
    const Tower& T = B.tower;
    const FieldPtr& Lp = T.levels[C.lprime_level];
    FunctionField ffLp = nQ.ff;
    Presentation p;
    p.tag = CaseTag::QDivides;
    p.decomposition = "Br(E)[q] = Br(k)[q] ⊕ I";
    Elem tPp;
    if (tP.ff.field() == ffLp.field()) {
        tPp = tP.t;
    } else {
        auto d = descend_function(tP.t, tP.ff, ffLp);
        if (!d) fail("Internal", "t_P is not defined over L'");
        tPp = *d;
    }
    Inflation inf = inflation_generator(B, C, nQ, mw_k, EL);
    for (auto& c : inf.caveats) p.caveats.push_back(c);
    p.generators.push_back(inf.generator);
    p.generators.push_back(SymbolTensor{ffLp, {{Elem(), tPp, "a", "L'^×"}}, "L'(E)"});

    // ℛ_L from E(L), pulled back along restriction
    std::vector<Point> gens = EL.generators;
    if (gens.empty()) {
        gens = mw_k.generators;
        p.caveats.push_back("IncompleteMWData: E(L) not supplied; ℛ_L built from E(k) only");
    }
    std::vector<KummerPair> dl;
    for (auto& R : gens) dl.push_back(kummer_delta(R, tP, tQ));
    if (dl.size() > 8) fail("Unsupported", "too many E(L) generators to enumerate");
    size_t combos = 1;
    for (size_t i = 0; i < dl.size(); ++i) combos *= q;
    std::vector<Elem> classes;  // witnesses b′ ∈ L′, distinct in L^×/(L^×)^q
    std::vector<std::string> origin;
    const FieldPtr& L = T.top();
    for (size_t c = 0; c < combos; ++c) {
        KummerPair acc{L->one(), L->one()};
        size_t x = c;
        std::string lab;
        for (size_t i = 0; i < dl.size(); ++i, x /= q) {
            int e = static_cast<int>(x % q);
            if (e) {
                acc = acc * pow(dl[i], e);
                lab += (lab.empty() ? "" : " + ") + (e == 1 ? "" : std::to_string(e) + "·") + to_string(gens[i]);
            }
        }
        CheckResult r = restriction_image_check(acc, B, C);
        if (!r.ok) continue;
        bool dup = false;
        for (auto& w : classes) dup = dup || same_qth_class(embed(w, L), embed(r.witness, L), q);
        if (dup) continue;
        classes.push_back(r.witness);
        origin.push_back(lab.empty() ? "0" : lab);
    }
    for (size_t i = 0; i < classes.size(); ++i) {
        SymbolTensor t{ffLp, {}, "L'(E)"};
        if (!is_qth_power(embed(classes[i], L), q)) t.terms.push_back({ffLp.constant(classes[i]), tPp, "", ""});
        p.relations.push_back(t);
        p.relation_sources.push_back("res⁻¹ ε_L∘δ_L(" + origin[i] + ")");
        p.relation_pairs.push_back({classes[i], Lp->one()});
    }
    if (inf.quotient_nontrivial) {
        p.relations.push_back(inf.generator);
        p.relation_sources.push_back("inflation: (E(k) ∩ qE(L))/qE(k) nontrivial");
        p.relation_pairs.push_back({C.lq, Lp->one()});
    } else if (!inf.quotient_known) {
        p.caveats.push_back("inflation relation undecided: quotient (E(k) ∩ qE(L))/qE(k) not computed");
    } else {
        p.notes.push_back("(E(k) ∩ qE(L))/qE(k) trivial: (l^q, n_Q) is not a relation");
    }
    if (C.lprime_level != 0) {
        p.caveats.push_back("corestriction is not injective: relations from its kernel are not listed");
        auto down = [&](std::vector<SymbolTensor>& v) {
            for (auto& t : v) {
                bool param = false;
                for (auto& s : t.terms) param = param || !s.param.empty();
                if (param) {
                    t.tag = "Cor L'(E)/k(E)";
                    continue;
                }
                std::string why;
                if (auto c = corestrict_down(t, T, C.lprime_level, 0, q, &why)) {
                    t = *c;
                } else {
                    p.caveats.push_back("corestriction to k(E) unavailable (" + why + "); kept over L'(E)");
                }
            }
        };
        down(p.generators);
        down(p.relations);
    }
    if (!mw_k.complete) p.caveats.push_back("Mordell–Weil data search-bounded: relation set may be incomplete");
    check_symbol_lengths(p, q);
    return p;
}

}  // namespace brauer
