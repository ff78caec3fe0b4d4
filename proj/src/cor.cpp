#include "brauer/cor.hpp"

#include "brauer/errors.hpp"
#include "brauer/roots_of_unity.hpp"

namespace brauer {

CyclicStep cyclic_step(const FunctionField& upper, const FieldPtr& K) {
    const FieldPtr& L = upper.base();
    if (L->kind() != FieldKind::Extension || L->base() != K)
        fail("NotPrimeDegree", "expected a simple extension of " + K->describe());
    if (!is_odd_prime(L->degree()) && L->degree() != 2)
        fail("NotPrimeDegree", "step of degree " + std::to_string(L->degree()));
    CyclicStep st;
    st.upper = upper;
    const Curve& EL = upper.curve();
    if (!lies_in(EL.A(), K) || !lies_in(EL.B(), K)) fail("FieldMismatch", "curve not defined over " + K->describe());
    st.lower = FunctionField(Curve(descend(EL.A(), K), descend(EL.B(), K)));
    st.tower = Tower::between(L, K);
    auto G = automorphisms(st.tower);
    st.sigma = G.at(1);
    st.degree = L->degree();
    if (order(st.tower, st.sigma) != st.degree) fail("NotGalois", "generator of wrong order");
    return st;
}

Elem conjugate(const CyclicStep& st, const Elem& f, int i) {
    i = ((i % st.degree) + st.degree) % st.degree;
    if (i == 0) return embed(f, st.upper.field());
    Automorphism s = st.sigma;
    for (int k = 1; k < i; ++k) s = compose(st.tower, st.sigma, s);
    return st.upper.map_coeffs(f, st.upper, [&](const Elem& e) { return apply(st.tower, s, e); });
}

Elem norm(const CyclicStep& st, const Elem& f) {
    Elem n = embed(f, st.upper.field());
    for (int i = 1; i < st.degree; ++i) n = n * conjugate(st, f, i);
    auto d = descend_function(n, st.upper, st.lower);
    if (!d) fail("Internal", "norm not defined over the lower field");
    return *d;
}

SymbolTensor restrict_symbol(const SymbolTensor& t, const CyclicStep& st) {
    SymbolTensor out{st.upper, {}, "L(E)"};
    for (const Symbol& s : t.terms) {
        Symbol r = s;
        if (s.param.empty()) r.a = st.upper.lift(embed(s.a, st.lower.field()), st.lower);
        r.f = st.upper.lift(embed(s.f, st.lower.field()), st.lower);
        out.terms.push_back(r);
    }
    return out;
}

Poly theta_form(const CyclicStep& st, const Elem& f) {
    const FieldPtr& KE = st.lower.field();
    std::vector<Elem> mod;
    for (const Elem& c : st.L()->modulus()) mod.push_back(st.lower.constant(c));
    FieldPtr M = Field::extension(KE, mod, "t", false);
    Elem X = embed(st.lower.x(), M), Y = embed(st.lower.y(), M), T = M->gen();
    auto conv = [&](const Elem& c) {
        Elem acc = M->zero();
        const auto& cs = c.coeffs();
        for (int j = static_cast<int>(cs.size()) - 1; j >= 0; --j) acc = acc * T + embed(cs[j], M);
        return acc;
    };
    auto horner = [&](const Poly& p) {
        Elem acc = M->zero();
        for (int i = p.deg(); i >= 0; --i) acc = acc * X + conv(embed(p.c[i], st.L()));
        return acc;
    };
    UVW a = st.upper.uvw(f);
    Elem fm = (horner(a.u) + horner(a.v) * Y) / horner(a.w);
    return Poly(KE, fm.coeffs());
}

std::vector<K2Term> rosset_tate(const Poly& m, const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) fail("ZeroInput", "zero slot");
    if (f.deg() >= 2 || g.deg() >= 2)
        fail("ChainFailure", "slot of degree " + std::to_string(std::max(f.deg(), g.deg())) +
                                 " in the generator; places of higher degree are not resolved");
    std::vector<K2Term> dsum;  // Σ_{v ≠ m} ∂_v{m, f, g}
    std::vector<Elem> roots;
    for (const Poly* h : {&f, &g})
        if (h->deg() == 1) {
            Elem t0 = -h->c[0] / h->c[1];
            bool seen = false;
            for (auto& r : roots) seen = seen || r == t0;
            if (!seen) roots.push_back(t0);
        }
    auto unit = [](const Poly& h, const Elem& t0, int& e) {
        if (h.deg() == 1 && eval(h, t0).is_zero()) {
            e = 1;
            return h.c[1];
        }
        e = 0;
        return eval(h, t0);
    };
    for (const Elem& t0 : roots) {
        int e1, e2, e3;
        Elem u1 = unit(m, t0, e1), u2 = unit(f, t0, e2), u3 = unit(g, t0, e3);
        if (e1 != 0) fail("ChainFailure", "slot vanishes at a root of the modulus");
        if (e2) dsum.push_back({u1, u3, -e2});
        if (e3) dsum.push_back({u1, u2, e3});
    }
    // place at infinity: uniformizer 1/t, valuation −deg, unit part the leading coefficient
    {
        long e1 = -m.deg(), e2 = -f.deg(), e3 = -g.deg();
        const Elem &u1 = m.lc(), &u2 = f.lc(), &u3 = g.lc();
        if (e1) dsum.push_back({u2, u3, e1});
        if (e2) dsum.push_back({u1, u3, -e2});
        if (e3) dsum.push_back({u1, u2, e3});
    }
    for (auto& t : dsum) t.n = -t.n;
    return dsum;
}

SymbolTensor corestrict_symbol(const Symbol& s, const CyclicStep& st, int q, CorTrace* trace) {
    if (!s.param.empty()) fail("Unsupported", "corestriction of a parameter slot");
    Elem a = embed(s.a, st.upper.field()), f = embed(s.f, st.upper.field());
    SymbolTensor out{st.lower, {}, "k(E)"};
    CorTrace local;
    CorTrace& tr = trace ? *trace : local;
    if (auto fl = descend_function(f, st.upper, st.lower)) {
        tr.route = "projection-first";
        out.terms.push_back({norm(st, a), *fl, "", ""});
        return simplify(out, q);
    }
    if (auto al = descend_function(a, st.upper, st.lower)) {
        tr.route = "projection-second";
        out.terms.push_back({*al, norm(st, f), "", ""});
        return simplify(out, q);
    }
    tr.route = "rosset-tate";
    std::vector<Elem> mod;
    for (const Elem& c : st.L()->modulus()) mod.push_back(st.lower.constant(c));
    Poly m(st.lower.field(), mod);
    Poly pf = theta_form(st, a), pg = theta_form(st, f);
    tr.steps.push_back("first slot in θ: " + to_string(pf, "θ"));
    tr.steps.push_back("second slot in θ: " + to_string(pg, "θ"));
    for (auto& t : rosset_tate(m, pf, pg)) {
        long n = ((t.n % q) + q) % q;
        if (n == 0) continue;
        tr.steps.push_back(std::to_string(t.n) + "·{" + to_string(t.a) + ", " + to_string(t.b) + "}");
        out.terms.push_back({pow(t.a, n), t.b, "", ""});
    }
    return simplify(out, q);
}

SymbolTensor corestrict(const SymbolTensor& t, const CyclicStep& st, int q) {
    SymbolTensor out{st.lower, {}, "k(E)"};
    for (const Symbol& s : t.terms) {
        auto c = corestrict_symbol(s, st, q);
        for (auto& x : c.terms) out.terms.push_back(x);
    }
    return simplify(out, q);
}

}  // namespace brauer
