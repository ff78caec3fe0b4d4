#include "brauer/symbols.hpp"

#include "brauer/errors.hpp"
#include "brauer/factor.hpp"

namespace brauer {

KummerPair operator*(const KummerPair& x, const KummerPair& y) {
    return {x.a * embed(y.a, x.a.field()), x.b * embed(y.b, x.b.field())};
}

KummerPair pow(const KummerPair& x, long e) { return {pow(x.a, e), pow(x.b, e)}; }

std::optional<bool> try_is_qth_power(const Elem& a, int q) {
    if (a.is_one() || (q % 2 == 1 && (-a).is_one())) return true;
    try {
        return is_qth_power(a, q);
    } catch (const Error& e) {
        if (e.code() == "Unsupported") return std::nullopt;
        throw;
    }
}

bool same_qth_class(const Elem& a, const Elem& b, int q) {
    Elem r = a * pow(embed(b, a.field()), q - 1);
    auto t = try_is_qth_power(r, q);
    if (!t) fail("Unsupported", "class comparison of " + to_string(a) + " and " + to_string(b));
    return *t;
}

bool same_class(const KummerPair& x, const KummerPair& y, int q) {
    return same_qth_class(x.a, y.a, q) && same_qth_class(x.b, y.b, q);
}

bool is_trivial(const KummerPair& x, int q) {
    return is_qth_power(x.a, q) && is_qth_power(x.b, q);
}

std::string to_string(const KummerPair& x) { return "(" + to_string(x.a) + ", " + to_string(x.b) + ")"; }

std::optional<Elem> constant_value(const FunctionField& ff, const Elem& f) {
    UVW a = ff.uvw(f);
    if (a.v.deg() >= 0 || a.u.deg() > 0 || a.w.deg() > 0) return std::nullopt;
    if (a.u.is_zero()) return ff.base()->zero();
    return a.u.c[0] / a.w.c[0];
}

std::string slot_string(const FunctionField& ff, const Elem& e) {
    if (!e.valid()) return "?";
    if (e.field() == ff.base() || ff.base()->contains(e.field())) return to_string(e);
    if (auto c = constant_value(ff, e)) return to_string(*c);
    return to_string(e);
}

std::string to_string(const SymbolTensor& t) {
    if (t.terms.empty()) return "1";
    std::string s;
    for (auto& sym : t.terms) {
        if (!s.empty()) s += " ⊗ ";
        std::string a = sym.param.empty() ? slot_string(t.ff, sym.a) : sym.param;
        s += "(" + a + ", " + slot_string(t.ff, sym.f) + ")";
    }
    return s + (t.tag.empty() ? "" : "_" + t.tag);
}

namespace {

bool trivial_slot(const FunctionField& ff, const Elem& e, int q) {
    Elem v = embed(e, ff.field());
    if (auto c = constant_value(ff, v)) {
        auto r = try_is_qth_power(*c, q);
        return r && *r;
    }
    auto r = try_is_qth_power(v, q);
    return r && *r;
}

}  // namespace

SymbolTensor simplify(const SymbolTensor& t, int q) {
    SymbolTensor out{t.ff, {}, t.tag};
    const FieldPtr& KE = t.ff.field();
    for (const Symbol& s : t.terms) {
        if (!s.param.empty()) {
            out.terms.push_back(s);
            continue;
        }
        Elem a = embed(s.a, KE), f = embed(s.f, KE);
        if (trivial_slot(t.ff, a, q) || trivial_slot(t.ff, f, q)) continue;
        bool merged = false;
        for (Symbol& o : out.terms) {
            if (!o.param.empty()) continue;
            if (embed(o.f, KE) == f) {
                o.a = embed(o.a, KE) * a;
                merged = true;
            } else if (embed(o.a, KE) == a) {
                o.f = embed(o.f, KE) * f;
                merged = true;
            }
            if (merged) break;
        }
        if (!merged) out.terms.push_back({a, f, "", ""});
    }
    // merging can create trivial slots
    std::vector<Symbol> kept;
    for (auto& s : out.terms)
        if (!s.param.empty() || !(trivial_slot(t.ff, s.a, q) || trivial_slot(t.ff, s.f, q))) kept.push_back(s);
    out.terms = kept;
    return out;
}

std::optional<Elem> descend_function(const Elem& f, const FunctionField& from, const FunctionField& to) {
    UVW a = from.uvw(f);
    const FieldPtr& K = to.base();
    auto dp = [&](const Poly& p) -> std::optional<Poly> {
        std::vector<Elem> c;
        for (const Elem& e : p.c) {
            if (!lies_in(e, K)) return std::nullopt;
            c.push_back(descend(e, K));
        }
        return Poly(K, c);
    };
    auto u = dp(a.u), v = dp(a.v), w = dp(a.w);
    if (!u || !v || !w) return std::nullopt;
    return to.from_uvw({*u, *v, *w});
}

}  // namespace brauer
