#include "brauer/factor.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>

#include "brauer/errors.hpp"

namespace brauer {

namespace {

std::atomic<int> g_degree_cap{kDefaultDegreeCap};

void sort_factors(std::vector<Factor>& fs) {
    std::sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) {
        int c = compare(a.f, b.f);
        if (c != 0) return c < 0;
        return a.mult < b.mult;
    });
}

Poly x_poly(const FieldPtr& F) { return Poly::x(F); }

// Coefficientwise p-th root in a finite field of characteristic p (f' = 0 case).
Poly pth_root_poly(const Poly& f) {
    const FieldPtr& F = f.F;
    std::int64_t p = F->characteristic();
    mpz_class e = F->cardinality() / p;  // a^(|F|/p) is the p-th root
    std::vector<Elem> c;
    for (int i = 0; i <= f.deg(); i += static_cast<int>(p)) c.push_back(pow(f.c[i], e));
    return Poly(F, std::move(c));
}

std::vector<Factor> squarefree_char_p(const Poly& f) {
    std::vector<Factor> out;
    Poly one = Poly::constant(f.F, 1);
    Poly c = gcd(f, derivative(f));
    Poly w = f / c;
    int i = 1;
    while (w.deg() > 0) {
        Poly y = gcd(w, c);
        Poly fac = w / y;
        if (fac.deg() > 0) out.push_back({monic(fac), i});
        w = y;
        c = c / y;
        ++i;
    }
    if (c.deg() > 0) {
        int p = static_cast<int>(f.F->characteristic());
        for (auto& fm : squarefree_char_p(pth_root_poly(c))) out.push_back({fm.f, fm.mult * p});
    }
    return out;
}

std::vector<Factor> squarefree_char_0(const Poly& f) {
    std::vector<Factor> out;
    Poly fp = derivative(f);
    Poly a0 = gcd(f, fp);
    Poly b = f / a0;
    Poly c = fp / a0;
    Poly d = c - derivative(b);
    int i = 1;
    while (b.deg() > 0) {
        Poly a = gcd(b, d);
        b = b / a;
        c = d / a;
        d = c - derivative(b);
        if (a.deg() > 0) out.push_back({monic(a), i});
        ++i;
    }
    return out;
}

std::vector<std::pair<Poly, int>> ddf(const Poly& f) {
    std::vector<std::pair<Poly, int>> out;
    const FieldPtr& F = f.F;
    Poly fs = f;
    Poly X = x_poly(F);
    Poly h = X;
    int i = 1;
    while (fs.deg() >= 2 * i) {
        h = powmod(h, F->cardinality(), fs);
        Poly g = gcd(h - X, fs);
        if (g.deg() > 0) {
            out.push_back({g, i});
            fs = fs / g;
            h = h % fs;
        }
        ++i;
    }
    if (fs.deg() > 0) out.push_back({fs, fs.deg()});
    return out;
}

void edf(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
    if (f.deg() == d) {
        out.push_back(monic(f));
        return;
    }
    const FieldPtr& F = f.F;
    mpz_class qd;
    mpz_pow_ui(qd.get_mpz_t(), F->cardinality().get_mpz_t(), d);
    mpz_class e = (qd - 1) / 2;
    Poly one = Poly::constant(F, 1);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<Elem> rc;
        for (int i = 0; i < f.deg(); ++i) rc.push_back(F->random(rng));
        Poly r(F, rc);
        if (r.deg() < 1) continue;
        Poly g = gcd(r, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            edf(g, d, rng, out);
            edf(f / g, d, rng, out);
            return;
        }
        Poly h = powmod(r, e, f) - one;
        g = gcd(h, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            edf(g, d, rng, out);
            edf(f / g, d, rng, out);
            return;
        }
    }
    fail("Internal", "equal-degree splitting did not converge");
}

std::vector<Factor> factor_number_field_sqf(const Poly& f);

std::vector<Factor> factor_rational(const Poly& f) {
    // clear denominators, then factor the primitive integer polynomial
    mpz_class L = 1;
    for (const auto& c : f.c) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.rational().get_den_mpz_t());
    std::vector<Factor> out;
    for (auto& part : squarefree_char_0(f)) {
        mpz_class den = 1;
        for (const auto& c : part.f.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
        std::vector<mpz_class> z;
        for (const auto& c : part.f.c) z.push_back(mpz_class(c.rational() * den));
        for (auto& g : zassenhaus(z)) {
            std::vector<Elem> c;
            for (auto& v : g) c.push_back(f.F->from_mpz(v));
            out.push_back({monic(Poly(f.F, c)), part.mult});
        }
    }
    (void)L;
    return out;
}

void check_cap(const Poly& f) {
    const FieldPtr& F = f.F;
    if (F->characteristic() != 0) return;
    long total = static_cast<long>(f.deg()) * std::max(1, F->absolute_degree());
    if (total > g_degree_cap.load())
        fail("DegreeOverflow", "total degree " + std::to_string(total) + " exceeds cap " +
                                   std::to_string(g_degree_cap.load()));
}

}  // namespace

void set_degree_cap(int cap) { g_degree_cap = cap; }
int degree_cap() { return g_degree_cap.load(); }

std::vector<Factor> squarefree_decomposition(const Poly& f) {
    if (f.deg() <= 0) return {};
    if (f.F->characteristic() != 0 && f.F->is_finite()) return squarefree_char_p(monic(f));
    return squarefree_char_0(monic(f));
}

std::vector<Factor> factor_finite(const Poly& f0) {
    std::vector<Factor> out;
    if (f0.deg() <= 0) return out;
    Poly f = monic(f0);
    std::mt19937_64 rng(0x5eed1234ULL);
    for (auto& sq : squarefree_char_p(f)) {
        for (auto& [g, d] : ddf(sq.f)) {
            std::vector<Poly> parts;
            edf(g, d, rng, parts);
            for (auto& p : parts) out.push_back({p, sq.mult});
        }
    }
    sort_factors(out);
    return out;
}

std::vector<Factor> factor(const Poly& f0) {
    if (f0.is_zero()) fail("ZeroInput", "factor of zero polynomial");
    if (f0.deg() <= 0) return {};
    Poly f = monic(f0);
    const FieldPtr& F = f.F;
    if (F->is_finite()) return factor_finite(f);
    check_cap(f);
    std::vector<Factor> out;
    if (F->kind() == FieldKind::Rational) {
        out = factor_rational(f);
    } else if (F->is_number_field()) {
        for (auto& sq : squarefree_char_0(f))
            for (auto& g : factor_number_field_sqf(sq.f)) out.push_back({g.f, sq.mult});
    } else {
        fail("Unsupported", "factorization over " + F->describe());
    }
    sort_factors(out);
    return out;
}

bool is_irreducible(const Poly& f) {
    if (f.deg() <= 0) return false;
    auto fs = factor(f);
    return fs.size() == 1 && fs[0].mult == 1;
}

std::vector<Elem> roots(const Poly& f0) {
    std::vector<Elem> out;
    if (f0.deg() <= 0) return out;
    Poly f = monic(f0);
    const FieldPtr& F = f.F;
    if (F->is_finite()) {
        Poly X = Poly::x(F);
        Poly g = gcd(powmod(X, F->cardinality(), f) - X, f);
        if (g.deg() <= 0) return out;
        std::mt19937_64 rng(0x5eed1234ULL);
        std::vector<Poly> parts;
        edf(g, 1, rng, parts);
        for (auto& p : parts) out.push_back(-p.c[0]);
    } else {
        for (auto& fm : factor(f))
            if (fm.f.deg() == 1) out.push_back(-fm.f.c[0]);
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

Elem relative_norm(const Elem& a, const FieldPtr& K) {
    Elem cur = a;
    while (cur.field() != K) {
        const FieldPtr& F = cur.field();
        if (F->kind() != FieldKind::Extension || !F->contains(K))
            fail("FieldMismatch", "norm target " + K->describe() + " not below " + F->describe());
        cur = resultant(Poly(F->base(), F->modulus()), Poly(F->base(), cur.coeffs()));
    }
    return cur;
}

Poly norm_poly(const Poly& g) {
    const FieldPtr& K = g.F;
    const FieldPtr& F = K->base();
    int n = K->degree();
    int D = n * g.deg();
    std::vector<Elem> xs, ys;
    for (int i = 0; i <= D; ++i) {
        Elem c = F->from_int(i);
        xs.push_back(c);
        ys.push_back(relative_norm(eval(g, embed(c, K)), F));
    }
    // Newton interpolation
    std::vector<Elem> coef = ys;
    for (int j = 1; j <= D; ++j)
        for (int i = D; i >= j; --i) coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
    Poly result = Poly::constant(coef[D]);
    for (int i = D - 1; i >= 0; --i) {
        Poly lin(F, {-xs[i], F->one()});
        result = result * lin + Poly::constant(coef[i]);
    }
    return result;
}

namespace {

std::vector<Factor> factor_number_field_sqf(const Poly& f) {
    if (f.deg() == 1) return {{monic(f), 1}};
    const FieldPtr& K = f.F;
    const FieldPtr& F = K->base();
    Elem alpha = K->gen();
    for (int k = 0; k < 40; ++k) {
        long s = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
        Poly shift(K, {-(K->from_int(s) * alpha), K->one()});  // x − sα
        Poly g = compose(f, shift);
        Poly N = norm_poly(g);
        if (gcd(N, derivative(N)).deg() > 0) continue;
        auto nf = factor(N);
        std::vector<Factor> out;
        if (nf.size() == 1) return {{monic(f), 1}};
        Poly back(K, {K->from_int(s) * alpha, K->one()});  // x + sα
        for (auto& ni : nf) {
            Poly h = gcd(g, embed(ni.f, K));
            if (h.deg() <= 0) continue;
            out.push_back({monic(compose(h, back)), 1});
        }
        return out;
    }
    fail("Internal", "no squarefree norm shift found");
}

std::optional<Elem> qth_root_polys(const Elem& a, int q) {
    // rational-function field: a = n/d is a q-th power iff n·d^(q-1) is one
    const FieldPtr& F = a.field();
    const FieldPtr& B = F->base();
    if (a.is_zero()) fail("ZeroInput", "qth_root of zero");
    Poly n(B, a.frac().num), d(B, a.frac().den);
    Poly P = n * pow(d, q - 1);
    Elem lc = P.lc();
    auto lr = qth_root(lc, q);
    if (!lr) return std::nullopt;
    Poly root = Poly::constant(*lr);
    for (auto& fm : squarefree_decomposition(P)) {
        if (fm.mult % q != 0) return std::nullopt;
        root = root * pow(fm.f, fm.mult / q);
    }
    return F->from_frac(root.c, d.c);
}

}  // namespace

std::optional<Elem> qth_root(const Elem& a, int q) {
    if (a.is_zero()) fail("ZeroInput", "qth_root of zero");
    const FieldPtr& F = a.field();
    if (F->kind() == FieldKind::Rational) {
        mpz_class num = a.rational().get_num(), den = a.rational().get_den();
        mpz_class rn, rd;
        bool neg = num < 0;
        if (neg && q % 2 == 0) return std::nullopt;
        if (neg) num = -num;
        if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), q)) return std::nullopt;
        if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), q)) return std::nullopt;
        if (neg) rn = -rn;
        return F->from_mpq(mpq_class(rn, rd));
    }
    if (F->is_finite()) {
        mpz_class m = F->cardinality() - 1;
        mpz_class g;
        mpz_class qq = q;
        mpz_gcd(g.get_mpz_t(), qq.get_mpz_t(), m.get_mpz_t());
        if (!pow(a, mpz_class(m / g)).is_one()) return std::nullopt;
        auto rs = roots(x_pow_minus(F, q, a));
        if (rs.empty()) return std::nullopt;
        return rs.front();
    }
    if (F->kind() == FieldKind::RationalFunction) return qth_root_polys(a, q);
    if (F->is_number_field()) {
        Elem n = relative_norm(a, Field::rationals());
        if (!qth_root(n, q)) return std::nullopt;
        auto rs = roots(x_pow_minus(F, q, a));
        if (rs.empty()) return std::nullopt;
        return rs.front();
    }
    // function-field style extension over a rational-function field
    if (F->kind() == FieldKind::Extension) {
        if (lies_in(a, F->base()) && std::gcd(F->degree(), q) == 1) {
            auto r = qth_root(descend(a, F->base()), q);
            if (!r) return std::nullopt;
            return embed(*r, F);
        }
        Elem n = relative_norm(a, F->base());
        if (!qth_root(n, q)) return std::nullopt;
        fail("Unsupported", "q-th root test for " + to_string(a));
    }
    fail("Unsupported", "q-th root test over " + F->describe());
}

Poly least_irreducible(const FieldPtr& F, int degree) {
    if (!F->is_finite()) fail("NotFinite", "least_irreducible needs a finite field");
    mpz_class count;
    mpz_pow_ui(count.get_mpz_t(), F->cardinality().get_mpz_t(), degree);
    for (mpz_class idx = 0; idx < count; ++idx) {
        std::vector<Elem> c;
        mpz_class t = idx;
        for (int i = 0; i < degree; ++i) {
            c.push_back(F->element_at(t % F->cardinality()));
            t /= F->cardinality();
        }
        c.push_back(F->one());
        Poly p(F, c);
        if (p.c[0].is_zero()) continue;
        if (is_irreducible(p)) return p;
    }
    fail("Internal", "no irreducible polynomial found");
}

}  // namespace brauer
