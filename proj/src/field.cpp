#include "brauer/field.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "brauer/errors.hpp"
#include "brauer/factor.hpp"
#include "brauer/poly.hpp"

namespace brauer {

namespace {

std::int64_t modp(std::int64_t v, std::int64_t p) {
    v %= p;
    return v < 0 ? v + p : v;
}

std::int64_t inv_modp(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = modp(a, p);
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) fail("DivisionByZero", "residue not invertible");
    return modp(t, p);
}

Poly as_poly(const FieldPtr& base, const std::vector<Elem>& v) { return Poly(base, v); }

std::vector<Elem> padded(const Poly& p, int n, const FieldPtr& base) {
    std::vector<Elem> out(n, base->zero());
    for (int i = 0; i <= p.deg() && i < n; ++i) out[i] = p.c[i];
    return out;
}

Elem reduce_ext(const FieldPtr& F, const Poly& p) {
    Poly m(F->base(), F->modulus());
    Poly r = p.deg() >= m.deg() ? p % m : p;
    return Elem::raw_coeffs(F, padded(r, F->degree(), F->base()));
}

Elem make_frac(const FieldPtr& F, Poly num, Poly den) {
    if (den.is_zero()) fail("DivisionByZero", "zero denominator in rational function");
    if (num.is_zero()) return Elem::raw_frac(F, {{}, {F->base()->one()}});
    if (den.deg() > 0) {
        Poly g = gcd(num, den);
        if (g.deg() > 0) {
            num = num / g;
            den = den / g;
        }
    }
    Elem l = den.lc();
    if (!l.is_one()) {
        Elem li = inverse(l);
        num = li * num;
        den = li * den;
    }
    return Elem::raw_frac(F, {num.c, den.c});
}

void coerce(Elem& a, Elem& b) {
    if (a.field() == b.field()) return;
    if (!a.valid() || !b.valid()) fail("FieldMismatch", "uninitialized element");
    if (a.field()->contains(b.field())) {
        b = embed(b, a.field());
    } else if (b.field()->contains(a.field())) {
        a = embed(a, b.field());
    } else {
        fail("FieldMismatch", a.field()->describe() + " vs " + b.field()->describe());
    }
}

}  // namespace

Elem Elem::raw_rational(FieldPtr f, mpq_class v) {
    Elem e;
    v.canonicalize();
    e.f_ = std::move(f);
    e.v_ = std::move(v);
    return e;
}

Elem Elem::raw_residue(FieldPtr f, std::int64_t v) {
    Elem e;
    std::int64_t p = f->characteristic();
    e.f_ = std::move(f);
    e.v_ = modp(v, p);
    return e;
}

Elem Elem::raw_coeffs(FieldPtr f, Coeffs c) {
    Elem e;
    e.f_ = std::move(f);
    e.v_ = std::move(c);
    return e;
}

Elem Elem::raw_frac(FieldPtr f, Frac fr) {
    Elem e;
    e.f_ = std::move(f);
    e.v_ = std::move(fr);
    return e;
}

bool Elem::is_zero() const {
    switch (f_->kind()) {
        case FieldKind::Rational:
            return sgn(rational()) == 0;
        case FieldKind::PrimeFinite:
            return residue() == 0;
        case FieldKind::Extension:
            for (const auto& x : coeffs())
                if (!x.is_zero()) return false;
            return true;
        case FieldKind::RationalFunction:
            return frac().num.empty();
    }
    return false;
}

bool Elem::is_one() const {
    switch (f_->kind()) {
        case FieldKind::Rational:
            return rational() == 1;
        case FieldKind::PrimeFinite:
            return residue() == 1;
        case FieldKind::Extension: {
            const auto& c = coeffs();
            if (!c[0].is_one()) return false;
            for (size_t i = 1; i < c.size(); ++i)
                if (!c[i].is_zero()) return false;
            return true;
        }
        case FieldKind::RationalFunction: {
            const auto& fr = frac();
            return fr.num.size() == 1 && fr.den.size() == 1 && fr.num[0].is_one();
        }
    }
    return false;
}

FieldPtr Field::rationals() {
    static FieldPtr q = [] {
        auto f = std::shared_ptr<Field>(new Field());
        f->kind_ = FieldKind::Rational;
        f->name_ = "Q";
        return FieldPtr(f);
    }();
    return q;
}

namespace {
bool is_prime_int(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}
}  // namespace

FieldPtr Field::prime(std::int64_t p) {
    static std::mutex mu;
    static std::map<std::int64_t, FieldPtr> cache;
    if (!is_prime_int(p) || p >= (std::int64_t(1) << 31)) fail("BadCharacteristic", "not a supported prime");
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = FieldKind::PrimeFinite;
    f->char_ = p;
    f->finite_ = true;
    f->card_ = p;
    f->name_ = "F" + std::to_string(p);
    cache[p] = f;
    return f;
}

FieldPtr Field::extension(const FieldPtr& base, std::vector<Elem> modulus, std::string name, bool verify) {
    Poly m(base, std::move(modulus));
    if (m.deg() < 1) fail("ReduciblePolynomial", "modulus must have positive degree");
    if (!m.lc().is_one()) m = monic(m);
    if (verify && m.deg() > 1 && !is_irreducible(m))
        fail("ReduciblePolynomial", to_string(m, name) + " factors over " + base->describe());
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = FieldKind::Extension;
    f->base_ = base;
    f->modulus_ = m.c;
    f->degree_ = m.deg();
    f->char_ = base->char_;
    f->finite_ = base->finite_;
    if (f->finite_) mpz_pow_ui(f->card_.get_mpz_t(), base->card_.get_mpz_t(), f->degree_);
    f->name_ = std::move(name);
    f->depth_ = base->depth_ + 1;
    f->absdeg_ = base->absdeg_ * f->degree_;
    return f;
}

FieldPtr Field::rational_functions(const FieldPtr& base, std::string var) {
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = FieldKind::RationalFunction;
    f->base_ = base;
    f->char_ = base->char_;
    f->name_ = std::move(var);
    f->depth_ = base->depth_ + 1;
    f->absdeg_ = 0;
    return f;
}

bool Field::is_number_field() const {
    if (char_ != 0) return false;
    for (const Field* f = this; f; f = f->base_.get())
        if (f->kind_ == FieldKind::RationalFunction) return false;
    return true;
}

std::string Field::describe() const {
    switch (kind_) {
        case FieldKind::Rational:
            return "Q";
        case FieldKind::PrimeFinite:
            return name_;
        case FieldKind::Extension:
            return base_->describe() + "(" + name_ + ")";
        case FieldKind::RationalFunction:
            return base_->describe() + "(" + name_ + ")";
    }
    return "?";
}

Elem Field::zero() const { return from_int(0); }
Elem Field::one() const { return from_int(1); }
Elem Field::from_int(long v) const { return from_mpz(mpz_class(v)); }

Elem Field::from_mpz(const mpz_class& v) const { return from_mpq(mpq_class(v)); }

Elem Field::from_mpq(const mpq_class& v) const {
    switch (kind_) {
        case FieldKind::Rational:
            return Elem::raw_rational(self(), v);
        case FieldKind::PrimeFinite: {
            mpz_class n = v.get_num() % char_;
            mpz_class d = v.get_den() % char_;
            std::int64_t nn = modp(n.get_si(), char_), dd = modp(d.get_si(), char_);
            if (dd == 0) fail("DivisionByZero", "denominator divisible by characteristic");
            return Elem::raw_residue(self(), static_cast<std::int64_t>((__int128)nn * inv_modp(dd, char_) % char_));
        }
        case FieldKind::Extension: {
            std::vector<Elem> c(degree_, base_->zero());
            c[0] = base_->from_mpq(v);
            return Elem::raw_coeffs(self(), std::move(c));
        }
        case FieldKind::RationalFunction: {
            Elem b = base_->from_mpq(v);
            if (b.is_zero()) return Elem::raw_frac(self(), {{}, {base_->one()}});
            return Elem::raw_frac(self(), {{b}, {base_->one()}});
        }
    }
    fail("Internal", "bad field kind");
}

Elem Field::gen() const {
    if (kind_ == FieldKind::Extension) {
        std::vector<Elem> c(degree_, base_->zero());
        if (degree_ == 1) return Elem::raw_coeffs(self(), {-base_->zero() - modulus_[0]});
        c[1] = base_->one();
        return Elem::raw_coeffs(self(), std::move(c));
    }
    if (kind_ == FieldKind::RationalFunction)
        return Elem::raw_frac(self(), {{base_->zero(), base_->one()}, {base_->one()}});
    fail("NoGenerator", describe() + " has no generator");
}

Elem Field::from_coeffs(std::vector<Elem> c) const {
    if (kind_ != FieldKind::Extension) fail("Internal", "from_coeffs on non-extension");
    for (auto& x : c) x = embed(x, base_);
    return reduce_ext(self(), Poly(base_, std::move(c)));
}

Elem Field::from_frac(std::vector<Elem> num, std::vector<Elem> den) const {
    if (kind_ != FieldKind::RationalFunction) fail("Internal", "from_frac on non rational-function field");
    for (auto& x : num) x = embed(x, base_);
    for (auto& x : den) x = embed(x, base_);
    return make_frac(self(), Poly(base_, std::move(num)), Poly(base_, std::move(den)));
}

bool Field::contains(const FieldPtr& other) const {
    for (const Field* f = this; f; f = f->base_.get())
        if (f == other.get()) return true;
    return false;
}

Elem Field::element_at(mpz_class index) const {
    if (!finite_) fail("NotFinite", describe());
    if (kind_ == FieldKind::PrimeFinite) return Elem::raw_residue(self(), mpz_class(index % char_).get_si());
    std::vector<Elem> c;
    const mpz_class& bc = base_->card_;
    for (int i = 0; i < degree_; ++i) {
        mpz_class digit = index % bc;
        index /= bc;
        c.push_back(base_->element_at(digit));
    }
    return Elem::raw_coeffs(self(), std::move(c));
}

std::vector<Elem> Field::elements() const {
    if (!finite_ || card_ > 1000000) fail("NotFinite", "field too large to enumerate");
    std::vector<Elem> out;
    long n = card_.get_si();
    out.reserve(n);
    for (long i = 0; i < n; ++i) out.push_back(element_at(i));
    return out;
}

Elem Field::random(std::mt19937_64& rng) const {
    switch (kind_) {
        case FieldKind::PrimeFinite:
            return Elem::raw_residue(self(), static_cast<std::int64_t>(rng() % char_));
        case FieldKind::Rational:
            return from_int(static_cast<long>(rng() % 41) - 20);
        case FieldKind::Extension: {
            std::vector<Elem> c;
            for (int i = 0; i < degree_; ++i) c.push_back(base_->random(rng));
            return Elem::raw_coeffs(self(), std::move(c));
        }
        case FieldKind::RationalFunction: {
            std::vector<Elem> num{base_->random(rng), base_->random(rng)};
            return make_frac(self(), Poly(base_, num), Poly::constant(base_, 1));
        }
    }
    fail("Internal", "bad field kind");
}

Elem Field::frobenius(const Elem& a) const { return pow(a, mpz_class(char_)); }

Elem embed(const Elem& a, const FieldPtr& target) {
    if (a.field() == target) return a;
    if (!target->base() || !target->contains(a.field()))
        fail("FieldMismatch", "cannot embed " + a.field()->describe() + " into " + target->describe());
    Elem b = embed(a, target->base());
    if (target->kind() == FieldKind::Extension) {
        std::vector<Elem> c(target->degree(), target->base()->zero());
        c[0] = b;
        return Elem::raw_coeffs(target, std::move(c));
    }
    if (b.is_zero()) return Elem::raw_frac(target, {{}, {target->base()->one()}});
    return Elem::raw_frac(target, {{b}, {target->base()->one()}});
}

bool lies_in(const Elem& a, const FieldPtr& sub) {
    if (a.field() == sub) return true;
    if (!a.field()->contains(sub)) return false;
    const FieldPtr& F = a.field();
    if (F->kind() == FieldKind::Extension) {
        const auto& c = a.coeffs();
        for (size_t i = 1; i < c.size(); ++i)
            if (!c[i].is_zero()) return false;
        return lies_in(c[0], sub);
    }
    if (F->kind() == FieldKind::RationalFunction) {
        const auto& fr = a.frac();
        if (fr.den.size() != 1 || fr.num.size() > 1) return false;
        return fr.num.empty() || lies_in(fr.num[0], sub);
    }
    return false;
}

Elem descend(const Elem& a, const FieldPtr& sub) {
    if (a.field() == sub) return a;
    if (!lies_in(a, sub)) fail("FieldMismatch", "element " + to_string(a) + " not in " + sub->describe());
    const FieldPtr& F = a.field();
    if (F->kind() == FieldKind::Extension) return descend(a.coeffs()[0], sub);
    const auto& fr = a.frac();
    if (fr.num.empty()) return sub->zero();
    return descend(fr.num[0], sub);
}

Elem operator+(const Elem& x, const Elem& y) {
    Elem a = x, b = y;
    coerce(a, b);
    const FieldPtr& F = a.field();
    switch (F->kind()) {
        case FieldKind::Rational:
            return Elem::raw_rational(F, a.rational() + b.rational());
        case FieldKind::PrimeFinite:
            return Elem::raw_residue(F, a.residue() + b.residue());
        case FieldKind::Extension: {
            std::vector<Elem> c(a.coeffs());
            for (size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs()[i];
            return Elem::raw_coeffs(F, std::move(c));
        }
        case FieldKind::RationalFunction: {
            const auto& fa = a.frac();
            const auto& fb = b.frac();
            const FieldPtr& B = F->base();
            if (fa.num.empty()) return b;
            if (fb.num.empty()) return a;
            Poly da(B, fa.den), db(B, fb.den);
            if (da == db) return make_frac(F, Poly(B, fa.num) + Poly(B, fb.num), da);
            return make_frac(F, Poly(B, fa.num) * db + Poly(B, fb.num) * da, da * db);
        }
    }
    fail("Internal", "bad field kind");
}

Elem operator-(const Elem& a) {
    const FieldPtr& F = a.field();
    switch (F->kind()) {
        case FieldKind::Rational:
            return Elem::raw_rational(F, -a.rational());
        case FieldKind::PrimeFinite:
            return Elem::raw_residue(F, -a.residue());
        case FieldKind::Extension: {
            std::vector<Elem> c(a.coeffs());
            for (auto& x : c) x = -x;
            return Elem::raw_coeffs(F, std::move(c));
        }
        case FieldKind::RationalFunction: {
            Elem::Frac fr = a.frac();
            for (auto& x : fr.num) x = -x;
            return Elem::raw_frac(F, std::move(fr));
        }
    }
    fail("Internal", "bad field kind");
}

Elem operator-(const Elem& a, const Elem& b) { return a + (-b); }

Elem operator*(const Elem& x, const Elem& y) {
    Elem a = x, b = y;
    coerce(a, b);
    const FieldPtr& F = a.field();
    switch (F->kind()) {
        case FieldKind::Rational:
            return Elem::raw_rational(F, a.rational() * b.rational());
        case FieldKind::PrimeFinite:
            return Elem::raw_residue(F, static_cast<std::int64_t>((__int128)a.residue() * b.residue() %
                                                                  F->characteristic()));
        case FieldKind::Extension: {
            const FieldPtr& B = F->base();
            return reduce_ext(F, Poly(B, a.coeffs()) * Poly(B, b.coeffs()));
        }
        case FieldKind::RationalFunction: {
            const auto& fa = a.frac();
            const auto& fb = b.frac();
            const FieldPtr& B = F->base();
            if (fa.num.empty()) return a;
            if (fb.num.empty()) return b;
            Poly na(B, fa.num), da(B, fa.den), nb(B, fb.num), db(B, fb.den);
            if (da.deg() == 0 && db.deg() == 0) return make_frac(F, na * nb, Poly::constant(B, 1));
            Poly g1 = gcd(na, db), g2 = gcd(nb, da);
            if (g1.deg() > 0) {
                na = na / g1;
                db = db / g1;
            }
            if (g2.deg() > 0) {
                nb = nb / g2;
                da = da / g2;
            }
            Poly num = na * nb, den = da * db;
            Elem l = den.lc();
            if (!l.is_one()) {
                Elem li = inverse(l);
                num = li * num;
                den = li * den;
            }
            if (num.is_zero()) return F->zero();
            return Elem::raw_frac(F, {num.c, den.c});
        }
    }
    fail("Internal", "bad field kind");
}

Elem inverse(const Elem& a) {
    if (a.is_zero()) fail("DivisionByZero", "inverse of zero in " + a.field()->describe());
    const FieldPtr& F = a.field();
    switch (F->kind()) {
        case FieldKind::Rational:
            return Elem::raw_rational(F, 1 / a.rational());
        case FieldKind::PrimeFinite:
            return Elem::raw_residue(F, inv_modp(a.residue(), F->characteristic()));
        case FieldKind::Extension: {
            const FieldPtr& B = F->base();
            Xgcd r = xgcd(Poly(B, a.coeffs()), Poly(B, F->modulus()));
            if (r.g.deg() != 0) fail("DivisionByZero", "element not invertible (modulus reducible?)");
            return reduce_ext(F, r.s);
        }
        case FieldKind::RationalFunction: {
            const auto& fr = a.frac();
            const FieldPtr& B = F->base();
            Poly num(B, fr.den), den(B, fr.num);
            Elem li = inverse(den.lc());
            return Elem::raw_frac(F, {(li * num).c, (li * den).c});
        }
    }
    fail("Internal", "bad field kind");
}

Elem operator/(const Elem& a, const Elem& b) { return a * inverse(b); }
Elem& operator+=(Elem& a, const Elem& b) { return a = a + b; }
Elem& operator-=(Elem& a, const Elem& b) { return a = a - b; }
Elem& operator*=(Elem& a, const Elem& b) { return a = a * b; }
Elem operator*(long k, const Elem& a) { return a.field()->from_int(k) * a; }

bool operator==(const Elem& x, const Elem& y) {
    if (x.field() != y.field()) {
        Elem a = x, b = y;
        coerce(a, b);
        return a == b;
    }
    switch (x.field()->kind()) {
        case FieldKind::Rational:
            return x.rational() == y.rational();
        case FieldKind::PrimeFinite:
            return x.residue() == y.residue();
        case FieldKind::Extension:
            for (size_t i = 0; i < x.coeffs().size(); ++i)
                if (!(x.coeffs()[i] == y.coeffs()[i])) return false;
            return true;
        case FieldKind::RationalFunction: {
            const auto& a = x.frac();
            const auto& b = y.frac();
            if (a.num.size() != b.num.size() || a.den.size() != b.den.size()) return false;
            for (size_t i = 0; i < a.num.size(); ++i)
                if (!(a.num[i] == b.num[i])) return false;
            for (size_t i = 0; i < a.den.size(); ++i)
                if (!(a.den[i] == b.den[i])) return false;
            return true;
        }
    }
    return false;
}

Elem pow(const Elem& a, const mpz_class& e) {
    if (e < 0) return pow(inverse(a), mpz_class(-e));
    Elem result = a.field()->one();
    Elem base = a;
    size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = bits; i-- > 0;) {
        result = result * result;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = result * base;
    }
    return result;
}

Elem pow(const Elem& a, long e) { return pow(a, mpz_class(e)); }

int compare(const Elem& x, const Elem& y) {
    Elem a = x, b = y;
    coerce(a, b);
    switch (a.field()->kind()) {
        case FieldKind::Rational:
            return cmp(a.rational(), b.rational()) < 0 ? -1 : (a.rational() == b.rational() ? 0 : 1);
        case FieldKind::PrimeFinite:
            return a.residue() < b.residue() ? -1 : (a.residue() == b.residue() ? 0 : 1);
        case FieldKind::Extension:
            for (size_t i = a.coeffs().size(); i-- > 0;) {
                int c = compare(a.coeffs()[i], b.coeffs()[i]);
                if (c != 0) return c;
            }
            return 0;
        case FieldKind::RationalFunction: {
            const FieldPtr& B = a.field()->base();
            int c = compare(Poly(B, a.frac().den), Poly(B, b.frac().den));
            if (c != 0) return c;
            return compare(Poly(B, a.frac().num), Poly(B, b.frac().num));
        }
    }
    return 0;
}

namespace {
bool needs_parens(const std::string& s) {
    for (size_t i = 1; i < s.size(); ++i)
        if (s[i] == '+' || (s[i] == '-' && s[i - 1] == ' ')) return true;
    return false;
}
}  // namespace

std::string to_string(const Elem& a) {
    if (!a.valid()) return "<null>";
    const FieldPtr& F = a.field();
    switch (F->kind()) {
        case FieldKind::Rational:
            return a.rational().get_str();
        case FieldKind::PrimeFinite:
            return std::to_string(a.residue());
        case FieldKind::Extension:
            return to_string(Poly(F->base(), a.coeffs()), F->name());
        case FieldKind::RationalFunction: {
            Poly num(F->base(), a.frac().num), den(F->base(), a.frac().den);
            std::string n = to_string(num, F->name());
            if (den.deg() == 0) return n;
            std::string d = to_string(den, F->name());
            return "(" + n + ")/(" + d + ")";
        }
    }
    return "?";
}

std::string to_string(const Poly& f, const std::string& var) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.deg(); i >= 0; --i) {
        const Elem& c = f.c[i];
        if (c.is_zero()) continue;
        std::string cs = to_string(c);
        bool neg = !cs.empty() && cs[0] == '-' && !needs_parens(cs);
        if (neg) cs = cs.substr(1);
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        if (i == 0) {
            os << cs;
        } else if (cs == "1") {
            os << mono;
        } else {
            os << (needs_parens(cs) ? "(" + cs + ")" : cs) << "*" << mono;
        }
    }
    return os.str();
}

}  // namespace brauer
