#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace brauer {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

enum class FieldKind { Rational, PrimeFinite, Extension, RationalFunction };

// Exact element of a field in the tower. Extension elements hold a coefficient
// vector of length deg(modulus) over the base; rational-function elements hold a
// reduced fraction with monic denominator.
class Elem {
public:
    using Coeffs = std::vector<Elem>;
    struct Frac {
        std::vector<Elem> num;
        std::vector<Elem> den;
    };

    Elem() = default;

    const FieldPtr& field() const { return f_; }
    bool valid() const { return f_ != nullptr; }
    bool is_zero() const;
    bool is_one() const;

    const mpq_class& rational() const { return std::get<mpq_class>(v_); }
    std::int64_t residue() const { return std::get<std::int64_t>(v_); }
    const Coeffs& coeffs() const { return std::get<Coeffs>(v_); }
    const Frac& frac() const { return std::get<Frac>(v_); }

    // Raw constructors; callers go through Field helpers which canonicalize.
    static Elem raw_rational(FieldPtr f, mpq_class v);
    static Elem raw_residue(FieldPtr f, std::int64_t v);
    static Elem raw_coeffs(FieldPtr f, Coeffs c);
    static Elem raw_frac(FieldPtr f, Frac fr);

private:
    FieldPtr f_;
    std::variant<std::monostate, mpq_class, std::int64_t, Coeffs, Frac> v_;
};

class Field : public std::enable_shared_from_this<Field> {
public:
    static FieldPtr rationals();
    static FieldPtr prime(std::int64_t p);
    // modulus: monic coefficient vector (low to high) over base. When verify is
    // set the polynomial is factored and ReduciblePolynomial raised if it splits.
    static FieldPtr extension(const FieldPtr& base, std::vector<Elem> modulus, std::string name,
                              bool verify = true);
    static FieldPtr rational_functions(const FieldPtr& base, std::string var);

    FieldKind kind() const { return kind_; }
    const FieldPtr& base() const { return base_; }
    const std::vector<Elem>& modulus() const { return modulus_; }
    int degree() const { return degree_; }
    std::int64_t characteristic() const { return char_; }
    bool is_finite() const { return finite_; }
    const mpz_class& cardinality() const { return card_; }
    const std::string& name() const { return name_; }
    int depth() const { return depth_; }
    // Degree over the prime field (ℚ or F_p); zero for rational-function fields.
    int absolute_degree() const { return absdeg_; }
    bool is_number_field() const;
    std::string describe() const;

    Elem zero() const;
    Elem one() const;
    Elem from_int(long v) const;
    Elem from_mpz(const mpz_class& v) const;
    Elem from_mpq(const mpq_class& v) const;
    // Generator of an extension or the variable of a rational-function field.
    Elem gen() const;
    Elem from_coeffs(std::vector<Elem> c) const;
    Elem from_frac(std::vector<Elem> num, std::vector<Elem> den) const;

    // True when other equals this field or sits below it in the tower.
    bool contains(const FieldPtr& other) const;

    // Finite fields only.
    Elem element_at(mpz_class index) const;
    std::vector<Elem> elements() const;
    Elem random(std::mt19937_64& rng) const;
    Elem frobenius(const Elem& a) const;

    FieldPtr self() const { return shared_from_this(); }

private:
    Field() = default;
    FieldKind kind_ = FieldKind::Rational;
    FieldPtr base_;
    std::vector<Elem> modulus_;
    int degree_ = 1;
    std::int64_t char_ = 0;
    bool finite_ = false;
    mpz_class card_ = 0;
    std::string name_;
    int depth_ = 0;
    int absdeg_ = 1;
};

Elem embed(const Elem& a, const FieldPtr& target);

Elem operator+(const Elem& a, const Elem& b);
Elem operator-(const Elem& a, const Elem& b);
Elem operator*(const Elem& a, const Elem& b);
Elem operator/(const Elem& a, const Elem& b);
Elem operator-(const Elem& a);
Elem& operator+=(Elem& a, const Elem& b);
Elem& operator-=(Elem& a, const Elem& b);
Elem& operator*=(Elem& a, const Elem& b);
bool operator==(const Elem& a, const Elem& b);
inline bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

Elem inverse(const Elem& a);
Elem pow(const Elem& a, const mpz_class& e);
Elem pow(const Elem& a, long e);
Elem operator*(long k, const Elem& a);

// Total order used for deterministic tie-breaking (coefficient-lexicographic,
// leading coefficient compared first).
int compare(const Elem& a, const Elem& b);
inline bool lex_less(const Elem& a, const Elem& b) { return compare(a, b) < 0; }

std::string to_string(const Elem& a);

// True when a lies in the image of the given subfield (all higher coefficients zero).
bool lies_in(const Elem& a, const FieldPtr& sub);
// Inverse of embed: express a as an element of the subfield; throws if impossible.
Elem descend(const Elem& a, const FieldPtr& sub);

}  // namespace brauer
