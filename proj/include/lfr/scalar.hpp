#pragma once
// Coefficient fields: exact rationals, Gaussian rationals, and toleranced doubles.

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

namespace lfr {

struct ZeroDenominator : std::domain_error {
    ZeroDenominator() : std::domain_error("zero denominator") {}
};
struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero") {}
};
struct MixedVariants : std::logic_error {
    MixedVariants() : std::logic_error("mixed scalar variants in one computation") {}
};
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}
    Rational(long n, long d);
    Rational(const mpz_class& n, const mpz_class& d);
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    const mpq_class& value() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    double to_double() const { return v_.get_d(); }
    std::string str() const { return v_.get_str(); }
    size_t bits() const;

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }

private:
    mpq_class v_{0};
};

struct Gaussian {
    Rational re, im;

    Gaussian() = default;
    Gaussian(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    Gaussian conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }

    Gaussian operator-() const { return {-re, -im}; }
    friend Gaussian operator+(const Gaussian& a, const Gaussian& b) { return {a.re + b.re, a.im + b.im}; }
    friend Gaussian operator-(const Gaussian& a, const Gaussian& b) { return {a.re - b.re, a.im - b.im}; }
    friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Gaussian operator/(const Gaussian& a, const Gaussian& b);
    friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
};

struct Approx {
    std::complex<double> v;
    double tol = 1e-9;

    bool is_zero() const { return std::abs(v) <= tol; }
};

enum class Kind { Rational, Gaussian, Approx };

const char* kind_name(Kind k);

class FieldElem {
public:
    FieldElem() : v_(Rational(0)) {}
    FieldElem(Rational r) : v_(std::move(r)) {}
    FieldElem(Gaussian g) : v_(std::move(g)) {}
    FieldElem(Approx a);

    static FieldElem from_int(long n, Kind k, double tol = 1e-9);
    static FieldElem approx(std::complex<double> z, double tol = 1e-9) { return FieldElem(Approx{z, tol}); }

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    bool exact() const { return kind() != Kind::Approx; }
    double tol() const;

    FieldElem zero_like() const { return like(0); }
    FieldElem one_like() const { return like(1); }
    FieldElem like(long n) const;
    FieldElem like(const Rational& r) const;
    // re-tag with a new tolerance (approx only; no-op otherwise)
    FieldElem with_tol(double t) const;

    bool is_zero() const;
    bool is_one() const;
    std::complex<double> to_complex() const;
    double modulus() const { return std::abs(to_complex()); }

    const Rational& rational() const { return std::get<Rational>(v_); }
    const Gaussian& gaussian() const { return std::get<Gaussian>(v_); }
    const Approx& approximate() const { return std::get<Approx>(v_); }
    // bit size of the largest numerator/denominator (0 for approx)
    size_t bits() const;

    FieldElem operator-() const;
    FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
    FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
    FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
    FieldElem& operator/=(const FieldElem& o) { return *this = *this / o; }

    friend FieldElem operator+(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator-(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator*(const FieldElem& a, const FieldElem& b);
    friend FieldElem operator/(const FieldElem& a, const FieldElem& b);
    // exact equality for exact kinds, |a-b| <= max(tol) for approx
    friend bool operator==(const FieldElem& a, const FieldElem& b);
    friend bool operator!=(const FieldElem& a, const FieldElem& b) { return !(a == b); }

    std::string str() const;

private:
    std::variant<Rational, Gaussian, Approx> v_;
};

FieldElem canonicalize(const FieldElem& e);
FieldElem make_rational(const mpz_class& n, const mpz_class& d);

// `p`, `p/q`, `p/q+r/s*i`, `i`, decimals (approx). Throws ParseError.
FieldElem parse_scalar(const std::string& text, double tol = 1e-9);

// Promote to a common kind: Rational < Gaussian < Approx.
FieldElem promote(const FieldElem& e, Kind k, double tol = 1e-9);

}  // namespace lfr
