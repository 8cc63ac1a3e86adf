#include "lfr/scalar.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace lfr {

Rational::Rational(long n, long d) {
    if (d == 0) throw ZeroDenominator();
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw ZeroDenominator();
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero();
    v_ /= o.v_;
    return *this;
}

size_t Rational::bits() const {
    return std::max(mpz_sizeinbase(v_.get_num_mpz_t(), 2), mpz_sizeinbase(v_.get_den_mpz_t(), 2));
}

Gaussian operator/(const Gaussian& a, const Gaussian& b) {
    if (b.is_zero()) throw DivisionByZero();
    Rational n = b.norm();
    Gaussian p = a * b.conj();
    return {p.re / n, p.im / n};
}

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::Rational: return "rational";
        case Kind::Gaussian: return "gaussian";
        case Kind::Approx: return "approx";
    }
    return "?";
}

FieldElem::FieldElem(Approx a) : v_(a) {
    if (!(a.tol > 0)) throw std::invalid_argument("approx tolerance must be positive");
}

FieldElem FieldElem::from_int(long n, Kind k, double tol) {
    switch (k) {
        case Kind::Rational: return FieldElem(Rational(n));
        case Kind::Gaussian: return FieldElem(Gaussian(Rational(n)));
        case Kind::Approx: return FieldElem(Approx{double(n), tol});
    }
    return {};
}

double FieldElem::tol() const { return kind() == Kind::Approx ? approximate().tol : 0.0; }

FieldElem FieldElem::like(long n) const { return from_int(n, kind(), kind() == Kind::Approx ? tol() : 1e-9); }

FieldElem FieldElem::like(const Rational& r) const {
    switch (kind()) {
        case Kind::Rational: return FieldElem(r);
        case Kind::Gaussian: return FieldElem(Gaussian(r));
        case Kind::Approx: return FieldElem(Approx{r.to_double(), tol()});
    }
    return {};
}

FieldElem FieldElem::with_tol(double t) const {
    if (kind() != Kind::Approx) return *this;
    return FieldElem(Approx{approximate().v, t});
}

bool FieldElem::is_zero() const {
    return std::visit([](const auto& x) { return x.is_zero(); }, v_);
}

bool FieldElem::is_one() const { return *this == one_like(); }

std::complex<double> FieldElem::to_complex() const {
    switch (kind()) {
        case Kind::Rational: return rational().to_double();
        case Kind::Gaussian: return {gaussian().re.to_double(), gaussian().im.to_double()};
        case Kind::Approx: return approximate().v;
    }
    return {};
}

size_t FieldElem::bits() const {
    switch (kind()) {
        case Kind::Rational: return rational().bits();
        case Kind::Gaussian: return std::max(gaussian().re.bits(), gaussian().im.bits());
        case Kind::Approx: return 0;
    }
    return 0;
}

FieldElem FieldElem::operator-() const {
    return std::visit(
        [](const auto& x) -> FieldElem {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Approx>) return Approx{-x.v, x.tol};
            else return -x;
        },
        v_);
}

namespace {

template <class Op>
FieldElem binop(const std::variant<Rational, Gaussian, Approx>& a,
                const std::variant<Rational, Gaussian, Approx>& b, Op op) {
    if (a.index() != b.index()) throw MixedVariants();
    switch (a.index()) {
        case 0: return op(std::get<0>(a), std::get<0>(b));
        case 1: return op(std::get<1>(a), std::get<1>(b));
        default: {
            const Approx& x = std::get<2>(a);
            const Approx& y = std::get<2>(b);
            return Approx{op(x.v, y.v), std::max(x.tol, y.tol)};
        }
    }
}

}  // namespace

// These friends need access to v_; the lambdas dispatch per alternative.
FieldElem operator+(const FieldElem& a, const FieldElem& b) {
    return binop(a.v_, b.v_, [](const auto& x, const auto& y) { return x + y; });
}
FieldElem operator-(const FieldElem& a, const FieldElem& b) {
    return binop(a.v_, b.v_, [](const auto& x, const auto& y) { return x - y; });
}
FieldElem operator*(const FieldElem& a, const FieldElem& b) {
    return binop(a.v_, b.v_, [](const auto& x, const auto& y) { return x * y; });
}
FieldElem operator/(const FieldElem& a, const FieldElem& b) {
    if (a.v_.index() != b.v_.index()) throw MixedVariants();
    if (b.is_zero()) throw DivisionByZero();
    return binop(a.v_, b.v_, [](const auto& x, const auto& y) { return x / y; });
}

bool operator==(const FieldElem& a, const FieldElem& b) {
    if (a.v_.index() != b.v_.index()) throw MixedVariants();
    switch (a.kind()) {
        case Kind::Rational: return a.rational() == b.rational();
        case Kind::Gaussian: return a.gaussian() == b.gaussian();
        case Kind::Approx:
            return std::abs(a.approximate().v - b.approximate().v) <= std::max(a.tol(), b.tol());
    }
    return false;
}

namespace {

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s = buf;
    if (s.find_first_of(".eni") == std::string::npos) s += ".0";
    return s;
}

std::string fmt_pair(const std::string& re, const std::string& im) {
    if (!im.empty() && im[0] == '-') return re + im + "*i";
    return re + "+" + im + "*i";
}

}  // namespace

std::string FieldElem::str() const {
    switch (kind()) {
        case Kind::Rational: return rational().str();
        case Kind::Gaussian: return fmt_pair(gaussian().re.str(), gaussian().im.str());
        case Kind::Approx: {
            auto z = approximate().v;
            if (z.imag() == 0.0) return fmt_double(z.real());
            return fmt_pair(fmt_double(z.real()), fmt_double(z.imag()));
        }
    }
    return "";
}

FieldElem canonicalize(const FieldElem& e) { return e; }

FieldElem make_rational(const mpz_class& n, const mpz_class& d) { return FieldElem(Rational(n, d)); }

FieldElem promote(const FieldElem& e, Kind k, double tol) {
    if (e.kind() == k) return e;
    if (int(e.kind()) > int(k)) throw MixedVariants();
    if (k == Kind::Gaussian) return FieldElem(Gaussian(e.rational()));
    return FieldElem(Approx{e.to_complex(), tol});
}

// ---- parsing ----

namespace {

struct Term {
    bool approx = false;
    bool imag = false;
    Rational q;
    double d = 0;
};

class Scanner {
public:
    explicit Scanner(const std::string& s) : s_(s) {}

    FieldElem parse(double tol) {
        skip();
        if (pos_ >= s_.size()) fail("empty scalar");
        std::vector<Term> terms;
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            if (s_[pos_] == '+' || s_[pos_] == '-') {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected + or -");
            }
            Term t = term();
            if (sign < 0) { t.q = -t.q; t.d = -t.d; }
            terms.push_back(t);
            first = false;
            skip();
        }
        bool anyApprox = false, anyImag = false;
        for (auto& t : terms) { anyApprox |= t.approx; anyImag |= t.imag; }
        if (anyApprox) {
            std::complex<double> z;
            for (auto& t : terms) {
                double v = t.approx ? t.d : t.q.to_double();
                z += t.imag ? std::complex<double>(0, v) : std::complex<double>(v, 0);
            }
            return FieldElem(Approx{z, tol});
        }
        Rational re, im;
        for (auto& t : terms) (t.imag ? im : re) += t.q;
        if (anyImag) return FieldElem(Gaussian(re, im));
        return FieldElem(re);
    }

private:
    void skip() { while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_; }
    [[noreturn]] void fail(const std::string& why) {
        throw ParseError("bad scalar '" + s_ + "': " + why);
    }

    Term term() {
        Term t;
        t.q = Rational(1);
        t.d = 1;
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            ++pos_;
            t.imag = true;
            return t;
        }
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
        if (pos_ == start && !(pos_ < s_.size() && s_[pos_] == '.')) fail("expected number");
        bool dec = false;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            dec = true;
            ++pos_;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
        }
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            dec = true;
            ++pos_;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            size_t es = pos_;
            while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
            if (es == pos_) fail("bad exponent");
        }
        std::string num = s_.substr(start, pos_ - start);
        if (dec) {
            t.approx = true;
            t.d = std::stod(num);
        } else {
            mpz_class n(num, 10), d(1);
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                size_t ds = pos_;
                while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) ++pos_;
                if (ds == pos_) fail("expected denominator");
                d = mpz_class(s_.substr(ds, pos_ - ds), 10);
                if (d == 0) throw ZeroDenominator();
            }
            t.q = Rational(n, d);
        }
        if (pos_ < s_.size() && s_[pos_] == '*') {
            ++pos_;
            if (pos_ >= s_.size() || s_[pos_] != 'i') fail("expected i after *");
        }
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            ++pos_;
            t.imag = true;
        }
        return t;
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

FieldElem parse_scalar(const std::string& text, double tol) { return Scanner(text).parse(tol); }

}  // namespace lfr
