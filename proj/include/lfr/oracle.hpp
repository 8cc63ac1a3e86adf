#pragma once
// Brute-force degree and period oracle: symbolic composition with common-factor removal,
// degree sequences, random-point identity testing, growth fitting.

#include "lfr/poly.hpp"
#include "lfr/projgeom.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace lfr {

struct DegreeBudgetExceeded : std::runtime_error {
    DegreeBudgetExceeded(int k, int d)
        : std::runtime_error("degree " + std::to_string(d) + " at iterate " + std::to_string(k) +
                             " exceeds the degree budget") {}
};
struct TooShort : std::invalid_argument {
    TooShort() : std::invalid_argument("degree sequence needs at least 6 terms") {}
};

// Homogeneous trivariate polynomial of degree d, dense in the monomials x0^(d-i-j) x1^i x2^j.
class HPoly {
public:
    HPoly() = default;
    HPoly(int d, const FieldElem& zero);
    static HPoly variable(int i, const FieldElem& like);
    static HPoly linear(const Vec3& coeffs);

    int deg() const { return d_; }
    FieldElem& at(int i1, int i2) { return c_[index(i1, i2)]; }
    const FieldElem& at(int i1, int i2) const { return c_[index(i1, i2)]; }
    bool is_zero() const;
    FieldElem eval(const Vec3& x) const;
    std::string str() const;

    friend HPoly operator+(const HPoly& a, const HPoly& b);
    friend HPoly operator*(const HPoly& a, const HPoly& b);
    HPoly scaled(const FieldElem& s) const;
    HPoly operator-(const HPoly& b) const { return *this + b.scaled(-b.c_.at(0).one_like()); }

private:
    static int index(int i1, int i2) { return (i1 + i2) * (i1 + i2 + 1) / 2 + i2; }
    int d_ = 0;
    std::vector<FieldElem> c_;
};

struct HomogeneousMap {
    std::array<HPoly, 3> comp;

    int degree() const { return comp[0].deg(); }
    Vec3 apply(const Vec3& x) const;
    bool is_identity() const;  // scalar multiple of [x0:x1:x2]

    static HomogeneousMap identity(const FieldElem& like);
    static HomogeneousMap of_f(const ParamPair& p);
    static HomogeneousMap of_f_inverse(const ParamPair& p);
    static HomogeneousMap of_J(const FieldElem& like);
};

// g(f0, f1, f2), no reduction
HPoly substitute(const HPoly& g, const HomogeneousMap& f);
// g after f, with the common factor of the components divided out
HomogeneousMap compose_reduce(const HomogeneousMap& g, const HomogeneousMap& f);
// same map up to a scalar
bool same_map(const HomogeneousMap& a, const HomogeneousMap& b);

using DegreeSequence = std::vector<int>;

// Degrees d_1..d_K, computed by restricting the iterates to random lines over a large prime field.
DegreeSequence degree_sequence(const ParamPair& p, int K, int budget = 200);
// Same, by full symbolic composition (small K only).
DegreeSequence degree_sequence_symbolic(const ParamPair& p, int K, int budget = 200);

struct IdentityOptions {
    int samples = 20;
    unsigned seed = 12345;
    bool confirmSymbolic = true;  // exact parameters only
};
std::optional<int> identity_order(const ParamPair& p, int kappaMax, IdentityOptions opt = {});

struct ExponentialEstimate {
    double rate;
};
struct QuadraticFit {
    double residual;                  // relative rms of the least-squares quadratic on the tail
    std::array<double, 3> coeffs;     // c0 + c1 k + c2 k^2
    std::vector<long> thirdDifferences;  // over the tail window
};
struct Bounded {
    int period;
};
using GrowthFit = std::variant<ExponentialEstimate, QuadraticFit, Bounded>;

GrowthFit growth_fit(const DegreeSequence& d);
std::string growth_fit_name(const GrowthFit& g);

}  // namespace lfr
