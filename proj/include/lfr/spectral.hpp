#pragma once
// Integer polynomials, orbit-list characteristic polynomials, pullback matrices,
// certified real roots and growth classification.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lfr {

struct UnsupportedListSize : std::invalid_argument {
    UnsupportedListSize() : std::invalid_argument("orbit lists with more than 3 orbits are not supported") {}
};
struct NoRealRoot : std::domain_error {
    NoRealRoot() : std::domain_error("polynomial has no real root") {}
};
struct UnresolvedOrbits : std::logic_error {
    using std::logic_error::logic_error;
};
struct UnclassifiedGrowth : std::logic_error {
    using std::logic_error::logic_error;
};

class IntPoly {
public:
    std::vector<mpz_class> c;  // low degree first, no trailing zeros

    IntPoly() = default;
    IntPoly(std::initializer_list<long> coeffs);
    explicit IntPoly(std::vector<mpz_class> coeffs) : c(std::move(coeffs)) { trim(); }
    static IntPoly x_pow(int n, long coeff = 1);
    static IntPoly constant(const mpz_class& a) { return IntPoly(std::vector<mpz_class>{a}); }

    int deg() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const mpz_class& lc() const { return c.back(); }
    void trim();

    IntPoly derivative() const;
    mpz_class content() const;
    IntPoly primitive() const;
    // sign of p(n/d) for d > 0
    int sign_at(const mpq_class& x) const;
    double eval(double x) const;
    mpq_class eval(const mpq_class& x) const;
    // multiplicity of the root x = 1
    int root_multiplicity(long r) const;

    std::string str() const;  // e.g. "x^2 - x - 1"
    std::vector<std::string> coeff_strings() const;

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const mpz_class& s);
    IntPoly operator-() const;
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c == b.c; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }
};

// exact quotient in Z[x]; throws std::logic_error if not exact
IntPoly exact_quotient(const IntPoly& a, const IntPoly& b);
// remainder over Q, returned as a primitive integer multiple with the sign of the true remainder
IntPoly pseudo_remainder_signed(const IntPoly& a, const IntPoly& b);
IntPoly gcd_primitive(IntPoly a, IntPoly b);
IntPoly squarefree_part(const IntPoly& p);

struct OrbitListShape {
    std::vector<int> lengths;  // in chain order
    bool closed = true;
};
struct OrbitListSpec {
    std::vector<OrbitListShape> lists;
};

IntPoly char_poly_from_lists(const OrbitListSpec& spec);
IntPoly T_L(const OrbitListShape& L);
IntPoly S_L(const OrbitListShape& L);

// "closed_1n":  x^n(x^2-x-1)+x^2
// "open_n1":    x^n(x^2-x-1)+x^2-1
// "closed_11n": x^n(x^3-x-1)+x^3+x^2-1
std::map<std::string, IntPoly> closed_form_checks(int n);

using IntMatrix = std::vector<std::vector<mpz_class>>;

struct PullbackMatrix {
    IntMatrix entries;
    std::vector<std::string> basis;
    size_t dim() const { return entries.size(); }
};

// Combinatorial data of one blow-up center (a point of a singular orbit).
struct CenterInfo {
    std::optional<int> omega;  // pi(center) = epsilon_k
    std::optional<int> xi;     // pi(center) lies on Sigma_j minus the indeterminacy set
};
struct OrbitData {
    int index = 0;  // which exceptional line the orbit comes from
    int tau = 0;    // endpoint epsilon index
    std::vector<CenterInfo> points;
};
struct PullbackInput {
    std::vector<OrbitData> orbits;  // singular orbits
    std::vector<int> openStarts;    // indices i whose orbit starts an open list
};

// Elementary realization of a list structure (every orbit ends at an indeterminacy point,
// no orbit point on an exceptional line).
PullbackInput elementary_orbit_data(const OrbitListSpec& spec);
PullbackMatrix build_pullback_matrix(const PullbackInput& in);

IntPoly char_poly_of_matrix(const IntMatrix& M);
long rank_of(const IntMatrix& M);
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix mat_identity(size_t n);

struct RootInterval {
    mpq_class lo, hi;  // lo <= root <= hi, width <= precision
    double value = 0;
    int sturmCount = 0;  // distinct roots in [lo, hi]
};

std::vector<IntPoly> sturm_sequence(const IntPoly& p);
// number of distinct real roots in (a, b], a < b
int sturm_count(const std::vector<IntPoly>& seq, const mpq_class& a, const mpq_class& b);
RootInterval largest_real_root(const IntPoly& p, double precision = 1e-12);

std::optional<int> periodicity_order(const IntPoly& p, int mMax);

struct GrowthClass {
    enum Kind { Exponential, Polynomial, Periodic } kind = Exponential;
    IntPoly poly;            // characteristic polynomial used for the verdict
    RootInterval root;       // exponential only
    int degree = 0;          // polynomial growth degree (2 = quadratic)
    int period = 0;          // periodic only
    bool numerical = false;  // derived from approximate orbit data

    std::string name() const;
};

GrowthClass growth_from_matrix(const PullbackMatrix& M, int mMax = 60);

// largest root of x^{n+1}(x^3-x-1)+x^3+x^2-1
IntPoly delta_n_poly(int n);
RootInterval delta_n(int n, double precision = 1e-12);

}  // namespace lfr
