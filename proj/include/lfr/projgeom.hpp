#pragma once
// Projective plane objects and the quadratic map f = f_{alpha,beta}.

#include "lfr/scalar.hpp"

#include <array>
#include <optional>
#include <string>

namespace lfr {

using Vec3 = std::array<FieldElem, 3>;
using Mat3 = std::array<Vec3, 3>;  // row major

struct InadmissibleParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct Indeterminate : std::domain_error {
    using std::domain_error::domain_error;
};
struct DegenerateTriangle : std::domain_error {
    DegenerateTriangle() : std::domain_error("critical triangle is degenerate") {}
};

Vec3 vec3(long a, long b, long c, Kind k = Kind::Rational);
FieldElem dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
Vec3 scale(const Vec3& v, const FieldElem& s);
Vec3 add(const Vec3& a, const Vec3& b);
bool all_zero(const Vec3& v);
// approx: divide by the largest-modulus entry; exact: returned unchanged
Vec3 balanced(const Vec3& v);
bool proportional(const Vec3& a, const Vec3& b);
bool incident(const Vec3& line, const Vec3& pt);
std::string vec_str(const Vec3& v);

class ProjPoint {
public:
    explicit ProjPoint(const Vec3& v);
    const Vec3& coords() const { return c_; }
    const FieldElem& operator[](int i) const { return c_[i]; }
    Kind kind() const { return c_[0].kind(); }
    // (x1/x0, x2/x0) when x0 != 0
    std::optional<std::array<FieldElem, 2>> affine() const;
    std::string str() const;
    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return proportional(a.c_, b.c_); }
    friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }

private:
    Vec3 c_;
};

ProjPoint affine_point(const FieldElem& x, const FieldElem& y);

class ProjLine {
public:
    explicit ProjLine(const Vec3& v);
    const Vec3& coeffs() const { return c_; }
    bool contains(const ProjPoint& p) const { return incident(c_, p.coords()); }
    std::string str() const { return vec_str(c_); }
    friend bool operator==(const ProjLine& a, const ProjLine& b) { return proportional(a.c_, b.c_); }

private:
    Vec3 c_;
};

struct ParamPair {
    Vec3 alpha, beta;

    Kind kind() const { return alpha[0].kind(); }
    // (x,y) -> (y, (a+y)/(b+x)): alpha = (a,0,1), beta = (b,1,0)
    static ParamPair normal_form(const FieldElem& a, const FieldElem& b);
    // empty when the admissibility conditions hold
    std::optional<std::string> inadmissibility() const;
    void require_admissible() const;
    std::string str() const;
};

struct DerivedGeometry {
    Vec3 gamma, A, B, C;
    ProjPoint e1, e2, p0, pGamma, q;
    ProjLine sigma0, sigmaBeta, sigmaGamma, sigmaB, sigmaC;

    // epsilon_0 = pGamma, epsilon_1 = e1, epsilon_2 = p0
    std::array<ProjPoint, 3> eps() const { return {pGamma, e1, p0}; }
    // a_0 = e1, a_1 = e2, a_2 = q
    std::array<ProjPoint, 3> a() const { return {e1, e2, q}; }
    std::array<ProjLine, 3> sigma() const { return {sigma0, sigmaBeta, sigmaGamma}; }
    bool nondegenerate() const;
};

DerivedGeometry derive_geometry(const ParamPair& p);

// raw homogeneous components, no indeterminacy check
Vec3 f_hom(const ParamPair& p, const Vec3& x);
Vec3 f_inverse_hom(const ParamPair& p, const Vec3& x);
ProjPoint eval_f(const ParamPair& p, const ProjPoint& x);
ProjPoint eval_f_inverse(const ParamPair& p, const ProjPoint& x);
FieldElem jacobian_f(const ParamPair& p, const ProjPoint& x);

Vec3 J_hom(const Vec3& x);
ProjPoint eval_J(const ProjPoint& x);

Mat3 identity3(const FieldElem& like);
Mat3 mat_mul(const Mat3& a, const Mat3& b);
Vec3 mat_vec(const Mat3& m, const Vec3& v);
FieldElem det3(const Mat3& m);
Mat3 inverse3(const Mat3& m);
Mat3 transpose3(const Mat3& m);
ProjPoint eval_LJ(const Mat3& L, const ProjPoint& x);

struct LJConjugacy {
    Mat3 L, M1, M2;
};
// M2 o f o M1 = J as polynomial maps; f is conjugate to L o J with L = M1^-1 M2^-1
LJConjugacy conjugate_to_LJ(const ParamPair& p);

}  // namespace lfr
