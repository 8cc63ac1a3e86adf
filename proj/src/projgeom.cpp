#include "lfr/projgeom.hpp"

namespace lfr {

Vec3 vec3(long a, long b, long c, Kind k) {
    return {FieldElem::from_int(a, k), FieldElem::from_int(b, k), FieldElem::from_int(c, k)};
}

FieldElem dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 scale(const Vec3& v, const FieldElem& s) { return {v[0] * s, v[1] * s, v[2] * s}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

Vec3 balanced(const Vec3& v) {
    if (v[0].exact()) return v;
    int m = 0;
    for (int i = 1; i < 3; ++i)
        if (v[i].modulus() > v[m].modulus()) m = i;
    if (v[m].modulus() == 0.0) return v;
    return scale(v, v[m].one_like() / FieldElem::approx(v[m].to_complex(), v[m].tol()));
}

bool all_zero(const Vec3& v) {
    Vec3 b = balanced(v);
    return b[0].is_zero() && b[1].is_zero() && b[2].is_zero();
}

bool proportional(const Vec3& a, const Vec3& b) {
    Vec3 c = cross(balanced(a), balanced(b));
    return c[0].is_zero() && c[1].is_zero() && c[2].is_zero();
}

bool incident(const Vec3& line, const Vec3& pt) { return dot(balanced(line), balanced(pt)).is_zero(); }

std::string vec_str(const Vec3& v) { return "[" + v[0].str() + ":" + v[1].str() + ":" + v[2].str() + "]"; }

namespace {

Vec3 canonical(const Vec3& v, const char* what) {
    Vec3 b = balanced(v);
    for (int i = 0; i < 3; ++i) {
        if (!b[i].is_zero()) {
            FieldElem s = b[i].one_like() / b[i];
            Vec3 r = scale(b, s);
            r[i] = b[i].one_like();
            for (int j = 0; j < i; ++j) r[j] = b[i].zero_like();
            return r;
        }
    }
    throw std::invalid_argument(std::string(what) + ": all coordinates vanish");
}

}  // namespace

ProjPoint::ProjPoint(const Vec3& v) : c_(canonical(v, "projective point")) {}

std::optional<std::array<FieldElem, 2>> ProjPoint::affine() const {
    if (c_[0].is_zero()) return std::nullopt;
    return std::array<FieldElem, 2>{c_[1] / c_[0], c_[2] / c_[0]};
}

std::string ProjPoint::str() const { return vec_str(c_); }

ProjPoint affine_point(const FieldElem& x, const FieldElem& y) { return ProjPoint({x.one_like(), x, y}); }

ProjLine::ProjLine(const Vec3& v) : c_(canonical(v, "projective line")) {}

ParamPair ParamPair::normal_form(const FieldElem& a, const FieldElem& b) {
    if (a.kind() != b.kind()) throw MixedVariants();
    FieldElem z = a.zero_like(), o = a.one_like();
    return {{a, z, o}, {b, o, z}};
}

std::optional<std::string> ParamPair::inadmissibility() const {
    for (int i = 0; i < 3; ++i)
        if (alpha[i].kind() != alpha[0].kind() || beta[i].kind() != alpha[0].kind()) throw MixedVariants();
    if (all_zero(alpha) || all_zero(beta) || proportional(alpha, beta))
        return std::string("alpha is a multiple of beta");
    if (alpha[1].is_zero() && beta[1].is_zero()) return std::string("alpha1 = beta1 = 0");
    if (alpha[2].is_zero() && beta[2].is_zero()) return std::string("alpha2 = beta2 = 0");
    if (beta[1].is_zero() && beta[2].is_zero()) return std::string("beta1 = beta2 = 0");
    return std::nullopt;
}

void ParamPair::require_admissible() const {
    if (auto why = inadmissibility()) throw InadmissibleParams(*why);
}

std::string ParamPair::str() const { return "alpha=" + vec_str(alpha) + " beta=" + vec_str(beta); }

bool DerivedGeometry::nondegenerate() const {
    // beta1 != 0 and beta1*alpha2 - alpha1*beta2 != 0
    return !B[2].is_zero() && !gamma[2].is_zero();
}

DerivedGeometry derive_geometry(const ParamPair& p) {
    p.require_admissible();
    const Vec3& a = p.alpha;
    const Vec3& b = p.beta;
    FieldElem z = a[0].zero_like(), o = a[0].one_like();
    Vec3 gamma{b[1] * a[0] - a[1] * b[0], z, b[1] * a[2] - a[1] * b[2]};
    Vec3 A{a[0], a[2], -b[0]};
    Vec3 B{-a[1], z, b[1]};
    Vec3 C{a[1] * b[0] - a[0] * b[1], a[1] * b[2] - a[2] * b[1], z};
    ProjPoint e1({z, o, z}), e2({z, z, o});
    ProjPoint p0({z, -b[2], b[1]});
    ProjPoint pG({b[1] * a[2] - b[2] * a[1], -b[0] * a[2] + a[0] * b[2], a[1] * b[0] - a[0] * b[1]});
    FieldElem g2 = b[1] * a[2] - a[1] * b[2];
    ProjPoint q({b[1] * g2, b[1] * (a[1] * b[0] - a[0] * b[1]), a[1] * g2});
    ProjLine s0({o, z, z});
    ProjLine sb(b);
    // a degenerate gamma (all zero) cannot occur under admissibility with beta1 != 0;
    // fall back to sigma0 so the struct stays well formed
    ProjLine sg(all_zero(gamma) ? Vec3{o, z, z} : gamma);
    ProjLine sB(B);
    ProjLine sC(all_zero(C) ? Vec3{o, z, z} : C);
    return DerivedGeometry{gamma, A, B, C, e1, e2, p0, pG, q, s0, sb, sg, sB, sC};
}

Vec3 f_hom(const ParamPair& p, const Vec3& x) {
    FieldElem bx = dot(p.beta, x), ax = dot(p.alpha, x);
    return {x[0] * bx, x[2] * bx, x[0] * ax};
}

Vec3 f_inverse_hom(const ParamPair& p, const Vec3& x) {
    const Vec3& a = p.alpha;
    const Vec3& b = p.beta;
    Vec3 A{a[0], a[2], -b[0]};
    Vec3 B{-a[1], a[0].zero_like(), b[1]};
    FieldElem Bx = dot(B, x);
    return {x[0] * Bx, x[0] * dot(A, x) - b[2] * x[1] * x[2], x[1] * Bx};
}

ProjPoint eval_f(const ParamPair& p, const ProjPoint& x) {
    Vec3 y = f_hom(p, balanced(x.coords()));
    if (all_zero(y)) throw Indeterminate("f is indeterminate at " + x.str());
    return ProjPoint(y);
}

ProjPoint eval_f_inverse(const ParamPair& p, const ProjPoint& x) {
    Vec3 y = f_inverse_hom(p, balanced(x.coords()));
    if (all_zero(y)) throw Indeterminate("f^-1 is indeterminate at " + x.str());
    return ProjPoint(y);
}

FieldElem jacobian_f(const ParamPair& p, const ProjPoint& x) {
    const Vec3& v = x.coords();
    FieldElem bx = dot(p.beta, v), ax = dot(p.alpha, v);
    return v[0].like(2) * v[0] * bx * (p.beta[1] * ax - p.alpha[1] * bx);
}

Vec3 J_hom(const Vec3& x) { return {x[1] * x[2], x[0] * x[2], x[0] * x[1]}; }

ProjPoint eval_J(const ProjPoint& x) {
    Vec3 y = J_hom(balanced(x.coords()));
    if (all_zero(y)) throw Indeterminate("J is indeterminate at " + x.str());
    return ProjPoint(y);
}

Mat3 identity3(const FieldElem& like) {
    FieldElem z = like.zero_like(), o = like.one_like();
    return {Vec3{o, z, z}, Vec3{z, o, z}, Vec3{z, z, o}};
}

Mat3 mat_mul(const Mat3& a, const Mat3& b) {
    Mat3 r = a;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
    return r;
}

Vec3 mat_vec(const Mat3& m, const Vec3& v) { return {dot(m[0], v), dot(m[1], v), dot(m[2], v)}; }

FieldElem det3(const Mat3& m) { return dot(m[0], cross(m[1], m[2])); }

Mat3 transpose3(const Mat3& m) {
    Mat3 t = m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
    return t;
}

Mat3 inverse3(const Mat3& m) {
    FieldElem d = det3(m);
    if (d.is_zero()) throw DivisionByZero();
    // columns of the inverse are cross products of rows, scaled
    Mat3 adjT{cross(m[1], m[2]), cross(m[2], m[0]), cross(m[0], m[1])};
    Mat3 inv = transpose3(adjT);
    FieldElem s = d.one_like() / d;
    for (auto& row : inv) row = scale(row, s);
    return inv;
}

ProjPoint eval_LJ(const Mat3& L, const ProjPoint& x) { return ProjPoint(mat_vec(L, eval_J(x).coords())); }

LJConjugacy conjugate_to_LJ(const ParamPair& p) {
    DerivedGeometry g = derive_geometry(p);
    if (!g.nondegenerate()) throw DegenerateTriangle();
    Mat3 Lambda{g.sigma0.coeffs(), g.sigmaBeta.coeffs(), g.sigmaGamma.coeffs()};
    Mat3 M1 = inverse3(Lambda);
    Mat3 P = transpose3(Mat3{g.e1.coords(), g.e2.coords(), g.q.coords()});
    Mat3 Pinv = inverse3(P);
    FieldElem one = p.alpha[0].one_like();
    Vec3 ones{one, one, one};
    Vec3 d = mat_vec(Pinv, f_hom(p, mat_vec(M1, ones)));
    Mat3 M2 = Pinv;
    for (int i = 0; i < 3; ++i) M2[i] = scale(Pinv[i], one / d[i]);
    Mat3 L = inverse3(mat_mul(M2, M1));
    return {L, M1, M2};
}

}  // namespace lfr
