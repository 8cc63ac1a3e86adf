#pragma once
// Parameter space: admissibility and triangle type, the three group actions, the (a,b) normal
// form, V_n membership, the V_0..V_6 catalog, V_6 invariant fibrations, the critically finite family.

#include "lfr/jetflow.hpp"
#include "lfr/oracle.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lfr {

struct ZeroScale : std::invalid_argument {
    ZeroScale() : std::invalid_argument("scale factor must be nonzero") {}
};
struct NotInStratum : std::invalid_argument {
    NotInStratum() : std::invalid_argument("normal form needs beta2 = 0") {}
};
struct NotInV6 : std::invalid_argument {
    NotInV6() : std::invalid_argument("parameters are not in V_6") {}
};
struct ZeroB : std::invalid_argument {
    ZeroB() : std::invalid_argument("b must be nonzero") {}
};

enum class TriangleClass { Inadmissible, DegenerateBetaGamma, DegenerateZeroGamma, NonDegenerate };

struct ParamClass {
    TriangleClass kind;
    std::string reason;  // for Inadmissible
    std::string name() const;
};

ParamClass classify_params(const ParamPair& p);

struct Scale {
    FieldElem lambda;
};
struct Dilate {
    FieldElem c;
};
struct Translate {
    FieldElem mu;
};
using Action = std::variant<Scale, Dilate, Translate>;

ParamPair apply_action(const ParamPair& p, const Action& act);

// (x,y) -> (y, (a+y)/(b+x))
struct NormalFormParams {
    FieldElem a, b;
    ParamPair params() const { return ParamPair::normal_form(a, b); }
    std::string str() const { return "(" + a.str() + ", " + b.str() + ")"; }
};

NormalFormParams normalize_beta2_zero(const ParamPair& p);
// normal form of the inverse map after the coordinate swap: (a - b, -b)
NormalFormParams inverse_normal_form(const NormalFormParams& nf);

// smallest n <= nMax with f^n q = pGamma, tracking through the blow-ups of e1 and e2
std::optional<int> vn_membership(const ParamPair& p, int nMax);
std::optional<int> vn_membership(const NormalFormParams& nf, int nMax);

struct CatalogRep {
    NormalFormParams nf;
    bool exact = true;
    std::string printed;  // value as listed, for numeric entries
    double printedA[2] = {0, 0}, printedB[2] = {0, 0};
};

struct VnCatalogEntry {
    int n = 0;
    std::vector<CatalogRep> reps;
    std::optional<std::pair<IntPoly, IntPoly>> definingPolys;  // in a and in b
};

// tolerance carried by numeric representatives
constexpr double kCatalogTol = 1e-6;

const std::vector<VnCatalogEntry>& vn_catalog();

// p(z) for complex z
std::complex<double> eval_complex(const IntPoly& p, std::complex<double> z);
// Newton refinement of a root of p starting at z
std::complex<double> polish_root(const IntPoly& p, std::complex<double> z);

struct V6Invariant {
    HPoly numeratorCubic, denominatorCubic;  // in x0 = t, x1 = x, x2 = y
    FieldElem multiplier;
    std::vector<Vec3> lineCycle;  // L1, L2, L3
    bool exactlyVerified = false;
    double maxDeviation = 0;  // numeric check only
};

V6Invariant v6_invariant(const NormalFormParams& nf);
// f maps the line l into the line m
bool maps_line_into(const ParamPair& p, const Vec3& l, const Vec3& m);

struct CriticallyFiniteCertificate {
    ProjPoint q;
    bool qFixed = false;
    std::vector<int> exceptionalLines;     // indices into (Sigma_0, Sigma_beta, Sigma_gamma) in the blown-up space
    std::vector<std::string> chains;       // waypoint descriptions ending at q
    bool certified = false;
};

struct Family64 {
    ParamPair params;
    CriticallyFiniteCertificate certificate;
};

Family64 family_64(const FieldElem& b, const FieldElem& c);

}  // namespace lfr
