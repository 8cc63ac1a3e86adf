#include "lfr/paramspace.hpp"

#include <cmath>
#include <random>

namespace lfr {

std::string ParamClass::name() const {
    switch (kind) {
        case TriangleClass::Inadmissible: return "inadmissible";
        case TriangleClass::DegenerateBetaGamma: return "degenerate-beta-gamma";
        case TriangleClass::DegenerateZeroGamma: return "degenerate-zero-gamma";
        case TriangleClass::NonDegenerate: return "nondegenerate";
    }
    return "?";
}

ParamClass classify_params(const ParamPair& p) {
    if (auto why = p.inadmissibility()) return {TriangleClass::Inadmissible, *why};
    if (p.beta[1].is_zero()) return {TriangleClass::DegenerateBetaGamma, ""};
    if ((p.beta[1] * p.alpha[2] - p.alpha[1] * p.beta[2]).is_zero()) return {TriangleClass::DegenerateZeroGamma, ""};
    return {TriangleClass::NonDegenerate, ""};
}

ParamPair apply_action(const ParamPair& p, const Action& act) {
    const Vec3& a = p.alpha;
    const Vec3& b = p.beta;
    if (auto s = std::get_if<Scale>(&act)) {
        if (s->lambda.is_zero()) throw ZeroScale();
        return {scale(a, s->lambda), scale(b, s->lambda)};
    }
    if (auto d = std::get_if<Dilate>(&act)) {
        const FieldElem& c = d->c;
        if (c.is_zero()) throw ZeroScale();
        return {{a[0], c * a[1], c * a[2]}, {c * b[0], c * c * b[1], c * c * b[2]}};
    }
    const FieldElem& mu = std::get<Translate>(act).mu;
    FieldElem b0 = b[0] + mu * (b[1] + b[2]);
    return {{a[0] + mu * (a[1] + a[2]) - mu * b0, a[1] - mu * b[1], a[2] - mu * b[2]}, {b0, b[1], b[2]}};
}

NormalFormParams normalize_beta2_zero(const ParamPair& p) {
    if (!p.beta[2].is_zero()) throw NotInStratum();
    p.require_admissible();
    ParamPair t = apply_action(p, Translate{p.alpha[1] / p.beta[1]});
    FieldElem c = t.alpha[2] / t.beta[1];
    t = apply_action(t, Dilate{c});
    t = apply_action(t, Scale{t.alpha[2].one_like() / t.alpha[2]});
    return {t.alpha[0], t.beta[0]};
}

NormalFormParams inverse_normal_form(const NormalFormParams& nf) { return {nf.a - nf.b, -nf.b}; }

std::optional<int> vn_membership(const ParamPair& p, int nMax) {
    if (!p.beta[2].is_zero()) throw NotInStratum();
    DerivedGeometry geo = derive_geometry(p);
    BlowupRegistry reg;
    reg.add(base_point(geo.e1), 0);
    reg.add(base_point(geo.e2), 0);
    SurfacePoint P = base_point(geo.q);
    for (int n = 0;; ++n) {
        if (!P.is_fiber() && P.base() == geo.pGamma) return n;
        if (n == nMax) return std::nullopt;
        try {
            P = transport_point(p, reg, P);
        } catch (const Indeterminate&) {
            return std::nullopt;
        } catch (const HigherOrderTangency&) {
            return std::nullopt;
        }
    }
}

std::optional<int> vn_membership(const NormalFormParams& nf, int nMax) { return vn_membership(nf.params(), nMax); }

std::complex<double> eval_complex(const IntPoly& p, std::complex<double> z) {
    std::complex<double> s = 0;
    for (int i = p.deg(); i >= 0; --i) s = s * z + p.c[i].get_d();
    return s;
}

std::complex<double> polish_root(const IntPoly& p, std::complex<double> z) {
    IntPoly dp = p.derivative();
    for (int it = 0; it < 100; ++it) {
        std::complex<double> step = eval_complex(p, z) / eval_complex(dp, z);
        z -= step;
        if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    return z;
}

namespace {

FieldElem cx(std::complex<double> z) { return FieldElem::approx(z, kCatalogTol); }

CatalogRep numeric_rep(const IntPoly& pa, const IntPoly& pb, double ar, double ai, double br, double bi,
                       const std::string& printed) {
    CatalogRep r;
    r.exact = false;
    r.printed = printed;
    r.printedA[0] = ar;
    r.printedA[1] = ai;
    r.printedB[0] = br;
    r.printedB[1] = bi;
    r.nf = {cx(polish_root(pa, {ar, ai})), cx(polish_root(pb, {br, bi}))};
    return r;
}

std::vector<VnCatalogEntry> build_catalog() {
    std::vector<VnCatalogEntry> cat;
    auto Q = [](const char* s) { return parse_scalar(s); };

    cat.push_back({0, {{{Q("0"), Q("0")}}}, std::nullopt});
    cat.push_back({1, {{{Q("1"), Q("0")}}}, std::nullopt});
    cat.push_back({2, {{{Q("1/2+1/2*i"), Q("i")}}, {{Q("1/2-1/2*i"), Q("-i")}}}, std::nullopt});

    VnCatalogEntry v3{3, {}, std::nullopt};
    double r3 = std::sqrt(3.0);
    for (double s : {-1.0, 1.0}) {
        std::complex<double> a{(2 + s * r3) / 2, 0.5};
        for (bool conj : {false, true}) {
            CatalogRep r;
            r.exact = false;
            r.printed = std::string("((2+i") + (s < 0 ? "-" : "+") + "sqrt3)/2, i)" + (conj ? " conjugate" : "");
            r.nf = {cx(conj ? std::conj(a) : a), cx(conj ? std::complex<double>{0, -1} : std::complex<double>{0, 1})};
            v3.reps.push_back(r);
        }
    }
    cat.push_back(v3);

    IntPoly a4{1, -3, 9, -24, 36, -27, 9}, b4{1, 0, 6, 0, 9, 0, 3};
    VnCatalogEntry v4{4, {}, std::make_pair(a4, b4)};
    struct Num {
        double ar, ai, bi;
        const char* txt;
    };
    for (auto n : std::vector<Num>{{0.8711, 0.7309, 1.4619, "(0.8711+0.7309i, 1.4619i)"},
                                   {0.6974, 0.2538, 0.5077, "(0.6974+0.2538i, 0.5077i)"},
                                   {-0.06857, 0.3889, 0.7778, "(-0.06857+0.3889i, 0.7778i)"}}) {
        v4.reps.push_back(numeric_rep(a4, b4, n.ar, n.ai, 0, n.bi, n.txt));
        v4.reps.push_back(numeric_rep(a4, b4, n.ar, -n.ai, 0, -n.bi, std::string(n.txt) + " conjugate"));
    }
    cat.push_back(v4);

    IntPoly a5{1, 0, 3, -20, 49, -60, 37, -10, 1}, b5{1, 0, 7, 0, 14, 0, 8, 0, 1};
    VnCatalogEntry v5{5, {}, std::make_pair(a5, b5)};
    for (auto n : std::vector<Num>{{3.7007, 1.2024, 2.4048, "(3.7007+1.2024i, 2.4048i)"},
                                   {1.0353, 0.3364, 0.6728, "(1.0353+0.3364i, 0.6728i)"},
                                   {0.4465, 0.6146, 1.2293, "(0.4465+0.6146i, 1.2293i)"},
                                   {-0.1826, 0.2513, 0.5027, "(-0.1826+0.2513i, 0.5027i)"}}) {
        v5.reps.push_back(numeric_rep(a5, b5, n.ar, n.ai, 0, n.bi, n.txt));
        v5.reps.push_back(numeric_rep(a5, b5, n.ar, -n.ai, 0, -n.bi, std::string(n.txt) + " conjugate"));
    }
    cat.push_back(v5);

    VnCatalogEntry v6{6, {}, std::nullopt};
    for (const char* a : {"2", "-1", "1/2", "3", "-3/2", "1/2+i"}) {
        FieldElem av = Q(a);
        v6.reps.push_back({{av, promote(Q("0"), av.kind())}});
    }
    // b = i*s with s^2 = (5 +- sqrt5)/2, a = (3 +- sqrt5 + 2b)/4
    double sq5 = largest_real_root(IntPoly{-5, 0, 1}, 1e-15).value;
    double sPlus = largest_real_root(IntPoly{5, 0, -5, 0, 1}, 1e-15).value;
    double sMinus = sq5 / sPlus;
    for (int sg : {1, -1}) {
        double s = sg > 0 ? sPlus : sMinus;
        std::complex<double> b{0, s};
        std::complex<double> a = (3.0 + sg * sq5 + 2.0 * b) / 4.0;
        for (bool conj : {false, true}) {
            CatalogRep r;
            r.exact = false;
            r.printed = std::string("a=(3") + (sg > 0 ? "+" : "-") + "sqrt5+2b)/4, b=i*sqrt((5" +
                        (sg > 0 ? "+" : "-") + "sqrt5)/2)" + (conj ? " conjugate" : "");
            r.nf = {cx(conj ? std::conj(a) : a), cx(conj ? std::conj(b) : b)};
            v6.reps.push_back(r);
        }
    }
    cat.push_back(v6);
    return cat;
}

}  // namespace

const std::vector<VnCatalogEntry>& vn_catalog() {
    static const std::vector<VnCatalogEntry> cat = build_catalog();
    return cat;
}

bool maps_line_into(const ParamPair& p, const Vec3& l, const Vec3& m) {
    const FieldElem& like = p.alpha[0];
    std::vector<Vec3> pts;
    for (int i = 0; i < 4 && pts.size() < 2; ++i) {
        Vec3 g = i < 3 ? vec3(i == 0, i == 1, i == 2, like.kind()) : vec3(1, 2, 3, like.kind());
        if (like.kind() == Kind::Approx)
            for (auto& x : g) x = x.with_tol(like.tol());
        Vec3 x = cross(l, g);
        if (all_zero(x)) continue;
        if (!pts.empty() && proportional(pts[0], x)) continue;
        pts.push_back(x);
    }
    if (pts.size() < 2) throw std::invalid_argument("degenerate line");
    // m(f(X)) restricted to l is a binary quadratic; three zeros force it to vanish
    for (Vec3 X : {pts[0], add(pts[0], pts[1]), add(pts[0], scale(pts[1], like.like(-1)))})
        if (!dot(balanced(m), f_hom(p, balanced(X))).is_zero()) return false;
    return true;
}

V6Invariant v6_invariant(const NormalFormParams& nf) {
    auto n = vn_membership(nf, 6);
    if (!n || *n != 6) throw NotInV6();
    ParamPair p = nf.params();
    const FieldElem& a = nf.a;
    const FieldElem& b = nf.b;
    FieldElem z = a.zero_like(), o = a.one_like();
    V6Invariant inv;
    if (b.is_zero()) {
        inv.lineCycle = {{a, o, o}, {o, z, o}, {o, o, z}};
        inv.numeratorCubic = HPoly::linear(inv.lineCycle[0]) * HPoly::linear(inv.lineCycle[1]) *
                             HPoly::linear(inv.lineCycle[2]);
        inv.denominatorCubic = HPoly::variable(0, a) * HPoly::variable(1, a) * HPoly::variable(2, a);
        inv.multiplier = o;
        HomogeneousMap f = HomogeneousMap::of_f(p);
        HPoly lhs = substitute(inv.numeratorCubic, f) * inv.denominatorCubic;
        HPoly rhs = substitute(inv.denominatorCubic, f) * inv.numeratorCubic;
        inv.exactlyVerified = a.exact() && (lhs - rhs).is_zero();
        return inv;
    }
    FieldElem am1 = a - o;
    inv.lineCycle = {{a, o, o - b / a}, {am1, z, o}, {am1, o, z}};
    HPoly t = HPoly::variable(0, a), x = HPoly::variable(1, a), y = HPoly::variable(2, a);
    inv.numeratorCubic = HPoly::linear(inv.lineCycle[0]) * HPoly::linear(inv.lineCycle[1]) *
                         HPoly::linear(inv.lineCycle[2]);
    HPoly M1 = HPoly::linear({am1 * am1, a - b - o, am1});
    HPoly M2 = (x * y).scaled(am1) + (y * t).scaled(b * b + o) + (x * t).scaled(a - b - o) + (t * t).scaled(a - b);
    inv.denominatorCubic = M1 * M2;

    std::complex<double> ac = a.to_complex(), bc = b.to_complex();
    auto k = [&](std::complex<double> X, std::complex<double> Y) {
        Vec3 v{cx(1.0), cx(X), cx(Y)};
        return inv.numeratorCubic.eval(v).to_complex() / inv.denominatorCubic.eval(v).to_complex();
    };
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<std::pair<std::complex<double>, std::complex<double>>> samples;
    std::complex<double> wsum = 0;
    while (samples.size() < 50) {
        std::complex<double> X{u(rng), u(rng)}, Y{u(rng), u(rng)};
        if (std::abs(bc + X) < 0.2) continue;
        std::complex<double> fX = Y, fY = (ac + Y) / (bc + X);
        std::complex<double> k0 = k(X, Y), k1 = k(fX, fY);
        if (!std::isfinite(std::abs(k0)) || !std::isfinite(std::abs(k1)) || std::abs(k0) > 50 ||
            std::abs(k0) < 0.02)
            continue;
        samples.push_back({k0, k1});
        wsum += k1 / k0;
    }
    std::complex<double> w = wsum / double(samples.size());
    inv.multiplier = FieldElem::approx(w, kCatalogTol);
    for (auto& [k0, k1] : samples) inv.maxDeviation = std::max(inv.maxDeviation, std::abs(k1 - w * k0));
    return inv;
}

Family64 family_64(const FieldElem& b, const FieldElem& c) {
    if (b.is_zero()) throw ZeroB();
    FieldElem z = b.zero_like(), o = b.one_like();
    Family64 r{ParamPair{{z, z, o}, {b, o, c}}, {ProjPoint({o, z, z}), false, {}, {}, false}};
    ParamPair& p = r.params;
    DerivedGeometry geo = derive_geometry(p);
    CriticallyFiniteCertificate& cert = r.certificate;
    cert.q = geo.q;
    cert.qFixed = eval_f(p, geo.q) == geo.q;
    TrackResult T = track_exceptional_orbits(p, TrackOptions{32, 6000});
    bool gammaOk = true;
    for (auto& P : T.orbits[2].points) gammaOk = gammaOk && !P.is_fiber() && P.base() == geo.q;
    cert.exceptionalLines.push_back(2);
    cert.chains.push_back("Sigma_gamma -> " + geo.q.str() + " (fixed)");
    bool betaOk = true;
    if (!c.is_zero()) {
        cert.exceptionalLines.insert(cert.exceptionalLines.begin(), 1);
        const OrbitRecord& o1 = T.orbits[1];
        betaOk = o1.terminal.kind == TerminalKind::PendingCollapse && o1.terminal.index == 2;
        std::string s = "Sigma_beta";
        for (auto& P : o1.points) s += " -> " + P.str();
        s += " -> " + geo.q.str();
        cert.chains.insert(cert.chains.begin(), s);
    }
    cert.certified = cert.qFixed && gammaOk && betaOk;
    return r;
}

}  // namespace lfr
