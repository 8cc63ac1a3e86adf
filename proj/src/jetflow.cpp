#include "lfr/jetflow.hpp"

#include <algorithm>
#include <sstream>

namespace lfr {

namespace {

using Series = std::vector<FieldElem>;

Series series_of(const UPoly& p, int n, const FieldElem& zero) {
    Series s(n, zero);
    for (int i = 0; i < n && i <= p.deg(); ++i) s[i] = p.c[i];
    return s;
}

Series ser_mul(const Series& a, const Series& b, int n) {
    Series r(n, a[0].zero_like());
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) r[i + j] += a[i] * b[j];
    return r;
}

Series ser_inv(const Series& a, int n) {
    Series r(n, a[0].zero_like());
    r[0] = a[0].one_like() / a[0];
    for (int k = 1; k < n; ++k) {
        FieldElem acc = a[0].zero_like();
        for (int j = 1; j <= k; ++j) acc += a[j] * r[k - j];
        r[k] = -acc * r[0];
    }
    return r;
}

// a(t(s)) with t(0) = 0
Series ser_compose(const Series& a, const Series& t, int n) {
    Series r(n, a[0].zero_like());
    Series pw(n, a[0].zero_like());
    pw[0] = a[0].one_like();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) r[i] += a[j] * pw[i];
        pw = ser_mul(pw, t, n);
    }
    return r;
}

// t(s) with u(t(s)) = s, u(0) = 0, u'(0) != 0
Series ser_revert(const Series& u, int n) {
    Series t(n, u[0].zero_like());
    if (n < 2) return t;
    t[1] = u[1].one_like() / u[1];
    for (int k = 2; k < n; ++k) {
        Series c = ser_compose(u, t, k + 1);
        t[k] = -c[k] / u[1];
    }
    return t;
}

std::array<int, 2> others(int chart) {
    if (chart == 0) return {1, 2};
    if (chart == 1) return {0, 2};
    return {0, 1};
}

FieldElem curve_zero(const Curve& c) {
    for (auto& p : c)
        if (!p.is_zero()) return p.c[0].zero_like();
    throw std::logic_error("zero curve");
}

std::array<Series, 3> affine_series(const Curve& c, int n, int chart) {
    FieldElem z = curve_zero(c);
    Series den = series_of(c[chart], n, z);
    if (den[0].is_zero()) throw std::domain_error("chart coordinate vanishes at the base point");
    Series inv = ser_inv(den, n);
    std::array<Series, 3> a;
    for (int m : others(chart)) a[m] = ser_mul(series_of(c[m], n, z), inv, n);
    return a;
}

Jet build_jet(const std::array<Series, 3>& a, int gen, int chart, int param) {
    Jet j;
    j.gen = gen;
    j.chart = chart;
    auto o = others(chart);
    if (gen == 0) {
        j.param = o[0];
        j.other = o[1];
        j.u0 = a[o[0]][0];
        j.w = {a[o[1]][0]};
        return j;
    }
    j.param = param;
    j.other = param == o[0] ? o[1] : o[0];
    int n = gen + 1;
    const Series& ap = a[j.param];
    if (ap[1].is_zero()) throw HigherOrderTangency("curve germ has no first-order term in the chosen parameter");
    Series u = ap;
    u[0] = ap[0].zero_like();
    Series t = ser_revert(u, n);
    j.u0 = ap[0];
    j.w = ser_compose(a[j.other], t, n);
    return j;
}

}  // namespace

Jet canonical_jet(const Curve& c, int gen) {
    FieldElem z = curve_zero(c);
    bool exact = z.exact();
    int chart = -1;
    for (int i = 0; i < 3; ++i) {
        FieldElem v = c[i].at(0, z);
        if (v.is_zero()) continue;
        if (exact) {
            chart = i;
            break;
        }
        if (chart < 0 || v.modulus() > c[chart].at(0, z).modulus()) chart = i;
    }
    if (chart < 0) throw std::logic_error("curve germ passes through the zero vector");
    auto a = affine_series(c, gen + 1, chart);
    auto o = others(chart);
    int param = o[0];
    if (gen >= 1) {
        const FieldElem& l0 = a[o[0]][1];
        const FieldElem& l1 = a[o[1]][1];
        if (l0.is_zero() && l1.is_zero())
            throw HigherOrderTangency("image germ is singular: direction undefined at first order");
        if (exact) param = l0.is_zero() ? o[1] : o[0];
        else param = l1.modulus() > l0.modulus() ? o[1] : o[0];
    }
    return build_jet(a, gen, chart, param);
}

Jet canonical_jet_in(const Curve& c, int gen, int chart, int param) {
    auto a = affine_series(c, gen + 1, chart);
    return build_jet(a, gen, chart, param);
}

Curve jet_curve(const Jet& j) {
    Curve c;
    FieldElem one = j.u0.one_like();
    c[j.chart] = UPoly::constant(one);
    c[j.param] = j.gen >= 1 ? UPoly({j.u0, one}) : UPoly::constant(j.u0);
    c[j.other] = UPoly(j.w);
    return c;
}

bool jet_matches(const Jet& j, const Curve& c) {
    Jet k;
    try {
        k = canonical_jet_in(c, j.gen, j.chart, j.param);
    } catch (const std::exception&) {
        return false;
    }
    if (!(k.u0 == j.u0)) return false;
    for (size_t i = 0; i < j.w.size(); ++i)
        if (!(k.w[i] == j.w[i])) return false;
    return true;
}

ProjPoint SurfacePoint::base() const {
    Vec3 v{jet.u0, jet.u0, jet.u0};
    v[jet.chart] = jet.u0.one_like();
    v[jet.param] = jet.u0;
    v[jet.other] = jet.w[0];
    return ProjPoint(v);
}

std::array<FieldElem, 2> SurfacePoint::dir() const {
    FieldElem one = jet.u0.one_like();
    if (jet.gen == 0) return {one, jet.u0.zero_like()};
    FieldElem wp = jet.w[jet.gen];
    std::array<FieldElem, 2> d = jet.param < jet.other ? std::array<FieldElem, 2>{one, wp}
                                                        : std::array<FieldElem, 2>{wp, one};
    if (d[0].is_zero()) return {d[0].zero_like(), one};
    return {one, d[1] / d[0]};
}

size_t SurfacePoint::height_bits() const {
    size_t b = jet.u0.bits();
    for (auto& x : jet.w) b = std::max(b, x.bits());
    return b;
}

std::string SurfacePoint::str() const {
    if (!is_fiber()) return base().str();
    auto d = dir();
    std::ostringstream os;
    os << "Fiber(#" << center << ", [" << d[0].str() << ":" << d[1].str() << "], gen " << jet.gen << ") over "
       << base().str();
    return os.str();
}

bool same_point(const SurfacePoint& a, const SurfacePoint& b) {
    return a.jet.gen == b.jet.gen && a.center == b.center && jet_matches(a.jet, jet_curve(b.jet));
}

SurfacePoint base_point(const ProjPoint& p) {
    const Vec3& v = p.coords();
    Curve c{UPoly::constant(v[0]), UPoly::constant(v[1]), UPoly::constant(v[2])};
    return SurfacePoint{canonical_jet(c, 0), -1};
}

int BlowupRegistry::add(const SurfacePoint& p, int stage, int orbit, int index) {
    if (find(p) >= 0) throw std::logic_error("blow-up center registered twice: " + p.str());
    if (p.center >= int(centers.size())) throw std::logic_error("center refers to an unknown parent");
    centers.push_back({p, stage, orbit, index});
    return int(centers.size()) - 1;
}

int BlowupRegistry::find(const SurfacePoint& p) const {
    for (size_t i = 0; i < centers.size(); ++i)
        if (same_point(centers[i].pt, p)) return int(i);
    return -1;
}

int BlowupRegistry::root(int idx) const {
    while (centers[idx].pt.center >= 0) idx = centers[idx].pt.center;
    return idx;
}

SurfacePoint BlowupRegistry::resolve(const Curve& c) const {
    int parent = -1;
    for (int gen = 0;; ++gen) {
        int hit = -1;
        for (size_t i = 0; i < centers.size(); ++i) {
            const SurfacePoint& q = centers[i].pt;
            if (q.jet.gen == gen && q.center == parent && jet_matches(q.jet, c)) {
                hit = int(i);
                break;
            }
        }
        if (hit < 0) return SurfacePoint{canonical_jet(c, gen), parent};
        parent = hit;
    }
}

namespace {

UPoly lin(const Vec3& a, const Curve& c) {
    return c[0].scaled(a[0]) + c[1].scaled(a[1]) + c[2].scaled(a[2]);
}

Curve f_curve(const ParamPair& p, const Curve& c) {
    UPoly bx = lin(p.beta, c), ax = lin(p.alpha, c);
    return {c[0] * bx, c[2] * bx, c[0] * ax};
}

Curve f_inverse_curve(const ParamPair& p, const Curve& c) {
    const Vec3& a = p.alpha;
    const Vec3& b = p.beta;
    UPoly Bx = lin({-a[1], a[0].zero_like(), b[1]}, c), Ax = lin({a[0], a[2], -b[0]}, c);
    return {c[0] * Bx, c[0] * Ax - (c[1] * c[2]).scaled(b[2]), c[1] * Bx};
}

// divide out the common power of t; false when the curve image is identically zero
bool strip_common_power(Curve& img) {
    int k = -1;
    for (auto& q : img) {
        int o = q.order();
        if (o >= 0 && (k < 0 || o < k)) k = o;
    }
    if (k < 0) return false;
    for (auto& q : img) q = q.shift_down(k);
    return true;
}

void rebalance(Curve& img) {
    FieldElem z = curve_zero(img);
    if (z.exact()) return;
    double m = 0;
    for (auto& q : img)
        for (auto& x : q.c) m = std::max(m, x.modulus());
    if (m == 0) return;
    FieldElem s = FieldElem::approx(1.0 / m, z.tol());
    for (auto& q : img) q = q.scaled(s);
}

std::vector<Vec3> probe_directions(const FieldElem& like) {
    std::vector<Vec3> w;
    if (like.exact()) {
        for (auto& t : std::vector<std::array<long, 3>>{{3, -5, 7}, {-2, 11, 13}, {17, -19, 23}, {29, 31, -37}})
            w.push_back({like.like(t[0]), like.like(t[1]), like.like(t[2])});
    } else {
        double tol = like.tol();
        for (auto& t : std::vector<std::array<double, 3>>{
                 {0.37, -0.81, 0.53}, {-0.62, 0.29, 0.91}, {0.71, 0.44, -0.23}, {-0.15, -0.67, 0.58}})
            w.push_back({FieldElem::approx(t[0], tol), FieldElem::approx(t[1], tol), FieldElem::approx(t[2], tol)});
    }
    return w;
}

}  // namespace

TransportResult germ_transport(const ParamPair& p, const BlowupRegistry& reg, const Germ& g) {
    if (all_zero(g.base)) throw std::invalid_argument("germ base is zero");
    if (proportional(g.base, g.tangent)) throw std::invalid_argument("germ tangent is proportional to its base");
    Curve c;
    for (int i = 0; i < 3; ++i) c[i] = UPoly({g.base[i], g.tangent[i]});
    Curve img = f_curve(p, c);
    if (!strip_common_power(img)) throw Indeterminate("map vanishes identically along the germ");
    rebalance(img);
    TransportResult r{reg.resolve(img), {}};
    FieldElem z = curve_zero(img);
    for (int i = 0; i < 3; ++i) {
        r.image.base[i] = img[i].at(0, z);
        r.image.tangent[i] = img[i].at(1, z);
    }
    return r;
}

SurfacePoint transport_point(const ParamPair& p, const BlowupRegistry& reg, const SurfacePoint& P, bool inverse) {
    Curve base = jet_curve(P.jet);
    int g = P.jet.gen;
    std::vector<SurfacePoint> got;
    bool tangency = false;
    std::string why;
    for (const Vec3& w : probe_directions(P.jet.u0)) {
        if (g == 0 && proportional(w, P.base().coords())) continue;
        Curve c = base;
        for (int i = 0; i < 3; ++i) c[i] = c[i] + UPoly::monomial(w[i], g + 1);
        Curve img = inverse ? f_inverse_curve(p, c) : f_curve(p, c);
        if (!strip_common_power(img)) {
            why = "map vanishes identically along a probe curve";
            continue;
        }
        rebalance(img);
        try {
            got.push_back(reg.resolve(img));
        } catch (const HigherOrderTangency& e) {
            tangency = true;
            why = e.what();
            continue;
        }
        size_t n = got.size();
        for (size_t i = 0; i + 1 < n; ++i)
            if (same_point(got[i], got[n - 1])) return got[i];
        if (n >= 3) break;
    }
    if (got.size() >= 2 || (!tangency && got.empty()))
        throw Indeterminate("image of " + P.str() + " depends on the approach direction");
    throw HigherOrderTangency(why.empty() ? "no consistent image germ" : why);
}

std::vector<int> OrbitStructure::openStarts() const {
    std::vector<int> a;
    for (auto& L : lists)
        if (!L.closed) a.push_back(L.orbits.front());
    return a;
}

OrbitListSpec OrbitStructure::spec() const {
    OrbitListSpec s;
    for (auto& L : lists) s.lists.push_back({L.lengths, L.closed});
    return s;
}

std::string OrbitStructure::str() const {
    std::ostringstream os;
    for (size_t i = 0; i < lists.size(); ++i) {
        if (i) os << ";";
        os << (lists[i].closed ? "c:" : "o:");
        for (size_t j = 0; j < lists[i].lengths.size(); ++j) os << (j ? "," : "") << lists[i].lengths[j];
    }
    return os.str();
}

namespace {

bool on_strict_transform(const ProjLine& L, const SurfacePoint& P) {
    if (!P.is_fiber()) return L.contains(P.base());
    Curve c = jet_curve(P.jet);
    Vec3 l = balanced(L.coeffs());
    return lin(l, c).is_zero();
}

OrbitRecord run_orbit(const ParamPair& p, const DerivedGeometry& geo, const BlowupRegistry& reg,
                      const std::array<bool, 3>& resolved, int i, int maxIter, size_t heightBits) {
    OrbitRecord rec;
    rec.origin = i;
    SurfacePoint P = base_point(geo.a()[i]);
    if (reg.find(P) >= 0) throw std::logic_error("image of an exceptional line is already a blow-up center");
    auto eps = geo.eps();
    auto sig = geo.sigma();
    bool exact = p.alpha[0].exact();
    for (int step = 0;; ++step) {
        if (!P.is_fiber()) {
            for (int k = 0; k < 3; ++k) {
                if (P.base() == eps[k] && reg.find(base_point(eps[k])) < 0) {
                    rec.points.push_back(P);
                    rec.terminal = {TerminalKind::HitIndeterminacy, k, ""};
                    return rec;
                }
            }
        }
        rec.points.push_back(P);
        for (int j = 0; j < 3; ++j) {
            if (!resolved[j] && on_strict_transform(sig[j], P)) {
                rec.terminal = {TerminalKind::PendingCollapse, j, ""};
                return rec;
            }
        }
        if (step + 1 >= maxIter) {
            rec.terminal = {TerminalKind::NonSingularTruncated, maxIter, "iteration cap"};
            return rec;
        }
        if (exact && P.height_bits() > heightBits) {
            rec.terminal = {TerminalKind::NonSingularTruncated, step + 1, "height budget"};
            return rec;
        }
        P = transport_point(p, reg, P);
    }
}

}  // namespace

TrackResult track_exceptional_orbits(const ParamPair& p, TrackOptions opt) {
    DerivedGeometry geo = derive_geometry(p);
    bool exact = p.alpha[0].exact();
    int maxIter = opt.maxIter > 0 ? opt.maxIter : (exact ? 256 : 64);
    TrackResult T;
    std::array<bool, 3> resolved{false, false, false};
    for (int stage = 0;; ++stage) {
        std::vector<int> fresh;
        for (int i = 0; i < 3; ++i) {
            if (resolved[i]) continue;
            T.orbits[i] = run_orbit(p, geo, T.registry, resolved, i, maxIter, opt.heightBits);
            if (T.orbits[i].singular()) fresh.push_back(i);
        }
        if (fresh.empty()) break;
        for (int i : fresh) {
            auto& rec = T.orbits[i];
            for (size_t j = 0; j < rec.points.size(); ++j) T.registry.add(rec.points[j], stage, i, int(j));
            rec.stage = stage;
            resolved[i] = true;
            T.structure.tau[i] = rec.terminal.index;
        }
    }

    auto& tau = T.structure.tau;
    if (!p.beta[2].is_zero())
        for (int i = 0; i < 3; ++i)
            if (tau[i] == 2) throw std::logic_error("an exceptional orbit ends at p0 although beta2 != 0");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (tau[i] >= 0 && tau[i] == tau[j]) throw std::logic_error("two singular orbits share an endpoint");

    auto next = [&](int i) { return tau[i] >= 0 && resolved[tau[i]] ? tau[i] : -1; };
    std::array<bool, 3> visited{false, false, false};
    auto push_list = [&](int start, bool closed) {
        OrbitList L;
        L.closed = closed;
        int cur = start;
        do {
            L.orbits.push_back(cur);
            L.lengths.push_back(int(T.orbits[cur].points.size()));
            visited[cur] = true;
            cur = next(cur);
        } while (cur >= 0 && cur != start && !visited[cur]);
        if (!closed && cur >= 0) throw std::logic_error("open orbit chain runs into a cycle");
        T.structure.lists.push_back(L);
    };
    for (int i = 0; i < 3; ++i) {
        if (!resolved[i]) continue;
        bool pred = false;
        for (int j = 0; j < 3; ++j) pred |= resolved[j] && tau[j] == i;
        if (!pred) push_list(i, false);
    }
    for (int i = 0; i < 3; ++i)
        if (resolved[i] && !visited[i]) push_list(i, true);
    return T;
}

PullbackInput pullback_input(const ParamPair& p, const TrackResult& t) {
    DerivedGeometry geo = derive_geometry(p);
    auto eps = geo.eps();
    auto sig = geo.sigma();
    PullbackInput in;
    for (int i = 0; i < 3; ++i) {
        const OrbitRecord& r = t.orbits[i];
        if (!r.singular()) continue;
        OrbitData o;
        o.index = i;
        o.tau = r.terminal.index;
        for (const SurfacePoint& P : r.points) {
            CenterInfo ci;
            ProjPoint b = P.base();
            for (int k = 0; k < 3; ++k)
                if (b == eps[k]) ci.omega = k;
            if (!ci.omega)
                for (int j = 0; j < 3; ++j)
                    if (sig[j].contains(b)) ci.xi = j;
            o.points.push_back(ci);
        }
        in.orbits.push_back(o);
    }
    in.openStarts = t.structure.openStarts();
    return in;
}

GrowthClass classify_growth(const ParamPair& p, TrackOptions opt) {
    DerivedGeometry geo = derive_geometry(p);
    GrowthClass g;
    if (!geo.nondegenerate()) {
        PullbackMatrix M;
        M.entries = {{2, 1}, {-1, -1}};
        M.basis = {"H", "E"};
        g = growth_from_matrix(M);
    } else {
        TrackResult T = track_exceptional_orbits(p, opt);
        g = growth_from_matrix(build_pullback_matrix(pullback_input(p, T)));
    }
    g.numerical = !p.alpha[0].exact();
    return g;
}

}  // namespace lfr
