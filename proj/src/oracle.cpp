#include "lfr/oracle.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace lfr {

HPoly::HPoly(int d, const FieldElem& zero) : d_(d), c_(size_t(d + 1) * (d + 2) / 2, zero) {}

HPoly HPoly::variable(int i, const FieldElem& like) {
    HPoly h(1, like.zero_like());
    if (i == 0) h.at(0, 0) = like.one_like();
    if (i == 1) h.at(1, 0) = like.one_like();
    if (i == 2) h.at(0, 1) = like.one_like();
    return h;
}

HPoly HPoly::linear(const Vec3& a) {
    HPoly h(1, a[0].zero_like());
    h.at(0, 0) = a[0];
    h.at(1, 0) = a[1];
    h.at(0, 1) = a[2];
    return h;
}

bool HPoly::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const FieldElem& x) { return x.is_zero(); });
}

FieldElem HPoly::eval(const Vec3& x) const {
    std::vector<std::array<FieldElem, 3>> pw(d_ + 1);
    pw[0] = {x[0].one_like(), x[0].one_like(), x[0].one_like()};
    for (int k = 1; k <= d_; ++k)
        for (int v = 0; v < 3; ++v) pw[k][v] = pw[k - 1][v] * x[v];
    FieldElem s = x[0].zero_like();
    for (int t = 0; t <= d_; ++t)
        for (int i2 = 0; i2 <= t; ++i2) {
            const FieldElem& c = at(t - i2, i2);
            if (!c.is_zero()) s += c * pw[d_ - t][0] * pw[t - i2][1] * pw[i2][2];
        }
    return s;
}

std::string HPoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (int t = d_; t >= 0; --t)
        for (int i2 = 0; i2 <= t; ++i2) {
            int i1 = t - i2, i0 = d_ - t;
            const FieldElem& c = at(i1, i2);
            if (c.is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")";
            int e[3] = {i0, i1, i2};
            for (int v = 0; v < 3; ++v) {
                if (e[v] == 0) continue;
                os << "*x" << v;
                if (e[v] > 1) os << "^" << e[v];
            }
        }
    return first ? "0" : os.str();
}

HPoly operator+(const HPoly& a, const HPoly& b) {
    if (a.d_ != b.d_) throw std::invalid_argument("adding homogeneous polynomials of different degree");
    HPoly r = a;
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
}

HPoly operator*(const HPoly& a, const HPoly& b) {
    HPoly r(a.d_ + b.d_, a.c_[0].zero_like());
    for (int s = 0; s <= a.d_; ++s)
        for (int a2 = 0; a2 <= s; ++a2) {
            const FieldElem& x = a.at(s - a2, a2);
            if (x.is_zero()) continue;
            for (int t = 0; t <= b.d_; ++t)
                for (int b2 = 0; b2 <= t; ++b2) {
                    const FieldElem& y = b.at(t - b2, b2);
                    if (y.is_zero()) continue;
                    r.at(s - a2 + t - b2, a2 + b2) += x * y;
                }
        }
    return r;
}

HPoly HPoly::scaled(const FieldElem& s) const {
    HPoly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

Vec3 HomogeneousMap::apply(const Vec3& x) const { return {comp[0].eval(x), comp[1].eval(x), comp[2].eval(x)}; }

bool HomogeneousMap::is_identity() const {
    if (degree() != 1) return false;
    const FieldElem& s = comp[0].at(0, 0);
    if (s.is_zero()) return false;
    HomogeneousMap id = identity(s);
    for (int j = 0; j < 3; ++j)
        for (int i1 = 0; i1 <= 1; ++i1)
            for (int i2 = 0; i1 + i2 <= 1; ++i2)
                if (!(comp[j].at(i1, i2) == id.comp[j].at(i1, i2) * s)) return false;
    return true;
}

HomogeneousMap HomogeneousMap::identity(const FieldElem& like) {
    return {{HPoly::variable(0, like), HPoly::variable(1, like), HPoly::variable(2, like)}};
}

HomogeneousMap HomogeneousMap::of_f(const ParamPair& p) {
    FieldElem o = p.alpha[0];
    HPoly x0 = HPoly::variable(0, o), x2 = HPoly::variable(2, o);
    HPoly bx = HPoly::linear(p.beta), ax = HPoly::linear(p.alpha);
    return {{x0 * bx, x2 * bx, x0 * ax}};
}

HomogeneousMap HomogeneousMap::of_f_inverse(const ParamPair& p) {
    const Vec3& a = p.alpha;
    const Vec3& b = p.beta;
    FieldElem z = a[0].zero_like();
    HPoly x0 = HPoly::variable(0, z), x1 = HPoly::variable(1, z);
    HPoly A = HPoly::linear({a[0], a[2], -b[0]});
    HPoly B = HPoly::linear({-a[1], z, b[1]});
    HPoly mid = x0 * A + (x1 * HPoly::variable(2, z)).scaled(-b[2]);
    return {{x0 * B, mid, x1 * B}};
}

HomogeneousMap HomogeneousMap::of_J(const FieldElem& like) {
    HPoly x0 = HPoly::variable(0, like), x1 = HPoly::variable(1, like), x2 = HPoly::variable(2, like);
    return {{x1 * x2, x0 * x2, x0 * x1}};
}

namespace {

// polynomials in x2 with coefficients in K[x1]
using BPoly = std::vector<UPoly>;

void btrim(BPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

BPoly dehom(const HPoly& h) {
    BPoly b(h.deg() + 1);
    FieldElem z = h.at(0, 0).zero_like();
    for (int i2 = 0; i2 <= h.deg(); ++i2) {
        std::vector<FieldElem> c;
        for (int i1 = 0; i1 + i2 <= h.deg(); ++i1) c.push_back(h.at(i1, i2));
        b[i2] = UPoly(c);
    }
    btrim(b);
    return b;
}

int total_degree(const BPoly& b) {
    int t = -1;
    for (size_t i2 = 0; i2 < b.size(); ++i2)
        if (!b[i2].is_zero()) t = std::max(t, b[i2].deg() + int(i2));
    return t;
}

HPoly rehom(const BPoly& b, int d, const FieldElem& zero) {
    HPoly h(d, zero);
    for (size_t i2 = 0; i2 < b.size(); ++i2)
        for (int i1 = 0; i1 <= b[i2].deg(); ++i1) {
            if (i1 + int(i2) > d) throw std::logic_error("rehomogenization degree too small");
            h.at(i1, int(i2)) = b[i2].c[i1];
        }
    return h;
}

UPoly bcontent(const BPoly& a) {
    UPoly g;
    for (auto& c : a) g = gcd(g, c);
    return g;
}

BPoly bprimitive(const BPoly& a) {
    UPoly c = bcontent(a);
    BPoly r;
    for (auto& x : a) r.push_back(exact_div(x, c));
    btrim(r);
    return r;
}

BPoly bprem(BPoly r, const BPoly& b) {
    int m = int(b.size()) - 1;
    const UPoly& lb = b.back();
    while (!r.empty() && int(r.size()) - 1 >= m) {
        UPoly lr = r.back();
        int s = int(r.size()) - 1 - m;
        for (auto& x : r) x = x * lb;
        for (int i = 0; i <= m; ++i) r[s + i] = r[s + i] - lr * b[i];
        btrim(r);
    }
    return r;
}

BPoly bgcd(BPoly a, BPoly b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    UPoly c = gcd(bcontent(a), bcontent(b));
    a = bprimitive(a);
    b = bprimitive(b);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        BPoly r = bprem(a, b);
        a = std::move(b);
        b = r.empty() ? r : bprimitive(r);
    }
    for (auto& x : a) x = x * c;
    return a;
}

BPoly bdiv(BPoly r, const BPoly& g) {
    int m = int(g.size()) - 1;
    BPoly q(std::max<int>(0, int(r.size()) - m), UPoly());
    while (!r.empty()) {
        int s = int(r.size()) - 1 - m;
        if (s < 0) throw std::logic_error("inexact bivariate division");
        UPoly c = exact_div(r.back(), g.back());
        q[s] = c;
        for (int i = 0; i <= m; ++i) r[s + i] = r[s + i] - c * g[i];
        btrim(r);
    }
    btrim(q);
    return q;
}

HomogeneousMap reduce(const HomogeneousMap& m) {
    FieldElem zero = m.comp[0].at(0, 0).zero_like();
    std::array<BPoly, 3> B;
    int maxtot = -1;
    BPoly G;
    for (int j = 0; j < 3; ++j) {
        B[j] = dehom(m.comp[j]);
        maxtot = std::max(maxtot, total_degree(B[j]));
        G = bgcd(G, B[j]);
    }
    if (maxtot < 0) throw std::logic_error("map with all components zero");
    int D = maxtot - total_degree(G);
    HomogeneousMap r;
    for (int j = 0; j < 3; ++j) r.comp[j] = rehom(B[j].empty() ? B[j] : bdiv(B[j], G), D, zero);
    for (int j = 0; j < 3; ++j)
        for (int t = D; t >= 0; --t)
            for (int i2 = 0; i2 <= t; ++i2) {
                const FieldElem& c = r.comp[j].at(t - i2, i2);
                if (c.is_zero()) continue;
                FieldElem s = c.one_like() / c;
                for (auto& q : r.comp) q = q.scaled(s);
                return r;
            }
    return r;
}

}  // namespace

HPoly substitute(const HPoly& g, const HomogeneousMap& f) {
    FieldElem zero = f.comp[0].at(0, 0).zero_like();
    int m = g.deg();
    std::array<std::vector<HPoly>, 3> pw;
    for (int v = 0; v < 3; ++v) {
        HPoly one(0, zero);
        one.at(0, 0) = zero.one_like();
        pw[v].push_back(one);
        for (int k = 1; k <= m; ++k) pw[v].push_back(pw[v].back() * f.comp[v]);
    }
    HPoly acc(m * f.degree(), zero);
    for (int t = 0; t <= m; ++t)
        for (int i2 = 0; i2 <= t; ++i2) {
            const FieldElem& c = g.at(t - i2, i2);
            if (c.is_zero()) continue;
            acc = acc + (pw[0][m - t] * pw[1][t - i2] * pw[2][i2]).scaled(c);
        }
    return acc;
}

HomogeneousMap compose_reduce(const HomogeneousMap& g, const HomogeneousMap& f) {
    HomogeneousMap r;
    for (int j = 0; j < 3; ++j) r.comp[j] = substitute(g.comp[j], f);
    return reduce(r);
}

bool same_map(const HomogeneousMap& a, const HomogeneousMap& b) {
    if (a.degree() != b.degree()) return false;
    // find a scale from the first nonzero coefficient of a
    int d = a.degree();
    std::optional<FieldElem> s;
    for (int j = 0; j < 3; ++j)
        for (int t = 0; t <= d; ++t)
            for (int i2 = 0; i2 <= t; ++i2) {
                const FieldElem& x = a.comp[j].at(t - i2, i2);
                const FieldElem& y = b.comp[j].at(t - i2, i2);
                if (x.is_zero() != y.is_zero()) return false;
                if (x.is_zero()) continue;
                if (!s) s = y / x;
                else if (!(x * *s == y)) return false;
            }
    return true;
}

namespace {

// arithmetic modulo a prime p = 1 mod 4 just above 2^61
struct ModP {
    uint64_t p;
    mpz_class pz;
    uint64_t root_i;  // square root of -1

    ModP() {
        mpz_class c = mpz_class(1) << 61;
        for (;;) {
            mpz_nextprime(c.get_mpz_t(), c.get_mpz_t());
            if (mpz_class(c % 4) == 1) break;
        }
        p = c.get_ui();
        pz = c;
        for (uint64_t g = 2;; ++g) {
            uint64_t r = pow(g, (p - 1) / 4);
            if (mul(r, r) == p - 1) {
                root_i = r;
                break;
            }
        }
    }
    uint64_t mul(uint64_t a, uint64_t b) const { return uint64_t((unsigned __int128)a * b % p); }
    uint64_t add(uint64_t a, uint64_t b) const { return a + b >= p ? a + b - p : a + b; }
    uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
    uint64_t pow(uint64_t a, uint64_t e) const {
        uint64_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint64_t inv(uint64_t a) const { return pow(a, p - 2); }
    uint64_t of_mpz(const mpz_class& z) const {
        mpz_class m = z % pz;
        if (m < 0) m += pz;
        return m.get_ui();
    }
    uint64_t of_rational(const Rational& q) const {
        uint64_t d = of_mpz(q.value().get_den());
        if (d == 0) throw std::runtime_error("denominator vanishes modulo the oracle prime");
        return mul(of_mpz(q.value().get_num()), inv(d));
    }
    uint64_t of(const FieldElem& e) const {
        if (e.kind() == Kind::Rational) return of_rational(e.rational());
        if (e.kind() == Kind::Gaussian)
            return add(of_rational(e.gaussian().re), mul(root_i, of_rational(e.gaussian().im)));
        throw std::invalid_argument("degree oracle needs exact parameters");
    }
};

const ModP& modp() {
    static const ModP m;
    return m;
}

using MPoly = std::vector<uint64_t>;

void mtrim(MPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

MPoly mmul(const MPoly& a, const MPoly& b) {
    const ModP& F = modp();
    if (a.empty() || b.empty()) return {};
    MPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    mtrim(r);
    return r;
}

MPoly mlin(const std::array<uint64_t, 3>& c, const std::array<MPoly, 3>& g) {
    const ModP& F = modp();
    size_t n = std::max({g[0].size(), g[1].size(), g[2].size()});
    MPoly r(n, 0);
    for (int v = 0; v < 3; ++v)
        for (size_t i = 0; i < g[v].size(); ++i) r[i] = F.add(r[i], F.mul(c[v], g[v][i]));
    mtrim(r);
    return r;
}

// remainder and quotient of a by b
MPoly mdivmod(MPoly a, const MPoly& b, MPoly* q) {
    const ModP& F = modp();
    uint64_t il = F.inv(b.back());
    if (q) q->assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (a.size() >= b.size() && !a.empty()) {
        uint64_t c = F.mul(a.back(), il);
        size_t s = a.size() - b.size();
        if (q) (*q)[s] = c;
        for (size_t i = 0; i < b.size(); ++i) a[s + i] = F.sub(a[s + i], F.mul(c, b[i]));
        mtrim(a);
    }
    return a;
}

MPoly mgcd(MPoly a, MPoly b) {
    while (!b.empty()) {
        MPoly r = mdivmod(a, b, nullptr);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

DegreeSequence slice_degrees(const ParamPair& p, int K, int budget, uint64_t seed) {
    const ModP& F = modp();
    std::array<uint64_t, 3> al, be;
    for (int i = 0; i < 3; ++i) {
        al[i] = F.of(p.alpha[i]);
        be[i] = F.of(p.beta[i]);
    }
    std::mt19937_64 rng(seed);
    std::array<MPoly, 3> g;
    for (auto& c : g) {
        c = {rng() % F.p, rng() % F.p};
        mtrim(c);
    }
    DegreeSequence out;
    for (int k = 1; k <= K; ++k) {
        MPoly bx = mlin(be, g), ax = mlin(al, g);
        std::array<MPoly, 3> h{mmul(g[0], bx), mmul(g[2], bx), mmul(g[0], ax)};
        MPoly c;
        for (auto& x : h) c = mgcd(c, x);
        int d = 0;
        for (auto& x : h) {
            if (!x.empty()) {
                MPoly q;
                mdivmod(x, c, &q);
                mtrim(q);
                x = q;
            }
            d = std::max(d, int(x.size()) - 1);
        }
        g = h;
        if (d > budget) throw DegreeBudgetExceeded(k, d);
        out.push_back(d);
    }
    return out;
}

}  // namespace

DegreeSequence degree_sequence(const ParamPair& p, int K, int budget) {
    p.require_admissible();
    DegreeSequence a = slice_degrees(p, K, budget, 1);
    DegreeSequence b = slice_degrees(p, K, budget, 2);
    for (int k = 0; k < K; ++k) a[k] = std::max(a[k], b[k]);
    return a;
}

DegreeSequence degree_sequence_symbolic(const ParamPair& p, int K, int budget) {
    p.require_admissible();
    if (!p.alpha[0].exact()) throw std::invalid_argument("degree oracle needs exact parameters");
    HomogeneousMap f = HomogeneousMap::of_f(p);
    HomogeneousMap F = f;
    DegreeSequence out;
    for (int k = 1; k <= K; ++k) {
        if (F.degree() > budget) throw DegreeBudgetExceeded(k, F.degree());
        out.push_back(F.degree());
        if (k < K) F = compose_reduce(f, F);
    }
    return out;
}

namespace {

bool on_special_line(const DerivedGeometry& g, const ProjPoint& x) {
    for (const ProjLine* L : {&g.sigma0, &g.sigmaBeta, &g.sigmaGamma, &g.sigmaB, &g.sigmaC})
        if (L->contains(x)) return true;
    return false;
}

}  // namespace

std::optional<int> identity_order(const ParamPair& p, int kappaMax, IdentityOptions opt) {
    DerivedGeometry geo = derive_geometry(p);
    const FieldElem& like = p.alpha[0];
    std::mt19937 rng(opt.seed);
    std::uniform_int_distribution<int> small(-1000, 1000);
    std::uniform_real_distribution<double> unit(-2.0, 2.0);

    // orbits[s][k] = f^k(x_s)
    std::vector<std::vector<ProjPoint>> orbits;
    int attempts = 0;
    while (int(orbits.size()) < opt.samples) {
        if (++attempts > 50 * opt.samples) throw std::runtime_error("could not draw generic sample points");
        Vec3 v;
        if (like.exact()) v = {like.like(1), like.like(small(rng)), like.like(small(rng))};
        else
            v = {like.one_like(), FieldElem::approx({unit(rng), unit(rng)}, like.tol()),
                 FieldElem::approx({unit(rng), unit(rng)}, like.tol())};
        ProjPoint x(v);
        if (on_special_line(geo, x)) continue;
        std::vector<ProjPoint> orb{x};
        try {
            for (int k = 1; k <= kappaMax; ++k) orb.push_back(eval_f(p, orb.back()));
        } catch (const Indeterminate&) {
            continue;
        }
        orbits.push_back(std::move(orb));
    }

    bool symbolic = like.exact() && opt.confirmSymbolic;
    for (int k = 1; k <= kappaMax; ++k) {
        bool all = std::all_of(orbits.begin(), orbits.end(), [&](auto& o) { return o[k] == o[0]; });
        if (!all) continue;
        if (symbolic) {
            // only compose once the samples say so
            HomogeneousMap f = HomogeneousMap::of_f(p), F = f;
            for (int j = 1; j < k; ++j) F = compose_reduce(f, F);
            if (!F.is_identity()) continue;
        }
        return k;
    }
    return std::nullopt;
}

GrowthFit growth_fit(const DegreeSequence& d) {
    int n = int(d.size());
    if (n < 6) throw TooShort();
    for (int P = 1; P <= n / 2; ++P) {
        int start = std::min(n / 3, n - P - 2);
        bool per = true;
        for (int k = start; k + P < n && per; ++k) per = d[k] == d[k + P];
        if (per) return Bounded{P};
    }
    int w = std::max(5, n / 2);
    std::vector<double> ks, ys;
    for (int k = n - w + 1; k <= n; ++k) {
        ks.push_back(k);
        ys.push_back(d[k - 1]);
    }
    double mean = std::accumulate(ys.begin(), ys.end(), 0.0) / w;

    // quadratic least squares via normal equations
    double S[5] = {0, 0, 0, 0, 0}, T[3] = {0, 0, 0};
    for (int i = 0; i < w; ++i) {
        double pk = 1;
        for (int e = 0; e < 5; ++e) {
            S[e] += pk;
            if (e < 3) T[e] += pk * ys[i];
            pk *= ks[i];
        }
    }
    double A[3][4] = {{S[0], S[1], S[2], T[0]}, {S[1], S[2], S[3], T[1]}, {S[2], S[3], S[4], T[2]}};
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == c) continue;
            double m = A[r][c] / A[c][c];
            for (int j = c; j < 4; ++j) A[r][j] -= m * A[c][j];
        }
    }
    std::array<double, 3> q{A[0][3] / A[0][0], A[1][3] / A[1][1], A[2][3] / A[2][2]};
    double rq = 0;
    for (int i = 0; i < w; ++i) {
        double r = q[0] + q[1] * ks[i] + q[2] * ks[i] * ks[i] - ys[i];
        rq += r * r;
    }
    rq = std::sqrt(rq / w) / mean;

    // log-linear fit
    double sk = 0, sl = 0, skk = 0, skl = 0;
    for (int i = 0; i < w; ++i) {
        double l = std::log(ys[i]);
        sk += ks[i];
        sl += l;
        skk += ks[i] * ks[i];
        skl += ks[i] * l;
    }
    double slope = (w * skl - sk * sl) / (w * skk - sk * sk);
    double icpt = (sl - slope * sk) / w;
    double re = 0;
    for (int i = 0; i < w; ++i) {
        double r = icpt + slope * ks[i] - std::log(ys[i]);
        re += r * r;
    }
    re = std::sqrt(re / w);

    if (re < rq) return ExponentialEstimate{double(d[n - 1]) / double(d[n - 2])};
    QuadraticFit fit{rq, q, {}};
    for (int k = n - w; k + 3 < n; ++k) fit.thirdDifferences.push_back(long(d[k + 3]) - 3L * d[k + 2] + 3L * d[k + 1] - d[k]);
    return fit;
}

std::string growth_fit_name(const GrowthFit& g) {
    if (std::holds_alternative<ExponentialEstimate>(g)) return "exponential";
    if (std::holds_alternative<QuadraticFit>(g)) return "quadratic";
    return "bounded";
}

}  // namespace lfr
