#include "lfr/spectral.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace lfr {

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c.emplace_back(v);
    trim();
}

IntPoly IntPoly::x_pow(int n, long coeff) {
    std::vector<mpz_class> v(n + 1, 0);
    v[n] = coeff;
    return IntPoly(std::move(v));
}

void IntPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

IntPoly IntPoly::derivative() const {
    std::vector<mpz_class> v;
    for (size_t i = 1; i < c.size(); ++i) v.push_back(c[i] * long(i));
    return IntPoly(std::move(v));
}

mpz_class IntPoly::content() const {
    mpz_class g = 0;
    for (auto& a : c) g = gcd(g, a);
    return g;
}

IntPoly IntPoly::primitive() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    if (lc() < 0) g = -g;
    std::vector<mpz_class> v;
    for (auto& a : c) v.push_back(a / g);
    return IntPoly(std::move(v));
}

int IntPoly::sign_at(const mpq_class& x) const {
    if (is_zero()) return 0;
    // homogenized Horner: sum c_i n^i d^(deg-i), same sign as p(n/d) since d > 0
    const mpz_class& n = x.get_num();
    const mpz_class& d = x.get_den();
    mpz_class acc = c.back();
    mpz_class dpow = 1;
    for (int i = deg() - 1; i >= 0; --i) {
        dpow *= d;
        acc = acc * n + c[i] * dpow;
    }
    return sgn(acc);
}

double IntPoly::eval(double x) const {
    double acc = 0;
    for (int i = deg(); i >= 0; --i) acc = acc * x + c[i].get_d();
    return acc;
}

mpq_class IntPoly::eval(const mpq_class& x) const {
    mpq_class acc = 0;
    for (int i = deg(); i >= 0; --i) acc = acc * x + c[i];
    return acc;
}

int IntPoly::root_multiplicity(long r) const {
    IntPoly p = *this;
    IntPoly lin{-r, 1};
    int m = 0;
    while (!p.is_zero() && p.eval(mpq_class(r)) == 0) {
        p = exact_quotient(p, lin);
        ++m;
    }
    return m;
}

std::string IntPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = deg(); i >= 0; --i) {
        if (c[i] == 0) continue;
        mpz_class a = abs(c[i]);
        if (first) {
            if (c[i] < 0) os << "-";
        } else {
            os << (c[i] < 0 ? " - " : " + ");
        }
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) os << "x";
        if (i >= 2) os << "^" << i;
        first = false;
    }
    return os.str();
}

std::vector<std::string> IntPoly::coeff_strings() const {
    std::vector<std::string> out;
    for (auto& a : c) out.push_back(a.get_str());
    return out;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<mpz_class> v(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < a.c.size(); ++i) v[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) v[i] += b.c[i];
    return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly IntPoly::operator-() const {
    std::vector<mpz_class> v;
    for (auto& x : c) v.push_back(-x);
    return IntPoly(std::move(v));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<mpz_class> v(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != 0)
            for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
    return IntPoly(std::move(v));
}

IntPoly operator*(const IntPoly& a, const mpz_class& s) {
    std::vector<mpz_class> v;
    for (auto& x : a.c) v.push_back(x * s);
    return IntPoly(std::move(v));
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return {};
    if (a.deg() < b.deg()) throw std::logic_error("inexact polynomial quotient");
    std::vector<mpz_class> r = a.c, q(a.deg() - b.deg() + 1, 0);
    for (int k = a.deg() - b.deg(); k >= 0; --k) {
        mpz_class& top = r[k + b.deg()];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), b.lc().get_mpz_t())) throw std::logic_error("inexact polynomial quotient");
        mpz_class t = top / b.lc();
        q[k] = t;
        for (int j = 0; j <= b.deg(); ++j) r[k + j] -= t * b.c[j];
    }
    for (auto& x : r)
        if (x != 0) throw std::logic_error("inexact polynomial quotient");
    return IntPoly(std::move(q));
}

IntPoly pseudo_remainder_signed(const IntPoly& a, const IntPoly& b) {
    if (a.deg() < b.deg()) return a.primitive() * mpz_class(sgn(a.lc()));
    std::vector<mpz_class> r = a.c;
    int delta = a.deg() - b.deg();
    const mpz_class& l = b.lc();
    for (int k = delta; k >= 0; --k) {
        mpz_class top = r[k + b.deg()];
        for (auto& x : r) x *= l;
        for (int j = 0; j <= b.deg(); ++j) r[k + j] -= top * b.c[j];
    }
    r.resize(b.deg());
    IntPoly rem(std::move(r));
    // r = l^(delta+1) * (true remainder)
    bool flip = (l < 0) && ((delta + 1) % 2 == 1);
    if (rem.is_zero()) return rem;
    mpz_class g = rem.content();
    if (flip) g = -g;
    std::vector<mpz_class> v;
    for (auto& x : rem.c) v.push_back(x / g);
    return IntPoly(std::move(v));
}

IntPoly gcd_primitive(IntPoly a, IntPoly b) {
    a = a.primitive();
    b = b.primitive();
    while (!b.is_zero()) {
        IntPoly r = pseudo_remainder_signed(a, b);
        a = std::move(b);
        b = r.primitive();
    }
    return a.primitive();
}

IntPoly squarefree_part(const IntPoly& p) {
    if (p.deg() <= 0) return p.primitive();
    IntPoly g = gcd_primitive(p, p.derivative());
    return exact_quotient(p.primitive(), g).primitive();
}

// ---- orbit-list polynomial ----

IntPoly T_L(const OrbitListShape& L) {
    int N = std::accumulate(L.lengths.begin(), L.lengths.end(), 0);
    return L.closed ? IntPoly::x_pow(N) - IntPoly{1} : IntPoly::x_pow(N);
}

IntPoly S_L(const OrbitListShape& L) {
    const auto& n = L.lengths;
    int N = std::accumulate(n.begin(), n.end(), 0);
    switch (n.size()) {
        case 1: return IntPoly{1};
        case 2: return IntPoly::x_pow(n[0]) + IntPoly::x_pow(n[1]) + IntPoly{L.closed ? 2 : 1};
        case 3: {
            IntPoly s;
            if (L.closed) {
                for (int ni : n) s = s + IntPoly::x_pow(N - ni) + IntPoly::x_pow(ni);
                return s + IntPoly{3};
            }
            for (int ni : n) s = s + IntPoly::x_pow(N - ni);
            s = s + IntPoly::x_pow(n[0]) + IntPoly::x_pow(n[2]);
            return s + IntPoly{1};
        }
        default: throw UnsupportedListSize();
    }
}

IntPoly char_poly_from_lists(const OrbitListSpec& spec) {
    for (auto& L : spec.lists) {
        if (L.lengths.empty()) throw std::invalid_argument("empty orbit list");
        if (L.lengths.size() > 3) throw UnsupportedListSize();
        for (int n : L.lengths)
            if (n <= 0) throw std::invalid_argument("orbit lengths must be positive");
    }
    IntPoly prodT{1};
    for (auto& L : spec.lists) prodT = prodT * T_L(L);
    IntPoly sum;
    for (size_t i = 0; i < spec.lists.size(); ++i) {
        IntPoly term = S_L(spec.lists[i]);
        for (size_t j = 0; j < spec.lists.size(); ++j)
            if (j != i) term = term * T_L(spec.lists[j]);
        sum = sum + term;
    }
    return IntPoly{-2, 1} * prodT + IntPoly{-1, 1} * sum;
}

std::map<std::string, IntPoly> closed_form_checks(int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    IntPoly xn = IntPoly::x_pow(n);
    return {
        {"closed_1n", xn * IntPoly{-1, -1, 1} + IntPoly{0, 0, 1}},
        {"open_n1", xn * IntPoly{-1, -1, 1} + IntPoly{-1, 0, 1}},
        {"closed_11n", xn * IntPoly{-1, -1, 0, 1} + IntPoly{-1, 0, 1, 1}},
    };
}

// ---- pullback matrices ----

PullbackInput elementary_orbit_data(const OrbitListSpec& spec) {
    PullbackInput in;
    int next = 0;
    std::vector<std::vector<int>> idx;
    for (auto& L : spec.lists) {
        std::vector<int> ids;
        for (size_t j = 0; j < L.lengths.size(); ++j) ids.push_back(next++);
        idx.push_back(ids);
    }
    if (next > 3) throw std::invalid_argument("more than three singular orbits");
    std::vector<int> freeIdx;
    for (int k = next; k < 3; ++k) freeIdx.push_back(k);
    size_t freeUsed = 0;
    for (size_t l = 0; l < spec.lists.size(); ++l) {
        auto& L = spec.lists[l];
        auto& ids = idx[l];
        for (size_t j = 0; j < ids.size(); ++j) {
            OrbitData o;
            o.index = ids[j];
            if (j + 1 < ids.size()) {
                o.tau = ids[j + 1];
            } else if (L.closed) {
                o.tau = ids[0];
            } else {
                if (freeUsed >= freeIdx.size()) throw std::invalid_argument("open list has no free endpoint");
                o.tau = freeIdx[freeUsed++];
            }
            o.points.resize(L.lengths[j]);
            o.points.back().omega = o.tau;
            in.orbits.push_back(o);
        }
        if (!L.closed) in.openStarts.push_back(ids[0]);
    }
    return in;
}

PullbackMatrix build_pullback_matrix(const PullbackInput& in) {
    std::vector<OrbitData> orbits = in.orbits;
    std::sort(orbits.begin(), orbits.end(), [](auto& a, auto& b) { return a.index < b.index; });
    for (auto& o : orbits) {
        if (o.points.empty()) throw UnresolvedOrbits("orbit without points");
        if (o.tau < 0 || o.tau > 2) throw UnresolvedOrbits("orbit without an endpoint");
        if (o.points.back().omega != o.tau) throw UnresolvedOrbits("orbit does not end at its indeterminacy point");
    }
    size_t n = 1;
    std::vector<size_t> offset;
    for (auto& o : orbits) {
        offset.push_back(n);
        n += o.points.size();
    }
    auto pos = [&](size_t oi, size_t j) { return offset[oi] + (orbits[oi].points.size() - 1 - j); };

    PullbackMatrix M;
    M.entries.assign(n, std::vector<mpz_class>(n, 0));
    M.basis.assign(n, "");
    M.basis[0] = "H";
    for (size_t oi = 0; oi < orbits.size(); ++oi)
        for (size_t j = 0; j < orbits[oi].points.size(); ++j) {
            std::string lab = "F[" + std::to_string(orbits[oi].index) + "." + std::to_string(j) + "]";
            if (auto k = orbits[oi].points[j].omega) lab += "/E" + std::to_string(*k);
            M.basis[pos(oi, j)] = lab;
        }

    auto& E = M.entries;  // E[row][col]; column = image of a basis class under pullback
    auto subtract_omega = [&](size_t col) {
        for (size_t oi = 0; oi < orbits.size(); ++oi)
            for (size_t j = 0; j < orbits[oi].points.size(); ++j)
                if (orbits[oi].points[j].omega) E[pos(oi, j)][col] -= 1;
    };
    E[0][0] = 2;
    subtract_omega(0);
    for (size_t oi = 0; oi < orbits.size(); ++oi) {
        const OrbitData& o = orbits[oi];
        for (size_t j = 1; j < o.points.size(); ++j) E[pos(oi, j - 1)][pos(oi, j)] += 1;
        size_t col = pos(oi, 0);
        E[0][col] += 1;
        subtract_omega(col);
        bool inA = std::find(in.openStarts.begin(), in.openStarts.end(), o.index) != in.openStarts.end();
        for (size_t pj = 0; pj < orbits.size(); ++pj)
            for (size_t j = 0; j < orbits[pj].points.size(); ++j) {
                const CenterInfo& c = orbits[pj].points[j];
                if (!inA && c.omega == o.index) E[pos(pj, j)][col] += 1;
                if (c.xi == o.index) E[pos(pj, j)][col] -= 1;
            }
    }
    return M;
}

IntMatrix mat_identity(size_t n) {
    IntMatrix I(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
    IntMatrix r(n, std::vector<mpz_class>(m, 0));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

IntPoly char_poly_of_matrix(const IntMatrix& M) {
    size_t n = M.size();
    if (n == 0) return IntPoly{1};
    std::vector<std::vector<IntPoly>> A(n, std::vector<IntPoly>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) A[i][j] = (i == j ? IntPoly{0, 1} : IntPoly{}) - IntPoly::constant(M[i][j]);
    IntPoly prev{1};
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (A[k][k].is_zero()) {
            size_t r = k + 1;
            while (r < n && A[r][k].is_zero()) ++r;
            if (r == n) return {};
            std::swap(A[k], A[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                A[i][j] = exact_quotient(A[i][j] * A[k][k] - A[i][k] * A[k][j], prev);
            A[i][k] = IntPoly{};
        }
        prev = A[k][k];
    }
    return sign > 0 ? A[n - 1][n - 1] : -A[n - 1][n - 1];
}

long rank_of(const IntMatrix& M0) {
    IntMatrix A = M0;
    size_t n = A.size();
    if (n == 0) return 0;
    size_t m = A[0].size();
    mpz_class prev = 1;
    size_t r = 0;
    for (size_t col = 0; col < m && r < n; ++col) {
        size_t piv = r;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(A[r], A[piv]);
        for (size_t i = r + 1; i < n; ++i) {
            for (size_t j = col + 1; j < m; ++j) A[i][j] = (A[i][j] * A[r][col] - A[i][col] * A[r][j]) / prev;
            A[i][col] = 0;
        }
        prev = A[r][col];
        ++r;
    }
    return long(r);
}

// ---- roots ----

std::vector<IntPoly> sturm_sequence(const IntPoly& p) {
    std::vector<IntPoly> seq{p.primitive()};
    if (p.deg() < 1) return seq;
    seq.push_back(p.derivative().primitive());
    while (true) {
        IntPoly r = pseudo_remainder_signed(seq[seq.size() - 2], seq.back());
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    return seq;
}

namespace {

int variations(const std::vector<IntPoly>& seq, const mpq_class& x) {
    int v = 0, last = 0;
    for (auto& s : seq) {
        int sg = s.sign_at(x);
        if (sg == 0) continue;
        if (last != 0 && sg != last) ++v;
        last = sg;
    }
    return v;
}

}  // namespace

int sturm_count(const std::vector<IntPoly>& seq, const mpq_class& a, const mpq_class& b) {
    return variations(seq, a) - variations(seq, b);
}

RootInterval largest_real_root(const IntPoly& p, double precision) {
    if (p.deg() < 1) throw NoRealRoot();
    IntPoly s = squarefree_part(p);
    auto seq = sturm_sequence(s);
    mpz_class bound = 0;
    for (auto& a : s.c) bound = std::max(bound, mpz_class(abs(a)));
    mpz_class lcAbs = abs(s.lc());
    mpq_class B = mpq_class(bound, lcAbs) + 2;
    mpq_class lo = -B, hi = B;
    if (sturm_count(seq, lo, hi) == 0) throw NoRealRoot();
    mpq_class prec(precision);
    // split point near the middle that is not itself a root
    auto split = [&](const mpq_class& a, const mpq_class& b) {
        mpq_class w = b - a;
        for (int t = 0;; ++t) {
            mpq_class m = a + w * mpq_class(512 + 7 * t, 1024);
            m.canonicalize();
            if (s.sign_at(m) != 0) return m;
        }
    };
    while (true) {
        int cnt = sturm_count(seq, lo, hi);
        if (cnt == 1 && hi - lo <= prec) break;
        mpq_class mid = split(lo, hi);
        if (sturm_count(seq, mid, hi) >= 1) lo = mid;
        else hi = mid;
    }
    RootInterval r;
    r.lo = lo;
    r.hi = hi;
    r.value = mpq_class((lo + hi) / 2).get_d();
    r.sturmCount = sturm_count(seq, lo, hi);
    return r;
}

std::optional<int> periodicity_order(const IntPoly& p, int mMax) {
    if (p.is_zero()) return std::nullopt;
    if (p.deg() == 0) return 1;
    // r = x^m mod p over Q
    std::vector<mpq_class> P;
    for (auto& a : p.c) P.push_back(mpq_class(a));
    int d = p.deg();
    std::vector<mpq_class> r(d, 0);
    r[0] = 1;
    for (int m = 1; m <= mMax; ++m) {
        std::vector<mpq_class> nr(d + 1, 0);
        for (int i = 0; i < d; ++i) nr[i + 1] = r[i];
        mpq_class t = nr[d] / P[d];
        for (int i = 0; i <= d; ++i) nr[i] -= t * P[i];
        nr.resize(d);
        r = nr;
        bool one = r[0] == 1;
        for (int i = 1; i < d && one; ++i) one = r[i] == 0;
        if (one) return m;
    }
    return std::nullopt;
}

std::string GrowthClass::name() const {
    switch (kind) {
        case Exponential: return "exponential";
        case Periodic: return "periodic";
        case Polynomial: return degree == 2 ? "quadratic" : (degree == 1 ? "linear" : "polynomial");
    }
    return "?";
}

GrowthClass growth_from_matrix(const PullbackMatrix& PM, int mMax) {
    const IntMatrix& M = PM.entries;
    GrowthClass g;
    g.poly = char_poly_of_matrix(M);
    IntPoly s = squarefree_part(g.poly);
    // roots strictly above 1; a root at 1 itself is divided out first
    IntPoly s1 = s.sign_at(mpq_class(1)) == 0 ? exact_quotient(s, IntPoly{-1, 1}).primitive() : s;
    bool above = false;
    if (s1.deg() >= 1) {
        auto seq = sturm_sequence(s1);
        mpz_class bound = 0;
        for (auto& a : s1.c) bound = std::max(bound, mpz_class(abs(a)));
        mpq_class B = mpq_class(bound, abs(s1.lc())) + 2;
        above = sturm_count(seq, mpq_class(1), B) > 0;
    }
    if (above) {
        g.kind = GrowthClass::Exponential;
        g.root = largest_real_root(g.poly);
        return g;
    }
    auto m = periodicity_order(s, mMax);
    if (!m) throw UnclassifiedGrowth("spectral radius 1 but eigenvalues are not roots of unity of order <= mMax");
    size_t n = M.size();
    IntMatrix Mm = mat_identity(n);
    for (int i = 0; i < *m; ++i) Mm = mat_mul(Mm, M);
    IntMatrix N = Mm;
    for (size_t i = 0; i < n; ++i) N[i][i] -= 1;
    // index of nilpotency via ranks of N^j
    IntMatrix Nj = N;
    long r = rank_of(Nj);
    int d = 1;
    while (r > 0) {
        IntMatrix Nn = mat_mul(Nj, N);
        long rn = rank_of(Nn);
        if (rn == r) throw UnclassifiedGrowth("rank of (M^m - I)^j does not stabilize at zero");
        Nj = std::move(Nn);
        r = rn;
        ++d;
    }
    if (d == 1) {
        IntMatrix P = M;
        for (int k = 1; k <= *m; ++k) {
            if (P == mat_identity(n)) {
                g.kind = GrowthClass::Periodic;
                g.period = k;
                return g;
            }
            P = mat_mul(P, M);
        }
        throw UnclassifiedGrowth("finite order not confirmed");
    }
    g.kind = GrowthClass::Polynomial;
    g.degree = d - 1;
    return g;
}

IntPoly delta_n_poly(int n) {
    return IntPoly::x_pow(n + 1) * IntPoly{-1, -1, 0, 1} + IntPoly{-1, 0, 1, 1};
}

RootInterval delta_n(int n, double precision) {
    if (n < 7) throw std::invalid_argument("delta_n is defined for n >= 7");
    return largest_real_root(delta_n_poly(n), precision);
}

}  // namespace lfr
