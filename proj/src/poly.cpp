#include "lfr/poly.hpp"

#include <stdexcept>

namespace lfr {

UPoly UPoly::monomial(const FieldElem& a, int k) {
    std::vector<FieldElem> v(k + 1, a.zero_like());
    v[k] = a;
    return UPoly(std::move(v));
}

int UPoly::order() const {
    for (size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) return int(i);
    return -1;
}

void UPoly::trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

UPoly UPoly::shift_down(int k) const {
    if (k <= 0) return *this;
    if (k >= int(c.size())) return {};
    return UPoly(std::vector<FieldElem>(c.begin() + k, c.end()));
}

UPoly UPoly::truncate(int n) const {
    if (n >= int(c.size())) return *this;
    return UPoly(std::vector<FieldElem>(c.begin(), c.begin() + std::max(n, 0)));
}

UPoly UPoly::scaled(const FieldElem& a) const {
    std::vector<FieldElem> v;
    v.reserve(c.size());
    for (auto& x : c) v.push_back(x * a);
    return UPoly(std::move(v));
}

FieldElem UPoly::eval(const FieldElem& x, const FieldElem& zero) const {
    FieldElem acc = zero;
    for (int i = deg(); i >= 0; --i) acc = acc * x + c[i];
    return acc;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
    if (a.c.size() < b.c.size()) return b + a;
    std::vector<FieldElem> v = a.c;
    for (size_t i = 0; i < b.c.size(); ++i) v[i] += b.c[i];
    return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<FieldElem> v = a.c;
    if (v.size() < b.c.size()) {
        FieldElem z = b.c[0].zero_like();
        v.resize(b.c.size(), z);
    }
    for (size_t i = 0; i < b.c.size(); ++i) v[i] -= b.c[i];
    return UPoly(std::move(v));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<FieldElem> v(a.c.size() + b.c.size() - 1, a.c[0].zero_like());
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        for (size_t j = 0; j < b.c.size(); ++j) v[i + j] += a.c[i] * b.c[j];
    }
    return UPoly(std::move(v));
}

bool operator==(const UPoly& a, const UPoly& b) {
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); ++i)
        if (a.c[i] != b.c[i]) return false;
    return true;
}

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
    if (b.is_zero()) throw DivisionByZero();
    r = a;
    if (a.deg() < b.deg()) {
        q = {};
        return;
    }
    std::vector<FieldElem> qc(a.deg() - b.deg() + 1, b.c[0].zero_like());
    FieldElem inv = b.lc().one_like() / b.lc();
    std::vector<FieldElem> rc = a.c;
    for (int k = a.deg() - b.deg(); k >= 0; --k) {
        FieldElem t = rc[k + b.deg()] * inv;
        qc[k] = t;
        if (t.is_zero()) continue;
        for (int j = 0; j <= b.deg(); ++j) rc[k + j] -= t * b.c[j];
    }
    rc.resize(b.deg());
    q = UPoly(std::move(qc));
    r = UPoly(std::move(rc));
}

UPoly operator%(const UPoly& a, const UPoly& b) {
    UPoly q, r;
    divmod(a, b, q, r);
    return r;
}

UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

UPoly exact_div(const UPoly& a, const UPoly& b) {
    UPoly q, r;
    divmod(a, b, q, r);
    if (!r.is_zero()) throw std::logic_error("inexact polynomial division");
    return q;
}

}  // namespace lfr
