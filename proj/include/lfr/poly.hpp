#pragma once
// Dense univariate polynomials over FieldElem, low degree first.

#include "lfr/scalar.hpp"

#include <vector>

namespace lfr {

class UPoly {
public:
    std::vector<FieldElem> c;

    UPoly() = default;
    explicit UPoly(std::vector<FieldElem> coeffs) : c(std::move(coeffs)) { trim(); }
    static UPoly constant(const FieldElem& a) { return UPoly(std::vector<FieldElem>{a}); }
    // a*t^k
    static UPoly monomial(const FieldElem& a, int k);

    int deg() const { return int(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const FieldElem& lc() const { return c.back(); }
    // coefficient or the supplied zero
    FieldElem at(int i, const FieldElem& zero) const { return i >= 0 && i < int(c.size()) ? c[i] : zero; }
    // index of the lowest nonzero coefficient, -1 for the zero polynomial
    int order() const;

    void trim();
    UPoly shift_down(int k) const;
    UPoly truncate(int n) const;
    UPoly scaled(const FieldElem& a) const;
    UPoly monic() const { return is_zero() ? *this : scaled(lc().one_like() / lc()); }
    FieldElem eval(const FieldElem& x, const FieldElem& zero) const;

    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    UPoly operator-() const { return scaled(c.empty() ? FieldElem() : -c[0].one_like()); }
    friend bool operator==(const UPoly& a, const UPoly& b);
};

// a = q*b + r, deg r < deg b. b nonzero.
void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly operator%(const UPoly& a, const UPoly& b);
// monic gcd (zero if both zero)
UPoly gcd(UPoly a, UPoly b);
// exact quotient; throws std::logic_error when the remainder is nonzero
UPoly exact_div(const UPoly& a, const UPoly& b);

}  // namespace lfr
