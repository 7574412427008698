#pragma once

#include <optional>

#include "rzeta/polynomial.hpp"

namespace rzeta {

/// Reduced ratio of polynomials over Q in canonical form:
///   - gcd(numerator, denominator) = 1,
///   - denominator(0) = 1 when the function has no pole at 0,
///     otherwise the denominator is monic.
/// Equal functions have identical representations.
class RationalFunction {
public:
    RationalFunction(); // zero: 0/1
    RationalFunction(Polynomial num, Polynomial den); // normalizes; ZeroDenominator

    static RationalFunction constant(const QQ& c);

    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    /// Exact value at x; throws PoleAtPoint when the reduced denominator vanishes.
    QQ evaluate(const QQ& x) const;

    /// Taylor coefficients c_0..c_T at X = 0; throws ExpansionAtPole if denominator(0) = 0.
    std::vector<QQ> series(int terms) const;

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const QQ& s, const RationalFunction& a);

    bool operator==(const RationalFunction& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

private:
    Polynomial num_, den_;
};

/// Rational function with degrees <= (deg_num, deg_den) and denominator(0) = 1
/// whose expansion reproduces coeffs exactly, when one exists. The linear
/// system is solved by exact Gaussian elimination with echelon free variables
/// set to zero, and every candidate is re-expanded before being returned.
/// Requires coeffs.size() >= deg_num + deg_den + 1.
std::optional<RationalFunction> pade_fit(const std::vector<QQ>& coeffs,
                                         int deg_num, int deg_den);

} // namespace rzeta
