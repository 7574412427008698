#pragma once

#include <utility>
#include <vector>

#include "rzeta/rational.hpp"

namespace rzeta {

/// Univariate polynomial over Q, coefficients in ascending degree with
/// trailing zeros stripped. The zero polynomial stores no coefficients.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<QQ> coeffs);

    static Polynomial constant(const QQ& c);
    static Polynomial monomial(const QQ& c, int degree);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; } // -1 for zero
    QQ coeff(int i) const;
    const std::vector<QQ>& coeffs() const { return c_; }
    const QQ& leading() const;

    QQ evaluate(const QQ& x) const;
    Polynomial monic() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const QQ& s, const Polynomial& a);

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

private:
    std::vector<QQ> c_;
    void strip();
};

/// Quotient and remainder; divisor must be nonzero.
std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b);

/// Monic gcd by the Euclidean algorithm over Q. gcd(0,0) = 0.
Polynomial poly_gcd(Polynomial a, Polynomial b);

} // namespace rzeta
