#include "rzeta/polynomial.hpp"

namespace rzeta {

Polynomial::Polynomial(std::vector<QQ> coeffs) : c_(std::move(coeffs)) {
    for (auto& c : c_) c.canonicalize(); // two-arg mpq_class construction skips this
    strip();
}

void Polynomial::strip() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::constant(const QQ& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const QQ& c, int degree) {
    if (c == 0) return Polynomial();
    std::vector<QQ> v(static_cast<std::size_t>(degree) + 1, QQ(0));
    v.back() = c;
    return Polynomial(std::move(v));
}

QQ Polynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return QQ(0);
    return c_[static_cast<std::size_t>(i)];
}

const QQ& Polynomial::leading() const {
    if (c_.empty()) throw Error("leading coefficient of zero polynomial");
    return c_.back();
}

QQ Polynomial::evaluate(const QQ& x) const {
    QQ acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    QQ inv = QQ(1) / leading();
    return inv * *this;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<QQ> v(std::max(a.c_.size(), b.c_.size()), QQ(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + (QQ(-1) * b);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<QQ> v(a.c_.size() + b.c_.size() - 1, QQ(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            v[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(v));
}

Polynomial operator*(const QQ& s, const Polynomial& a) {
    std::vector<QQ> v = a.c_;
    for (auto& c : v) c *= s;
    return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    std::vector<QQ> rem = a.coeffs();
    int db = b.degree();
    if (a.degree() < db) return {Polynomial(), a};
    std::vector<QQ> quo(static_cast<std::size_t>(a.degree() - db) + 1, QQ(0));
    QQ lead_inv = QQ(1) / b.leading();
    for (int i = a.degree(); i >= db; --i) {
        QQ c = rem[static_cast<std::size_t>(i)] * lead_inv;
        if (c == 0) continue;
        quo[static_cast<std::size_t>(i - db)] = c;
        for (int j = 0; j <= db; ++j)
            rem[static_cast<std::size_t>(i - db + j)] -= c * b.coeff(j);
    }
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

Polynomial poly_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

} // namespace rzeta
