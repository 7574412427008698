#include "rzeta/rational_function.hpp"

namespace rzeta {

RationalFunction::RationalFunction() : num_(), den_(Polynomial::constant(QQ(1))) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
    if (den.is_zero()) throw ZeroDenominator("zero denominator");
    if (num.is_zero()) {
        num_ = Polynomial();
        den_ = Polynomial::constant(QQ(1));
        return;
    }
    Polynomial g = poly_gcd(num, den);
    if (g.degree() > 0) {
        num = poly_divmod(num, g).first;
        den = poly_divmod(den, g).first;
    }
    QQ at0 = den.evaluate(QQ(0));
    QQ scale = (at0 != 0) ? QQ(1) / at0 : QQ(1) / den.leading();
    num_ = scale * num;
    den_ = scale * den;
}

RationalFunction RationalFunction::constant(const QQ& c) {
    return RationalFunction(Polynomial::constant(c), Polynomial::constant(QQ(1)));
}

QQ RationalFunction::evaluate(const QQ& x) const {
    QQ d = den_.evaluate(x);
    if (d == 0) throw PoleAtPoint("pole at evaluation point");
    return num_.evaluate(x) / d;
}

std::vector<QQ> RationalFunction::series(int terms) const {
    if (terms < 0) throw Error("negative series length");
    QQ d0 = den_.evaluate(QQ(0));
    if (d0 == 0) throw ExpansionAtPole("denominator vanishes at 0");
    std::vector<QQ> c(static_cast<std::size_t>(terms) + 1, QQ(0));
    for (int t = 0; t <= terms; ++t) {
        QQ acc = num_.coeff(t);
        for (int u = 1; u <= std::min(t, den_.degree()); ++u)
            acc -= den_.coeff(u) * c[static_cast<std::size_t>(t - u)];
        c[static_cast<std::size_t>(t)] = acc / d0;
    }
    return c;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator*(const QQ& s, const RationalFunction& a) {
    return RationalFunction(s * a.num_, a.den_);
}

std::optional<RationalFunction> pade_fit(const std::vector<QQ>& coeffs,
                                         int deg_num, int deg_den) {
    if (deg_num < 0 || deg_den < 0) throw Error("negative degree bound");
    int top = static_cast<int>(coeffs.size()) - 1;
    if (top < deg_num + deg_den)
        throw Error("need at least deg_num + deg_den + 1 coefficients");

    auto c = [&](int k) -> QQ { return (k >= 0 && k <= top) ? coeffs[static_cast<std::size_t>(k)] : QQ(0); };

    // Unknowns q_1..q_dd with q_0 = 1; one equation per series index past deg_num.
    int rows = top - deg_num;
    int cols = deg_den;
    std::vector<std::vector<QQ>> m(static_cast<std::size_t>(rows),
                                   std::vector<QQ>(static_cast<std::size_t>(cols) + 1, QQ(0)));
    for (int r = 0; r < rows; ++r) {
        int t = deg_num + 1 + r;
        for (int u = 1; u <= deg_den; ++u)
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(u - 1)] = c(t - u);
        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols)] = -c(t);
    }

    // Exact Gauss-Jordan; free variables stay zero.
    std::vector<int> pivot_of_col(static_cast<std::size_t>(cols), -1);
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pr = -1;
        for (int r = rank; r < rows; ++r)
            if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] != 0) { pr = r; break; }
        if (pr < 0) continue;
        std::swap(m[static_cast<std::size_t>(pr)], m[static_cast<std::size_t>(rank)]);
        QQ inv = QQ(1) / m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
        for (int k = col; k <= cols; ++k)
            m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(k)] *= inv;
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            QQ f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
            if (f == 0) continue;
            for (int k = col; k <= cols; ++k)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -=
                    f * m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(k)];
        }
        pivot_of_col[static_cast<std::size_t>(col)] = rank;
        ++rank;
    }
    for (int r = rank; r < rows; ++r)
        if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols)] != 0)
            return std::nullopt; // inconsistent

    std::vector<QQ> q(static_cast<std::size_t>(deg_den) + 1, QQ(0));
    q[0] = 1;
    for (int col = 0; col < cols; ++col) {
        int pr = pivot_of_col[static_cast<std::size_t>(col)];
        if (pr >= 0) q[static_cast<std::size_t>(col) + 1] = m[static_cast<std::size_t>(pr)][static_cast<std::size_t>(cols)];
    }

    std::vector<QQ> p(static_cast<std::size_t>(deg_num) + 1, QQ(0));
    for (int t = 0; t <= deg_num; ++t) {
        QQ acc(0);
        for (int u = 0; u <= std::min(t, deg_den); ++u)
            acc += q[static_cast<std::size_t>(u)] * c(t - u);
        p[static_cast<std::size_t>(t)] = acc;
    }

    RationalFunction fit{Polynomial(std::move(p)), Polynomial(std::move(q))};
    if (fit.series(top) != coeffs) return std::nullopt;
    return fit;
}

} // namespace rzeta
