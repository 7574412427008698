#include "rzeta/padic.hpp"

namespace rzeta {

namespace {

ZZ mod_reduce(const ZZ& x, const ZZ& m) {
    ZZ r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

} // namespace

PAdicApprox::PAdicApprox(long prime, long precision, ZZ residue)
    : prime_(prime), precision_(precision) {
    if (!is_prime(prime)) throw InvalidPrime("not a prime: " + std::to_string(prime));
    if (precision < 1) throw Error("precision must be >= 1");
    modulus_ = pow_zz(prime, static_cast<unsigned long>(precision));
    residue_ = mod_reduce(residue, modulus_);
}

PAdicApprox PAdicApprox::from_rational(const ZZ& num, const ZZ& den, long prime, long precision) {
    if (!is_prime(prime)) throw InvalidPrime("not a prime: " + std::to_string(prime));
    if (den == 0) throw Error("zero denominator");
    if (num == 0) return PAdicApprox(prime, precision, 0);

    ZZ p(prime);
    ZZ n = num, d = den;
    long vn = static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
    long vd = static_cast<long>(mpz_remove(d.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t()));
    if (vd > vn)
        throw NotAPAdicInteger("denominator valuation exceeds numerator valuation");

    PAdicApprox out(prime, precision, 0);
    ZZ inv;
    if (mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), out.modulus_.get_mpz_t()) == 0)
        throw Error("unit inversion failed"); // unreachable: d is prime to p
    ZZ r = n * inv * pow_zz(prime, static_cast<unsigned long>(vn - vd));
    out.residue_ = mod_reduce(r, out.modulus_);
    return out;
}

PAdicApprox PAdicApprox::from_rational(const QQ& value, long prime, long precision) {
    return from_rational(ZZ(value.get_num()), ZZ(value.get_den()), prime, precision);
}

namespace {

std::pair<long, ZZ> common_frame(const PAdicApprox& a, const PAdicApprox& b) {
    if (a.prime() != b.prime())
        throw PrimeMismatch("operands live over different primes");
    long n = std::min(a.precision(), b.precision());
    return {n, pow_zz(a.prime(), static_cast<unsigned long>(n))};
}

} // namespace

PAdicApprox operator+(const PAdicApprox& a, const PAdicApprox& b) {
    auto [n, m] = common_frame(a, b);
    return PAdicApprox(a.prime(), n, mod_reduce(a.residue() + b.residue(), m));
}

PAdicApprox operator-(const PAdicApprox& a, const PAdicApprox& b) {
    auto [n, m] = common_frame(a, b);
    return PAdicApprox(a.prime(), n, mod_reduce(a.residue() - b.residue(), m));
}

PAdicApprox operator*(const PAdicApprox& a, const PAdicApprox& b) {
    auto [n, m] = common_frame(a, b);
    return PAdicApprox(a.prime(), n, mod_reduce(a.residue() * b.residue(), m));
}

PadicValuation padic_valuation(const PAdicApprox& a) {
    if (a.residue() == 0) return {a.precision(), true};
    ZZ reduced;
    long v = static_cast<long>(mpz_remove(reduced.get_mpz_t(), a.residue().get_mpz_t(),
                                          ZZ(a.prime()).get_mpz_t()));
    return {v, false};
}

SeriesSum padic_sum_series(const std::function<std::optional<SeriesTerm>()>& next,
                           long prime, long target_precision, long budget) {
    PAdicApprox acc(prime, target_precision, 0);
    long used = 0;
    while (true) {
        std::optional<SeriesTerm> t = next();
        if (!t) return {acc, true, used};
        if (t->value.prime() != prime)
            throw PrimeMismatch("series term over a different prime");
        if (t->value.precision() < target_precision)
            throw Error("series term precision below target");
        PadicValuation v = padic_valuation(t->value);
        if (!v.at_least && v.value < t->valuation_floor)
            throw Error("series term violates its declared valuation floor");
        if (t->valuation_floor >= target_precision)
            return {acc, true, used}; // every remaining term vanishes mod p^N
        if (used >= budget)
            throw BudgetExceeded("series did not converge within term budget");
        acc = acc + t->value;
        ++used;
    }
}

SeriesSum padic_sum_series(const std::vector<PAdicApprox>& terms,
                           long prime, long target_precision, long budget) {
    std::size_t i = 0;
    return padic_sum_series(
        [&]() -> std::optional<SeriesTerm> {
            if (i >= terms.size()) return std::nullopt;
            const PAdicApprox& t = terms[i++];
            return SeriesTerm{t, 0};
        },
        prime, target_precision, budget);
}

} // namespace rzeta
