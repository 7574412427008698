#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rzeta/rational.hpp"

namespace rzeta {

/// An element of the p-adic integers known modulo prime^precision.
/// Immutable; all arithmetic reduces into [0, prime^precision).
class PAdicApprox {
public:
    PAdicApprox(long prime, long precision, ZZ residue);

    /// Embeds num/den, a rational p-adic integer. Throws NotAPAdicInteger if
    /// the denominator carries more factors of p than the numerator.
    static PAdicApprox from_rational(const ZZ& num, const ZZ& den, long prime, long precision);
    static PAdicApprox from_rational(const QQ& value, long prime, long precision);

    long prime() const { return prime_; }
    long precision() const { return precision_; }
    const ZZ& residue() const { return residue_; }
    const ZZ& modulus() const { return modulus_; }

    /// Result precision is the minimum of the operands'. Same prime required.
    friend PAdicApprox operator+(const PAdicApprox& a, const PAdicApprox& b);
    friend PAdicApprox operator-(const PAdicApprox& a, const PAdicApprox& b);
    friend PAdicApprox operator*(const PAdicApprox& a, const PAdicApprox& b);

    bool operator==(const PAdicApprox& o) const {
        return prime_ == o.prime_ && precision_ == o.precision_ && residue_ == o.residue_;
    }
    bool operator!=(const PAdicApprox& o) const { return !(*this == o); }

private:
    long prime_;
    long precision_;
    ZZ modulus_;
    ZZ residue_;
};

/// Valuation of a residue class. A zero residue only bounds the valuation
/// from below by the precision, so the result stays total: `at_least` marks
/// that case and `value` then holds the precision.
struct PadicValuation {
    long value;
    bool at_least;

    bool operator==(const PadicValuation& o) const {
        return value == o.value && at_least == o.at_least;
    }
};

PadicValuation padic_valuation(const PAdicApprox& a);

/// One term of a lazily generated series. valuation_floor is a lower bound on
/// the valuation of this term and of every later one; generators must tag
/// terms with non-decreasing floors for convergence detection to fire.
struct SeriesTerm {
    PAdicApprox value;
    long valuation_floor;
};

struct SeriesSum {
    PAdicApprox sum;
    bool converged;
    long terms_used;
};

/// Accumulates terms mod prime^target_precision. Stops with converged=true as
/// soon as the floor reaches the target precision (all remaining terms vanish
/// mod p^N) or the generator is exhausted. Throws BudgetExceeded after
/// `budget` terms without convergence.
SeriesSum padic_sum_series(const std::function<std::optional<SeriesTerm>()>& next,
                           long prime, long target_precision, long budget);

/// Finite-sequence convenience: sums everything, converged on exhaustion.
SeriesSum padic_sum_series(const std::vector<PAdicApprox>& terms,
                           long prime, long target_precision, long budget);

} // namespace rzeta
