#pragma once

#include <map>
#include <optional>
#include <vector>

#include "rzeta/padic.hpp"
#include "rzeta/rational_function.hpp"

namespace rzeta {

struct ZetaTerm {
    ZZ weight;          // the prime-to-p integer m of the term
    RationalFunction shape;
};

/// Dirichlet coefficients r_n for n up to a bound, with integrality and
/// nonnegativity flags from an exhaustive scan. Only nonzero entries stored.
struct DirichletSlice {
    long prime = 0;
    long long bound = 0;
    std::map<long long, QQ> coeffs;
    bool integrality_ok = true;
    bool nonnegativity_ok = true;
};

struct VanishingCheck {
    QQ value_at_minus2;
    bool vanishes;
};

struct TruncationStage {
    int stage;                                  // j >= 1
    QQ partial_sum;                             // exact
    std::optional<PAdicApprox> partial_padic;   // present when the sum lies in Z_p
    PadicValuation difference_valuation;        // capped at the working precision
};

struct TruncationTrace {
    QQ exact_value;
    std::vector<TruncationStage> stages;
    bool valuations_nondecreasing;
};

struct SupportReport {
    std::vector<long long> violations;
    bool pass;
};

/// A finite sum of terms m^{-s} * R(p^{-s}), canonicalized so that every
/// weight m is prime to p (p-power factors are absorbed as X-shifts of R),
/// weights are pairwise distinct and ascending, and zero terms are dropped.
/// Every shape must be expandable at X = 0.
class ZetaFormula {
public:
    ZetaFormula(long p, std::vector<ZetaTerm> terms);

    long prime() const { return p_; }
    const std::vector<ZetaTerm>& terms() const { return terms_; }

    /// Exact value at s = -e. Throws PoleAtEvaluationPoint naming the term.
    QQ value_at_negative(long e) const;

    /// Dirichlet coefficients r_n for n <= bound.
    DirichletSlice coefficients(long long bound) const;

    /// Value and zero test at s = -2.
    VanishingCheck vanishing_check() const;

    /// Term-by-term multiplication of every shape by c.
    ZetaFormula scaled(const ZZ& c) const;

    /// Partial sums filtered by p-power divisibility: stage j sums r_n * n^e
    /// over the n with p^j not dividing n. Reports the p-adic valuation of
    /// each stage's distance from the exact value, capped at `precision`.
    TruncationTrace padic_truncation(long e, int stages, long precision) const;

    /// Canonical JSON round-trip (parse -> serialize -> parse is identity).
    static ZetaFormula from_json_text(const std::string& text);
    std::string to_json_text() const;

    bool operator==(const ZetaFormula& o) const;

private:
    long p_;
    std::vector<ZetaTerm> terms_;
};

/// Flags every nonzero r_n whose index is not of the form m * p^r with m
/// drawn from the given list.
SupportReport support_check(const DirichletSlice& slice, const std::vector<ZZ>& weights, long p);

/// Aggregates per-level degree multisets (levels consecutive from 1) into a
/// coefficient slice: r_n counts the degree-n entries across all levels.
DirichletSlice assemble_from_levels(
    const std::vector<std::pair<int, std::vector<long long>>>& levels, long p);

} // namespace rzeta
