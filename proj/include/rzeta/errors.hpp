#pragma once

#include <stdexcept>
#include <string>

namespace rzeta {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// exactnum
struct InvalidPrime : Error { using Error::Error; };
struct NotAPAdicInteger : Error { using Error::Error; };
struct PrimeMismatch : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };

// ratfunc
struct ZeroDenominator : Error { using Error::Error; };
struct PoleAtPoint : Error { using Error::Error; };
struct ExpansionAtPole : Error { using Error::Error; };

// zeta
struct PoleAtEvaluationPoint : Error {
    PoleAtEvaluationPoint(const std::string& msg, int term) : Error(msg), term_index(term) {}
    int term_index;
};
struct MalformedLevels : Error { using Error::Error; };

// group
struct CapExceeded : Error { using Error::Error; };
struct NonInvertibleGenerator : Error { using Error::Error; };
struct NotADivisor : Error { using Error::Error; };
struct NotASubgroup : Error { using Error::Error; };

// chartab
struct NotNormal : Error { using Error::Error; };
struct SplitFailure : Error { using Error::Error; };
struct WedderburnMismatch : Error { using Error::Error; };

// cli / file formats
struct InputError : Error { using Error::Error; };
struct UsageError : Error { using Error::Error; };

} // namespace rzeta
