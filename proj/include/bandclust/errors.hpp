#pragma once
#include <stdexcept>

namespace bandclust {

// invalid item/feature index (API is 1-based)
struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// argument outside the mathematical domain of an operation
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// halving budget below the feasibility floor T >= L * 2^(L+1)
struct InvalidBudget : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// empty comparison set, or a set with no item other than the reference row
struct EmptyItemSet : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// labels missing one of the two groups, or reference item not in group 0
struct DegenerateLabels : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// all gap entries are zero; the two group means coincide
struct ZeroGap : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// uniform baseline budget too small for even one sample per cell
struct InsufficientBudget : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// malformed or inconsistent experiment configuration
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sampling request would push the query ledger past its cap
struct BudgetExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace bandclust
