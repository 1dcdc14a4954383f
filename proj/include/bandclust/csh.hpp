#pragma once
#include <cstdint>
#include <vector>

#include "bandclust/env.hpp"

namespace bandclust {

struct CshParams {
    std::vector<int> items;     // comparison set I, 1-based item indices
    int halving_steps = 0;      // L, rounds of halving; 1 <= L <= 60
    std::int64_t budget = 0;    // T; requires T >= L * 2^(L+1) so tau_1 >= 1
};

struct CshResult {
    int item = 0;     // winning pair (item, feature)
    int feature = 0;
    double d_hat = 0.0;                        // winner's last-round mean difference
    std::int64_t budget_spent = 0;             // == sum_l |S_{l-1}| * 2 * tau_l
    std::vector<std::int64_t> per_round_tau;   // tau_1 .. tau_L
    std::vector<std::int64_t> per_round_size;  // |S_1| .. |S_L| (after each halving)
};

// Throws InvalidBudget / EmptyItemSet / DomainError / IndexOutOfRange.
void validate_csh_params(const CshParams& p, int n);

// Subsampled sequential halving against the reference row.
//
// S_0 holds 2^L slots drawn uniformly with replacement from I x [d]
// (duplicates stay distinct slots with independent statistics; per slot the
// item index is drawn first, then the feature index, from `rng`). Round l
// gives every surviving slot (i,j) tau_l = floor(T / (2^(L-l+2) L)) fresh
// paired draws: the row-i batch first, then a fresh row-1 batch, both at
// column j, in slot order. D-hat(i,j) is the mean paired difference of that
// round alone. The 2^(L-l) slots with the largest |D-hat| survive, ties
// resolved toward the earlier slot; survivors are processed in that selection
// order next round. The sole member of S_L wins.
CshResult compare_sequential_halving(Environment& env, const CshParams& p, Rng& rng);

// Rounds needed so halving succeeds with confidence delta when the target
// gaps have at least s coordinates of magnitude h and a fraction alpha of the
// comparison set sits in the opposite group:
//   L = ceil(log2(16 (d/(alpha s)) log(4 log(8 |I| d) / delta)))
int sized_halving_steps(int d, double alpha, int s, int set_size, double delta);

// Matching sufficient budget: T = max(ceil(516 L^3 2^L / h^2), 2^(L+1) L).
std::int64_t sized_halving_budget(int halving_steps, double h);

} // namespace bandclust
