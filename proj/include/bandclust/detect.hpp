#pragma once
#include <cstdint>
#include <vector>

#include "bandclust/csh.hpp"
#include "bandclust/env.hpp"

namespace bandclust {

struct DetectIteration {
    int k = 0;
    int halving_steps = 0;
    int item = 0;     // halving winner at this (k, L)
    int feature = 0;
    double stat = 0.0;       // signed sum of the 2^k paired differences
    double threshold = 0.0;  // sqrt(4 * 2^k * log(k^3 / (0.15 delta)))
    bool verified = false;   // false when the winner was the reference row
    bool passed = false;
};

struct DetectOutcome {
    int candidate = 0; // item certified to sit outside the reference group
    int k_final = 0;
    std::int64_t budget_spent = 0;
    std::vector<DetectIteration> trace;
};

// ceil(log2(16 d n log(4 log(8 n d) / delta)))
int l_max(int n, int d, double delta);

// Doubling search for one row of the opposite group. For k = 1, 2, ... and
// every L in [1, l_max] with L * 2^(L+1) <= 2^(k+1), run halving over all n
// items with budget 2^(k+1), then put the winner (i,j) to a Hoeffding test
// on 2^k fresh paired draws (row-i batch, then row-1 batch): accept when
// |sum of differences| exceeds sqrt(4 * 2^k * log(k^3/(0.15 delta))).
// A winner equal to the reference row can never certify the test and is
// rejected without verification draws. Errors: BudgetExhausted propagates
// from the environment when a ledger cap is set.
DetectOutcome candidate_row(Environment& env, double delta, Rng& rng);

} // namespace bandclust
