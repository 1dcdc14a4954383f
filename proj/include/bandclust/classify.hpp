#pragma once
#include <cstdint>
#include <vector>

#include "bandclust/csh.hpp"
#include "bandclust/env.hpp"

namespace bandclust {

struct ClassifyIteration {
    int k = 0;
    int halving_steps = 0;
    int feature = 0;      // halving winner's column
    std::int64_t m = 0;   // floor(2^k / n) check draws per row
    double stat = 0.0;    // signed sum of the m paired differences
    double epsilon = 0.0; // sqrt(4 m log(n k^3 / (0.15 delta)))
    bool passed = false;  // |stat| >= 3 epsilon
};

struct ClassifyOutcome {
    std::vector<int> labels; // length n, labels[0] == 0
    int feature = 0;         // certified column
    int k_final = 0;
    std::int64_t m_final = 0;
    double epsilon_final = 0.0;
    double d_hat = 0.0; // candidate statistic at the accepted iteration
    std::int64_t budget_spent = 0;
    std::vector<ClassifyIteration> trace;
};

// ceil(log2(16 d log(4 log(8 d) / delta)))
int tilde_l_max(int d, double delta);

// Label every item against the reference row, given one certified row
// `candidate` of the opposite group. For k = ceil(log2 n), k+1, ... and every
// L in [1, tilde_l_max] with L * 2^(L+1) <= 2^(k+1), halving over the single
// item {candidate} proposes a column j; m = floor(2^k / n) >= 1 paired draws
// give D-hat at j and epsilon = sqrt(4 m log(n k^3/(0.15 delta))). Once
// |D-hat| >= 3 epsilon the column is accepted and each item i in 2..n gets m
// paired draws (fresh row-1 batch per item, ascending i): label(i) =
// 1{|D-hat_i| >= epsilon}, label(1) = 0. The 3-to-1 threshold ratio is what
// separates the certification test from the labeling test.
ClassifyOutcome cluster_by_candidates(Environment& env, double delta,
                                      int candidate, Rng& rng);

} // namespace bandclust
