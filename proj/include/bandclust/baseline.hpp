#pragma once
#include <cstdint>
#include <vector>

#include "bandclust/env.hpp"

namespace bandclust {

struct BaselineOutcome {
    std::vector<int> labels;      // length n, labels[0] == 0 after relabeling
    std::int64_t budget_used = 0; // always n*d*tau
    std::int64_t tau = 0;
    int kmeans_iterations = 0; // Lloyd iterations of the selected restart
};

// Non-adaptive reference: spend the budget uniformly, tau = floor(T/(n*d))
// samples per cell, then 2-means the row averages. Lloyd runs `restarts`
// times from random pairs of distinct averaged rows, at most 100 iterations
// each, stopping when assignments are unchanged; the restart with the lowest
// within-cluster sum of squares wins (earliest on ties). Empty clusters keep
// their previous center; equidistant rows go to cluster 0.
// Throws InsufficientBudget when tau would be 0.
BaselineOutcome uniform_kmeans(Environment& env, std::int64_t budget,
                               int restarts, Rng& rng);

} // namespace bandclust
