#pragma once
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bandclust/classify.hpp"
#include "bandclust/detect.hpp"
#include "bandclust/env.hpp"

namespace bandclust {

struct PipelineOutcome {
    bool emergency_stopped = false;
    int candidate = 0;       // 0 when detection never finished
    std::vector<int> labels; // empty when emergency-stopped
    std::int64_t budget_detect = 0;
    std::int64_t budget_classify = 0;
    std::int64_t budget_total = 0;
    std::optional<DetectOutcome> detect;
    std::optional<ClassifyOutcome> classify;
};

// The failure probability each stage receives: an even split of delta.
std::pair<double, double> split_confidence(double delta);

// Full pipeline: candidate_row at delta/2, then cluster_by_candidates at
// delta/2 seeded with the certified row. A BudgetExhausted from the
// environment's ledger cap is absorbed into emergency_stopped=true (labels
// empty, budgets reflect what was actually spent). Callers who want a global
// stop construct the Environment with a cap; default harness cap is 2^42.
PipelineOutcome bandit_clustering(Environment& env, double delta, Rng& rng);

} // namespace bandclust
