#include "bandclust/pipeline.hpp"

namespace bandclust {

std::pair<double, double> split_confidence(double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw DomainError("delta must lie in (0,1)");
    return {delta / 2.0, delta / 2.0};
}

PipelineOutcome bandit_clustering(Environment& env, double delta, Rng& rng) {
    const auto [delta_detect, delta_classify] = split_confidence(delta);
    PipelineOutcome out;

    const std::int64_t before_detect = env.ledger().total;
    try {
        DetectOutcome det = candidate_row(env, delta_detect, rng);
        out.candidate = det.candidate;
        out.detect = std::move(det);
    } catch (const BudgetExhausted&) {
        out.emergency_stopped = true;
        out.budget_detect = env.ledger().total - before_detect;
        out.budget_total = out.budget_detect;
        return out;
    }
    out.budget_detect = env.ledger().total - before_detect;

    const std::int64_t before_classify = env.ledger().total;
    try {
        ClassifyOutcome cls =
            cluster_by_candidates(env, delta_classify, out.candidate, rng);
        out.labels = cls.labels;
        out.classify = std::move(cls);
    } catch (const BudgetExhausted&) {
        out.emergency_stopped = true;
    }
    out.budget_classify = env.ledger().total - before_classify;
    out.budget_total = out.budget_detect + out.budget_classify;
    return out;
}

} // namespace bandclust
