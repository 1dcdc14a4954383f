#include "bandclust/baseline.hpp"

#include <stdexcept>
#include <cmath>
#include <limits>

namespace bandclust {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        s += diff * diff;
    }
    return s;
}

struct LloydRun {
    std::vector<int> assign;
    double wcss = std::numeric_limits<double>::infinity();
    int iterations = 0;
};

LloydRun lloyd_2means(const std::vector<std::vector<double>>& rows,
                      std::size_t init0, std::size_t init1) {
    const std::size_t n = rows.size();
    std::vector<std::vector<double>> centers = {rows[init0], rows[init1]};
    LloydRun run;
    run.assign.assign(n, 0);
    double prev_obj = std::numeric_limits<double>::infinity();

    for (int iter = 1; iter <= 100; ++iter) {
        bool changed = false;
        double obj = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d0 = sq_dist(rows[i], centers[0]);
            const double d1 = sq_dist(rows[i], centers[1]);
            const int a = d1 < d0 ? 1 : 0;
            obj += a == 0 ? d0 : d1;
            if (a != run.assign[i]) {
                run.assign[i] = a;
                changed = true;
            }
        }
        if (obj > prev_obj * (1.0 + 1e-9) + 1e-12)
            throw std::logic_error("2-means objective increased");
        prev_obj = obj;
        run.wcss = obj;
        run.iterations = iter;
        if (!changed && iter > 1) break;

        for (int c = 0; c < 2; ++c) {
            std::vector<double> mean(rows[0].size(), 0.0);
            int count = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (run.assign[i] != c) continue;
                ++count;
                for (std::size_t j = 0; j < mean.size(); ++j)
                    mean[j] += rows[i][j];
            }
            if (count == 0) continue; // empty cluster keeps its center
            for (std::size_t j = 0; j < mean.size(); ++j)
                centers[c][j] = mean[j] / count;
        }
    }
    return run;
}

} // namespace

BaselineOutcome uniform_kmeans(Environment& env, std::int64_t budget,
                               int restarts, Rng& rng) {
    const int n = env.n();
    const int d = env.d();
    if (restarts < 1)
        throw DomainError("restarts must be at least 1");
    const std::int64_t cells = static_cast<std::int64_t>(n) * d;
    const std::int64_t tau = budget / cells;
    if (tau < 1)
        throw InsufficientBudget("budget below one sample per cell");

    std::vector<std::vector<double>> rows(n, std::vector<double>(d, 0.0));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= d; ++j)
            rows[i - 1][j - 1] =
                env.sample_sum(i, j, tau) / static_cast<double>(tau);

    LloydRun best;
    for (int r = 0; r < restarts; ++r) {
        const std::size_t i0 = std::size_t(rng.below(n));
        std::size_t i1 = i0;
        while (i1 == i0) i1 = std::size_t(rng.below(n));
        LloydRun run = lloyd_2means(rows, i0, i1);
        if (run.wcss < best.wcss) best = std::move(run);
    }

    BaselineOutcome out;
    out.tau = tau;
    out.budget_used = cells * tau;
    out.kmeans_iterations = best.iterations;
    out.labels = std::move(best.assign);
    if (out.labels[0] == 1)
        for (int& l : out.labels) l = 1 - l;
    return out;
}

} // namespace bandclust
