#include "bandclust/detect.hpp"

#include <cmath>
#include <numeric>

namespace bandclust {

int l_max(int n, int d, double delta) {
    if (n < 2) throw DomainError("n must be >= 2");
    if (d < 1) throw DomainError("d must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw DomainError("delta must lie in (0,1)");
    const double inner = 4.0 * std::log(8.0 * double(n) * double(d)) / delta;
    if (!(inner > 1.0)) throw DomainError("log argument fell below 1");
    const double value = 16.0 * double(d) * double(n) * std::log(inner);
    if (!(value > 1.0)) throw DomainError("log argument fell below 1");
    return int(std::ceil(std::log2(value)));
}

DetectOutcome candidate_row(Environment& env, double delta, Rng& rng) {
    if (!(delta > 0.0 && delta < 1.0))
        throw DomainError("delta must lie in (0,1)");
    const int n = env.n();
    const int limit = l_max(n, env.d(), delta);
    std::vector<int> all_items(static_cast<std::size_t>(n));
    std::iota(all_items.begin(), all_items.end(), 1);

    DetectOutcome out;
    const std::int64_t start = env.ledger().total;
    for (int k = 1;; ++k) {
        if (k > 60) throw DomainError("doubling exponent exceeded 2^60");
        for (int L = 1; L <= limit; ++L) {
            if (std::int64_t(L) * (std::int64_t(1) << (L + 1)) >
                (std::int64_t(1) << (k + 1)))
                break;
            CshParams params{all_items, L, std::int64_t(1) << (k + 1)};
            const CshResult win = compare_sequential_halving(env, params, rng);

            DetectIteration it;
            it.k = k;
            it.halving_steps = L;
            it.item = win.item;
            it.feature = win.feature;
            if (win.item != 1) {
                const std::int64_t c = std::int64_t(1) << k;
                const double sum_i = env.sample_sum(win.item, win.feature, c);
                const double sum_1 = env.sample_sum(1, win.feature, c);
                it.stat = sum_i - sum_1;
                it.threshold = std::sqrt(
                    4.0 * double(c) *
                    std::log(double(k) * k * k / (0.15 * delta)));
                it.verified = true;
                it.passed = std::abs(it.stat) > it.threshold;
            }
            out.trace.push_back(it);
            if (it.passed) {
                out.candidate = win.item;
                out.k_final = k;
                out.budget_spent = env.ledger().total - start;
                return out;
            }
        }
    }
}

} // namespace bandclust
