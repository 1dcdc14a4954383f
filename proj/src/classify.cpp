#include "bandclust/classify.hpp"

#include <bit>
#include <cmath>

namespace bandclust {

int tilde_l_max(int d, double delta) {
    if (d < 1) throw DomainError("d must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw DomainError("delta must lie in (0,1)");
    const double inner = 4.0 * std::log(8.0 * double(d)) / delta;
    if (!(inner > 1.0)) throw DomainError("log argument fell below 1");
    const double value = 16.0 * double(d) * std::log(inner);
    if (!(value > 1.0)) throw DomainError("log argument fell below 1");
    return int(std::ceil(std::log2(value)));
}

ClassifyOutcome cluster_by_candidates(Environment& env, double delta,
                                      int candidate, Rng& rng) {
    if (!(delta > 0.0 && delta < 1.0))
        throw DomainError("delta must lie in (0,1)");
    const int n = env.n();
    if (candidate < 2 || candidate > n)
        throw IndexOutOfRange("candidate must lie in [2,n]");
    const int limit = tilde_l_max(env.d(), delta);
    const int k_start = std::bit_width(unsigned(n - 1)); // ceil(log2 n)

    ClassifyOutcome out;
    const std::int64_t start = env.ledger().total;
    for (int k = k_start;; ++k) {
        if (k > 60) throw DomainError("doubling exponent exceeded 2^60");
        const std::int64_t m = (std::int64_t(1) << k) / n; // >= 1 for k >= ceil(log2 n)
        for (int L = 1; L <= limit; ++L) {
            if (std::int64_t(L) * (std::int64_t(1) << (L + 1)) >
                (std::int64_t(1) << (k + 1)))
                break;
            CshParams params{{candidate}, L, std::int64_t(1) << (k + 1)};
            const CshResult win = compare_sequential_halving(env, params, rng);

            ClassifyIteration it;
            it.k = k;
            it.halving_steps = L;
            it.feature = win.feature;
            it.m = m;
            const double sum_c = env.sample_sum(candidate, win.feature, m);
            const double sum_1 = env.sample_sum(1, win.feature, m);
            it.stat = sum_c - sum_1;
            it.epsilon = std::sqrt(
                4.0 * double(m) *
                std::log(double(n) * double(k) * k * k / (0.15 * delta)));
            it.passed = std::abs(it.stat) >= 3.0 * it.epsilon;
            out.trace.push_back(it);

            if (it.passed) {
                out.labels.assign(std::size_t(n), 0);
                for (int i = 2; i <= n; ++i) {
                    const double si = env.sample_sum(i, win.feature, m);
                    const double s1 = env.sample_sum(1, win.feature, m);
                    out.labels[std::size_t(i - 1)] =
                        std::abs(si - s1) >= it.epsilon ? 1 : 0;
                }
                out.feature = win.feature;
                out.k_final = k;
                out.m_final = m;
                out.epsilon_final = it.epsilon;
                out.d_hat = it.stat;
                out.budget_spent = env.ledger().total - start;
                return out;
            }
        }
    }
}

} // namespace bandclust
