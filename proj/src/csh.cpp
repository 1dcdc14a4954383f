#include "bandclust/csh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace bandclust {

void validate_csh_params(const CshParams& p, int n) {
    if (p.items.empty()) throw EmptyItemSet("comparison set is empty");
    bool only_reference = true;
    for (int i : p.items) {
        if (i < 1 || i > n)
            throw IndexOutOfRange("item " + std::to_string(i) + " outside [1," +
                                  std::to_string(n) + "]");
        if (i != 1) only_reference = false;
    }
    if (only_reference)
        throw EmptyItemSet("comparison set holds only the reference row");
    const int L = p.halving_steps;
    if (L < 1 || L > 60)
        throw DomainError("halving steps must lie in [1,60]");
    const std::int64_t floor_budget = std::int64_t(L) * (std::int64_t(1) << (L + 1));
    if (p.budget < floor_budget)
        throw InvalidBudget("budget " + std::to_string(p.budget) + " below " +
                            std::to_string(floor_budget) + " = L*2^(L+1)");
}

CshResult compare_sequential_halving(Environment& env, const CshParams& p,
                                     Rng& rng) {
    validate_csh_params(p, env.n());
    const int L = p.halving_steps;
    const std::int64_t T = p.budget;
    const int d = env.d();

    struct Slot {
        int item;
        int feature;
        double stat;
    };
    std::vector<Slot> surv(std::size_t(1) << L);
    for (Slot& s : surv) {
        s.item = p.items[std::size_t(rng.below(std::int64_t(p.items.size())))];
        s.feature = 1 + int(rng.below(d));
        s.stat = 0.0;
    }

    CshResult res;
    res.per_round_tau.reserve(std::size_t(L));
    res.per_round_size.reserve(std::size_t(L));
    std::vector<std::size_t> order;
    for (int l = 1; l <= L; ++l) {
        const std::int64_t tau =
            T / ((std::int64_t(1) << (L - l + 2)) * std::int64_t(L));
        res.per_round_tau.push_back(tau);
        for (Slot& s : surv) {
            const double si = env.sample_sum(s.item, s.feature, tau);
            const double s1 = env.sample_sum(1, s.feature, tau);
            s.stat = (si - s1) / double(tau);
            res.budget_spent += 2 * tau;
        }
        // keep the |D-hat|-largest half, earlier slot wins ties
        order.resize(surv.size());
        std::iota(order.begin(), order.end(), std::size_t(0));
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) {
                             return std::abs(surv[a].stat) > std::abs(surv[b].stat);
                         });
        std::vector<Slot> next(surv.size() / 2);
        for (std::size_t u = 0; u < next.size(); ++u) next[u] = surv[order[u]];
        surv = std::move(next);
        res.per_round_size.push_back(std::int64_t(surv.size()));
    }

    res.item = surv[0].item;
    res.feature = surv[0].feature;
    res.d_hat = surv[0].stat;
    return res;
}

int sized_halving_steps(int d, double alpha, int s, int set_size, double delta) {
    if (d < 1) throw DomainError("d must be >= 1");
    if (s < 1 || s > d) throw DomainError("s must lie in [1,d]");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("alpha must lie in (0,1]");
    if (set_size < 1) throw DomainError("set size must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw DomainError("delta must lie in (0,1)");
    const double inner = 4.0 * std::log(8.0 * double(set_size) * double(d)) / delta;
    if (!(inner > 1.0)) throw DomainError("log argument fell below 1");
    const double value = 16.0 * (double(d) / (alpha * double(s))) * std::log(inner);
    if (!(value > 1.0)) throw DomainError("log argument fell below 1");
    const int L = int(std::ceil(std::log2(value)));
    if (L > 60) throw DomainError("halving steps exceed the 2^60 safety bound");
    return L;
}

std::int64_t sized_halving_budget(int halving_steps, double h) {
    const int L = halving_steps;
    if (L < 1 || L > 60) throw DomainError("halving steps must lie in [1,60]");
    if (!(h > 0.0)) throw DomainError("gap magnitude h must be positive");
    const long double main_term = std::ceil(
        516.0L * L * L * L * std::exp2(static_cast<long double>(L)) /
        (static_cast<long double>(h) * h));
    if (main_term > 4.0e18L)
        throw DomainError("budget exceeds the int64 safety bound");
    const std::int64_t floor_budget =
        std::int64_t(L) * (std::int64_t(1) << (L + 1));
    return std::max(std::int64_t(main_term), floor_budget);
}

} // namespace bandclust
