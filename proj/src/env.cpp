#include "bandclust/env.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bandclust {

void validate_instance(const ProblemInstance& inst) {
    if (inst.n < 2) throw DomainError("instance needs n >= 2 items");
    if (inst.d < 1) throw DomainError("instance needs d >= 1 features");
    if (inst.mu_a.size() != std::size_t(inst.d) ||
        inst.mu_b.size() != std::size_t(inst.d))
        throw DomainError("mean vectors must have length d");
    if (inst.labels.size() != std::size_t(inst.n))
        throw DegenerateLabels("labels must have length n");
    int ones = 0;
    for (int g : inst.labels) {
        if (g != 0 && g != 1) throw DegenerateLabels("labels must be 0/1");
        ones += g;
    }
    if (ones == 0 || ones == inst.n)
        throw DegenerateLabels("both groups must be non-empty");
    if (inst.labels[0] != 0)
        throw DegenerateLabels("item 1 must carry label 0");
    bool differs = false;
    for (int j = 0; j < inst.d && !differs; ++j)
        differs = inst.mu_a[j] != inst.mu_b[j];
    if (!differs) throw ZeroGap("mu_a and mu_b coincide");
}

std::vector<double> gap_vector(const ProblemInstance& inst) {
    std::vector<double> out(std::size_t(inst.d));
    for (int j = 0; j < inst.d; ++j) out[j] = inst.mu_a[j] - inst.mu_b[j];
    return out;
}

double balancedness(const ProblemInstance& inst) {
    int ones = 0;
    for (int g : inst.labels) ones += g;
    if (ones == 0 || ones == inst.n)
        throw DegenerateLabels("both groups must be non-empty");
    return double(std::min(ones, inst.n - ones)) / double(inst.n);
}

std::vector<double> ordered_gaps(std::vector<double> gap) {
    for (double& g : gap) g = std::abs(g);
    std::sort(gap.begin(), gap.end(), std::greater<double>());
    return gap;
}

std::vector<double> ordered_gaps(const ProblemInstance& inst) {
    return ordered_gaps(gap_vector(inst));
}

Environment::Environment(ProblemInstance inst, NoiseModel noise, Rng noise_rng,
                         std::optional<std::int64_t> cap)
    : inst_(std::move(inst)), noise_(noise), rng_(noise_rng) {
    validate_instance(inst_);
    if (noise_.kind == NoiseKind::gaussian &&
        !(noise_.sigma > 0.0 && noise_.sigma <= 1.0))
        throw DomainError("gaussian sigma must lie in (0,1]");
    if (noise_.kind == NoiseKind::bernoulli) {
        auto in_unit = [](double m) { return m >= 0.0 && m <= 1.0; };
        for (int j = 0; j < inst_.d; ++j)
            if (!in_unit(inst_.mu_a[j]) || !in_unit(inst_.mu_b[j]))
                throw DomainError("bernoulli noise needs means in [0,1]");
    }
    if (cap && *cap < 0) throw DomainError("ledger cap must be non-negative");
    ledger_.cap = cap;
    ledger_.per_cell.assign(std::size_t(inst_.n) * std::size_t(inst_.d), 0);
}

double Environment::mean(int i, int j) const {
    check_indices(i, j);
    return inst_.labels[std::size_t(i - 1)] ? inst_.mu_b[std::size_t(j - 1)]
                                            : inst_.mu_a[std::size_t(j - 1)];
}

void Environment::check_indices(int i, int j) const {
    if (i < 1 || i > inst_.n)
        throw IndexOutOfRange("item index " + std::to_string(i) +
                              " outside [1," + std::to_string(inst_.n) + "]");
    if (j < 1 || j > inst_.d)
        throw IndexOutOfRange("feature index " + std::to_string(j) +
                              " outside [1," + std::to_string(inst_.d) + "]");
}

void Environment::charge(int i, int j, std::int64_t count) {
    if (ledger_.cap && ledger_.total + count > *ledger_.cap)
        throw BudgetExhausted("query ledger cap " + std::to_string(*ledger_.cap) +
                              " reached");
    ledger_.total += count;
    ledger_.per_cell[std::size_t(i - 1) * std::size_t(inst_.d) +
                     std::size_t(j - 1)] += count;
}

double Environment::sample(int i, int j) {
    check_indices(i, j);
    charge(i, j, 1);
    const double m = inst_.labels[std::size_t(i - 1)]
                         ? inst_.mu_b[std::size_t(j - 1)]
                         : inst_.mu_a[std::size_t(j - 1)];
    switch (noise_.kind) {
    case NoiseKind::gaussian:
        return m + noise_.sigma * rng_.normal();
    case NoiseKind::bernoulli:
        return rng_.coin(m) ? 1.0 : 0.0;
    case NoiseKind::zero:
        return m;
    }
    return m; // unreachable
}

double Environment::sample_sum(int i, int j, std::int64_t count) {
    check_indices(i, j);
    if (count < 1) throw DomainError("sample_sum needs count >= 1");
    charge(i, j, count);
    const double m = inst_.labels[std::size_t(i - 1)]
                         ? inst_.mu_b[std::size_t(j - 1)]
                         : inst_.mu_a[std::size_t(j - 1)];
    switch (noise_.kind) {
    case NoiseKind::gaussian:
        return double(count) * m +
               noise_.sigma * std::sqrt(double(count)) * rng_.normal();
    case NoiseKind::bernoulli: {
        std::int64_t hits = 0;
        for (std::int64_t t = 0; t < count; ++t) hits += rng_.coin(m);
        return double(hits);
    }
    case NoiseKind::zero:
        return double(count) * m;
    }
    return 0.0; // unreachable
}

} // namespace bandclust
