#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "bandclust/errors.hpp"
#include "bandclust/rng.hpp"

namespace bandclust {

enum class NoiseKind { gaussian, bernoulli, zero };

struct NoiseModel {
    NoiseKind kind = NoiseKind::gaussian;
    double sigma = 1.0; // gaussian only; must lie in (0,1]

    static NoiseModel gaussian(double sigma = 1.0) {
        return NoiseModel{NoiseKind::gaussian, sigma};
    }
    static NoiseModel bernoulli() { return NoiseModel{NoiseKind::bernoulli, 0.0}; }
    static NoiseModel zero() { return NoiseModel{NoiseKind::zero, 0.0}; }
};

// Two-group instance: item i has mean row mu_a (labels[i-1]==0) or mu_b
// (labels[i-1]==1). The n-by-d mean matrix is never materialized. Items and
// features are addressed 1-based throughout the API; item 1 is the reference
// row and must carry label 0.
struct ProblemInstance {
    int n = 0;
    int d = 0;
    std::vector<double> mu_a;
    std::vector<double> mu_b;
    std::vector<int> labels;
};

// Eager validation: n>=2, d>=1, matching sizes, binary labels with both
// groups present, labels[0]==0, and mu_a != mu_b somewhere (ZeroGap).
void validate_instance(const ProblemInstance& inst);

// Delta = mu_a - mu_b
std::vector<double> gap_vector(const ProblemInstance& inst);

// min(#zeros, #ones) / n, in [1/n, 1/2]
double balancedness(const ProblemInstance& inst);

// |Delta| sorted descending: |Delta|_(1) >= ... >= |Delta|_(d)
std::vector<double> ordered_gaps(std::vector<double> gap);
std::vector<double> ordered_gaps(const ProblemInstance& inst);

struct QueryLedger {
    std::int64_t total = 0;
    std::vector<std::int64_t> per_cell; // n*d, row-major, 0-based internally
    std::optional<std::int64_t> cap;

    std::int64_t cell(int i, int j, int d) const {
        return per_cell[std::size_t(i - 1) * std::size_t(d) + std::size_t(j - 1)];
    }
};

// Owns the noise stream and the query ledger. Every observation of cell
// (i,j) is metered exactly once; when a request would push the total past
// the cap the call throws BudgetExhausted without consuming anything.
class Environment {
public:
    Environment(ProblemInstance inst, NoiseModel noise, Rng noise_rng,
                std::optional<std::int64_t> cap = std::nullopt);

    int n() const { return inst_.n; }
    int d() const { return inst_.d; }
    const ProblemInstance& instance() const { return inst_; }
    const QueryLedger& ledger() const { return ledger_; }

    // true cell mean; simulation-side knowledge, not a metered observation
    double mean(int i, int j) const;

    // one noisy observation of cell (i,j); ledger +1
    double sample(int i, int j);

    // Sum of `count` i.i.d. observations of cell (i,j); ledger +count.
    // Gaussian noise draws the sum directly as N(count*mean, count*sigma^2)
    // (one normal, exact in distribution); zero noise is count*mean; Bernoulli
    // loops count coin flips. This is the canonical bulk path the algorithms
    // use, so their RNG consumption is one event per requested batch.
    double sample_sum(int i, int j, std::int64_t count);

private:
    void check_indices(int i, int j) const;
    void charge(int i, int j, std::int64_t count);

    ProblemInstance inst_;
    NoiseModel noise_;
    Rng rng_;
    QueryLedger ledger_;
};

} // namespace bandclust
