#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bandclust/env.hpp"

namespace bandclust {

struct UniformGrid {
    std::int64_t t_min = 0;
    std::int64_t t_max = 0;
    int points = 10;
};

// One JSON document drives a whole experiment; unknown keys are rejected so
// typos fail loudly instead of silently running defaults.
struct ExperimentConfig {
    std::string experiment;              // "exp1" | "exp2"
    int n = 20;                          // exp1 item count
    int d = 1000;                        // exp1 feature count
    std::vector<double> deltas = {0.8};
    int trials = 100;
    std::uint64_t seed = 1;
    std::int64_t cap = std::int64_t{1} << 42;
    std::string noise = "gaussian";      // gaussian | bernoulli | zero
    double sigma = 1.0;
    double gap_scale = 15.0;             // exp1: ||gaps||_2 on the whole grid
    int gamma_count = 20;                // exp1 grid resolution
    std::vector<std::string> algorithms; // subset of cr, cbc, bc, uniform
    std::optional<UniformGrid> uniform_grid;
    double uniform_error_threshold = 0.05;
    int kmeans_restarts = 10;
    std::vector<int> exp2_n_values = {100, 200, 500, 1000, 2000, 5000};
    int exp2_d_factor = 10;
    std::string out;                     // CSV path; CLI --out overrides
};

// Throws ConfigError on malformed JSON, unknown keys, or invalid values.
// A non-empty `experiment` argument fills a missing "experiment" key and must
// agree with the key when both are present (the CLI passes the subcommand).
ExperimentConfig parse_config(const std::string& json_text,
                              const std::string& experiment = "");

struct ResultRow {
    std::string experiment; // e.g. "exp1:bc", "exp1:uniform:s=3", "exp2:bc"
    double grid_param = 0;  // s (exp1), n (exp2), or T (uniform rows)
    int n = 0;
    int d = 0;
    double delta = 0;       // 0 on uniform rows (no confidence parameter)
    int trials = 0;
    double mean_budget = 0; // over non-emergency trials; nan if none finished
    double q05_budget = 0;
    double q95_budget = 0;
    double error_rate = 0;     // emergency-stopped trials count as errors
    double emergency_rate = 0;
    std::uint64_t seed = 0;    // master seed echoed for provenance
};

struct GapGridPoint {
    int gamma = 0;
    int s = 0;
    std::vector<double> gaps;
};

// gamma = 1..gamma_count, s = floor((d-1)(gamma-1)/(gamma_count-1)) + 1,
// gaps = scale/sqrt(s) on the first s coordinates. Every point has the same
// Euclidean gap norm, so difficulty varies only through sparsity.
std::vector<GapGridPoint> exp1_gap_grid(int d, double gap_scale,
                                        int gamma_count);

struct Exp2Instance {
    int n = 0;
    int d = 0;
    std::vector<double> gaps; // ten entries of 5, rest zero
};

std::vector<Exp2Instance> exp2_instances(const std::vector<int>& n_values,
                                         int d_factor);

// Balanced two-group instance: means `gaps` vs all-zero, first half of the
// items in group 0. Shared by both experiments and the CLI.
ProblemInstance make_instance(int n, int d, const std::vector<double>& gaps);

// Nearest-rank empirical quantile: sorted ascending, index ceil(p*N), 1-based.
double nearest_rank_quantile(std::vector<double> values, double p);

// Runs every grid point x delta x algorithm for cfg.trials seeded trials and
// aggregates. Each trial draws its noise and algorithm randomness from
// substreams keyed by (master seed, row key, trial index), so execution order
// never matters. `on_row` (optional) observes rows as they complete, letting
// callers flush partial CSVs.
std::vector<ResultRow> run_trials(
    const ExperimentConfig& cfg,
    const std::function<void(const ResultRow&)>& on_row = {});

std::string csv_header();
std::string to_csv_row(const ResultRow& row);
std::string to_csv(const std::vector<ResultRow>& rows);

// Smallest uniform-row grid_param (budget T) whose error_rate is at or below
// the threshold; empty when no uniform row qualifies.
std::optional<double> smallest_passing_budget(
    const std::vector<ResultRow>& rows, double threshold);

} // namespace bandclust
