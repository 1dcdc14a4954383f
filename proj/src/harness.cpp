#include "bandclust/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include <json.hpp>

#include "bandclust/baseline.hpp"
#include "bandclust/pipeline.hpp"

namespace bandclust {

namespace {

// FNV-1a; keys substreams by row identity so execution order never matters.
std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::string row_key(const std::string& experiment, double grid_param,
                    double delta) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "|%.17g|%.17g", grid_param, delta);
    return experiment + buf;
}

const std::vector<std::string> kAlgorithms = {"cr", "cbc", "bc", "uniform"};

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.experiment != "exp1" && cfg.experiment != "exp2")
        throw ConfigError("experiment must be \"exp1\" or \"exp2\"");
    if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
    if (cfg.deltas.empty()) throw ConfigError("deltas must be non-empty");
    for (double del : cfg.deltas)
        if (!(del > 0.0 && del < 1.0))
            throw ConfigError("every delta must lie in (0,1)");
    if (cfg.noise != "gaussian" && cfg.noise != "bernoulli" &&
        cfg.noise != "zero")
        throw ConfigError("noise must be gaussian, bernoulli, or zero");
    if (cfg.noise == "gaussian" && !(cfg.sigma > 0.0 && cfg.sigma <= 1.0))
        throw ConfigError("sigma must lie in (0,1]");
    if (cfg.cap < 1) throw ConfigError("cap must be positive");
    if (cfg.kmeans_restarts < 1)
        throw ConfigError("kmeans_restarts must be at least 1");
    for (const std::string& alg : cfg.algorithms)
        if (std::find(kAlgorithms.begin(), kAlgorithms.end(), alg) ==
            kAlgorithms.end())
            throw ConfigError("unknown algorithm: " + alg);
    const bool wants_uniform =
        std::find(cfg.algorithms.begin(), cfg.algorithms.end(), "uniform") !=
        cfg.algorithms.end();
    if (wants_uniform && !cfg.uniform_grid)
        throw ConfigError("algorithm \"uniform\" requires uniform_grid");
    if (cfg.uniform_grid) {
        const UniformGrid& g = *cfg.uniform_grid;
        if (g.t_min < 1 || g.t_max < g.t_min || g.points < 1)
            throw ConfigError("uniform_grid needs 1 <= t_min <= t_max and "
                              "points >= 1");
    }
    if (!(cfg.uniform_error_threshold > 0.0 &&
          cfg.uniform_error_threshold <= 1.0))
        throw ConfigError("uniform_error_threshold must lie in (0,1]");
    if (cfg.experiment == "exp1") {
        if (cfg.n < 2) throw ConfigError("n must be at least 2");
        if (cfg.d < 20) throw ConfigError("exp1 needs d >= 20");
        if (cfg.gamma_count < 2)
            throw ConfigError("gamma_count must be at least 2");
        if (!(cfg.gap_scale > 0.0))
            throw ConfigError("gap_scale must be positive");
    } else {
        if (cfg.exp2_n_values.empty())
            throw ConfigError("exp2_n_values must be non-empty");
        if (cfg.exp2_d_factor < 1)
            throw ConfigError("exp2_d_factor must be at least 1");
        for (int n : cfg.exp2_n_values) {
            if (n < 2) throw ConfigError("exp2 n values must be at least 2");
            if (static_cast<std::int64_t>(n) * cfg.exp2_d_factor < 10)
                throw ConfigError("exp2 needs n * d_factor >= 10 for the "
                                  "ten-coordinate gap vector");
        }
    }
}

NoiseModel noise_from(const ExperimentConfig& cfg) {
    if (cfg.noise == "gaussian") return NoiseModel::gaussian(cfg.sigma);
    if (cfg.noise == "bernoulli") return NoiseModel::bernoulli();
    return NoiseModel::zero();
}

struct TrialResult {
    std::int64_t budget = 0;
    bool error = false;
    bool emergency = false;
};

TrialResult one_trial(const std::string& alg, const ProblemInstance& inst,
                      const ExperimentConfig& cfg, double delta,
                      std::int64_t uniform_budget, std::uint64_t row_hash,
                      int trial) {
    Rng algo_rng(derive_seed(cfg.seed, 2, row_hash, std::uint64_t(trial)));
    Environment env(inst, noise_from(cfg),
                    Rng(derive_seed(cfg.seed, 1, row_hash,
                                    std::uint64_t(trial))),
                    cfg.cap);
    const std::vector<int>& truth = inst.labels;
    TrialResult res;
    try {
        if (alg == "cr") {
            DetectOutcome out = candidate_row(env, delta, algo_rng);
            res.budget = out.budget_spent;
            res.error = truth[std::size_t(out.candidate - 1)] != 1;
        } else if (alg == "cbc") {
            int i_star = 0;
            for (int i = 2; i <= inst.n; ++i)
                if (truth[std::size_t(i - 1)] == 1) {
                    i_star = i;
                    break;
                }
            ClassifyOutcome out =
                cluster_by_candidates(env, delta, i_star, algo_rng);
            res.budget = out.budget_spent;
            res.error = out.labels != truth;
        } else if (alg == "bc") {
            PipelineOutcome out = bandit_clustering(env, delta, algo_rng);
            res.budget = out.budget_total;
            res.emergency = out.emergency_stopped;
            res.error = out.emergency_stopped || out.labels != truth;
        } else { // uniform
            BaselineOutcome out = uniform_kmeans(env, uniform_budget,
                                                 cfg.kmeans_restarts, algo_rng);
            res.budget = out.budget_used;
            res.error = out.labels != truth;
        }
    } catch (const BudgetExhausted&) {
        // standalone cr / cbc / uniform hitting the ledger cap
        res.budget = env.ledger().total;
        res.emergency = true;
        res.error = true;
    }
    return res;
}

ResultRow aggregate(std::string experiment, double grid_param, int n, int d,
                    double delta, const ExperimentConfig& cfg,
                    const std::vector<TrialResult>& trials) {
    ResultRow row;
    row.experiment = std::move(experiment);
    row.grid_param = grid_param;
    row.n = n;
    row.d = d;
    row.delta = delta;
    row.trials = static_cast<int>(trials.size());
    row.seed = cfg.seed;

    std::vector<double> budgets;
    int errors = 0;
    int emergencies = 0;
    for (const TrialResult& t : trials) {
        if (t.error) ++errors;
        if (t.emergency)
            ++emergencies;
        else
            budgets.push_back(static_cast<double>(t.budget));
    }
    row.error_rate = double(errors) / double(trials.size());
    row.emergency_rate = double(emergencies) / double(trials.size());
    if (budgets.empty()) {
        const double nan = std::nan("");
        row.mean_budget = row.q05_budget = row.q95_budget = nan;
    } else {
        double sum = 0.0;
        for (double b : budgets) sum += b;
        row.mean_budget = sum / double(budgets.size());
        row.q05_budget = nearest_rank_quantile(budgets, 0.05);
        row.q95_budget = nearest_rank_quantile(budgets, 0.95);
    }
    return row;
}

std::vector<std::int64_t> grid_budgets(const UniformGrid& g) {
    std::vector<std::int64_t> out;
    if (g.points == 1) {
        out.push_back(g.t_min);
        return out;
    }
    for (int i = 0; i < g.points; ++i) {
        const long double t =
            g.t_min + static_cast<long double>(g.t_max - g.t_min) * i /
                          (g.points - 1);
        out.push_back(static_cast<std::int64_t>(std::llroundl(t)));
    }
    return out;
}

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text,
                              const std::string& experiment) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    ExperimentConfig cfg;
    cfg.experiment = experiment;
    for (const auto& [key, val] : j.items()) {
        try {
            if (key == "experiment") {
                const auto named = val.get<std::string>();
                if (!experiment.empty() && named != experiment)
                    throw ConfigError("config names experiment \"" + named +
                                      "\" but \"" + experiment +
                                      "\" was requested");
                cfg.experiment = named;
            }
            else if (key == "n")
                cfg.n = val.get<int>();
            else if (key == "d")
                cfg.d = val.get<int>();
            else if (key == "deltas")
                cfg.deltas = val.get<std::vector<double>>();
            else if (key == "trials")
                cfg.trials = val.get<int>();
            else if (key == "seed")
                cfg.seed = val.get<std::uint64_t>();
            else if (key == "cap")
                cfg.cap = val.get<std::int64_t>();
            else if (key == "noise")
                cfg.noise = val.get<std::string>();
            else if (key == "sigma")
                cfg.sigma = val.get<double>();
            else if (key == "gap_scale")
                cfg.gap_scale = val.get<double>();
            else if (key == "gamma_count")
                cfg.gamma_count = val.get<int>();
            else if (key == "algorithms")
                cfg.algorithms = val.get<std::vector<std::string>>();
            else if (key == "uniform_grid") {
                if (!val.is_object())
                    throw ConfigError("uniform_grid must be an object");
                UniformGrid g;
                for (const auto& [gk, gv] : val.items()) {
                    if (gk == "t_min")
                        g.t_min = gv.get<std::int64_t>();
                    else if (gk == "t_max")
                        g.t_max = gv.get<std::int64_t>();
                    else if (gk == "points")
                        g.points = gv.get<int>();
                    else
                        throw ConfigError("unknown uniform_grid key: " + gk);
                }
                cfg.uniform_grid = g;
            } else if (key == "uniform_error_threshold")
                cfg.uniform_error_threshold = val.get<double>();
            else if (key == "kmeans_restarts")
                cfg.kmeans_restarts = val.get<int>();
            else if (key == "exp2_n_values")
                cfg.exp2_n_values = val.get<std::vector<int>>();
            else if (key == "exp2_d_factor")
                cfg.exp2_d_factor = val.get<int>();
            else if (key == "out")
                cfg.out = val.get<std::string>();
            else
                throw ConfigError("unknown config key: " + key);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config key \"" + key + "\": " + e.what());
        }
    }
    validate_config(cfg);
    return cfg;
}

std::vector<GapGridPoint> exp1_gap_grid(int d, double gap_scale,
                                        int gamma_count) {
    if (d < 20) throw DomainError("gap grid needs d >= 20");
    if (gamma_count < 2) throw DomainError("gamma_count must be at least 2");
    if (!(gap_scale > 0.0)) throw DomainError("gap_scale must be positive");
    std::vector<GapGridPoint> grid;
    grid.reserve(std::size_t(gamma_count));
    for (int gamma = 1; gamma <= gamma_count; ++gamma) {
        GapGridPoint pt;
        pt.gamma = gamma;
        pt.s = static_cast<int>(static_cast<std::int64_t>(d - 1) *
                                (gamma - 1) / (gamma_count - 1)) +
               1;
        pt.gaps.assign(std::size_t(d), 0.0);
        const double h = gap_scale / std::sqrt(double(pt.s));
        for (int j = 0; j < pt.s; ++j) pt.gaps[std::size_t(j)] = h;
        grid.push_back(std::move(pt));
    }
    return grid;
}

std::vector<Exp2Instance> exp2_instances(const std::vector<int>& n_values,
                                         int d_factor) {
    if (d_factor < 1) throw DomainError("d_factor must be at least 1");
    std::vector<Exp2Instance> out;
    out.reserve(n_values.size());
    for (int n : n_values) {
        if (n < 2) throw DomainError("n must be at least 2");
        Exp2Instance e;
        e.n = n;
        e.d = n * d_factor;
        if (e.d < 10) throw DomainError("exp2 instance needs d >= 10");
        e.gaps.assign(std::size_t(e.d), 0.0);
        for (int j = 0; j < 10; ++j) e.gaps[std::size_t(j)] = 5.0;
        out.push_back(std::move(e));
    }
    return out;
}

ProblemInstance make_instance(int n, int d, const std::vector<double>& gaps) {
    if (static_cast<int>(gaps.size()) > d)
        throw DomainError("gap vector longer than d");
    ProblemInstance inst;
    inst.n = n;
    inst.d = d;
    inst.mu_a = gaps;
    inst.mu_a.resize(std::size_t(d), 0.0);
    inst.mu_b.assign(std::size_t(d), 0.0);
    inst.labels.assign(std::size_t(n), 1);
    for (int i = 0; i < (n + 1) / 2; ++i) inst.labels[std::size_t(i)] = 0;
    validate_instance(inst);
    return inst;
}

double nearest_rank_quantile(std::vector<double> values, double p) {
    if (values.empty()) throw DomainError("quantile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("p must lie in [0,1]");
    std::sort(values.begin(), values.end());
    const auto n = static_cast<std::int64_t>(values.size());
    std::int64_t rank = static_cast<std::int64_t>(
        std::ceil(p * static_cast<double>(n)));
    rank = std::max<std::int64_t>(rank, 1);
    rank = std::min(rank, n);
    return values[std::size_t(rank - 1)];
}

std::vector<ResultRow> run_trials(
    const ExperimentConfig& cfg,
    const std::function<void(const ResultRow&)>& on_row) {
    validate_config(cfg);
    std::vector<ResultRow> rows;

    auto run_row = [&](const std::string& name, double grid_param,
                       const ProblemInstance& inst, double delta,
                       const std::string& alg, std::int64_t uniform_budget) {
        const std::uint64_t row_hash =
            fnv1a64(row_key(name, grid_param, delta));
        std::vector<TrialResult> results;
        results.reserve(std::size_t(cfg.trials));
        for (int t = 0; t < cfg.trials; ++t)
            results.push_back(one_trial(alg, inst, cfg, delta, uniform_budget,
                                        row_hash, t));
        ResultRow row = aggregate(name, grid_param, inst.n, inst.d, delta, cfg,
                                  results);
        if (on_row) on_row(row);
        rows.push_back(std::move(row));
    };

    auto run_algorithms = [&](const std::string& prefix,
                              const std::string& uniform_tag, double grid_param,
                              const ProblemInstance& inst,
                              const std::vector<std::string>& algs) {
        for (const std::string& alg : algs) {
            if (alg == "uniform") {
                for (std::int64_t t_budget : grid_budgets(*cfg.uniform_grid))
                    run_row(prefix + "uniform:" + uniform_tag,
                            static_cast<double>(t_budget), inst, 0.0, alg,
                            t_budget);
            } else {
                for (double delta : cfg.deltas)
                    run_row(prefix + alg, grid_param, inst, delta, alg, 0);
            }
        }
    };

    if (cfg.experiment == "exp1") {
        const std::vector<std::string> algs =
            cfg.algorithms.empty() ? std::vector<std::string>{"cr", "cbc", "bc"}
                                   : cfg.algorithms;
        for (const GapGridPoint& pt :
             exp1_gap_grid(cfg.d, cfg.gap_scale, cfg.gamma_count)) {
            const ProblemInstance inst = make_instance(cfg.n, cfg.d, pt.gaps);
            run_algorithms("exp1:", "s=" + std::to_string(pt.s),
                           static_cast<double>(pt.s), inst, algs);
        }
    } else {
        const std::vector<std::string> algs =
            cfg.algorithms.empty() ? std::vector<std::string>{"bc"}
                                   : cfg.algorithms;
        for (const Exp2Instance& e2 :
             exp2_instances(cfg.exp2_n_values, cfg.exp2_d_factor)) {
            const ProblemInstance inst = make_instance(e2.n, e2.d, e2.gaps);
            run_algorithms("exp2:", "n=" + std::to_string(e2.n),
                           static_cast<double>(e2.n), inst, algs);
        }
    }
    return rows;
}

std::string csv_header() {
    return "experiment,grid_param,n,d,delta,trials,mean_budget,q05_budget,"
           "q95_budget,error_rate,emergency_rate,seed\n";
}

std::string to_csv_row(const ResultRow& row) {
    std::string line = row.experiment;
    line += ',';
    line += fmt_double(row.grid_param);
    line += ',';
    line += std::to_string(row.n);
    line += ',';
    line += std::to_string(row.d);
    line += ',';
    line += fmt_double(row.delta);
    line += ',';
    line += std::to_string(row.trials);
    line += ',';
    line += fmt_double(row.mean_budget);
    line += ',';
    line += fmt_double(row.q05_budget);
    line += ',';
    line += fmt_double(row.q95_budget);
    line += ',';
    line += fmt_double(row.error_rate);
    line += ',';
    line += fmt_double(row.emergency_rate);
    line += ',';
    line += std::to_string(row.seed);
    line += '\n';
    return line;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
    std::string out = csv_header();
    for (const ResultRow& row : rows) out += to_csv_row(row);
    return out;
}

std::optional<double> smallest_passing_budget(
    const std::vector<ResultRow>& rows, double threshold) {
    std::optional<double> best;
    for (const ResultRow& row : rows) {
        if (row.experiment.find(":uniform:") == std::string::npos) continue;
        if (row.error_rate > threshold) continue;
        if (!best || row.grid_param < *best) best = row.grid_param;
    }
    return best;
}

} // namespace bandclust
