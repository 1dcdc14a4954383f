#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "bandclust/harness.hpp"

using namespace bandclust;

namespace {

ExperimentConfig tiny_exp1() {
    return parse_config(R"({
        "experiment": "exp1", "n": 4, "d": 20, "gamma_count": 2,
        "deltas": [0.5], "trials": 3, "seed": 9, "noise": "zero",
        "algorithms": ["cbc"]
    })");
}

using RowKey = std::tuple<std::string, double, double>;

std::map<RowKey, ResultRow> by_key(const std::vector<ResultRow>& rows) {
    std::map<RowKey, ResultRow> m;
    for (const ResultRow& r : rows)
        m.emplace(RowKey{r.experiment, r.grid_param, r.delta}, r);
    return m;
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("nearest-rank quantile") {
    const std::vector<double> ten{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK(nearest_rank_quantile(ten, 0.05) == 1);
    CHECK(nearest_rank_quantile(ten, 0.95) == 10);
    CHECK(nearest_rank_quantile(ten, 0.5) == 5);
    CHECK(nearest_rank_quantile(ten, 1.0) == 10);
    const std::vector<double> four{40, 10, 30, 20}; // sorts first
    CHECK(nearest_rank_quantile(four, 0.25) == 10);
    CHECK(nearest_rank_quantile(four, 0.26) == 20);
    CHECK(nearest_rank_quantile({7.0}, 0.05) == 7);
    CHECK(nearest_rank_quantile({7.0}, 0.95) == 7);
    CHECK_THROWS_AS(nearest_rank_quantile({}, 0.5), DomainError);
    CHECK_THROWS_AS(nearest_rank_quantile({1.0}, 1.5), DomainError);
}

TEST_CASE("sparsity grid keeps the gap norm fixed") {
    const auto grid = exp1_gap_grid(1000, 15.0, 20);
    REQUIRE(grid.size() == 20);
    CHECK(grid.front().s == 1);
    CHECK(grid.back().s == 1000);
    int prev_s = 0;
    for (const GapGridPoint& pt : grid) {
        CHECK(pt.s >= prev_s); // sparsity sweeps upward
        prev_s = pt.s;
        double norm2 = 0.0;
        int nonzero = 0;
        for (double g : pt.gaps) {
            norm2 += g * g;
            if (g != 0.0) ++nonzero;
        }
        CHECK(nonzero == pt.s);
        CHECK(norm2 == doctest::Approx(225.0).epsilon(1e-9));
        CHECK(int(pt.gaps.size()) == 1000);
    }
    CHECK_THROWS_AS(exp1_gap_grid(19, 15.0, 20), DomainError);
    CHECK_THROWS_AS(exp1_gap_grid(1000, 15.0, 1), DomainError);
    CHECK_THROWS_AS(exp1_gap_grid(1000, 0.0, 20), DomainError);
}

TEST_CASE("growth-experiment instances") {
    const auto insts = exp2_instances({100, 200}, 10);
    REQUIRE(insts.size() == 2);
    CHECK(insts[0].n == 100);
    CHECK(insts[0].d == 1000);
    CHECK(insts[1].d == 2000);
    for (const Exp2Instance& e : insts) {
        double norm2 = 0.0;
        for (double g : e.gaps) norm2 += g * g;
        CHECK(norm2 == doctest::Approx(250.0)); // ten entries of 5
        CHECK(e.gaps[9] == 5.0);
        CHECK(e.gaps[10] == 0.0);
    }
    CHECK_THROWS_AS(exp2_instances({1}, 10), DomainError);
    CHECK_THROWS_AS(exp2_instances({3}, 1), DomainError); // d = 3 < 10
}

TEST_CASE("shared instance builder balances the groups") {
    const ProblemInstance inst = make_instance(100, 1000, {5.0, 5.0});
    CHECK(inst.labels.size() == 100);
    int zeros = 0;
    for (int g : inst.labels) zeros += (g == 0);
    CHECK(zeros == 50); // theta = 1/2
    CHECK(inst.labels[0] == 0);
    CHECK(inst.labels[99] == 1);
    CHECK(inst.mu_a[1] == 5.0);
    CHECK(inst.mu_a[2] == 0.0); // padded
    CHECK(inst.mu_b == std::vector<double>(1000, 0.0));
    // odd n rounds the first group up
    CHECK(make_instance(5, 20, {1.0}).labels ==
          std::vector<int>{0, 0, 0, 1, 1});
    CHECK_THROWS_AS(make_instance(4, 2, {1.0, 1.0, 1.0}), DomainError);
}

TEST_CASE("config parsing") {
    SUBCASE("defaults") {
        const ExperimentConfig cfg = parse_config(R"({"experiment":"exp1"})");
        CHECK(cfg.n == 20);
        CHECK(cfg.d == 1000);
        CHECK(cfg.deltas == std::vector<double>{0.8});
        CHECK(cfg.trials == 100);
        CHECK(cfg.seed == 1);
        CHECK(cfg.cap == (std::int64_t{1} << 42));
        CHECK(cfg.noise == "gaussian");
        CHECK(cfg.sigma == 1.0);
        CHECK(cfg.gap_scale == 15.0);
        CHECK(cfg.gamma_count == 20);
        CHECK(cfg.algorithms.empty());
        CHECK_FALSE(cfg.uniform_grid.has_value());
        CHECK(cfg.kmeans_restarts == 10);
        CHECK(cfg.exp2_n_values ==
              std::vector<int>{100, 200, 500, 1000, 2000, 5000});
        CHECK(cfg.exp2_d_factor == 10);
        CHECK(cfg.out.empty());
    }
    SUBCASE("explicit values round-trip") {
        const ExperimentConfig cfg = parse_config(R"({
            "experiment": "exp1", "n": 6, "d": 40, "deltas": [0.2, 0.5],
            "trials": 7, "seed": 99, "cap": 1000, "noise": "zero",
            "gap_scale": 4.0, "gamma_count": 3,
            "algorithms": ["bc", "uniform"],
            "uniform_grid": {"t_min": 100, "t_max": 1000, "points": 4},
            "uniform_error_threshold": 0.1, "kmeans_restarts": 2,
            "out": "rows.csv"
        })");
        CHECK(cfg.n == 6);
        CHECK(cfg.deltas == std::vector<double>{0.2, 0.5});
        CHECK(cfg.trials == 7);
        CHECK(cfg.cap == 1000);
        REQUIRE(cfg.uniform_grid.has_value());
        CHECK(cfg.uniform_grid->t_min == 100);
        CHECK(cfg.uniform_grid->t_max == 1000);
        CHECK(cfg.uniform_grid->points == 4);
        CHECK(cfg.uniform_error_threshold == 0.1);
        CHECK(cfg.out == "rows.csv");
    }
    SUBCASE("subcommand fills and must match") {
        CHECK(parse_config(R"({})", "exp2").experiment == "exp2");
        CHECK_THROWS_AS(parse_config(R"({"experiment":"exp1"})", "exp2"),
                        ConfigError);
        CHECK_THROWS_AS(parse_config(R"({})"), ConfigError); // no experiment
    }
    SUBCASE("rejections") {
        CHECK_THROWS_AS(parse_config("not json", "exp1"), ConfigError);
        CHECK_THROWS_AS(parse_config(R"([1,2])", "exp1"), ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"typo_key":1})", "exp1"),
                        ConfigError);
        CHECK_THROWS_AS(
            parse_config(R"({"uniform_grid":{"tmin":1}})", "exp1"),
            ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"deltas":[1.0]})", "exp1"),
                        ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"trials":0})", "exp1"), ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"algorithms":["uniform"]})", "exp1"),
                        ConfigError); // no grid
        CHECK_THROWS_AS(parse_config(R"({"algorithms":["lloyd"]})", "exp1"),
                        ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"noise":"poisson"})", "exp1"),
                        ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"d":10})", "exp1"), ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"cap":0})", "exp1"), ConfigError);
        CHECK_THROWS_AS(parse_config(R"({"trials":"ten"})", "exp1"),
                        ConfigError); // type error surfaces as ConfigError
    }
}

TEST_CASE("noiseless runs are deterministic per row") {
    const auto rows = run_trials(tiny_exp1());
    REQUIRE(rows.size() == 2); // two grid points, one delta, one algorithm
    CHECK(rows[0].experiment == "exp1:cbc");
    CHECK(rows[0].grid_param == 1);
    CHECK(rows[1].grid_param == 20);
    for (const ResultRow& r : rows) {
        CHECK(r.n == 4);
        CHECK(r.d == 20);
        CHECK(r.delta == 0.5);
        CHECK(r.trials == 3);
        CHECK(r.error_rate == 0.0);
        CHECK(r.emergency_rate == 0.0);
        CHECK(r.seed == 9);
    }
    // on the dense point every column carries the same gap, so the whole
    // trajectory is independent of which slots the sampler draws
    CHECK(rows[1].q05_budget == rows[1].mean_budget);
    CHECK(rows[1].q95_budget == rows[1].mean_budget);
}

TEST_CASE("identical configs serialize identically") {
    const std::string a = to_csv(run_trials(tiny_exp1()));
    const std::string b = to_csv(run_trials(tiny_exp1()));
    CHECK(a == b);
    CHECK(a.substr(0, csv_header().size()) == csv_header());
}

TEST_CASE("algorithm order does not move the substreams") {
    ExperimentConfig cfg = tiny_exp1();
    cfg.trials = 2;
    cfg.algorithms = {"cr", "cbc"};
    const auto forward = by_key(run_trials(cfg));
    cfg.algorithms = {"cbc", "cr"};
    const auto reversed = by_key(run_trials(cfg));
    REQUIRE(forward.size() == 4);
    REQUIRE(reversed.size() == 4);
    for (const auto& [key, row] : forward) {
        const auto it = reversed.find(key);
        REQUIRE(it != reversed.end());
        CHECK(row.mean_budget == it->second.mean_budget);
        CHECK(row.q05_budget == it->second.q05_budget);
        CHECK(row.q95_budget == it->second.q95_budget);
        CHECK(row.error_rate == it->second.error_rate);
    }
}

TEST_CASE("row callback sees every row in order") {
    std::vector<std::string> seen;
    const auto rows = run_trials(tiny_exp1(), [&](const ResultRow& r) {
        seen.push_back(to_csv_row(r));
    });
    REQUIRE(seen.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        CHECK(seen[i] == to_csv_row(rows[i]));
}

TEST_CASE("exhausted trials surface as nan aggregates") {
    ExperimentConfig cfg = tiny_exp1();
    cfg.cap = 1;
    cfg.trials = 2;
    const auto rows = run_trials(cfg);
    REQUIRE(rows.size() == 2);
    for (const ResultRow& r : rows) {
        CHECK(r.emergency_rate == 1.0);
        CHECK(r.error_rate == 1.0);
        CHECK(std::isnan(r.mean_budget));
        CHECK(std::isnan(r.q05_budget));
        CHECK(std::isnan(r.q95_budget));
        const std::string line = to_csv_row(r);
        CHECK(line.find(",nan,nan,nan,") != std::string::npos);
    }
}

TEST_CASE("csv row formatting") {
    ResultRow row;
    row.experiment = "exp1:bc";
    row.grid_param = 3;
    row.n = 20;
    row.d = 1000;
    row.delta = 0.8;
    row.trials = 100;
    row.mean_budget = 12345.6789;
    row.q05_budget = 1000;
    row.q95_budget = 2.5e7;
    row.error_rate = 0.015;
    row.emergency_rate = 0;
    row.seed = 42;
    CHECK(to_csv_row(row) ==
          "exp1:bc,3,20,1000,0.8,100,12345.7,1000,2.5e+07,0.015,0,42\n");
    CHECK(csv_header() ==
          "experiment,grid_param,n,d,delta,trials,mean_budget,q05_budget,"
          "q95_budget,error_rate,emergency_rate,seed\n");
}

TEST_CASE("smallest passing uniform budget") {
    auto uniform_row = [](double t, double err) {
        ResultRow r;
        r.experiment = "exp1:uniform:s=3";
        r.grid_param = t;
        r.error_rate = err;
        return r;
    };
    std::vector<ResultRow> rows;
    ResultRow adaptive;
    adaptive.experiment = "exp1:bc";
    adaptive.grid_param = 500; // not a uniform row; must be ignored
    adaptive.error_rate = 0.0;
    rows.push_back(adaptive);
    rows.push_back(uniform_row(3000, 0.0));
    rows.push_back(uniform_row(1000, 0.2));
    rows.push_back(uniform_row(2000, 0.05)); // at the threshold still passes
    const auto best = smallest_passing_budget(rows, 0.05);
    REQUIRE(best.has_value());
    CHECK(*best == 2000);
    CHECK_FALSE(smallest_passing_budget({adaptive}, 0.05).has_value());
    CHECK_FALSE(
        smallest_passing_budget({uniform_row(1000, 0.2)}, 0.05).has_value());
}

} // TEST_SUITE
