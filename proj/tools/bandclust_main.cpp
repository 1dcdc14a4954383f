#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bandclust/bounds.hpp"
#include "bandclust/harness.hpp"
#include "bandclust/pipeline.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw bandclust::ConfigError("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// "@path" loads whitespace-separated values from a file; anything else is an
// inline comma-separated list.
std::vector<double> parse_gaps(const std::string& text) {
    std::vector<double> gaps;
    if (!text.empty() && text.front() == '@') {
        std::istringstream in(read_file(text.substr(1)));
        double v = 0.0;
        while (in >> v) gaps.push_back(v);
    } else {
        std::istringstream in(text);
        std::string tok;
        while (std::getline(in, tok, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(tok, &used);
                while (used < tok.size() && std::isspace(
                           static_cast<unsigned char>(tok[used])))
                    ++used;
                if (used != tok.size()) throw std::invalid_argument(tok);
                gaps.push_back(v);
            } catch (const std::exception&) {
                throw bandclust::ConfigError("bad gap value: " + tok);
            }
        }
    }
    if (gaps.empty()) throw bandclust::ConfigError("no gap values given");
    return gaps;
}

std::vector<int> parse_labels(const std::string& text, int n) {
    if (text == "auto") {
        std::vector<int> labels(std::size_t(n), 1);
        for (int i = 0; i < (n + 1) / 2; ++i) labels[std::size_t(i)] = 0;
        return labels;
    }
    if (text.empty() || text.front() != '@')
        throw bandclust::ConfigError(
            "--theta-labels takes \"auto\" or \"@<file>\"");
    std::istringstream in(read_file(text.substr(1)));
    std::vector<int> labels;
    int v = 0;
    while (in >> v) labels.push_back(v);
    if (static_cast<int>(labels.size()) != n)
        throw bandclust::ConfigError("label file must hold exactly n values");
    return labels;
}

bandclust::NoiseModel make_noise(const std::string& kind, double sigma) {
    if (kind == "gaussian") return bandclust::NoiseModel::gaussian(sigma);
    if (kind == "bernoulli") return bandclust::NoiseModel::bernoulli();
    if (kind == "zero") return bandclust::NoiseModel::zero();
    throw bandclust::ConfigError("unknown noise kind: " + kind);
}

struct ClusterArgs {
    int n = 2;
    int d = 0; // 0: use the gap vector's length
    std::string gaps;
    std::string labels = "auto";
    double delta = 0.1;
    std::uint64_t seed = 1;
    std::int64_t cap = std::int64_t{1} << 42;
    std::string noise = "gaussian";
    double sigma = 1.0;
};

int run_cluster(const ClusterArgs& a) {
    const std::vector<double> gaps = parse_gaps(a.gaps);
    const int d = a.d > 0 ? a.d : static_cast<int>(gaps.size());

    bandclust::ProblemInstance inst;
    inst.n = a.n;
    inst.d = d;
    inst.mu_a = gaps;
    if (static_cast<int>(inst.mu_a.size()) > d)
        throw bandclust::ConfigError("gap vector longer than d");
    inst.mu_a.resize(std::size_t(d), 0.0);
    inst.mu_b.assign(std::size_t(d), 0.0);
    inst.labels = parse_labels(a.labels, a.n);
    bandclust::validate_instance(inst);

    bandclust::Environment env(
        inst, make_noise(a.noise, a.sigma),
        bandclust::Rng(bandclust::derive_seed(a.seed, 1)), a.cap);
    bandclust::Rng algo_rng(bandclust::derive_seed(a.seed, 2));
    const bandclust::PipelineOutcome out =
        bandclust::bandit_clustering(env, a.delta, algo_rng);

    json doc;
    doc["emergency_stopped"] = out.emergency_stopped;
    doc["candidate"] = out.candidate;
    doc["labels"] = out.labels;
    doc["correct"] = !out.emergency_stopped && out.labels == inst.labels;
    doc["budget"] = {{"detect", out.budget_detect},
                     {"classify", out.budget_classify},
                     {"total", out.budget_total}};
    if (out.detect)
        doc["detect"] = {{"k_final", out.detect->k_final},
                         {"iterations", out.detect->trace.size()}};
    if (out.classify)
        doc["classify"] = {{"k_final", out.classify->k_final},
                           {"feature", out.classify->feature},
                           {"m_final", out.classify->m_final},
                           {"epsilon_final", out.classify->epsilon_final},
                           {"d_hat", out.classify->d_hat}};
    std::cout << doc.dump(2) << '\n';
    return out.emergency_stopped ? 3 : 0;
}

struct ExpArgs {
    std::string config;
    std::string out;
    int trials = 0;          // 0: keep the config's value
    std::uint64_t seed = 0;  // used only when seed_set
    bool seed_set = false;
};

int run_experiment(const std::string& kind, const ExpArgs& a) {
    bandclust::ExperimentConfig cfg =
        bandclust::parse_config(read_file(a.config), kind);
    if (a.trials > 0) cfg.trials = a.trials;
    if (a.seed_set) cfg.seed = a.seed;
    const std::string out_path = !a.out.empty() ? a.out : cfg.out;
    if (out_path.empty())
        throw bandclust::ConfigError("no output path: give --out or \"out\"");

    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw bandclust::ConfigError("cannot write: " + out_path);
    out << bandclust::csv_header();
    // flush per row so an interrupted run still leaves usable partial results
    bandclust::run_trials(cfg, [&out](const bandclust::ResultRow& row) {
        out << bandclust::to_csv_row(row);
        out.flush();
    });
    return 0;
}

struct BoundsArgs {
    std::string gaps;
    double theta = 0.5;
    int n = 0;
    int d = 0; // 0: use the gap vector's length
    double delta = 0.1;
};

int run_bounds(const BoundsArgs& a) {
    std::vector<double> gaps = parse_gaps(a.gaps);
    if (a.d > 0) {
        if (static_cast<int>(gaps.size()) > a.d)
            throw bandclust::ConfigError("gap vector longer than d");
        gaps.resize(std::size_t(a.d), 0.0);
    }
    const bandclust::BoundsReport rep =
        bandclust::bounds_report(gaps, a.theta, a.n, a.delta);

    json doc;
    doc["h_complexity"] = rep.h_complexity;
    doc["s_star"] = rep.s_star;
    doc["s_tilde"] = rep.s_tilde;
    doc["sandwich"] = {{"left", rep.sandwich.left},
                       {"mid", rep.sandwich.mid},
                       {"right", rep.sandwich.right}};
    doc["lb_quantile"] =
        rep.lb_quantile ? json(*rep.lb_quantile) : json(nullptr);
    doc["flat_gap"] = rep.flat_gap ? json(*rep.flat_gap) : json(nullptr);
    std::cout << doc.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Adaptive two-group clustering: pipeline runs, Monte-Carlo "
                 "experiments, and budget bounds"};
    app.require_subcommand(1);
    int rc = 0;

    ClusterArgs ca;
    CLI::App* cluster = app.add_subcommand(
        "cluster", "One seeded pipeline run on a synthetic instance");
    cluster->add_option("--n", ca.n, "items")->check(CLI::Range(2, 1 << 20));
    cluster->add_option("--d", ca.d, "features (default: gap count)");
    cluster->add_option("--gaps", ca.gaps,
                        "group mean difference: \"v1,v2,...\" or @file")
        ->required();
    cluster->add_option("--theta-labels", ca.labels,
                        "\"auto\" (balanced) or @file with n 0/1 labels");
    cluster->add_option("--delta", ca.delta, "failure probability");
    cluster->add_option("--seed", ca.seed, "master seed");
    cluster->add_option("--cap", ca.cap, "observation cap (emergency stop)")
        ->check(CLI::PositiveNumber);
    cluster->add_option("--noise", ca.noise, "gaussian | bernoulli | zero");
    cluster->add_option("--sigma", ca.sigma, "gaussian noise scale in (0,1]");
    cluster->callback([&] { rc = run_cluster(ca); });

    ExpArgs e1, e2;
    auto add_exp = [&app, &rc](const char* name, ExpArgs* args,
                               const char* blurb) {
        CLI::App* sub = app.add_subcommand(name, blurb);
        sub->add_option("--config", args->config, "JSON experiment config")
            ->required();
        sub->add_option("--out", args->out, "CSV output path");
        sub->add_option("--trials", args->trials, "override config trials")
            ->check(CLI::PositiveNumber);
        sub->add_option("--seed", args->seed, "override config seed")
            ->each([args](const std::string&) { args->seed_set = true; });
        const std::string kind = name;
        sub->callback([&rc, kind, args] { rc = run_experiment(kind, *args); });
    };
    add_exp("exp1", &e1, "Budget vs. gap sparsity on a fixed instance size");
    add_exp("exp2", &e2, "Budget scaling as items and features grow");

    BoundsArgs ba;
    CLI::App* bounds = app.add_subcommand(
        "bounds", "Closed-form complexity and lower-bound report");
    bounds->add_option("--gaps", ba.gaps, "\"v1,v2,...\" or @file")
        ->required();
    bounds->add_option("--theta", ba.theta, "smaller-group fraction");
    bounds->add_option("--n", ba.n, "items")->required();
    bounds->add_option("--d", ba.d, "features (default: gap count)");
    bounds->add_option("--delta", ba.delta, "failure probability");
    bounds->callback([&] { rc = run_bounds(ba); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const bandclust::BudgetExhausted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
