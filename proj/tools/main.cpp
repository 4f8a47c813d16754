// klent: weighted k-nearest-neighbour entropy estimation toolkit.
//
// Subcommands: estimate, weights, inflation, simulate.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "klent/densities.hpp"
#include "klent/errors.hpp"
#include "klent/estimator.hpp"
#include "klent/harness.hpp"
#include "klent/inference.hpp"
#include "klent/inflation.hpp"
#include "klent/weights.hpp"

namespace {

using nlohmann::json;

struct EstimateArgs {
    std::string input;
    int k = 1;
    std::string weights = "unweighted";
    double ci_level = -1.0;
    std::string backend = "tree";
    bool as_json = false;
};

int run_estimate(const EstimateArgs& args) {
    const klent::PointCloud cloud = klent::read_points_csv_file(args.input);
    const int d = static_cast<int>(cloud.d);
    const klent::WeightVector w = args.weights == "canonical"
                                      ? klent::canonical_weights(args.k, d)
                                      : klent::unit_weights(args.k, d);
    const auto backend = args.backend == "brute" ? klent::KnnBackend::brute
                                                 : klent::KnnBackend::tree;

    const auto nd = klent::all_knn_distances(cloud, static_cast<std::size_t>(args.k), backend);
    const auto xi = klent::xi_values(nd, cloud.n, cloud.d);
    const double h_hat = klent::weighted_estimate_from_xi(xi, w);

    json out{{"schema", 1},
             {"h_hat", h_hat},
             {"n", cloud.n},
             {"d", cloud.d},
             {"k", args.k},
             {"weights", args.weights}};
    if (args.ci_level > 0.0) {
        const auto var = klent::variance_estimate(xi, w, h_hat);
        const auto ci = klent::confidence_interval(h_hat, var.value, cloud.n, args.ci_level);
        out["v_hat"] = var.value;
        out["v_clamped"] = var.clamped;
        out["ci"] = {{"lower", ci.lower}, {"upper", ci.upper}, {"level", ci.level}};
    }

    if (args.as_json) {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "h_hat = " << h_hat << " nats  (n=" << cloud.n << ", d=" << cloud.d
                  << ", k=" << args.k << ", " << args.weights << ")\n";
        if (out.contains("ci")) {
            std::cout << "v_hat = " << out["v_hat"].get<double>()
                      << (out["v_clamped"].get<bool>() ? " (clamped)" : "") << "\n"
                      << static_cast<int>(args.ci_level * 100) << "% CI: ["
                      << out["ci"]["lower"].get<double>() << ", "
                      << out["ci"]["upper"].get<double>() << "]\n";
        }
    }
    return 0;
}

int run_weights(int k, int d, bool as_json) {
    const klent::WeightVector w = klent::canonical_weights(k, d);
    const klent::WeightReport report = klent::validate_weights(w, k, d);

    if (as_json) {
        json out{{"schema", 1},
                 {"k", k},
                 {"d", d},
                 {"support", w.support},
                 {"values", json::array()},
                 {"sum_residual", report.sum_residual},
                 {"moment_residuals", report.moment_residuals},
                 {"in_class", report.in_class}};
        for (int j : w.support) out["values"].push_back(w.w[j - 1]);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "canonical weights for k=" << k << ", d=" << d << "\n";
    for (int j : w.support) {
        std::cout << "  w_" << j << " = " << w.w[j - 1] << "\n";
    }
    std::cout << "sum residual: " << report.sum_residual << "\n";
    for (std::size_t l = 0; l < report.moment_residuals.size(); ++l) {
        std::cout << "moment residual l=" << l + 1 << ": " << report.moment_residuals[l]
                  << "\n";
    }
    std::cout << "in weight class: " << (report.in_class ? "yes" : "no") << "\n";
    return 0;
}

int run_inflation(int d, int k, bool table, double rel_tol) {
    if (table) {
        std::cout << "d\\k,1,2,3,4,5\n";
        for (int dd : {1, 2, 3, 5, 10}) {
            std::cout << dd;
            for (int kk = 1; kk <= 5; ++kk) {
                klent::InflationSpec spec;
                spec.d = dd;
                spec.k = kk;
                spec.rel_tol = rel_tol;
                std::printf(",%.4f", klent::inflation_value(spec).value);
            }
            std::cout << "\n";
        }
        return 0;
    }
    klent::InflationSpec spec;
    spec.d = d;
    spec.k = k;
    spec.rel_tol = rel_tol;
    const auto res = klent::inflation_value(spec);
    std::printf("%.4f (error bound %.1e)\n", res.value, res.error_bound);
    return 0;
}

struct SimulateArgs {
    std::string config_path;
    std::string model = "gaussian:d=1";
    std::size_t n = 1000;
    int k = 1;
    std::string weights = "unweighted";
    int reps = 100;
    std::uint64_t seed = 0;
    double ci_level = -1.0;
    std::string backend = "tree";
    std::string output;
};

int run_simulate(const SimulateArgs& args) {
    klent::ExperimentConfig cfg;
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) {
            std::cerr << "error: cannot open config file '" << args.config_path << "'\n";
            return 2;
        }
        cfg = klent::ExperimentConfig::from_json(json::parse(in));
    } else {
        cfg.model = args.model;
        cfg.n = args.n;
        cfg.k = args.k;
        cfg.canonical_weights = args.weights == "canonical";
        cfg.replicates = args.reps;
        cfg.seed = args.seed;
        if (args.ci_level > 0.0) cfg.ci_level = args.ci_level;
        cfg.backend = args.backend == "brute" ? klent::KnnBackend::brute
                                              : klent::KnnBackend::tree;
    }

    const klent::SimulationReport report = klent::run_experiment(cfg);
    const std::string text = report.to_json().dump(2);
    if (!args.output.empty()) {
        std::ofstream out(args.output);
        out << text << "\n";
    } else {
        std::cout << text << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted k-nearest-neighbour entropy estimation"};
    app.require_subcommand(1);

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "entropy estimate from a points file");
    estimate->add_option("--input", est.input, "points file (CSV or whitespace)")
        ->required();
    estimate->add_option("--k", est.k, "neighbour order")->required();
    estimate->add_option("--weights", est.weights, "canonical|unweighted")
        ->check(CLI::IsMember({"canonical", "unweighted"}));
    estimate->add_option("--ci", est.ci_level, "confidence level in (0,1)");
    estimate->add_option("--backend", est.backend, "tree|brute")
        ->check(CLI::IsMember({"tree", "brute"}));
    estimate->add_flag("--json", est.as_json, "JSON output");

    int wk = 0, wd = 0;
    bool wjson = false;
    auto* weights = app.add_subcommand("weights", "canonical weight vector and residuals");
    weights->add_option("--k", wk)->required();
    weights->add_option("--d", wd)->required();
    weights->add_flag("--json", wjson, "JSON output");

    int infd = 1, infk = 1;
    bool inftable = false;
    double inftol = 1e-4;
    auto* inflation = app.add_subcommand("inflation", "fixed-k asymptotic variance inflation");
    inflation->add_option("--d", infd);
    inflation->add_option("--k", infk);
    inflation->add_flag("--table", inftable, "emit the full reference grid as CSV");
    inflation->add_option("--rel-tol", inftol, "quadrature tolerance");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo experiment");
    simulate->add_option("--config", sim.config_path, "JSON config file");
    simulate->add_option("--model", sim.model, "model spec, e.g. gaussian:d=2");
    simulate->add_option("--n", sim.n, "sample size");
    simulate->add_option("--k", sim.k, "neighbour order");
    simulate->add_option("--weights", sim.weights, "canonical|unweighted")
        ->check(CLI::IsMember({"canonical", "unweighted"}));
    simulate->add_option("--reps", sim.reps, "number of replicates");
    simulate->add_option("--seed", sim.seed, "64-bit seed");
    simulate->add_option("--ci", sim.ci_level, "confidence level in (0,1)");
    simulate->add_option("--backend", sim.backend, "tree|brute")
        ->check(CLI::IsMember({"tree", "brute"}));
    simulate->add_option("-o,--output", sim.output, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*estimate) return run_estimate(est);
        if (*weights) return run_weights(wk, wd, wjson);
        if (*inflation) return run_inflation(infd, infk, inftable, inftol);
        if (*simulate) return run_simulate(sim);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
