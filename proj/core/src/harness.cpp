#include "klent/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "klent/densities.hpp"
#include "klent/errors.hpp"
#include "klent/estimator.hpp"
#include "klent/inference.hpp"
#include "klent/rng.hpp"

namespace klent {

namespace {

const char* backend_name(KnnBackend b) {
    return b == KnnBackend::brute ? "brute" : "tree";
}

KnnBackend backend_from_name(const std::string& s) {
    if (s == "brute") return KnnBackend::brute;
    if (s == "tree") return KnnBackend::tree;
    throw std::invalid_argument("unknown knn backend '" + s + "'");
}

unsigned worker_count(int replicates) {
    unsigned workers = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("KLENT_THREADS")) {
        workers = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    }
    if (workers < 1) workers = 1;
    return std::min<unsigned>(workers, static_cast<unsigned>(replicates));
}

struct ReplicateResult {
    double h = 0.0;
    bool clamped = false;
    bool resampled = false;
    int covered = -1;  // -1 = no CI requested
};

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig cfg;
    cfg.model = j.at("model").get<std::string>();
    cfg.n = j.at("n").get<std::size_t>();
    cfg.k = j.at("k").get<int>();
    if (j.contains("weights")) {
        const auto w = j.at("weights").get<std::string>();
        if (w == "canonical") cfg.canonical_weights = true;
        else if (w == "unweighted") cfg.canonical_weights = false;
        else throw std::invalid_argument("weights must be 'canonical' or 'unweighted'");
    }
    cfg.replicates = j.at("replicates").get<int>();
    cfg.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("ci_level")) cfg.ci_level = j.at("ci_level").get<double>();
    if (j.contains("backend")) cfg.backend = backend_from_name(j.at("backend"));
    return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j{
        {"model", model},
        {"n", n},
        {"k", k},
        {"weights", canonical_weights ? "canonical" : "unweighted"},
        {"replicates", replicates},
        {"seed", seed},
        {"backend", backend_name(backend)},
    };
    if (ci_level) j["ci_level"] = *ci_level;
    return j;
}

nlohmann::json SimulationReport::to_json() const {
    nlohmann::json j{
        {"schema", 1},
        {"config", config.to_json()},
        {"true_entropy", true_entropy},
        {"mean_h", mean_h},
        {"bias", bias},
        {"variance", variance},
        {"n_mse", n_mse},
        {"clamp_rate", clamp_rate},
        {"resample_rate", resample_rate},
        {"mc_stderr", {{"mean_h", stderr_mean}, {"bias", stderr_mean},
                       {"n_mse", stderr_n_mse}}},
    };
    if (coverage) {
        j["coverage"] = *coverage;
        j["mc_stderr"]["coverage"] = *stderr_coverage;
    }
    return j;
}

SimulationReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.replicates < 1) throw std::invalid_argument("run_experiment: replicates >= 1");
    if (cfg.n < 2 || cfg.k < 1 || static_cast<std::size_t>(cfg.k) > cfg.n - 1) {
        throw std::invalid_argument("run_experiment: need n >= 2 and 1 <= k <= n-1");
    }
    const auto model = make_model(cfg.model);
    const int d = static_cast<int>(model->dim());
    const WeightVector weights = cfg.canonical_weights
                                     ? canonical_weights(cfg.k, d)
                                     : unit_weights(cfg.k, d);
    const double truth = model->entropy();

    std::vector<ReplicateResult> results(static_cast<std::size_t>(cfg.replicates));

    auto run_one = [&](std::uint64_t rep) {
        ReplicateResult res;
        for (int attempt = 0; attempt < 2; ++attempt) {
            // The resample attempt uses a stream tagged away from the
            // primary replicate ids.
            RngStream rng(cfg.seed,
                          attempt == 0 ? rep : (rep | (std::uint64_t{1} << 63)));
            PointCloud cloud = model->sample(rng, cfg.n);
            try {
                const auto nd = all_knn_distances(
                    cloud, static_cast<std::size_t>(cfg.k), cfg.backend);
                const auto xi = xi_values(nd, cloud.n, cloud.d);
                res.h = weighted_estimate_from_xi(xi, weights);
                if (cfg.ci_level) {
                    const auto var = variance_estimate(xi, weights, res.h);
                    res.clamped = var.clamped;
                    const auto ci =
                        confidence_interval(res.h, var.value, cfg.n, *cfg.ci_level);
                    res.covered = (ci.lower <= truth && truth <= ci.upper) ? 1 : 0;
                }
                return res;
            } catch (const ZeroDistanceError&) {
                res.resampled = true;
            }
        }
        throw std::runtime_error(
            "run_experiment: replicate " + std::to_string(rep) +
            " drew coincident points twice (model " + cfg.model + ")");
    };

    const unsigned workers = worker_count(cfg.replicates);
    if (workers <= 1) {
        for (int r = 0; r < cfg.replicates; ++r) {
            results[r] = run_one(static_cast<std::uint64_t>(r));
        }
    } else {
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (int r = static_cast<int>(w); r < cfg.replicates;
                         r += static_cast<int>(workers)) {
                        results[r] = run_one(static_cast<std::uint64_t>(r));
                    }
                } catch (...) {
                    std::scoped_lock lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    // Deterministic ordered aggregation.
    const auto m = static_cast<double>(cfg.replicates);
    double sum_h = 0.0;
    for (const auto& r : results) sum_h += r.h;
    const double mean_h = sum_h / m;

    double ss = 0.0, sum_sq_err = 0.0, sum_sq_err2 = 0.0;
    double clamped = 0.0, resampled = 0.0, covered = 0.0;
    for (const auto& r : results) {
        const double dev = r.h - mean_h;
        ss += dev * dev;
        const double err2 = (r.h - truth) * (r.h - truth);
        sum_sq_err += err2;
        sum_sq_err2 += err2 * err2;
        clamped += r.clamped ? 1.0 : 0.0;
        resampled += r.resampled ? 1.0 : 0.0;
        covered += r.covered == 1 ? 1.0 : 0.0;
    }

    SimulationReport rep;
    rep.config = cfg;
    rep.true_entropy = truth;
    rep.mean_h = mean_h;
    rep.bias = mean_h - truth;
    rep.variance = cfg.replicates > 1 ? ss / (m - 1.0) : 0.0;
    const double mse = sum_sq_err / m;
    rep.n_mse = static_cast<double>(cfg.n) * mse;
    rep.clamp_rate = clamped / m;
    rep.resample_rate = resampled / m;
    rep.stderr_mean = cfg.replicates > 1 ? std::sqrt(rep.variance / m) : 0.0;
    const double var_sq_err =
        cfg.replicates > 1 ? (sum_sq_err2 / m - mse * mse) * m / (m - 1.0) : 0.0;
    rep.stderr_n_mse =
        static_cast<double>(cfg.n) * std::sqrt(std::max(var_sq_err, 0.0) / m);
    if (cfg.ci_level) {
        const double p = covered / m;
        rep.coverage = p;
        rep.stderr_coverage = std::sqrt(p * (1.0 - p) / m);
    }
    return rep;
}

namespace {

bool is_numeric_token(const std::string& tok) {
    char* end = nullptr;
    std::strtod(tok.c_str(), &end);
    return end != tok.c_str() && *end == '\0';
}

std::vector<std::string> split_fields(const std::string& line) {
    std::string normalised = line;
    for (char& c : normalised) {
        if (c == ',' || c == '\t') c = ' ';
    }
    std::vector<std::string> fields;
    std::istringstream ss(normalised);
    std::string tok;
    while (ss >> tok) fields.push_back(tok);
    return fields;
}

}  // namespace

PointCloud read_points_csv(std::istream& in) {
    PointCloud cloud;
    std::string line;
    bool first_data_line = true;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto fields = split_fields(line);
        if (fields.empty()) continue;
        if (first_data_line) {
            bool all_numeric = true;
            for (const auto& f : fields) all_numeric = all_numeric && is_numeric_token(f);
            if (!all_numeric) continue;  // header row
            cloud.d = fields.size();
            first_data_line = false;
        }
        if (fields.size() != cloud.d) {
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": expected " + std::to_string(cloud.d) +
                                        " fields, got " + std::to_string(fields.size()));
        }
        for (const auto& f : fields) {
            if (!is_numeric_token(f)) {
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": non-numeric value '" + f + "'");
            }
            cloud.data.push_back(std::strtod(f.c_str(), nullptr));
        }
        ++cloud.n;
    }
    cloud.validate();
    return cloud;
}

PointCloud read_points_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
    return read_points_csv(in);
}

}  // namespace klent
