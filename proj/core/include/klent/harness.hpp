#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "klent/knn.hpp"

#include <json.hpp>

namespace klent {

// One Monte Carlo experiment: M independent samples from a reference model,
// the configured estimate (and optionally a CI) per replicate, aggregated
// against the model's closed-form entropy.
struct ExperimentConfig {
    std::string model;                      // e.g. "gaussian:d=1"
    std::size_t n = 0;
    int k = 0;
    bool canonical_weights = false;         // false = classical unweighted
    int replicates = 1;
    std::uint64_t seed = 0;
    std::optional<double> ci_level;
    KnnBackend backend = KnnBackend::tree;

    static ExperimentConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct SimulationReport {
    double true_entropy = 0.0;
    double mean_h = 0.0;
    double bias = 0.0;          // mean_h - H(f)
    double variance = 0.0;      // sample variance across replicates
    double n_mse = 0.0;         // n * mean squared error
    std::optional<double> coverage;
    double clamp_rate = 0.0;    // fraction of replicates with clamped V
    double resample_rate = 0.0; // fraction needing a zero-distance resample

    double stderr_mean = 0.0;
    double stderr_n_mse = 0.0;
    std::optional<double> stderr_coverage;

    ExperimentConfig config;

    nlohmann::json to_json() const;
};

// Runs the experiment.  Replicate r draws from a stream derived from
// (seed, r), so the report is reproducible for a fixed config regardless
// of scheduling.  A replicate that hits coincident points is redrawn once
// (from a tagged stream); a second failure aborts.
SimulationReport run_experiment(const ExperimentConfig& cfg);

// Points-as-rows text input: comma- or whitespace-separated finite decimals,
// one point per row, optional header row auto-detected by a non-numeric
// first token.
PointCloud read_points_csv(std::istream& in);
PointCloud read_points_csv_file(const std::string& path);

}  // namespace klent
