#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bcddo/binary.hpp"
#include "bcddo/classify.hpp"
#include "bcddo/config.hpp"
#include "bcddo/data.hpp"

namespace bcddo {

struct OracleEntry {
    FeatureMask mask;
    double fitness = 0.0;
};

struct OracleResult {
    FeatureMask best_mask;
    double best_fitness = 0.0;
    /// All 2^D - 1 candidates sorted by fitness, ties by mask bits.
    std::vector<OracleEntry> ranked;
};

/// Brute force over every non-empty mask under the same fit/validate
/// split the search uses. Refuses when D exceeds max_features.
OracleResult exhaustive_oracle(const Dataset& dataset, const FitnessWeights& weights,
                               std::size_t k, std::uint64_t split_seed,
                               std::size_t max_features = 20);

/// Uniform random non-empty masks under the same split protocol; returns
/// the best of `budget` evaluations.
SelectionResult random_search(const Dataset& dataset, const RunConfig& config,
                              std::size_t budget);

struct SeedOutcome {
    std::uint64_t seed = 0;
    SelectionResult selection;
    Metrics test_metrics;
    ConfusionMatrix test_confusion;
    std::size_t test_samples = 0;
    double wall_ms = 0.0;
};

struct ExperimentReport {
    std::string dataset_name;
    std::string dataset_hash;
    std::vector<SeedOutcome> per_seed;
    double mean_accuracy = 0.0, min_accuracy = 0.0, max_accuracy = 0.0, stddev_accuracy = 0.0;
    double mean_fitness = 0.0, min_fitness = 0.0, max_fitness = 0.0, stddev_fitness = 0.0;
    double mean_selected = 0.0;
};

/// Full pipeline per seed s in [config.seed, config.seed + num_seeds):
/// 70/30 stratified split with seed s, feature search on the training
/// portion, final KNN evaluation of the selected mask on the test
/// portion.
ExperimentReport run_experiment(const Dataset& dataset, const RunConfig& config,
                                std::size_t num_seeds);

/// Recomputes the aggregate statistics from per_seed in place.
void aggregate(ExperimentReport& report);

/// Labeled binary classification data with `informative` signal columns
/// followed by `noise` uniform columns. Used by the baselines and tests.
Dataset make_synthetic(std::size_t samples, std::size_t informative, std::size_t noise,
                       std::uint64_t seed);

std::string report_to_json(const ExperimentReport& report, const RunConfig& config);
ExperimentReport report_from_json(const std::string& text);

}  // namespace bcddo
