#pragma once

#include <cstdint>
#include <vector>

#include "bcddo/config.hpp"
#include "bcddo/data.hpp"

namespace bcddo {

struct FeatureMask {
    std::vector<bool> bits;

    std::size_t count() const;
    bool empty() const { return count() == 0; }
};

struct FitnessWeights {
    double a = 0.90;

    double b() const { return 1.0 - a; }
};

struct SelectionResult {
    FeatureMask mask;
    double fitness = 0.0;
    double classifier_error = 0.0;
    std::size_t selected_count = 0;
    std::vector<double> fitness_history;
    std::uint64_t seed = 0;
    std::size_t evaluations = 0;
};

/// Bit i set iff position[i] > threshold; components exactly at the
/// threshold deprecate the feature.
FeatureMask binarize(const std::vector<double>& position, double threshold);

/// Guarantees a non-empty mask: an all-zero mask gets the bit at the
/// argmax of the position (ties to the lowest index).
FeatureMask repair_mask(const FeatureMask& mask, const std::vector<double>& position);

/// a * knn_error + (1 - a) * selected / D, with the error measured on
/// `validate` using only the masked columns of `train`.
double wrapper_fitness(const FeatureMask& mask, const Dataset& train, const Dataset& validate,
                       const FitnessWeights& weights, std::size_t k);

/// Runs the continuous optimizer over [0,1]^D with the wrapper fitness.
/// `dataset` is the training portion; it is re-split 80/20 (stratified,
/// seeded with config.seed) into fit/validate so the search never touches
/// held-out test data.
SelectionResult select_features(const Dataset& dataset, const RunConfig& config);

/// The fit/validate re-split used by the wrapper fitness, exposed so the
/// oracle and baselines evaluate masks on identical data.
std::pair<Dataset, Dataset> fitness_split(const Dataset& dataset, std::uint64_t seed);

}  // namespace bcddo
