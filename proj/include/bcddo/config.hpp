#pragma once

#include <cstdint>
#include <string>

namespace bcddo {

/// All tunables for a feature-selection run. Defaults follow the
/// published parameterization of the algorithm.
struct RunConfig {
    std::string dataset_path;
    std::string label_column;

    double train_fraction = 0.70;
    std::size_t population_size = 30;
    std::size_t max_iterations = 100;
    double cr = 0.1;
    double sr_init = 0.9;
    double lr_init = 0.01;
    std::size_t pattern_size = 10;
    double lower_bound = 0.0;
    double upper_bound = 1.0;
    double threshold = 0.5;
    double weight_a = 0.90;
    std::size_t knn_k = 5;
    double gr_tolerance = 0.1;
    std::uint64_t seed = 0;
    std::size_t num_seeds = 1;
    bool fixed_rates = false;
    bool normalize_on_train_only = false;
    std::size_t oracle_max_features = 20;
    std::string output_path;
};

}  // namespace bcddo
