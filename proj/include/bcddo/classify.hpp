#pragma once

#include <cstdint>
#include <vector>

#include "bcddo/data.hpp"

namespace bcddo {

/// Rows are true classes, columns predicted classes.
struct ConfusionMatrix {
    std::vector<std::vector<std::size_t>> counts;

    std::size_t num_classes() const { return counts.size(); }
    std::size_t total() const;
};

struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::vector<double> per_class_accuracy;
};

/// Majority vote among the k nearest training rows by Euclidean distance.
/// Distance ties go to the lower training index; vote ties go to the
/// nearest tied class.
int knn_predict(const std::vector<std::vector<double>>& train_features,
                const std::vector<int>& train_labels, const std::vector<double>& query,
                std::size_t k);

double error_rate(const std::vector<int>& predictions, const std::vector<int>& truth);

ConfusionMatrix confusion(const std::vector<int>& predictions, const std::vector<int>& truth,
                          std::size_t num_classes);

/// Binary case follows the usual TP/TN/FP/FN formulas with class 1 as
/// positive; multi-class reports macro averages and one-vs-rest per-class
/// accuracy.
Metrics metrics_from_confusion(const ConfusionMatrix& cm);

/// Per-class proportional split with seeded shuffling.
std::pair<Dataset, Dataset> stratified_split(const Dataset& dataset, double train_fraction,
                                             std::uint64_t seed);

}  // namespace bcddo
