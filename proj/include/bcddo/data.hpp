#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace bcddo {

/// Thrown for anything wrong with an input file or its contents.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Dataset {
    std::vector<std::vector<double>> features;  // N rows, D columns
    std::vector<int> labels;                    // dense ids in [0, class count)
    std::vector<std::string> feature_names;
    std::vector<std::string> class_names;
    bool normalized = false;
    /// Per-column (min, max) recorded by normalize_minmax.
    std::vector<std::pair<double, double>> column_ranges;

    std::size_t num_samples() const { return features.size(); }
    std::size_t num_features() const { return feature_names.size(); }
    std::size_t num_classes() const { return class_names.size(); }
};

/// Label column selectable by name or zero-based index.
using LabelColumn = std::variant<std::string, std::size_t>;

Dataset load_csv(const std::string& path, const LabelColumn& label_column,
                 bool has_header = true);

void save_csv(const Dataset& dataset, const std::string& path);

/// Maps each column through (x - min) / (max - min); constant columns go
/// to 0. Records the ranges so inputs can be recovered.
Dataset normalize_minmax(const Dataset& dataset);

/// Re-applies recorded column ranges to another dataset with the same
/// schema (used when normalization statistics come from the training
/// portion only). Values outside the recorded range map outside [0,1].
Dataset apply_normalization(const Dataset& dataset,
                            const std::vector<std::pair<double, double>>& column_ranges);

struct Finding {
    enum class Severity { warning, error };
    Severity severity;
    std::string message;
};

/// Non-fatal dataset checks: class imbalance (ratio > 1.5), NaN/infinite
/// cells, duplicate rows.
std::vector<Finding> validate(const Dataset& dataset);

}  // namespace bcddo
