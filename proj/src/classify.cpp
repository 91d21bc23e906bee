#include "bcddo/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "bcddo/rng.hpp"

namespace bcddo {

std::size_t ConfusionMatrix::total() const {
    std::size_t n = 0;
    for (const auto& row : counts) n += std::accumulate(row.begin(), row.end(), std::size_t{0});
    return n;
}

int knn_predict(const std::vector<std::vector<double>>& train_features,
                const std::vector<int>& train_labels, const std::vector<double>& query,
                std::size_t k) {
    if (train_features.empty()) throw std::invalid_argument("knn_predict: empty training set");
    if (k < 1 || k > train_features.size())
        throw std::invalid_argument("knn_predict: k out of range");

    struct Neighbor {
        double dist_sq;
        std::size_t index;
    };
    std::vector<Neighbor> neighbors(train_features.size());
    for (std::size_t i = 0; i < train_features.size(); ++i) {
        double d = 0.0;
        const auto& row = train_features[i];
        for (std::size_t c = 0; c < query.size(); ++c) {
            const double diff = row[c] - query[c];
            d += diff * diff;
        }
        neighbors[i] = {d, i};
    }
    const auto by_dist_then_index = [](const Neighbor& a, const Neighbor& b) {
        return a.dist_sq != b.dist_sq ? a.dist_sq < b.dist_sq : a.index < b.index;
    };
    std::partial_sort(neighbors.begin(), neighbors.begin() + static_cast<std::ptrdiff_t>(k),
                      neighbors.end(), by_dist_then_index);

    // Count votes and remember the best rank at which each class appears.
    std::vector<std::size_t> votes;
    std::vector<std::size_t> best_rank;
    for (std::size_t r = 0; r < k; ++r) {
        const auto cls = static_cast<std::size_t>(train_labels[neighbors[r].index]);
        if (cls >= votes.size()) {
            votes.resize(cls + 1, 0);
            best_rank.resize(cls + 1, std::numeric_limits<std::size_t>::max());
        }
        ++votes[cls];
        best_rank[cls] = std::min(best_rank[cls], r);
    }
    std::size_t winner = 0;
    for (std::size_t cls = 1; cls < votes.size(); ++cls) {
        if (votes[cls] > votes[winner] ||
            (votes[cls] == votes[winner] && best_rank[cls] < best_rank[winner])) {
            winner = cls;
        }
    }
    return static_cast<int>(winner);
}

double error_rate(const std::vector<int>& predictions, const std::vector<int>& truth) {
    if (predictions.size() != truth.size() || predictions.empty())
        throw std::invalid_argument("error_rate: prediction/truth length mismatch");
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (predictions[i] != truth[i]) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(predictions.size());
}

ConfusionMatrix confusion(const std::vector<int>& predictions, const std::vector<int>& truth,
                          std::size_t num_classes) {
    if (predictions.size() != truth.size())
        throw std::invalid_argument("confusion: prediction/truth length mismatch");
    ConfusionMatrix cm;
    cm.counts.assign(num_classes, std::vector<std::size_t>(num_classes, 0));
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const int t = truth[i];
        const int p = predictions[i];
        if (t < 0 || p < 0 || static_cast<std::size_t>(t) >= num_classes ||
            static_cast<std::size_t>(p) >= num_classes)
            throw std::invalid_argument("confusion: label out of range at sample " +
                                        std::to_string(i));
        ++cm.counts[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
    }
    return cm;
}

Metrics metrics_from_confusion(const ConfusionMatrix& cm) {
    const std::size_t c = cm.num_classes();
    const std::size_t n = cm.total();
    if (c == 0 || n == 0) throw std::invalid_argument("metrics_from_confusion: empty matrix");

    Metrics m;
    std::size_t diagonal = 0;
    for (std::size_t i = 0; i < c; ++i) diagonal += cm.counts[i][i];
    m.accuracy = static_cast<double>(diagonal) / static_cast<double>(n);

    const auto safe_div = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };

    std::vector<double> precision(c), recall(c), f1(c);
    m.per_class_accuracy.resize(c);
    for (std::size_t i = 0; i < c; ++i) {
        std::size_t tp = cm.counts[i][i];
        std::size_t fp = 0, fn = 0;
        for (std::size_t j = 0; j < c; ++j) {
            if (j == i) continue;
            fp += cm.counts[j][i];
            fn += cm.counts[i][j];
        }
        const std::size_t tn = n - tp - fp - fn;
        precision[i] = safe_div(static_cast<double>(tp), static_cast<double>(tp + fp));
        recall[i] = safe_div(static_cast<double>(tp), static_cast<double>(tp + fn));
        f1[i] = safe_div(2.0 * precision[i] * recall[i], precision[i] + recall[i]);
        m.per_class_accuracy[i] =
            static_cast<double>(tp + tn) / static_cast<double>(n);
    }

    if (c == 2) {
        // Class 1 is the positive class.
        m.precision = precision[1];
        m.recall = recall[1];
        m.f1 = f1[1];
    } else {
        m.precision = std::accumulate(precision.begin(), precision.end(), 0.0) / c;
        m.recall = std::accumulate(recall.begin(), recall.end(), 0.0) / c;
        m.f1 = std::accumulate(f1.begin(), f1.end(), 0.0) / c;
    }
    return m;
}

std::pair<Dataset, Dataset> stratified_split(const Dataset& dataset, double train_fraction,
                                             std::uint64_t seed) {
    if (train_fraction <= 0.0 || train_fraction >= 1.0)
        throw std::invalid_argument("stratified_split: train_fraction must be in (0,1)");

    std::vector<std::vector<std::size_t>> by_class(dataset.num_classes());
    for (std::size_t i = 0; i < dataset.num_samples(); ++i) {
        by_class[static_cast<std::size_t>(dataset.labels[i])].push_back(i);
    }
    for (std::size_t c = 0; c < by_class.size(); ++c) {
        if (by_class[c].size() < 2)
            throw std::invalid_argument("stratified_split: class '" + dataset.class_names[c] +
                                        "' has fewer than 2 samples");
    }

    Rng rng(seed);
    std::vector<std::size_t> train_idx, test_idx;
    for (auto& indices : by_class) {
        // Fisher-Yates with the shared seeded source.
        for (std::size_t i = indices.size(); i > 1; --i) {
            std::swap(indices[i - 1], indices[rng.index(i)]);
        }
        const auto n = indices.size();
        auto n_train = static_cast<std::size_t>(
            std::lround(train_fraction * static_cast<double>(n)));
        n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
        train_idx.insert(train_idx.end(), indices.begin(),
                         indices.begin() + static_cast<std::ptrdiff_t>(n_train));
        test_idx.insert(test_idx.end(), indices.begin() + static_cast<std::ptrdiff_t>(n_train),
                        indices.end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());

    const auto subset = [&dataset](const std::vector<std::size_t>& indices) {
        Dataset part;
        part.feature_names = dataset.feature_names;
        part.class_names = dataset.class_names;
        part.normalized = dataset.normalized;
        part.column_ranges = dataset.column_ranges;
        for (std::size_t i : indices) {
            part.features.push_back(dataset.features[i]);
            part.labels.push_back(dataset.labels[i]);
        }
        return part;
    };
    return {subset(train_idx), subset(test_idx)};
}

}  // namespace bcddo
