#include "bcddo/binary.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "bcddo/classify.hpp"
#include "bcddo/core.hpp"

namespace bcddo {

std::size_t FeatureMask::count() const {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), true));
}

FeatureMask binarize(const std::vector<double>& position, double threshold) {
    FeatureMask mask;
    mask.bits.resize(position.size());
    for (std::size_t i = 0; i < position.size(); ++i) {
        mask.bits[i] = position[i] > threshold;
    }
    return mask;
}

FeatureMask repair_mask(const FeatureMask& mask, const std::vector<double>& position) {
    if (!mask.empty()) return mask;
    FeatureMask repaired = mask;
    const auto argmax = std::max_element(position.begin(), position.end()) - position.begin();
    repaired.bits[static_cast<std::size_t>(argmax)] = true;
    return repaired;
}

namespace {

std::vector<std::vector<double>> masked_columns(const std::vector<std::vector<double>>& rows,
                                                const FeatureMask& mask) {
    std::vector<std::vector<double>> out(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out[r].reserve(mask.count());
        for (std::size_t c = 0; c < mask.bits.size(); ++c) {
            if (mask.bits[c]) out[r].push_back(rows[r][c]);
        }
    }
    return out;
}

}  // namespace

double wrapper_fitness(const FeatureMask& mask, const Dataset& train, const Dataset& validate,
                       const FitnessWeights& weights, std::size_t k) {
    if (mask.empty()) throw std::invalid_argument("wrapper_fitness: empty feature mask");
    if (validate.num_samples() == 0)
        throw std::invalid_argument("wrapper_fitness: empty validation set");

    const auto train_masked = masked_columns(train.features, mask);
    const auto validate_masked = masked_columns(validate.features, mask);
    const std::size_t effective_k = std::min(k, train_masked.size());

    std::vector<int> predictions(validate_masked.size());
    for (std::size_t i = 0; i < validate_masked.size(); ++i) {
        predictions[i] = knn_predict(train_masked, train.labels, validate_masked[i], effective_k);
    }
    const double err = error_rate(predictions, validate.labels);
    const double d = static_cast<double>(mask.bits.size());
    return weights.a * err + weights.b() * (static_cast<double>(mask.count()) / d);
}

std::pair<Dataset, Dataset> fitness_split(const Dataset& dataset, std::uint64_t seed) {
    return stratified_split(dataset, 0.8, seed);
}

SelectionResult select_features(const Dataset& dataset, const RunConfig& config) {
    if (dataset.num_classes() < 2)
        throw std::invalid_argument("select_features: dataset needs at least 2 classes");
    if (dataset.num_features() < 2)
        throw std::invalid_argument("select_features: dataset needs at least 2 features");

    const auto [fit, validate] = fitness_split(dataset, config.seed);
    const FitnessWeights weights{config.weight_a};
    const std::size_t dimension = dataset.num_features();

    // Distinct positions often binarize to the same mask; cache per-mask
    // classifier runs so the expensive KNN pass happens once per subset.
    std::unordered_map<std::vector<bool>, double> cache;
    const auto fitness_fn = [&](const std::vector<double>& position) {
        const FeatureMask mask =
            repair_mask(binarize(position, config.threshold), position);
        auto it = cache.find(mask.bits);
        if (it == cache.end()) {
            it = cache.emplace(mask.bits,
                               wrapper_fitness(mask, fit, validate, weights, config.knn_k))
                     .first;
        }
        return it->second;
    };

    CddoParams params;
    params.population_size = config.population_size;
    params.max_iterations = config.max_iterations;
    params.cr = config.cr;
    params.sr_init = config.sr_init;
    params.lr_init = config.lr_init;
    params.pattern_size = config.pattern_size;
    params.bounds = {config.lower_bound, config.upper_bound};
    params.gr_tolerance = config.gr_tolerance;
    params.seed = config.seed;
    params.fixed_rates = config.fixed_rates;

    const OptimizeResult opt = optimize(params, dimension, fitness_fn);

    SelectionResult result;
    result.mask = repair_mask(binarize(opt.best_position, config.threshold), opt.best_position);
    result.selected_count = result.mask.count();
    {
        const auto fit_masked = masked_columns(fit.features, result.mask);
        const auto val_masked = masked_columns(validate.features, result.mask);
        const std::size_t effective_k = std::min(config.knn_k, fit_masked.size());
        std::vector<int> predictions(val_masked.size());
        for (std::size_t i = 0; i < val_masked.size(); ++i) {
            predictions[i] = knn_predict(fit_masked, fit.labels, val_masked[i], effective_k);
        }
        result.classifier_error = error_rate(predictions, validate.labels);
    }
    result.fitness = weights.a * result.classifier_error +
                     weights.b() * (static_cast<double>(result.selected_count) /
                                    static_cast<double>(dimension));
    result.fitness_history = opt.fitness_history;
    result.seed = config.seed;
    result.evaluations = opt.evaluations;
    return result;
}

}  // namespace bcddo
