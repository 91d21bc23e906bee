#include "bcddo/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "bcddo/rng.hpp"

namespace bcddo {

OracleResult exhaustive_oracle(const Dataset& dataset, const FitnessWeights& weights,
                               std::size_t k, std::uint64_t split_seed,
                               std::size_t max_features) {
    const std::size_t d = dataset.num_features();
    if (d > max_features)
        throw std::invalid_argument("exhaustive_oracle: " + std::to_string(d) +
                                    " features exceed the guard of " +
                                    std::to_string(max_features));

    const auto [fit, validate] = fitness_split(dataset, split_seed);

    OracleResult result;
    const std::uint64_t total = (std::uint64_t{1} << d) - 1;
    result.ranked.reserve(total);
    for (std::uint64_t m = 1; m <= total; ++m) {
        FeatureMask mask;
        mask.bits.resize(d);
        for (std::size_t i = 0; i < d; ++i) mask.bits[i] = (m >> i) & 1;
        const double fitness = wrapper_fitness(mask, fit, validate, weights, k);
        result.ranked.push_back({std::move(mask), fitness});
    }
    std::sort(result.ranked.begin(), result.ranked.end(),
              [](const OracleEntry& a, const OracleEntry& b) {
                  if (a.fitness != b.fitness) return a.fitness < b.fitness;
                  return a.mask.bits < b.mask.bits;  // ties: lexicographically smallest mask
              });
    result.best_mask = result.ranked.front().mask;
    result.best_fitness = result.ranked.front().fitness;
    return result;
}

SelectionResult random_search(const Dataset& dataset, const RunConfig& config,
                              std::size_t budget) {
    if (budget < 1) throw std::invalid_argument("random_search: budget must be >= 1");
    const auto [fit, validate] = fitness_split(dataset, config.seed);
    const FitnessWeights weights{config.weight_a};
    const std::size_t d = dataset.num_features();

    Rng rng(config.seed);
    SelectionResult best;
    best.seed = config.seed;
    best.fitness = std::numeric_limits<double>::infinity();
    best.fitness_history.reserve(budget);
    for (std::size_t eval = 0; eval < budget; ++eval) {
        FeatureMask mask;
        mask.bits.resize(d);
        std::size_t set_count = 0;
        for (std::size_t i = 0; i < d; ++i) {
            const bool bit = rng.next_unit() < 0.5;
            mask.bits[i] = bit;
            set_count += bit;
        }
        if (set_count == 0) mask.bits[rng.index(d)] = true;

        const double fitness = wrapper_fitness(mask, fit, validate, weights, config.knn_k);
        if (fitness < best.fitness) {
            best.fitness = fitness;
            best.mask = mask;
            best.selected_count = mask.count();
            best.classifier_error =
                (fitness - weights.b() * (static_cast<double>(best.selected_count) /
                                          static_cast<double>(d))) /
                weights.a;
        }
        best.fitness_history.push_back(best.fitness);
    }
    best.evaluations = budget;
    return best;
}

namespace {

std::vector<std::vector<double>> mask_columns(const std::vector<std::vector<double>>& rows,
                                              const FeatureMask& mask) {
    std::vector<std::vector<double>> out(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < mask.bits.size(); ++c) {
            if (mask.bits[c]) out[r].push_back(rows[r][c]);
        }
    }
    return out;
}

void stats(const std::vector<double>& xs, double& mean, double& mn, double& mx, double& sd) {
    mean = mn = mx = sd = 0.0;
    if (xs.empty()) return;
    mn = *std::min_element(xs.begin(), xs.end());
    mx = *std::max_element(xs.begin(), xs.end());
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    for (double x : xs) sd += (x - mean) * (x - mean);
    sd = std::sqrt(sd / static_cast<double>(xs.size()));
}

}  // namespace

void aggregate(ExperimentReport& report) {
    std::vector<double> accuracies, fitnesses;
    double selected = 0.0;
    for (const auto& s : report.per_seed) {
        accuracies.push_back(s.test_metrics.accuracy);
        fitnesses.push_back(s.selection.fitness);
        selected += static_cast<double>(s.selection.selected_count);
    }
    stats(accuracies, report.mean_accuracy, report.min_accuracy, report.max_accuracy,
          report.stddev_accuracy);
    stats(fitnesses, report.mean_fitness, report.min_fitness, report.max_fitness,
          report.stddev_fitness);
    report.mean_selected =
        report.per_seed.empty() ? 0.0 : selected / static_cast<double>(report.per_seed.size());
}

ExperimentReport run_experiment(const Dataset& dataset, const RunConfig& config,
                                std::size_t num_seeds) {
    if (num_seeds < 1) throw std::invalid_argument("run_experiment: num_seeds must be >= 1");

    ExperimentReport report;
    for (std::size_t i = 0; i < num_seeds; ++i) {
        const std::uint64_t seed = config.seed + i;
        const auto start = std::chrono::steady_clock::now();
        try {
            RunConfig cfg = config;
            cfg.seed = seed;
            auto [train, test] = stratified_split(dataset, cfg.train_fraction, seed);
            if (cfg.normalize_on_train_only && !dataset.normalized) {
                train = normalize_minmax(train);
                test = apply_normalization(test, train.column_ranges);
            }

            SeedOutcome outcome;
            outcome.seed = seed;
            outcome.selection = select_features(train, cfg);

            const auto train_masked = mask_columns(train.features, outcome.selection.mask);
            const auto test_masked = mask_columns(test.features, outcome.selection.mask);
            const std::size_t k = std::min(cfg.knn_k, train_masked.size());
            std::vector<int> predictions(test_masked.size());
            for (std::size_t q = 0; q < test_masked.size(); ++q) {
                predictions[q] = knn_predict(train_masked, train.labels, test_masked[q], k);
            }
            outcome.test_confusion = confusion(predictions, test.labels, dataset.num_classes());
            outcome.test_metrics = metrics_from_confusion(outcome.test_confusion);
            outcome.test_samples = test.num_samples();
            outcome.wall_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
            report.per_seed.push_back(std::move(outcome));
        } catch (const std::exception& e) {
            throw std::runtime_error("run failed for seed " + std::to_string(seed) + ": " +
                                     e.what());
        }
    }
    aggregate(report);
    return report;
}

Dataset make_synthetic(std::size_t samples, std::size_t informative, std::size_t noise,
                       std::uint64_t seed) {
    Rng rng(seed);
    Dataset ds;
    ds.class_names = {"neg", "pos"};
    for (std::size_t c = 0; c < informative; ++c)
        ds.feature_names.push_back("signal_" + std::to_string(c));
    for (std::size_t c = 0; c < noise; ++c)
        ds.feature_names.push_back("noise_" + std::to_string(c));

    for (std::size_t r = 0; r < samples; ++r) {
        const int label = static_cast<int>(r % 2);
        std::vector<double> row;
        row.reserve(informative + noise);
        for (std::size_t c = 0; c < informative; ++c) {
            row.push_back(0.25 + 0.5 * label + rng.uniform(-0.15, 0.15));
        }
        for (std::size_t c = 0; c < noise; ++c) {
            row.push_back(rng.next_unit());
        }
        ds.features.push_back(std::move(row));
        ds.labels.push_back(label);
    }
    ds.normalized = true;  // constructed inside [0,1]
    return ds;
}

namespace {

using nlohmann::json;

json metrics_to_json(const Metrics& m) {
    return json{{"accuracy", m.accuracy},
                {"precision", m.precision},
                {"recall", m.recall},
                {"f1", m.f1},
                {"per_class_accuracy", m.per_class_accuracy}};
}

Metrics metrics_from(const json& j) {
    Metrics m;
    m.accuracy = j.at("accuracy");
    m.precision = j.at("precision");
    m.recall = j.at("recall");
    m.f1 = j.at("f1");
    m.per_class_accuracy = j.at("per_class_accuracy").get<std::vector<double>>();
    return m;
}

}  // namespace

std::string report_to_json(const ExperimentReport& report, const RunConfig& config) {
    json j;
    j["schema_version"] = 1;
    j["dataset"] = report.dataset_name;
    j["dataset_hash"] = report.dataset_hash;
    j["config"] = {{"dataset_path", config.dataset_path},
                   {"label_column", config.label_column},
                   {"train_fraction", config.train_fraction},
                   {"population_size", config.population_size},
                   {"max_iterations", config.max_iterations},
                   {"cr", config.cr},
                   {"sr_init", config.sr_init},
                   {"lr_init", config.lr_init},
                   {"pattern_size", config.pattern_size},
                   {"lower_bound", config.lower_bound},
                   {"upper_bound", config.upper_bound},
                   {"threshold", config.threshold},
                   {"weight_a", config.weight_a},
                   {"knn_k", config.knn_k},
                   {"gr_tolerance", config.gr_tolerance},
                   {"seed", config.seed},
                   {"num_seeds", config.num_seeds},
                   {"fixed_rates", config.fixed_rates},
                   {"normalize_on_train_only", config.normalize_on_train_only}};
    j["runs"] = json::array();
    for (const auto& s : report.per_seed) {
        json mask = json::array();
        for (bool b : s.selection.mask.bits) mask.push_back(b ? 1 : 0);
        j["runs"].push_back({{"seed", s.seed},
                             {"mask", mask},
                             {"fitness", s.selection.fitness},
                             {"classifier_error", s.selection.classifier_error},
                             {"selected_count", s.selection.selected_count},
                             {"evaluations", s.selection.evaluations},
                             {"fitness_history", s.selection.fitness_history},
                             {"test_samples", s.test_samples},
                             {"test_metrics", metrics_to_json(s.test_metrics)},
                             {"test_confusion", s.test_confusion.counts},
                             {"wall_ms", s.wall_ms}});
    }
    j["aggregates"] = {{"mean_accuracy", report.mean_accuracy},
                       {"min_accuracy", report.min_accuracy},
                       {"max_accuracy", report.max_accuracy},
                       {"stddev_accuracy", report.stddev_accuracy},
                       {"mean_fitness", report.mean_fitness},
                       {"min_fitness", report.min_fitness},
                       {"max_fitness", report.max_fitness},
                       {"stddev_fitness", report.stddev_fitness},
                       {"mean_selected", report.mean_selected}};
    return j.dump(2);
}

ExperimentReport report_from_json(const std::string& text) {
    const json j = json::parse(text);
    if (!j.contains("schema_version") || j.at("schema_version").get<int>() != 1)
        throw std::runtime_error("report schema mismatch: expected schema_version 1");

    ExperimentReport report;
    report.dataset_name = j.at("dataset");
    report.dataset_hash = j.value("dataset_hash", "");
    for (const auto& run : j.at("runs")) {
        SeedOutcome s;
        s.seed = run.at("seed");
        for (int b : run.at("mask")) s.selection.mask.bits.push_back(b != 0);
        s.selection.fitness = run.at("fitness");
        s.selection.classifier_error = run.at("classifier_error");
        s.selection.selected_count = run.at("selected_count");
        s.selection.evaluations = run.at("evaluations");
        s.selection.fitness_history = run.at("fitness_history").get<std::vector<double>>();
        s.selection.seed = s.seed;
        s.test_samples = run.at("test_samples");
        s.test_metrics = metrics_from(run.at("test_metrics"));
        s.test_confusion.counts =
            run.at("test_confusion").get<std::vector<std::vector<std::size_t>>>();
        s.wall_ms = run.at("wall_ms");
        report.per_seed.push_back(std::move(s));
    }
    aggregate(report);
    return report;
}

}  // namespace bcddo
