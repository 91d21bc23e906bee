#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bcddo/binary.hpp"
#include "bcddo/classify.hpp"
#include "bcddo/config.hpp"
#include "bcddo/data.hpp"
#include "bcddo/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;
constexpr int kExitRuntimeError = 4;

std::string fnv1a_file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "";
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

std::string default_output_dir() {
    const char* env = std::getenv("BCDDO_OUTPUT_DIR");
    return env ? env : ".";
}

void add_config_flags(CLI::App* cmd, bcddo::RunConfig& config) {
    cmd->add_option("--dataset", config.dataset_path, "CSV dataset path")->required();
    cmd->add_option("--label", config.label_column, "Label column name or zero-based index")
        ->required();
    cmd->add_option("--train-fraction", config.train_fraction, "Training split fraction")
        ->capture_default_str();
    cmd->add_option("--population-size", config.population_size)->capture_default_str();
    cmd->add_option("--max-iterations", config.max_iterations)->capture_default_str();
    cmd->add_option("--cr", config.cr, "Creativity rate")->capture_default_str();
    cmd->add_option("--sr-init", config.sr_init, "Initial skill rate")->capture_default_str();
    cmd->add_option("--lr-init", config.lr_init, "Initial level rate")->capture_default_str();
    cmd->add_option("--pattern-size", config.pattern_size)->capture_default_str();
    cmd->add_option("--lower-bound", config.lower_bound)->capture_default_str();
    cmd->add_option("--upper-bound", config.upper_bound)->capture_default_str();
    cmd->add_option("--threshold", config.threshold, "Feature election threshold")->capture_default_str();
    cmd->add_option("--weight-a", config.weight_a, "Fitness weight on classifier error")->capture_default_str();
    cmd->add_option("--knn-k", config.knn_k, "Neighbor count for the fitness classifier")->capture_default_str();
    cmd->add_option("--gr-tolerance", config.gr_tolerance)->capture_default_str();
    cmd->add_option("--seed", config.seed, "Base seed")->capture_default_str();
    cmd->add_option("--num-seeds", config.num_seeds, "Consecutive seeds to run")->capture_default_str();
    cmd->add_flag("--fixed-rates", config.fixed_rates,
                  "Keep SR/LR at their configured values instead of per-branch re-draws");
    cmd->add_flag("--normalize-on-train-only", config.normalize_on_train_only,
                  "Use training-portion min/max for normalization");
    cmd->add_option("--oracle-limit", config.oracle_max_features,
                    "Feature-count guard for exhaustive search")
        ->capture_default_str();
    cmd->add_option("--output", config.output_path, "Report file path")
        ->configurable(false);
    cmd->fallthrough();  // lets --config (a top-level option) follow the subcommand
}

bcddo::LabelColumn parse_label_column(const std::string& label) {
    if (!label.empty() && label.find_first_not_of("0123456789") == std::string::npos) {
        return static_cast<std::size_t>(std::stoull(label));
    }
    return label;
}

/// Loads, validates, and (by default) normalizes the dataset.
bcddo::Dataset prepare_dataset(const bcddo::RunConfig& config) {
    bcddo::Dataset ds =
        bcddo::load_csv(config.dataset_path, parse_label_column(config.label_column), true);
    for (const auto& finding : bcddo::validate(ds)) {
        if (finding.severity == bcddo::Finding::Severity::error) {
            throw bcddo::DataError(config.dataset_path + ": " + finding.message);
        }
        std::cerr << "warning: " << finding.message << "\n";
    }
    if (!config.normalize_on_train_only) ds = bcddo::normalize_minmax(ds);
    return ds;
}

std::string resolve_output(const bcddo::RunConfig& config, const std::string& stem) {
    if (!config.output_path.empty()) return config.output_path;
    return (std::filesystem::path(default_output_dir()) / (stem + ".json")).string();
}

int cmd_select(const bcddo::RunConfig& config) {
    const bcddo::Dataset ds = prepare_dataset(config);
    bcddo::ExperimentReport report = bcddo::run_experiment(ds, config, config.num_seeds);
    report.dataset_name = std::filesystem::path(config.dataset_path).stem().string();
    report.dataset_hash = fnv1a_file_hash(config.dataset_path);

    const std::string out_path = resolve_output(config, report.dataset_name + "_select");
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write report: " + out_path);
    out << bcddo::report_to_json(report, config) << "\n";

    const auto& first = report.per_seed.front();
    std::cout << report.dataset_name << "  accuracy=" << std::fixed << std::setprecision(4)
              << report.mean_accuracy << "  precision=" << first.test_metrics.precision
              << "  recall=" << first.test_metrics.recall << "  f1=" << first.test_metrics.f1
              << "  support=" << first.test_samples
              << "  selected=" << report.mean_selected << "/" << ds.num_features()
              << "  report=" << out_path << "\n";
    return kExitOk;
}

int cmd_oracle(const bcddo::RunConfig& config) {
    const bcddo::Dataset ds = prepare_dataset(config);
    if (ds.num_features() > config.oracle_max_features) {
        std::cerr << "oracle refused: dataset has " << ds.num_features()
                  << " features, guard is " << config.oracle_max_features
                  << " (raise with --oracle-limit)\n";
        return kExitConfigError;
    }
    const auto [train, test] =
        bcddo::stratified_split(ds, config.train_fraction, config.seed);
    const bcddo::OracleResult oracle = bcddo::exhaustive_oracle(
        train, bcddo::FitnessWeights{config.weight_a}, config.knn_k, config.seed,
        config.oracle_max_features);

    nlohmann::json j;
    j["schema_version"] = 1;
    j["dataset"] = std::filesystem::path(config.dataset_path).stem().string();
    j["dataset_hash"] = fnv1a_file_hash(config.dataset_path);
    j["seed"] = config.seed;
    j["weight_a"] = config.weight_a;
    j["knn_k"] = config.knn_k;
    j["best_fitness"] = oracle.best_fitness;
    j["subsets"] = nlohmann::json::array();
    for (const auto& entry : oracle.ranked) {
        nlohmann::json mask = nlohmann::json::array();
        for (bool b : entry.mask.bits) mask.push_back(b ? 1 : 0);
        j["subsets"].push_back({{"mask", mask}, {"fitness", entry.fitness}});
    }

    const std::string out_path =
        resolve_output(config, j["dataset"].get<std::string>() + "_oracle");
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write report: " + out_path);
    out << j.dump(2) << "\n";
    std::cout << "oracle optimum fitness=" << oracle.best_fitness << " over "
              << oracle.ranked.size() << " subsets  report=" << out_path << "\n";
    return kExitOk;
}

int cmd_report(const std::vector<std::string>& paths, const std::string& output_path) {
    nlohmann::json table = nlohmann::json::array();
    std::cout << std::left << std::setw(24) << "dataset" << std::setw(8) << "seeds"
              << std::setw(12) << "accuracy" << std::setw(12) << "fitness" << std::setw(10)
              << "selected" << "\n";
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) throw bcddo::DataError("cannot open report: " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        bcddo::ExperimentReport report;
        try {
            report = bcddo::report_from_json(buf.str());
        } catch (const std::exception& e) {
            throw bcddo::DataError(path + ": " + e.what());
        }
        table.push_back({{"file", path},
                         {"dataset", report.dataset_name},
                         {"seeds", report.per_seed.size()},
                         {"mean_accuracy", report.mean_accuracy},
                         {"mean_fitness", report.mean_fitness},
                         {"mean_selected", report.mean_selected}});
        std::cout << std::left << std::setw(24) << report.dataset_name << std::setw(8)
                  << report.per_seed.size() << std::setw(12) << std::fixed
                  << std::setprecision(4) << report.mean_accuracy << std::setw(12)
                  << report.mean_fitness << std::setw(10) << report.mean_selected << "\n";
    }
    if (!output_path.empty()) {
        std::ofstream out(output_path);
        if (!out) throw std::runtime_error("cannot write comparison: " + output_path);
        out << table.dump(2) << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Child Drawing Development Optimization feature selection"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Key=value config file; flags override it");

    bcddo::RunConfig config;
    bool dump_config = false;

    CLI::App* select = app.add_subcommand("select", "Run BCDDO feature selection");
    add_config_flags(select, config);
    select->add_flag("--dump-config", dump_config,
                     "Print the effective configuration as a config file and exit")
        ->configurable(false);

    CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive subset search");
    add_config_flags(oracle, config);

    std::vector<std::string> report_paths;
    std::string report_output;
    CLI::App* report = app.add_subcommand("report", "Merge experiment reports");
    report->add_option("paths", report_paths, "Report JSON files")->required();
    report->add_option("--output", report_output, "Write the comparison table as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (select->parsed()) {
            if (dump_config) {
                std::cout << "[select]\n" << select->config_to_str(true, false);
                return kExitOk;
            }
            return cmd_select(config);
        }
        if (oracle->parsed()) return cmd_oracle(config);
        return cmd_report(report_paths, report_output);
    } catch (const bcddo::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
}
