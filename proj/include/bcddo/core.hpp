#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bcddo/rng.hpp"

namespace bcddo {

inline constexpr double kGoldenRatio = 1.6180339887;
inline constexpr double kGrEpsilon = 1e-9;

/// Search-space box, identical for every dimension.
struct Bounds {
    double lower = 0.0;
    double upper = 1.0;
};

/// One candidate solution: the child's current drawing plus its personal
/// best.
struct Drawing {
    std::vector<double> position;
    std::vector<double> personal_best_position;
    double personal_best_fitness = 0.0;
    double current_fitness = 0.0;
};

/// Bounded store of historical global-best positions. Overwrites the
/// oldest entry once full.
class PatternMemory {
public:
    explicit PatternMemory(std::size_t capacity) : capacity_(capacity) {}

    void store(const std::vector<double>& gbest_position);

    /// Uniform choice over stored entries; empty when no entry exists yet
    /// (caller falls back to the global best).
    std::optional<std::vector<double>> sample(Rng& rng) const;

    std::size_t size() const { return entries_.size(); }
    std::size_t capacity() const { return capacity_; }
    const std::vector<std::vector<double>>& entries() const { return entries_; }

private:
    std::size_t capacity_;
    std::size_t write_cursor_ = 0;
    std::vector<std::vector<double>> entries_;
};

struct CddoParams {
    std::size_t population_size = 30;
    std::size_t max_iterations = 100;
    double cr = 0.1;
    double sr_init = 0.9;
    double lr_init = 0.01;
    std::size_t pattern_size = 10;
    Bounds bounds{0.0, 1.0};
    double gr_tolerance = 0.1;
    std::uint64_t seed = 0;
    /// When set, the skill/creativity branches keep sr_init/lr_init
    /// instead of re-drawing the rates per branch.
    bool fixed_rates = false;
};

struct OptimizeResult {
    std::vector<double> best_position;
    double best_fitness = 0.0;
    std::vector<double> fitness_history;
    std::size_t evaluations = 0;
};

using FitnessFn = std::function<double(const std::vector<double>&)>;

std::vector<Drawing> init_population(const CddoParams& params, std::size_t dimension, Rng& rng);

double random_hand_pressure(const Bounds& bounds, Rng& rng);

double select_hand_pressure(const Drawing& drawing, Rng& rng);

std::pair<std::size_t, std::size_t> select_lw_indices(std::size_t dimension, Rng& rng);

/// (position[L] + position[W]) / position[L], with the denominator
/// replaced by a signed epsilon when it is (near) zero so the ratio stays
/// finite.
double golden_ratio(const std::vector<double>& position, std::size_t length_index,
                    std::size_t width_index);

std::vector<double> skill_update(const Drawing& drawing, const std::vector<double>& gbest,
                                 double gr, double sr, double lr);

std::vector<double> creativity_update(const std::vector<double>& pm_entry,
                                      const std::vector<double>& gbest, double cr);

/// Mutable optimizer state threaded through step().
struct CddoState {
    std::vector<Drawing> population;
    PatternMemory pattern_memory{10};
    std::vector<double> gbest_position;
    double gbest_fitness = 0.0;
    std::size_t evaluations = 0;
};

/// One full iteration over the population. Draw order per drawing: hand
/// pressure index; skill branch: SR, LR, then L/W; otherwise L/W, then
/// (when the ratio is near golden) SR, LR and the pattern-memory index.
void step(CddoState& state, const CddoParams& params, const FitnessFn& fitness_fn, Rng& rng);

OptimizeResult optimize(const CddoParams& params, std::size_t dimension,
                        const FitnessFn& fitness_fn);

}  // namespace bcddo
