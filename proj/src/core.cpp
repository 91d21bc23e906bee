#include "bcddo/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bcddo {

void PatternMemory::store(const std::vector<double>& gbest_position) {
    if (capacity_ == 0) return;
    if (entries_.size() < capacity_) {
        entries_.push_back(gbest_position);
    } else {
        entries_[write_cursor_] = gbest_position;
    }
    write_cursor_ = (write_cursor_ + 1) % capacity_;
}

std::optional<std::vector<double>> PatternMemory::sample(Rng& rng) const {
    if (entries_.empty()) return std::nullopt;
    return entries_[rng.index(entries_.size())];
}

std::vector<Drawing> init_population(const CddoParams& params, std::size_t dimension, Rng& rng) {
    if (dimension == 0) throw std::invalid_argument("init_population: dimension must be >= 1");
    std::vector<Drawing> population;
    population.reserve(params.population_size);
    for (std::size_t i = 0; i < params.population_size; ++i) {
        Drawing d;
        d.position.resize(dimension);
        for (auto& x : d.position) x = rng.uniform(params.bounds.lower, params.bounds.upper);
        d.personal_best_position = d.position;
        population.push_back(std::move(d));
    }
    return population;
}

double random_hand_pressure(const Bounds& bounds, Rng& rng) {
    return rng.uniform(bounds.lower, bounds.upper);
}

double select_hand_pressure(const Drawing& drawing, Rng& rng) {
    return drawing.position[rng.index(drawing.position.size())];
}

std::pair<std::size_t, std::size_t> select_lw_indices(std::size_t dimension, Rng& rng) {
    const std::size_t length_index = rng.index(dimension);
    const std::size_t width_index = rng.index(dimension);
    return {length_index, width_index};
}

double golden_ratio(const std::vector<double>& position, std::size_t length_index,
                    std::size_t width_index) {
    const double length = position[length_index];
    const double width = position[width_index];
    double denom = length;
    if (std::abs(denom) < kGrEpsilon) {
        denom = denom < 0.0 ? -kGrEpsilon : kGrEpsilon;
    }
    return (length + width) / denom;
}

std::vector<double> skill_update(const Drawing& drawing, const std::vector<double>& gbest,
                                 double gr, double sr, double lr) {
    const std::size_t n = drawing.position.size();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = gr + sr * (drawing.personal_best_position[j] - drawing.position[j]) +
                 lr * (gbest[j] - drawing.position[j]);
    }
    return out;
}

std::vector<double> creativity_update(const std::vector<double>& pm_entry,
                                      const std::vector<double>& gbest, double cr) {
    std::vector<double> out(pm_entry.size());
    for (std::size_t j = 0; j < pm_entry.size(); ++j) {
        out[j] = pm_entry[j] + cr * gbest[j];
    }
    return out;
}

namespace {

// Reflects out-of-range components back into the box (triangular fold for
// arbitrarily large overshoot). Hard clamping saturates the population at
// the upper bound because the golden-ratio offset is >= 1 on positive
// domains, after which neither branch gate can fire again.
void fold_into_bounds(std::vector<double>& position, const Bounds& bounds) {
    const double span = bounds.upper - bounds.lower;
    for (auto& x : position) {
        if (x >= bounds.lower && x <= bounds.upper) continue;
        double t = std::fmod(x - bounds.lower, 2.0 * span);
        if (t < 0.0) t += 2.0 * span;
        x = bounds.lower + (t <= span ? t : 2.0 * span - t);
    }
}

double evaluate(const FitnessFn& fitness_fn, const std::vector<double>& position,
                std::size_t drawing_index, std::size_t& evaluations) {
    ++evaluations;
    try {
        return fitness_fn(position);
    } catch (const std::exception& e) {
        throw std::runtime_error("fitness evaluation failed for drawing " +
                                 std::to_string(drawing_index) + ": " + e.what());
    }
}

}  // namespace

void step(CddoState& state, const CddoParams& params, const FitnessFn& fitness_fn, Rng& rng) {
    const double rhp = random_hand_pressure(params.bounds, rng);

    for (std::size_t i = 0; i < state.population.size(); ++i) {
        Drawing& drawing = state.population[i];
        const double hp = select_hand_pressure(drawing, rng);

        bool moved = false;
        std::vector<double> candidate;
        if (hp < rhp) {
            const double sr = params.fixed_rates ? params.sr_init : rng.uniform(0.6, 1.0);
            const double lr = params.fixed_rates ? params.lr_init : rng.uniform(0.6, 1.0);
            const auto [li, wi] = select_lw_indices(drawing.position.size(), rng);
            const double gr = golden_ratio(drawing.position, li, wi);
            candidate = skill_update(drawing, state.gbest_position, gr, sr, lr);
            moved = true;
        } else {
            const auto [li, wi] = select_lw_indices(drawing.position.size(), rng);
            const double gr = golden_ratio(drawing.position, li, wi);
            if (std::abs(gr - kGoldenRatio) <= params.gr_tolerance) {
                if (!params.fixed_rates) {
                    rng.uniform(0.0, 0.5);  // sr, unused by the creativity rule
                    rng.uniform(0.0, 0.5);  // lr, unused by the creativity rule
                }
                const auto pm_entry = state.pattern_memory.sample(rng);
                candidate = creativity_update(pm_entry ? *pm_entry : state.gbest_position,
                                              state.gbest_position, params.cr);
                moved = true;
            }
        }

        if (moved) {
            fold_into_bounds(candidate, params.bounds);
            drawing.position = std::move(candidate);
            drawing.current_fitness =
                evaluate(fitness_fn, drawing.position, i, state.evaluations);
        }

        if (drawing.current_fitness < drawing.personal_best_fitness) {
            drawing.personal_best_fitness = drawing.current_fitness;
            drawing.personal_best_position = drawing.position;
        }
        if (drawing.personal_best_fitness < state.gbest_fitness) {
            state.gbest_fitness = drawing.personal_best_fitness;
            state.gbest_position = drawing.personal_best_position;
        }
    }

    state.pattern_memory.store(state.gbest_position);
}

OptimizeResult optimize(const CddoParams& params, std::size_t dimension,
                        const FitnessFn& fitness_fn) {
    if (dimension == 0) throw std::invalid_argument("optimize: dimension must be >= 1");
    if (params.max_iterations == 0)
        throw std::invalid_argument("optimize: max_iterations must be >= 1");

    Rng rng(params.seed);
    CddoState state;
    state.pattern_memory = PatternMemory(params.pattern_size);
    state.population = init_population(params, dimension, rng);

    state.gbest_fitness = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < state.population.size(); ++i) {
        Drawing& d = state.population[i];
        d.current_fitness = evaluate(fitness_fn, d.position, i, state.evaluations);
        d.personal_best_fitness = d.current_fitness;
        if (d.current_fitness < state.gbest_fitness) {
            state.gbest_fitness = d.current_fitness;
            state.gbest_position = d.position;
        }
    }
    state.pattern_memory.store(state.gbest_position);

    OptimizeResult result;
    result.fitness_history.reserve(params.max_iterations);
    for (std::size_t t = 0; t < params.max_iterations; ++t) {
        step(state, params, fitness_fn, rng);
        result.fitness_history.push_back(state.gbest_fitness);
    }
    result.best_position = state.gbest_position;
    result.best_fitness = state.gbest_fitness;
    result.evaluations = state.evaluations;
    return result;
}

}  // namespace bcddo
