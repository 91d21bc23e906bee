#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "bcddo/core.hpp"

using namespace bcddo;

TEST_CASE("init_population draws uniformly inside bounds") {
    CddoParams params;
    Rng rng(1);
    const auto pop = init_population(params, 4, rng);
    CHECK(pop.size() == 30);
    for (const auto& d : pop) {
        REQUIRE(d.position.size() == 4);
        for (double x : d.position) {
            CHECK(x >= 0.0);
            CHECK(x <= 1.0);
        }
        CHECK(d.personal_best_position == d.position);
    }
}

TEST_CASE("init_population degenerate range") {
    CddoParams params;
    params.population_size = 1;
    params.bounds = {5.0, 5.001};
    Rng rng(3);
    const auto pop = init_population(params, 1, rng);
    CHECK(pop[0].position[0] >= 5.0);
    CHECK(pop[0].position[0] <= 5.001);
}

TEST_CASE("init_population is seed-deterministic") {
    CddoParams params;
    Rng a(42), b(42);
    const auto pa = init_population(params, 6, a);
    const auto pb = init_population(params, 6, b);
    REQUIRE(pa.size() == pb.size());
    for (std::size_t i = 0; i < pa.size(); ++i) CHECK(pa[i].position == pb[i].position);
}

TEST_CASE("init_population rejects dimension 0") {
    CddoParams params;
    Rng rng(0);
    CHECK_THROWS_AS(init_population(params, 0, rng), std::invalid_argument);
}

TEST_CASE("random hand pressure stays in bounds and has uniform mean") {
    Rng rng(7);
    const Bounds unit{0.0, 1.0};
    double sum = 0.0;
    for (int i = 0; i < 1000000; ++i) {
        const double v = random_hand_pressure(unit, rng);
        REQUIRE(v >= 0.0);
        REQUIRE(v < 1.0);
        sum += v;
    }
    const double mean = sum / 1e6;
    CHECK(mean >= 0.49);
    CHECK(mean <= 0.51);

    const double tight = random_hand_pressure({3.0, 3.0 + 1e-12}, rng);
    CHECK(tight == doctest::Approx(3.0));
}

TEST_CASE("select_hand_pressure picks a uniform component") {
    Rng rng(11);
    Drawing single;
    single.position = {0.7};
    CHECK(select_hand_pressure(single, rng) == 0.7);

    Drawing pair;
    pair.position = {0.2, 0.8};
    std::map<double, int> counts;
    for (int i = 0; i < 10000; ++i) ++counts[select_hand_pressure(pair, rng)];
    CHECK(counts[0.2] / 10000.0 == doctest::Approx(0.5).epsilon(0.1));
    CHECK(counts[0.8] / 10000.0 == doctest::Approx(0.5).epsilon(0.1));

    Drawing same;
    same.position = {0.4, 0.4, 0.4};
    CHECK(select_hand_pressure(same, rng) == 0.4);
}

TEST_CASE("select_lw_indices: independent uniform pair") {
    Rng rng(13);
    CHECK(select_lw_indices(1, rng) == std::pair<std::size_t, std::size_t>{0, 0});

    std::map<std::pair<std::size_t, std::size_t>, int> counts;
    const int n = 10000;
    for (int i = 0; i < n; ++i) ++counts[select_lw_indices(4, rng)];
    for (std::size_t l = 0; l < 4; ++l) {
        for (std::size_t w = 0; w < 4; ++w) {
            const double freq = counts[{l, w}] / static_cast<double>(n);
            CHECK(std::abs(freq - 1.0 / 16.0) <= 0.01);
        }
    }

    const auto [l, w] = select_lw_indices(126, rng);
    CHECK(l < 126);
    CHECK(w < 126);
}

TEST_CASE("golden_ratio evaluates (L+W)/L") {
    CHECK(golden_ratio({1.0, 1.0}, 0, 1) == doctest::Approx(2.0));
    CHECK(golden_ratio({1.0, 0.618}, 0, 1) == doctest::Approx(1.618));
    // Singularity: denominator replaced by 1e-9.
    CHECK(golden_ratio({0.0, 0.5}, 0, 1) == doctest::Approx(0.5 / 1e-9).epsilon(1e-6));
    CHECK(golden_ratio({-0.0000000001, 0.5}, 0, 1) < 0.0);
}

TEST_CASE("skill_update follows the five-term rule") {
    Drawing d;
    d.position = {0.3, 0.4};
    d.personal_best_position = {0.3, 0.4};

    SUBCASE("all terms vanish") {
        const auto out = skill_update(d, d.position, 0.0, 0.9, 0.01);
        CHECK(out == std::vector<double>{0.0, 0.0});
    }
    SUBCASE("direct evaluation") {
        Drawing z;
        z.position = {0.0, 0.0};
        z.personal_best_position = {1.0, 1.0};
        const auto out = skill_update(z, {1.0, 1.0}, 0.0, 0.9, 0.01);
        CHECK(out[0] == doctest::Approx(0.91));
        CHECK(out[1] == doctest::Approx(0.91));
    }
    SUBCASE("gr broadcast only") {
        const auto out = skill_update(d, {0.9, 0.9}, 1.618, 0.0, 0.0);
        CHECK(out[0] == doctest::Approx(1.618));
        CHECK(out[1] == doctest::Approx(1.618));
    }
}

TEST_CASE("skill_update is linear in gr") {
    Rng rng(17);
    for (int trial = 0; trial < 1000; ++trial) {
        Drawing d;
        const std::size_t n = 1 + rng.index(8);
        d.position.resize(n);
        d.personal_best_position.resize(n);
        std::vector<double> gbest(n);
        for (std::size_t j = 0; j < n; ++j) {
            d.position[j] = rng.uniform(-2, 2);
            d.personal_best_position[j] = rng.uniform(-2, 2);
            gbest[j] = rng.uniform(-2, 2);
        }
        const double gr = rng.uniform(-5, 5);
        const double sr = rng.uniform(0, 1);
        const double lr = rng.uniform(0, 1);
        const auto with = skill_update(d, gbest, gr, sr, lr);
        const auto without = skill_update(d, gbest, 0.0, sr, lr);
        for (std::size_t j = 0; j < n; ++j) {
            CHECK(with[j] - without[j] == doctest::Approx(gr).epsilon(1e-12));
        }
    }
}

TEST_CASE("creativity_update") {
    CHECK(creativity_update({0.5}, {1.0}, 0.1)[0] == doctest::Approx(0.6));
    CHECK(creativity_update({0.0}, {0.0}, 0.1)[0] == 0.0);

    Rng rng(19);
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> pm(3), gbest(3);
        for (auto& v : pm) v = rng.uniform(-1, 1);
        for (auto& v : gbest) v = rng.uniform(-1, 1);
        CHECK(creativity_update(pm, gbest, 0.0) == pm);  // identity at cr = 0
    }
}

TEST_CASE("pattern memory is a ring buffer of global bests") {
    SUBCASE("capacity 1") {
        PatternMemory pm(1);
        pm.store({1.0});
        pm.store({2.0});
        REQUIRE(pm.size() == 1);
        CHECK(pm.entries()[0] == std::vector<double>{2.0});
    }
    SUBCASE("fills to capacity then evicts oldest") {
        PatternMemory pm(10);
        for (int i = 0; i < 10; ++i) pm.store({static_cast<double>(i)});
        CHECK(pm.size() == 10);
        pm.store({10.0});
        CHECK(pm.size() == 10);
        bool has_zero = false;
        for (const auto& e : pm.entries()) has_zero |= (e[0] == 0.0);
        CHECK_FALSE(has_zero);
    }
    SUBCASE("sampling is uniform over entries") {
        PatternMemory pm(10);
        for (int i = 0; i < 10; ++i) pm.store({static_cast<double>(i)});
        Rng rng(23);
        std::map<double, int> counts;
        for (int i = 0; i < 10000; ++i) ++counts[(*pm.sample(rng))[0]];
        for (int i = 0; i < 10; ++i) {
            CHECK(std::abs(counts[i] / 10000.0 - 0.1) <= 0.02);
        }
    }
    SUBCASE("empty memory signals fallback") {
        PatternMemory pm(10);
        Rng rng(29);
        CHECK_FALSE(pm.sample(rng).has_value());
    }
}

namespace {

FitnessFn squared_distance_to(std::vector<double> target) {
    return [target = std::move(target)](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - target[j]) * (x[j] - target[j]);
        return s;
    };
}

}  // namespace

TEST_CASE("step improves the global best on a quadratic in most seeds") {
    const auto fitness = squared_distance_to({0.3, 0.7, 0.1, 0.9});
    int improved = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        CddoParams params;
        params.seed = seed;
        Rng rng(params.seed);
        CddoState state;
        state.pattern_memory = PatternMemory(params.pattern_size);
        state.population = init_population(params, 4, rng);
        state.gbest_fitness = std::numeric_limits<double>::infinity();
        for (auto& d : state.population) {
            d.current_fitness = fitness(d.position);
            d.personal_best_fitness = d.current_fitness;
            if (d.current_fitness < state.gbest_fitness) {
                state.gbest_fitness = d.current_fitness;
                state.gbest_position = d.position;
            }
        }
        state.pattern_memory.store(state.gbest_position);
        const double before = state.gbest_fitness;
        for (int t = 0; t < 100; ++t) step(state, params, fitness, rng);
        if (state.gbest_fitness < before) ++improved;
    }
    CHECK(improved >= 95);
}

TEST_CASE("step never worsens the global best and replays deterministically") {
    const auto fitness = squared_distance_to({0.5, 0.5, 0.5});
    CddoParams params;
    params.seed = 99;
    params.max_iterations = 50;
    const auto a = optimize(params, 3, fitness);
    const auto b = optimize(params, 3, fitness);
    CHECK(a.best_position == b.best_position);
    CHECK(a.best_fitness == b.best_fitness);
    CHECK(a.fitness_history == b.fitness_history);
    CHECK(a.evaluations == b.evaluations);
    for (std::size_t t = 1; t < a.fitness_history.size(); ++t) {
        CHECK(a.fitness_history[t] <= a.fitness_history[t - 1]);
    }
}

TEST_CASE("optimize basics") {
    const auto fitness = squared_distance_to({0.5});

    SUBCASE("history length equals max_iterations") {
        CddoParams params;
        params.max_iterations = 1;
        const auto result = optimize(params, 1, fitness);
        CHECK(result.fitness_history.size() == 1);
    }
    SUBCASE("constant fitness gives a flat history") {
        CddoParams params;
        params.max_iterations = 20;
        const auto result = optimize(params, 3, [](const std::vector<double>&) { return 7.0; });
        for (double f : result.fitness_history) CHECK(f == 7.0);
    }
    SUBCASE("sphere on [0,1]^10 reaches the calibrated level in most seeds") {
        const auto sphere = [](const std::vector<double>& x) {
            double s = 0.0;
            for (double v : x) s += v * v;
            return s;
        };
        int good = 0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            CddoParams params;
            params.seed = seed;
            const auto result = optimize(params, 10, sphere);
            if (result.best_fitness <= 0.05) ++good;
        }
        CHECK(good >= 8);
    }
}

TEST_CASE("positions stay inside bounds after every step") {
    const auto fitness = squared_distance_to({0.2, 0.9});
    CddoParams params;
    params.seed = 5;
    Rng rng(params.seed);
    CddoState state;
    state.pattern_memory = PatternMemory(params.pattern_size);
    state.population = init_population(params, 2, rng);
    state.gbest_fitness = std::numeric_limits<double>::infinity();
    for (auto& d : state.population) {
        d.current_fitness = fitness(d.position);
        d.personal_best_fitness = d.current_fitness;
        if (d.current_fitness < state.gbest_fitness) {
            state.gbest_fitness = d.current_fitness;
            state.gbest_position = d.position;
        }
    }
    state.pattern_memory.store(state.gbest_position);
    for (int t = 0; t < 200; ++t) {
        step(state, params, fitness, rng);
        for (const auto& d : state.population) {
            for (double x : d.position) {
                REQUIRE(x >= 0.0);
                REQUIRE(x <= 1.0);
            }
            CHECK(d.personal_best_fitness <= d.current_fitness);
        }
    }
}

TEST_CASE("fitness failures carry the drawing index") {
    CddoParams params;
    params.population_size = 3;
    params.max_iterations = 1;
    const auto failing = [](const std::vector<double>&) -> double {
        throw std::runtime_error("boom");
    };
    CHECK_THROWS_WITH_AS(optimize(params, 2, failing),
                         "fitness evaluation failed for drawing 0: boom", std::runtime_error);
}
