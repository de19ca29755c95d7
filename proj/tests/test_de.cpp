#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "fedcloud/de.hpp"
#include "fedcloud/rng.hpp"

using namespace fedcloud;
using namespace fedcloud::de;

namespace {

/// Scripted generator for replaying exact rand sequences in tests; falls
/// back to a real stream once the script is exhausted.
struct ScriptedRng {
    std::deque<double> uniforms;
    std::deque<std::size_t> indices;
    SplitRng fallback{0xdead};

    double uniform01() {
        if (uniforms.empty()) return fallback.uniform01();
        const double u = uniforms.front();
        uniforms.pop_front();
        return u;
    }
    double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }
    std::size_t uniform_index(std::size_t n) {
        if (indices.empty()) return fallback.uniform_index(n);
        const std::size_t k = indices.front();
        indices.pop_front();
        return k % n;
    }
};

DeConfig small_config() {
    DeConfig cfg;
    cfg.np = 20;
    cfg.dims = 2;
    cfg.generations = 50;
    cfg.cr = 0.9;
    cfg.seed = 1;
    return cfg;
}

double sphere(const Individual& ind) {
    double s = 0.0;
    for (const double g : ind.genes) s += g * g;
    return -s;
}

}  // namespace

TEST_CASE("init_population respects bounds and the seed") {
    DeConfig cfg;
    cfg.np = 100;
    cfg.dims = 20;

    SplitRng rng_a = SplitRng(9).child("de");
    SplitRng rng_b = SplitRng(9).child("de");
    const auto pop_a = init_population(cfg, rng_a);
    const auto pop_b = init_population(cfg, rng_b);

    REQUIRE(pop_a.size() == 100);
    for (const auto& ind : pop_a) {
        REQUIRE(ind.genes.size() == 20);
        for (const double g : ind.genes) {
            CHECK(g >= -8.0);
            CHECK(g <= 8.0);
        }
    }
    for (std::size_t i = 0; i < pop_a.size(); ++i)
        CHECK(pop_a[i].genes == pop_b[i].genes);
}

TEST_CASE("degenerate box pins every gene") {
    DeConfig cfg;
    cfg.np = 4;
    cfg.dims = 3;
    cfg.lower = cfg.upper = 2.5;
    SplitRng rng(1);
    for (const auto& ind : init_population(cfg, rng))
        for (const double g : ind.genes) CHECK(g == 2.5);
}

TEST_CASE("mutate combines peers with the difference strategy") {
    DeConfig cfg;
    cfg.np = 4;
    cfg.dims = 2;
    cfg.f = 0.5;

    SUBCASE("V = x_r1 + F (x_r2 - x_r3)") {
        const std::vector<Individual> pop = {
            {{9.0, 9.0}}, {{0.0, 0.0}}, {{2.0, -2.0}}, {{1.0, 1.0}}};
        ScriptedRng rng;
        rng.indices = {1, 2, 3};  // r1, r2, r3 (target = 0)
        const Individual mutant = mutate(std::span(pop), 0, cfg, rng);
        CHECK(mutant.genes[0] == doctest::Approx(0.5));
        CHECK(mutant.genes[1] == doctest::Approx(-1.5));
    }
    SUBCASE("equal peers collapse to x_r1") {
        const std::vector<Individual> pop = {
            {{9.0, 9.0}}, {{3.0, -4.0}}, {{1.0, 1.0}}, {{1.0, 1.0}}};
        ScriptedRng rng;
        rng.indices = {1, 2, 3};
        const Individual mutant = mutate(std::span(pop), 0, cfg, rng);
        CHECK(mutant.genes == pop[1].genes);
    }
    SUBCASE("raw mutants clamp to the box") {
        const std::vector<Individual> pop = {
            {{9.0, 9.0}}, {{7.0, 7.0}}, {{8.0, 8.0}}, {{-8.0, -8.0}}};
        ScriptedRng rng;
        rng.indices = {1, 2, 3};  // raw (15, 15)
        const Individual mutant = mutate(std::span(pop), 0, cfg, rng);
        CHECK(mutant.genes[0] == 8.0);
        CHECK(mutant.genes[1] == 8.0);
    }
    SUBCASE("population of three is rejected") {
        const std::vector<Individual> pop = {{{0.0}}, {{1.0}}, {{2.0}}};
        ScriptedRng rng;
        CHECK_THROWS_AS((void)mutate(std::span(pop), 0, cfg, rng), std::invalid_argument);
    }
}

TEST_CASE("peer indices are pairwise distinct and avoid the target") {
    SplitRng rng(1234);
    for (int i = 0; i < 100000; ++i) {
        const std::size_t np = 4 + rng.uniform_index(20);
        const std::size_t target = rng.uniform_index(np);
        const auto [r1, r2, r3] = pick_peers(np, target, rng);
        const std::set<std::size_t> distinct = {r1, r2, r3, target};
        CHECK(distinct.size() == 4);
        CHECK(r1 < np);
        CHECK(r2 < np);
        CHECK(r3 < np);
    }
}

TEST_CASE("crossover picks per-dimension by the CR draw") {
    const Individual target{{1.0, 2.0, 3.0}};
    const Individual mutant{{-1.0, -2.0, -3.0}};

    SUBCASE("cr = 1 copies the mutant") {
        ScriptedRng rng;
        CHECK(crossover(target, mutant, 1.0, rng).genes == mutant.genes);
    }
    SUBCASE("cr = 0 keeps the target") {
        ScriptedRng rng;
        CHECK(crossover(target, mutant, 0.0, rng).genes == target.genes);
    }
    SUBCASE("scripted draws 0.3, 0.7 against cr = 0.5") {
        const Individual t2{{1.0, 2.0}};
        const Individual m2{{-1.0, -2.0}};
        ScriptedRng rng;
        rng.uniforms = {0.3, 0.7};
        const Individual trial = crossover(t2, m2, 0.5, rng);
        CHECK(trial.genes[0] == -1.0);  // 0.3 <= 0.5: mutant
        CHECK(trial.genes[1] == 2.0);   // 0.7 > 0.5: target
    }
}

TEST_CASE("selection is strict improvement; ties keep the target") {
    const Individual target{{1.0}};
    const Individual trial{{2.0}};
    CHECK(&select(target, trial, 1.0, 2.0) == &trial);
    CHECK(&select(target, trial, 2.0, 1.0) == &target);
    CHECK(&select(target, trial, 1.0, 1.0) == &target);
    CHECK(&select(target, trial, [](const Individual& i) { return i.genes[0]; }) == &trial);
}

TEST_CASE("run with zero generations returns the best of the initial population") {
    DeConfig cfg = small_config();
    cfg.generations = 0;

    SplitRng rng = SplitRng(cfg.seed).child("de");
    const auto pop = init_population(cfg, rng);
    double expected = sphere(pop[0]);
    for (const auto& ind : pop) expected = std::max(expected, sphere(ind));

    const DeResult result = run(cfg, sphere);
    CHECK(result.best_fitness == expected);
    CHECK(result.best_by_generation.size() == 1);
}

TEST_CASE("best fitness never decreases across generations") {
    const DeResult result = run(small_config(), sphere);
    REQUIRE(result.best_by_generation.size() == 51);
    for (std::size_t g = 1; g < result.best_by_generation.size(); ++g)
        CHECK(result.best_by_generation[g] >= result.best_by_generation[g - 1]);
    CHECK(result.best_fitness == result.best_by_generation.back());
}

TEST_CASE("identical config and seed reproduce the result bit for bit") {
    const DeResult a = run(small_config(), sphere);
    const DeResult b = run(small_config(), sphere);
    CHECK(a.best_fitness == b.best_fitness);
    CHECK(a.best.genes == b.best.genes);
    CHECK(a.best_by_generation == b.best_by_generation);
}

TEST_CASE("bounds closure holds through full runs") {
    DeConfig cfg = small_config();
    cfg.lower = -3.0;
    cfg.upper = 1.5;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        cfg.seed = seed;
        const DeResult result = run(cfg, sphere);
        for (const double g : result.best.genes) {
            CHECK(g >= cfg.lower);
            CHECK(g <= cfg.upper);
        }
    }
}

TEST_CASE("sphere function optimum is found on a 2-D box") {
    DeConfig cfg;
    cfg.np = 50;
    cfg.dims = 2;
    cfg.generations = 500;
    cfg.cr = 0.9;

    int good = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        cfg.seed = seed;
        if (run(cfg, sphere).best_fitness >= -0.01) ++good;
    }
    CHECK(good >= 19);  // full 100-seed sweep runs in the acceptance suite
}

TEST_CASE("decode maps the box uniformly onto vm indices") {
    CHECK(decode_gene(-8.0, -8.0, 8.0, 8) == 0);
    CHECK(decode_gene(8.0, -8.0, 8.0, 8) == 7);  // clamped at the top edge
    CHECK(decode_gene(0.0, -8.0, 8.0, 8) == 4);

    SUBCASE("total and surjective over a gene sweep") {
        std::set<int> seen;
        for (double g = -8.0; g <= 8.0; g += 0.001) {
            const int v = decode_gene(g, -8.0, 8.0, 5);
            REQUIRE(v >= 0);
            REQUIRE(v < 5);
            seen.insert(v);
        }
        CHECK(seen.size() == 5);
    }
    SUBCASE("vector decode") {
        const Individual ind{{-8.0, 0.0, 7.999}};
        CHECK(decode(ind, -8.0, 8.0, 8) == std::vector<int>{0, 4, 7});
    }
}

TEST_CASE("config validation rejects bad parameters") {
    DeConfig cfg = small_config();
    cfg.np = 3;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.lower = 1.0;
    cfg.upper = 1.0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
    cfg = small_config();
    cfg.dims = 0;
    CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}
