#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fedcloud/rng.hpp"

namespace fedcloud::de {

/// DE/rand/1 engine parameters. Defaults mirror the operating point used
/// throughout the binding experiments: NP=100, F=0.5, CR=0.1,
/// 2000 generations, search box [-8, 8].
struct DeConfig {
    int np = 100;
    double f = 0.5;   // mutation scale factor
    double cr = 0.1;  // crossover probability
    int generations = 2000;
    double lower = -8.0;
    double upper = 8.0;
    int dims = 0;
    std::uint64_t seed = 1;
};

inline void validate(const DeConfig& cfg) {
    if (cfg.np < 4)
        throw std::invalid_argument("DeConfig: np >= 4 required (mutation draws 3 peers)");
    if (!(cfg.lower < cfg.upper))
        throw std::invalid_argument("DeConfig: lower < upper required");
    if (cfg.generations < 0)
        throw std::invalid_argument("DeConfig: generations >= 0 required");
    if (cfg.dims < 1)
        throw std::invalid_argument("DeConfig: dims >= 1 required");
    if (cfg.cr < 0.0 || cfg.cr > 1.0)
        throw std::invalid_argument("DeConfig: cr in [0, 1] required");
}

struct Individual {
    std::vector<double> genes;
};

struct DeResult {
    Individual best;
    double best_fitness = 0.0;
    /// Best population fitness after init (index 0) and after every
    /// generation; non-decreasing by construction of the selection step.
    std::vector<double> best_by_generation;
};

/// x = lower + rand(0,1) * (upper - lower), per gene. Tolerates a
/// degenerate lower == upper box (every gene lands on the bound).
template <class Rng>
std::vector<Individual> init_population(const DeConfig& cfg, Rng& rng) {
    std::vector<Individual> population(static_cast<std::size_t>(cfg.np));
    for (auto& ind : population) {
        ind.genes.resize(static_cast<std::size_t>(cfg.dims));
        for (auto& g : ind.genes) g = cfg.lower + rng.uniform01() * (cfg.upper - cfg.lower);
    }
    return population;
}

/// Draws r1, r2, r3 pairwise distinct and distinct from target by
/// rejection sampling. Requires np >= 4.
template <class Rng>
std::array<std::size_t, 3> pick_peers(std::size_t np, std::size_t target, Rng& rng) {
    if (np < 4) throw std::invalid_argument("pick_peers: population smaller than 4");
    std::array<std::size_t, 3> r{};
    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t candidate;
        bool clash;
        do {
            candidate = rng.uniform_index(np);
            clash = candidate == target;
            for (std::size_t j = 0; j < k; ++j) clash = clash || candidate == r[j];
        } while (clash);
        r[k] = candidate;
    }
    return r;
}

/// V = x_r1 + F * (x_r2 - x_r3), clamped to the search box.
template <class Rng>
Individual mutate(std::span<const Individual> population, std::size_t target,
                  const DeConfig& cfg, Rng& rng) {
    const auto [r1, r2, r3] = pick_peers(population.size(), target, rng);
    Individual mutant;
    mutant.genes.resize(population[r1].genes.size());
    for (std::size_t d = 0; d < mutant.genes.size(); ++d) {
        const double raw = population[r1].genes[d] +
                           cfg.f * (population[r2].genes[d] - population[r3].genes[d]);
        mutant.genes[d] = std::clamp(raw, cfg.lower, cfg.upper);
    }
    return mutant;
}

/// Per dimension: take the mutant gene when rand(0,1) <= CR, else the
/// target gene. rand is half-open [0, 1), so CR = 0 never takes the
/// mutant and CR = 1 always does. No forced crossover dimension.
template <class Rng>
Individual crossover(const Individual& target, const Individual& mutant, double cr,
                     Rng& rng) {
    Individual trial;
    trial.genes.resize(target.genes.size());
    for (std::size_t d = 0; d < trial.genes.size(); ++d)
        trial.genes[d] = rng.uniform01() <= cr ? mutant.genes[d] : target.genes[d];
    return trial;
}

/// Greedy maximizing selection; ties keep the target.
inline const Individual& select(const Individual& target, const Individual& trial,
                                double target_fitness, double trial_fitness) {
    return trial_fitness > target_fitness ? trial : target;
}

template <class Fitness>
const Individual& select(const Individual& target, const Individual& trial,
                         Fitness&& fitness) {
    return select(target, trial, fitness(target), fitness(trial));
}

/// Runs `generations` rounds of mutate/crossover/select over the whole
/// population and returns the best member of the final population.
///
/// Trials for a generation are produced sequentially (the RNG sequence is
/// part of the deterministic contract); their fitness evaluations are
/// independent and could fan out, selection is then applied index by
/// index against the previous generation.
template <class Fitness>
DeResult run(const DeConfig& cfg, Fitness&& fitness, SplitRng rng) {
    validate(cfg);

    std::vector<Individual> population = init_population(cfg, rng);
    std::vector<double> fit(population.size());
    for (std::size_t i = 0; i < population.size(); ++i) fit[i] = fitness(population[i]);

    const auto best_index = [&fit] {
        std::size_t best = 0;
        for (std::size_t i = 1; i < fit.size(); ++i)
            if (fit[i] > fit[best]) best = i;
        return best;
    };

    DeResult result;
    result.best_by_generation.push_back(fit[best_index()]);

    std::vector<Individual> trials(population.size());
    for (int g = 0; g < cfg.generations; ++g) {
        for (std::size_t i = 0; i < population.size(); ++i) {
            trials[i] = crossover(population[i], mutate(std::span(population), i, cfg, rng),
                                  cfg.cr, rng);
        }
        for (std::size_t i = 0; i < population.size(); ++i) {
            const double trial_fit = fitness(trials[i]);
            if (trial_fit > fit[i]) {
                population[i] = std::move(trials[i]);
                fit[i] = trial_fit;
            }
        }
        result.best_by_generation.push_back(fit[best_index()]);
    }

    const std::size_t best = best_index();
    result.best = population[best];
    result.best_fitness = fit[best];
    return result;
}

/// Seeds the engine stream from cfg.seed under the "de" label.
template <class Fitness>
DeResult run(const DeConfig& cfg, Fitness&& fitness) {
    return run(cfg, std::forward<Fitness>(fitness), SplitRng(cfg.seed).child("de"));
}

/// Continuous -> discrete mapping used by the binding policy:
/// vm = floor((gene - lower) / (upper - lower) * n_vms), clamped to
/// [0, n_vms - 1]. Total for any gene; surjective when genes span the box.
inline int decode_gene(double gene, double lower, double upper, int n_vms) {
    const double width = upper - lower;
    if (!(width > 0.0) || n_vms <= 1) return 0;
    const int index = static_cast<int>(std::floor((gene - lower) / width * n_vms));
    return std::clamp(index, 0, n_vms - 1);
}

inline std::vector<int> decode(const Individual& individual, double lower, double upper,
                               int n_vms) {
    std::vector<int> assignment(individual.genes.size());
    for (std::size_t d = 0; d < assignment.size(); ++d)
        assignment[d] = decode_gene(individual.genes[d], lower, upper, n_vms);
    return assignment;
}

}  // namespace fedcloud::de
