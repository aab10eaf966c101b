#include "whid/ga.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "whid/errors.hpp"
#include "whid/rng.hpp"

namespace whid {

void GAConfig::validate() const {
    if (population_size < 2) {
        throw ConfigError("population size must be at least 2");
    }
    if (max_generations < 0) {
        throw ConfigError("generation limit cannot be negative");
    }
    if (stall_generation_limit < 1) {
        throw ConfigError("stall generation limit must be at least 1");
    }
    if (!(cost_tolerance >= 0.0)) {
        throw ConfigError("cost tolerance must be nonnegative");
    }
    if (!(crossover_fraction >= 0.0 && crossover_fraction <= 1.0)) {
        throw ConfigError("crossover fraction must lie in [0, 1]");
    }
    if (mutation_rate && !(*mutation_rate >= 0.0 && *mutation_rate <= 1.0)) {
        throw ConfigError("mutation rate must lie in [0, 1]");
    }
    if (elite_count < 0 || elite_count >= population_size) {
        throw ConfigError("elite count must be nonnegative and below the population size");
    }
}

namespace {

struct Individual {
    AllocationVector bits;
    double cost = 0.0;
};

bool individual_less(const Individual& a, const Individual& b) {
    if (a.cost != b.cost) {
        return a.cost < b.cost;
    }
    return a.bits < b.bits;
}

class MemoizedCost {
  public:
    explicit MemoizedCost(const std::function<double(const AllocationVector&)>& cost)
        : cost_(cost) {}

    double operator()(const AllocationVector& alloc) {
        const std::string key = alloc.to_string();
        auto it = cache_.find(key);
        if (it != cache_.end()) {
            return it->second;
        }
        const double value = cost_(alloc);
        cache_.emplace(key, value);
        return value;
    }

    std::uint64_t evaluations() const { return cache_.size(); }

  private:
    const std::function<double(const AllocationVector&)>& cost_;
    std::unordered_map<std::string, double> cache_;
};

/// Stochastic universal sampling over rank-scaled fitness 1/sqrt(rank):
/// `count` equally spaced pointers on the cumulative fitness wheel, one
/// random offset for all of them. `ranked` must be sorted best first.
std::vector<std::size_t> sus_select(const std::vector<std::size_t>& ranked, std::size_t count,
                                    Rng& rng) {
    const std::size_t p = ranked.size();
    std::vector<double> fitness(p);
    double total = 0.0;
    for (std::size_t r = 0; r < p; ++r) {
        fitness[r] = 1.0 / std::sqrt(static_cast<double>(r + 1));
        total += fitness[r];
    }
    std::vector<std::size_t> selected;
    selected.reserve(count);
    if (count == 0) {
        return selected;
    }
    const double step = total / static_cast<double>(count);
    double pointer = rng.uniform01() * step;
    double cumulative = 0.0;
    std::size_t r = 0;
    while (selected.size() < count) {
        while (r < p && cumulative + fitness[r] < pointer) {
            cumulative += fitness[r];
            ++r;
        }
        const std::size_t pick = std::min(r, p - 1);
        selected.push_back(ranked[pick]);
        pointer += step;
    }
    return selected;
}

std::vector<std::size_t> tournament_select(const std::vector<std::size_t>& ranked,
                                           const std::vector<Individual>& population,
                                           std::size_t count, Rng& rng) {
    const std::size_t p = ranked.size();
    std::vector<std::size_t> selected;
    selected.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t best = population.size();
        for (int round = 0; round < 4; ++round) {
            const std::size_t candidate = static_cast<std::size_t>(rng.below(p));
            if (best == population.size() ||
                individual_less(population[candidate], population[best])) {
                best = candidate;
            }
        }
        selected.push_back(best);
    }
    return selected;
}

}  // namespace

GAResult ga_optimize(int length, const std::function<double(const AllocationVector&)>& cost,
                     const GAConfig& config) {
    config.validate();
    if (length < 1) {
        throw DegenerateError("bit vector length must be at least 1");
    }
    if (!cost) {
        throw DegenerateError("cost function must be callable");
    }
    const auto start = std::chrono::steady_clock::now();

    Rng rng(config.rng_seed);
    MemoizedCost evaluate(cost);
    const std::size_t pop_size = static_cast<std::size_t>(config.population_size);
    const std::size_t bit_count = static_cast<std::size_t>(length);
    const double mutation_rate =
        config.mutation_rate ? *config.mutation_rate : 1.0 / static_cast<double>(length);

    std::vector<Individual> population(pop_size);
    for (Individual& ind : population) {
        ind.bits.bits.resize(bit_count);
        for (std::uint8_t& b : ind.bits.bits) {
            b = rng.coin() ? 1 : 0;
        }
        ind.cost = evaluate(ind.bits);
    }

    GAResult result;
    const auto record_generation = [&](int generation) {
        std::size_t best_idx = 0;
        double mean = 0.0;
        for (std::size_t i = 0; i < pop_size; ++i) {
            mean += population[i].cost;
            if (individual_less(population[i], population[best_idx])) {
                best_idx = i;
            }
        }
        mean /= static_cast<double>(pop_size);
        result.history.push_back(GAGenerationStat{generation, population[best_idx].cost, mean});
        if (result.history.size() == 1 ||
            individual_less(population[best_idx],
                            Individual{result.best, result.best_cost})) {
            result.best = population[best_idx].bits;
            result.best_cost = population[best_idx].cost;
        }
    };
    record_generation(0);

    const std::size_t breed_count = pop_size - static_cast<std::size_t>(config.elite_count);
    const std::size_t crossover_count = static_cast<std::size_t>(
        std::lround(config.crossover_fraction * static_cast<double>(breed_count)));
    const std::size_t mutant_count = breed_count - crossover_count;

    int stall = 0;
    result.stop_reason = GAStopReason::GenerationLimit;
    for (int gen = 1; gen <= config.max_generations; ++gen) {
        if (result.best_cost <= config.cost_tolerance) {
            result.stop_reason = GAStopReason::CostTolerance;
            break;
        }

        std::vector<std::size_t> ranked(pop_size);
        for (std::size_t i = 0; i < pop_size; ++i) {
            ranked[i] = i;
        }
        std::sort(ranked.begin(), ranked.end(), [&](std::size_t a, std::size_t b) {
            return individual_less(population[a], population[b]);
        });

        const std::size_t parent_count = 2 * crossover_count + mutant_count;
        std::vector<std::size_t> parents =
            config.selection == SelectionScheme::RankSus
                ? sus_select(ranked, parent_count, rng)
                : tournament_select(ranked, population, parent_count, rng);
        // The wheel yields parents in rank order; shuffle so crossover pairs
        // are not systematically rank-adjacent.
        for (std::size_t i = parents.size(); i > 1; --i) {
            std::swap(parents[i - 1], parents[static_cast<std::size_t>(rng.below(i))]);
        }

        std::vector<Individual> next;
        next.reserve(pop_size);
        for (int e = 0; e < config.elite_count; ++e) {
            next.push_back(population[ranked[static_cast<std::size_t>(e)]]);
        }
        std::size_t parent_cursor = 0;
        for (std::size_t c = 0; c < crossover_count; ++c) {
            const Individual& a = population[parents[parent_cursor++]];
            const Individual& b = population[parents[parent_cursor++]];
            Individual child;
            child.bits.bits.resize(bit_count);
            for (std::size_t k = 0; k < bit_count; ++k) {
                child.bits.bits[k] = rng.coin() ? a.bits.bits[k] : b.bits.bits[k];
            }
            child.cost = evaluate(child.bits);
            next.push_back(std::move(child));
        }
        for (std::size_t mu = 0; mu < mutant_count; ++mu) {
            Individual child = population[parents[parent_cursor++]];
            for (std::size_t k = 0; k < bit_count; ++k) {
                if (rng.uniform01() < mutation_rate) {
                    child.bits.bits[k] ^= 1;
                }
            }
            child.cost = evaluate(child.bits);
            next.push_back(std::move(child));
        }
        population = std::move(next);

        const double previous_best = result.best_cost;
        record_generation(gen);
        result.generations_run = gen;
        const double improvement = previous_best - result.best_cost;
        if (improvement <= config.cost_tolerance) {
            ++stall;
        } else {
            stall = 0;
        }
        if (result.best_cost <= config.cost_tolerance) {
            result.stop_reason = GAStopReason::CostTolerance;
            break;
        }
        if (stall >= config.stall_generation_limit) {
            result.stop_reason = GAStopReason::StallLimit;
            break;
        }
    }

    result.evaluations = evaluate.evaluations();
    result.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

GAIdentification identify_wh_ga(const PoleZeroGroups& groups, const Signal& u, const Signal& y,
                                std::span<const int> degrees, const GAConfig& config) {
    config.validate();
    const detail::AllocationCostEvaluator evaluator(groups, u, y, degrees);
    const int length = groups.group_count();

    GAIdentification out;
    if (length == 0) {
        const auto start = std::chrono::steady_clock::now();
        out.search.best = AllocationVector{};
        out.search.best_cost = evaluator.cost(out.search.best);
        out.search.evaluations = 1;
        out.search.generations_run = 0;
        out.search.stop_reason = GAStopReason::GenerationLimit;
        out.search.history.push_back(
            GAGenerationStat{0, out.search.best_cost, out.search.best_cost});
        out.search.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    } else {
        out.search = ga_optimize(
            length, [&evaluator](const AllocationVector& alloc) { return evaluator.cost(alloc); },
            config);
    }
    out.fit = evaluator.fit(out.search.best);
    return out;
}

}  // namespace whid
