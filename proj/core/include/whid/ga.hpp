#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "whid/allocation.hpp"
#include "whid/signal.hpp"

namespace whid {

enum class SelectionScheme {
    /// Rank-based fitness 1/sqrt(rank), sampled by stochastic universal
    /// sampling.
    RankSus,
    /// Size-4 tournaments.
    Tournament,
};

/// Knobs of the bitstring genetic algorithm. Defaults follow the search
/// settings used by the desk benchmark at block order 5.
struct GAConfig {
    int population_size = 200;
    int max_generations = 50;
    /// Stop after this many consecutive generations whose best-cost
    /// improvement stays below cost_tolerance.
    int stall_generation_limit = 5;
    double cost_tolerance = 1e-20;
    /// Fraction of each new generation (after elites) produced by crossover;
    /// the rest are mutants.
    double crossover_fraction = 0.8;
    /// Per-bit flip probability for mutants; 1/length when unset.
    std::optional<double> mutation_rate;
    int elite_count = 2;
    SelectionScheme selection = SelectionScheme::RankSus;
    std::uint64_t rng_seed = 0;

    void validate() const;
};

/// Why the run ended.
enum class GAStopReason {
    CostTolerance,
    StallLimit,
    GenerationLimit,
};

struct GAGenerationStat {
    int generation = 0;
    double best_cost = 0.0;
    double mean_cost = 0.0;
};

struct GAResult {
    AllocationVector best;
    double best_cost = 0.0;
    /// Distinct bit vectors evaluated (the cost cache makes repeats free).
    std::uint64_t evaluations = 0;
    /// Generations bred after the initial population.
    int generations_run = 0;
    GAStopReason stop_reason = GAStopReason::GenerationLimit;
    /// Entry 0 is the initial population; one entry per generation after.
    std::vector<GAGenerationStat> history;
    double elapsed_seconds = 0.0;
};

/// Minimizes a cost over fixed-length bit vectors. Cost values are memoized
/// on the bit pattern, so `evaluations` counts distinct calls to `cost`.
GAResult ga_optimize(int length, const std::function<double(const AllocationVector&)>& cost,
                     const GAConfig& config);

/// Search outcome plus the fully refit best allocation.
struct GAIdentification {
    GAResult search;
    FitResult fit;
};

/// Runs the genetic algorithm on the allocation problem and refits the
/// winning allocation. A zero-length problem (no groups) returns the empty
/// allocation without searching.
GAIdentification identify_wh_ga(const PoleZeroGroups& groups, const Signal& u, const Signal& y,
                                std::span<const int> degrees, const GAConfig& config);

}  // namespace whid
