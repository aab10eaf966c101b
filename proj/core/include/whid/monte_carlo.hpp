#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "whid/ga.hpp"
#include "whid/model.hpp"

namespace whid {

/// Full description of one benchmark: systems of the listed block orders,
/// identified by both search strategies over repeated random trials.
struct MonteCarloConfig {
    SystemRecipe recipe;
    std::vector<int> block_orders = {5, 6};
    /// Trials per block order.
    int trials = 100;
    /// Samples per period of the Gaussian excitation (standard deviation 1).
    std::size_t period = 4096;
    /// Periods of noisy output averaged before fitting.
    std::size_t periods = 1;
    /// Standard deviation of additive output noise per period.
    double noise_sigma = 0.0;
    /// Search settings shared by all orders; the population size may be
    /// overridden per order below.
    GAConfig ga;
    /// (block order, population size) overrides.
    std::vector<std::pair<int, int>> population_for_order;
    std::vector<int> degrees = {1, 2, 3};
    /// GA cost within this relative distance of the scan optimum counts as a
    /// success.
    double success_rel_tol = 1e-9;
    std::uint64_t master_seed = 1;
    /// Worker threads for the exhaustive scan; 0 means one per hardware
    /// thread.
    int scan_jobs = 1;

    int population_for(int block_order) const;
    void validate() const;
};

struct TrialRecord {
    enum class Status {
        Ok,
        /// The genetic algorithm missed the exhaustive-scan optimum.
        GaMissed,
        /// The trial aborted (design failure, singular fit); excluded from
        /// the success-rate denominator.
        Failed,
    };

    int trial_index = 0;
    int group_count = 0;
    std::uint64_t scan_evaluations = 0;
    std::uint64_t ga_evaluations = 0;
    double scan_seconds = 0.0;
    double ga_seconds = 0.0;
    double scan_best_mse = 0.0;
    double ga_best_mse = 0.0;
    AllocationVector scan_best;
    AllocationVector ga_best;
    Status status = Status::Ok;
    std::string failure_reason;
};

/// Aggregates of one block order's trials. Means are taken over non-failed
/// trials; the success rate is successes / (trials - failures).
struct BenchmarkRow {
    int block_order = 0;
    int population_size = 0;
    int trials = 0;
    int successes = 0;
    int failures = 0;
    double success_rate = 0.0;
    double mean_group_count = 0.0;
    double mean_scan_seconds = 0.0;
    double mean_ga_seconds = 0.0;
    double mean_scan_evaluations = 0.0;
    double mean_ga_evaluations = 0.0;
};

struct BenchmarkReport {
    /// One row per entry of MonteCarloConfig::block_orders, same order.
    std::vector<BenchmarkRow> rows;
    std::vector<std::vector<TrialRecord>> trials;
    double total_seconds = 0.0;
};

/// Called after every finished trial with (block_order, trial_index, record).
using ProgressFn = std::function<void(int, int, const TrialRecord&)>;

/// Runs one trial at the given block order: draw a system, simulate periodic
/// data, allocate the true poles and zeros by exhaustive scan and by the
/// genetic algorithm, and compare. The trial seed is derived from the master
/// seed, the block order, and the trial index, so any trial can be rerun in
/// isolation.
TrialRecord run_trial(const MonteCarloConfig& config, int block_order, int trial_index);

/// Runs config.trials trials for every configured block order. Trials that
/// abort with an Error are recorded as failed rather than dropped.
BenchmarkReport run_monte_carlo(const MonteCarloConfig& config, const ProgressFn& progress = {});

}  // namespace whid
