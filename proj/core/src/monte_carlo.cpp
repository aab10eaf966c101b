#include "whid/monte_carlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

#include "whid/bla.hpp"
#include "whid/brute_force.hpp"
#include "whid/errors.hpp"
#include "whid/filtering.hpp"
#include "whid/rng.hpp"

namespace whid {

int MonteCarloConfig::population_for(int block_order) const {
    for (const auto& [order, population] : population_for_order) {
        if (order == block_order) {
            return population;
        }
    }
    return ga.population_size;
}

void MonteCarloConfig::validate() const {
    whid::validate(recipe);
    ga.validate();
    if (block_orders.empty()) {
        throw ConfigError("at least one block order is required");
    }
    for (int order : block_orders) {
        if (order < 0 || order > 20) {
            throw ConfigError("block orders must lie between 0 and 20");
        }
    }
    if (trials < 1) {
        throw ConfigError("at least one trial per order is required");
    }
    if (period < 64) {
        throw ConfigError("period must span at least 64 samples");
    }
    if (periods < 1) {
        throw ConfigError("at least one period is required");
    }
    if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
        throw ConfigError("noise level must be nonnegative and finite");
    }
    for (const auto& [order, population] : population_for_order) {
        if (order < 0 || order > 20) {
            throw ConfigError("population overrides must name orders between 0 and 20");
        }
        if (population < 2) {
            throw ConfigError("population overrides must be at least 2");
        }
    }
    if (!(success_rel_tol > 0.0)) {
        throw ConfigError("success tolerance must be positive");
    }
    if (degrees.empty()) {
        throw ConfigError("at least one monomial degree is required");
    }
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 1) {
            throw ConfigError("monomial degrees must be >= 1");
        }
        for (std::size_t j = i + 1; j < degrees.size(); ++j) {
            if (degrees[i] == degrees[j]) {
                throw ConfigError("monomial degrees must be distinct");
            }
        }
    }
    if (scan_jobs < 0) {
        throw ConfigError("scan jobs cannot be negative");
    }
}

namespace {

std::uint64_t trial_seed(const MonteCarloConfig& config, int block_order, int trial_index) {
    // Two-level derivation: one stream per order, one per trial within it,
    // so adding or reordering orders leaves the other orders' trials alone.
    const std::uint64_t order_master = derive_seed(
        config.master_seed, 0x6f726472ULL + static_cast<std::uint64_t>(block_order));
    return derive_seed(order_master, static_cast<std::uint64_t>(trial_index));
}

}  // namespace

TrialRecord run_trial(const MonteCarloConfig& config, int block_order, int trial_index) {
    config.validate();
    if (trial_index < 0) {
        throw ConfigError("trial index cannot be negative");
    }
    if (block_order < 0 || block_order > 20) {
        throw ConfigError("block order must lie between 0 and 20");
    }

    SystemRecipe recipe = config.recipe;
    recipe.block_order = block_order;

    // Fixed draw order below makes every trial reproducible from
    // (master_seed, block_order, trial_index) alone.
    Rng rng(trial_seed(config, block_order, trial_index));
    const GeneratedSystem sys = random_wh_system_detailed(recipe, rng);
    const Signal u = generate_periodic_gaussian(config.period, 1, 1.0, rng);
    Signal y = simulate_wh(sys.model, u);
    if (config.noise_sigma > 0.0) {
        // Observing P noisy periods of a periodic response is equivalent to
        // one period plus period-averaged noise.
        std::vector<double> noise(config.period, 0.0);
        for (std::size_t p = 0; p < config.periods; ++p) {
            for (std::size_t i = 0; i < config.period; ++i) {
                noise[i] += rng.gaussian();
            }
        }
        const double scale = config.noise_sigma / static_cast<double>(config.periods);
        for (std::size_t i = 0; i < config.period; ++i) {
            y.samples[i] += scale * noise[i];
        }
    }

    // Both searches run on the exact poles and zeros of the drawn blocks;
    // the contest is about assigning known roots, not about estimating them.
    PoleZeroGain combined;
    combined.zeros = sys.front_zpk.zeros;
    combined.zeros.insert(combined.zeros.end(), sys.back_zpk.zeros.begin(),
                          sys.back_zpk.zeros.end());
    combined.poles = sys.front_zpk.poles;
    combined.poles.insert(combined.poles.end(), sys.back_zpk.poles.begin(),
                          sys.back_zpk.poles.end());
    combined.gain = sys.front_zpk.gain * sys.back_zpk.gain;
    const PoleZeroGroups groups = group_conjugates(combined);

    ScanOptions scan_options;
    scan_options.jobs = config.scan_jobs;
    scan_options.max_kept = 16;
    const ScanResult scan = brute_force_scan(groups, u, y, config.degrees, scan_options);

    GAConfig ga_config = config.ga;
    ga_config.population_size = config.population_for(block_order);
    ga_config.rng_seed = rng.next_word();
    const GAIdentification ga = identify_wh_ga(groups, u, y, config.degrees, ga_config);

    TrialRecord record;
    record.trial_index = trial_index;
    record.group_count = groups.group_count();
    record.scan_evaluations = scan.evaluations;
    record.ga_evaluations = ga.search.evaluations;
    record.scan_seconds = scan.elapsed_seconds;
    record.ga_seconds = ga.search.elapsed_seconds;
    record.scan_best_mse = scan.best.mse;
    record.ga_best_mse = ga.search.best_cost;
    record.scan_best = scan.best.alloc;
    record.ga_best = ga.search.best;
    const double mse_floor = 1e-15 * variance(y);
    const bool matched = std::abs(ga.search.best_cost - scan.best.mse) <=
                         config.success_rel_tol * std::max(scan.best.mse, mse_floor);
    record.status = matched ? TrialRecord::Status::Ok : TrialRecord::Status::GaMissed;
    return record;
}

BenchmarkReport run_monte_carlo(const MonteCarloConfig& config, const ProgressFn& progress) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    BenchmarkReport report;
    for (int order : config.block_orders) {
        std::vector<TrialRecord> records;
        records.reserve(static_cast<std::size_t>(config.trials));
        BenchmarkRow row;
        row.block_order = order;
        row.population_size = config.population_for(order);
        row.trials = config.trials;
        for (int t = 0; t < config.trials; ++t) {
            TrialRecord record;
            try {
                record = run_trial(config, order, t);
            } catch (const Error& e) {
                record = TrialRecord{};
                record.trial_index = t;
                record.status = TrialRecord::Status::Failed;
                record.failure_reason = e.what();
            }
            if (record.status == TrialRecord::Status::Failed) {
                ++row.failures;
            } else {
                if (record.status == TrialRecord::Status::Ok) {
                    ++row.successes;
                }
                row.mean_group_count += static_cast<double>(record.group_count);
                row.mean_scan_seconds += record.scan_seconds;
                row.mean_ga_seconds += record.ga_seconds;
                row.mean_scan_evaluations += static_cast<double>(record.scan_evaluations);
                row.mean_ga_evaluations += static_cast<double>(record.ga_evaluations);
            }
            if (progress) {
                progress(order, t, record);
            }
            records.push_back(std::move(record));
        }
        const int counted = config.trials - row.failures;
        if (counted > 0) {
            const double n = static_cast<double>(counted);
            row.success_rate = static_cast<double>(row.successes) / n;
            row.mean_group_count /= n;
            row.mean_scan_seconds /= n;
            row.mean_ga_seconds /= n;
            row.mean_scan_evaluations /= n;
            row.mean_ga_evaluations /= n;
        }
        report.rows.push_back(row);
        report.trials.push_back(std::move(records));
    }
    report.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace whid
