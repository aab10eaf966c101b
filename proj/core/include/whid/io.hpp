#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "whid/bla.hpp"
#include "whid/brute_force.hpp"
#include "whid/model.hpp"
#include "whid/monte_carlo.hpp"
#include "whid/signal.hpp"
#include "whid/transfer_function.hpp"

namespace whid {

/// Serialization used by the command line tool and the test suite. Numbers
/// are written with enough digits to round-trip exactly. All readers throw
/// ConfigError on malformed content.

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

// Transfer functions as {"num": [...], "den": [...]}.
std::string tf_to_json(const TransferFunction& tf);
TransferFunction tf_from_json(const std::string& json_text);

// Factored systems as {"zeros": [[re, im], ...], "poles": [[re, im], ...],
// "gain": g}.
std::string zpk_to_json(const PoleZeroGain& zpk);
PoleZeroGain zpk_from_json(const std::string& json_text);

// Full models as {"front": tf, "nonlinearity": {"degrees", "weights"}, "back": tf}.
std::string model_to_json(const WienerHammersteinModel& model);
WienerHammersteinModel model_from_json(const std::string& json_text);

// Signals as "index,value" CSV with a header row.
void write_signal_csv(const std::filesystem::path& path, const Signal& signal);
Signal read_signal_csv(const std::filesystem::path& path);

// FRF estimates as "freq,real,imag,variance" CSV over the valid bins.
void write_frf_csv(const std::filesystem::path& path, const FrfEstimate& frf);

// Scan results as "bits,mse" CSV, best first.
void write_scan_csv(const std::filesystem::path& path, const ScanResult& scan);

// Search traces as "generation,best_cost,mean_cost" CSV.
std::string ga_history_to_csv(const std::vector<GAGenerationStat>& history);

// Benchmark configurations as a flat JSON object; every field is optional
// and falls back to the MonteCarloConfig default. Population overrides are
// an object mapping order to population size, e.g. {"5": 200, "6": 400}.
MonteCarloConfig benchmark_config_from_json(const std::string& json_text);
std::string benchmark_config_to_json(const MonteCarloConfig& config);

std::string report_to_json(const BenchmarkReport& report);
std::string report_to_csv(const BenchmarkReport& report);
std::string report_to_markdown(const BenchmarkReport& report);

/// Provenance block attached to every command run: what ran, with which
/// inputs, under which seed. Written next to outputs as JSON.
struct RunManifest {
    std::string command;
    std::vector<std::string> arguments;
    std::uint64_t seed = 0;
    std::string started_utc;
    double elapsed_seconds = 0.0;
    std::string tool_version;

    std::string to_json() const;
    static RunManifest from_json(const std::string& json_text);
};

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace whid
