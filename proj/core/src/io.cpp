#include "whid/io.hpp"

#include <charconv>
#include <complex>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "whid/errors.hpp"
#include "whid/version.hpp"

namespace whid {

std::string format_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

namespace {

using nlohmann::json;

double parse_double(std::string_view text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end) {
        throw ConfigError("malformed number: '" + std::string(text) + "'");
    }
    return value;
}

json parse_json(const std::string& text, const char* what) {
    json parsed = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (parsed.is_discarded()) {
        throw ConfigError(std::string("malformed JSON for ") + what);
    }
    return parsed;
}

std::vector<double> double_array(const json& node, const char* what) {
    if (!node.is_array() || node.empty()) {
        throw ConfigError(std::string(what) + " must be a nonempty array of numbers");
    }
    std::vector<double> out;
    out.reserve(node.size());
    for (const auto& v : node) {
        if (!v.is_number()) {
            throw ConfigError(std::string(what) + " must contain only numbers");
        }
        out.push_back(v.get<double>());
    }
    return out;
}

json tf_node(const TransferFunction& tf) {
    return json{{"num", tf.num()}, {"den", tf.den()}};
}

TransferFunction tf_from_node(const json& node, const char* what) {
    if (!node.is_object() || !node.contains("num") || !node.contains("den")) {
        throw ConfigError(std::string(what) + " must be an object with 'num' and 'den'");
    }
    try {
        return TransferFunction(double_array(node["num"], "num"), double_array(node["den"], "den"));
    } catch (const DegenerateError& e) {
        throw ConfigError(std::string(what) + ": " + e.what());
    }
}

const char* status_name(TrialRecord::Status status) {
    switch (status) {
        case TrialRecord::Status::Ok:
            return "ok";
        case TrialRecord::Status::GaMissed:
            return "ga_missed";
        default:
            return "failed";
    }
}

json row_node(const BenchmarkRow& row) {
    return json{{"block_order", row.block_order},
                {"population_size", row.population_size},
                {"trials", row.trials},
                {"successes", row.successes},
                {"failures", row.failures},
                {"success_rate", row.success_rate},
                {"mean_group_count", row.mean_group_count},
                {"mean_scan_seconds", row.mean_scan_seconds},
                {"mean_ga_seconds", row.mean_ga_seconds},
                {"mean_scan_evaluations", row.mean_scan_evaluations},
                {"mean_ga_evaluations", row.mean_ga_evaluations}};
}

}  // namespace

std::string tf_to_json(const TransferFunction& tf) { return tf_node(tf).dump(2) + "\n"; }

TransferFunction tf_from_json(const std::string& json_text) {
    return tf_from_node(parse_json(json_text, "transfer function"), "transfer function");
}

std::string zpk_to_json(const PoleZeroGain& zpk) {
    const auto root_array = [](const std::vector<std::complex<double>>& roots) {
        json out = json::array();
        for (const auto& r : roots) {
            out.push_back(json::array({r.real(), r.imag()}));
        }
        return out;
    };
    const json node{{"zeros", root_array(zpk.zeros)},
                    {"poles", root_array(zpk.poles)},
                    {"gain", zpk.gain}};
    return node.dump(2) + "\n";
}

PoleZeroGain zpk_from_json(const std::string& json_text) {
    const json node = parse_json(json_text, "pole-zero-gain system");
    if (!node.is_object() || !node.contains("zeros") || !node.contains("poles") ||
        !node.contains("gain")) {
        throw ConfigError("pole-zero-gain JSON must contain 'zeros', 'poles' and 'gain'");
    }
    const auto read_roots = [](const json& arr, const char* what) {
        if (!arr.is_array()) {
            throw ConfigError(std::string(what) + " must be an array of [re, im] pairs");
        }
        std::vector<std::complex<double>> out;
        out.reserve(arr.size());
        for (const auto& r : arr) {
            if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
                throw ConfigError(std::string(what) + " entries must be [re, im] pairs");
            }
            out.emplace_back(r[0].get<double>(), r[1].get<double>());
        }
        return out;
    };
    PoleZeroGain zpk;
    zpk.zeros = read_roots(node["zeros"], "zeros");
    zpk.poles = read_roots(node["poles"], "poles");
    if (!node["gain"].is_number()) {
        throw ConfigError("gain must be a number");
    }
    zpk.gain = node["gain"].get<double>();
    return zpk;
}

std::string model_to_json(const WienerHammersteinModel& model) {
    validate(model.nonlinearity);
    json node{{"front", tf_node(model.front)},
              {"nonlinearity",
               {{"degrees", model.nonlinearity.degrees}, {"weights", model.nonlinearity.weights}}},
              {"back", tf_node(model.back)}};
    return node.dump(2) + "\n";
}

WienerHammersteinModel model_from_json(const std::string& json_text) {
    const json node = parse_json(json_text, "model");
    if (!node.is_object() || !node.contains("front") || !node.contains("nonlinearity") ||
        !node.contains("back")) {
        throw ConfigError("model must contain 'front', 'nonlinearity' and 'back'");
    }
    const json& nl = node["nonlinearity"];
    if (!nl.is_object() || !nl.contains("degrees") || !nl.contains("weights")) {
        throw ConfigError("nonlinearity must contain 'degrees' and 'weights'");
    }
    WienerHammersteinModel model;
    model.front = tf_from_node(node["front"], "front block");
    model.back = tf_from_node(node["back"], "back block");
    if (!nl["degrees"].is_array() || !nl["weights"].is_array()) {
        throw ConfigError("nonlinearity degrees and weights must be arrays");
    }
    for (const auto& d : nl["degrees"]) {
        if (!d.is_number_integer()) {
            throw ConfigError("nonlinearity degrees must be integers");
        }
        model.nonlinearity.degrees.push_back(d.get<int>());
    }
    for (const auto& w : nl["weights"]) {
        if (!w.is_number()) {
            throw ConfigError("nonlinearity weights must be numbers");
        }
        model.nonlinearity.weights.push_back(w.get<double>());
    }
    try {
        validate(model.nonlinearity);
    } catch (const DegenerateError& e) {
        throw ConfigError(std::string("nonlinearity: ") + e.what());
    }
    return model;
}

void write_signal_csv(const std::filesystem::path& path, const Signal& signal) {
    validate(signal);
    std::ostringstream out;
    out << "index,value\n";
    for (std::size_t i = 0; i < signal.size(); ++i) {
        out << i << ',' << format_double(signal.samples[i]) << '\n';
    }
    write_text_file(path, out.str());
}

Signal read_signal_csv(const std::filesystem::path& path) {
    const std::string content = read_text_file(path);
    Signal signal;
    std::istringstream in(content);
    std::string line;
    bool first = true;
    std::size_t expected_index = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (first) {
            first = false;
            if (line == "index,value") {
                continue;
            }
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("signal CSV rows must be 'index,value'");
        }
        const double index = parse_double(std::string_view(line).substr(0, comma));
        if (index != static_cast<double>(expected_index)) {
            throw ConfigError("signal CSV indices must count up from 0");
        }
        ++expected_index;
        signal.samples.push_back(parse_double(std::string_view(line).substr(comma + 1)));
    }
    if (signal.samples.empty()) {
        throw ConfigError("signal CSV holds no samples");
    }
    validate(signal);
    return signal;
}

void write_frf_csv(const std::filesystem::path& path, const FrfEstimate& frf) {
    std::ostringstream out;
    out << "freq,real,imag,variance\n";
    for (std::size_t k = 0; k < frf.frequencies.size(); ++k) {
        if (!frf.valid[k]) {
            continue;
        }
        out << format_double(frf.frequencies[k]) << ',' << format_double(frf.response[k].real())
            << ',' << format_double(frf.response[k].imag()) << ','
            << format_double(frf.variance[k]) << '\n';
    }
    write_text_file(path, out.str());
}

void write_scan_csv(const std::filesystem::path& path, const ScanResult& scan) {
    std::ostringstream out;
    out << "bits,mse\n";
    for (const ScanEntry& entry : scan.entries) {
        out << entry.alloc.to_string() << ',' << format_double(entry.mse) << '\n';
    }
    write_text_file(path, out.str());
}

std::string ga_history_to_csv(const std::vector<GAGenerationStat>& history) {
    std::ostringstream out;
    out << "generation,best_cost,mean_cost\n";
    for (const GAGenerationStat& stat : history) {
        out << stat.generation << ',' << format_double(stat.best_cost) << ','
            << format_double(stat.mean_cost) << '\n';
    }
    return out.str();
}

MonteCarloConfig benchmark_config_from_json(const std::string& json_text) {
    const json node = parse_json(json_text, "benchmark configuration");
    if (!node.is_object()) {
        throw ConfigError("benchmark configuration must be a JSON object");
    }
    MonteCarloConfig config;
    try {
        if (node.contains("block_orders")) {
            config.block_orders = node["block_orders"].get<std::vector<int>>();
        }
        config.trials = node.value("trials", config.trials);
        config.period = node.value("period", config.period);
        config.periods = node.value("periods", config.periods);
        config.noise_sigma = node.value("noise_sigma", config.noise_sigma);
        config.success_rel_tol = node.value("success_rel_tol", config.success_rel_tol);
        config.master_seed = node.value("master_seed", config.master_seed);
        config.scan_jobs = node.value("scan_jobs", config.scan_jobs);
        if (node.contains("degrees")) {
            config.degrees = node["degrees"].get<std::vector<int>>();
        }
        if (node.contains("population_for_order")) {
            const json& pops = node["population_for_order"];
            if (!pops.is_object()) {
                throw ConfigError("population_for_order must map orders to sizes");
            }
            for (const auto& [key, value] : pops.items()) {
                config.population_for_order.emplace_back(std::stoi(key), value.get<int>());
            }
        }
        if (node.contains("recipe")) {
            const json& r = node["recipe"];
            config.recipe.cheby1_ripple_db =
                r.value("cheby1_ripple_db", config.recipe.cheby1_ripple_db);
            config.recipe.cheby2_atten_db =
                r.value("cheby2_atten_db", config.recipe.cheby2_atten_db);
            config.recipe.cutoff_lo = r.value("cutoff_lo", config.recipe.cutoff_lo);
            config.recipe.cutoff_hi = r.value("cutoff_hi", config.recipe.cutoff_hi);
            config.recipe.nl_linear_coeff =
                r.value("nl_linear_coeff", config.recipe.nl_linear_coeff);
            config.recipe.nl_coeff_lo = r.value("nl_coeff_lo", config.recipe.nl_coeff_lo);
            config.recipe.nl_coeff_hi = r.value("nl_coeff_hi", config.recipe.nl_coeff_hi);
        }
        if (node.contains("ga")) {
            const json& g = node["ga"];
            config.ga.population_size = g.value("population_size", config.ga.population_size);
            config.ga.max_generations = g.value("max_generations", config.ga.max_generations);
            config.ga.stall_generation_limit =
                g.value("stall_generation_limit", config.ga.stall_generation_limit);
            config.ga.cost_tolerance = g.value("cost_tolerance", config.ga.cost_tolerance);
            config.ga.crossover_fraction =
                g.value("crossover_fraction", config.ga.crossover_fraction);
            if (g.contains("mutation_rate") && g["mutation_rate"].is_number()) {
                config.ga.mutation_rate = g["mutation_rate"].get<double>();
            }
            config.ga.elite_count = g.value("elite_count", config.ga.elite_count);
            if (g.contains("selection")) {
                const std::string s = g["selection"].get<std::string>();
                if (s == "rank_sus") {
                    config.ga.selection = SelectionScheme::RankSus;
                } else if (s == "tournament") {
                    config.ga.selection = SelectionScheme::Tournament;
                } else {
                    throw ConfigError("selection must be 'rank_sus' or 'tournament'");
                }
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("benchmark configuration: ") + e.what());
    } catch (const std::invalid_argument&) {
        throw ConfigError("population_for_order keys must be integer orders");
    }
    config.validate();
    return config;
}

std::string benchmark_config_to_json(const MonteCarloConfig& config) {
    json pops = json::object();
    for (const auto& [order, population] : config.population_for_order) {
        pops[std::to_string(order)] = population;
    }
    json ga{{"population_size", config.ga.population_size},
            {"max_generations", config.ga.max_generations},
            {"stall_generation_limit", config.ga.stall_generation_limit},
            {"cost_tolerance", config.ga.cost_tolerance},
            {"crossover_fraction", config.ga.crossover_fraction},
            {"elite_count", config.ga.elite_count},
            {"selection",
             config.ga.selection == SelectionScheme::RankSus ? "rank_sus" : "tournament"}};
    if (config.ga.mutation_rate) {
        ga["mutation_rate"] = *config.ga.mutation_rate;
    }
    const json node{{"block_orders", config.block_orders},
                    {"trials", config.trials},
                    {"period", config.period},
                    {"periods", config.periods},
                    {"noise_sigma", config.noise_sigma},
                    {"population_for_order", pops},
                    {"degrees", config.degrees},
                    {"success_rel_tol", config.success_rel_tol},
                    {"master_seed", config.master_seed},
                    {"scan_jobs", config.scan_jobs},
                    {"recipe",
                     {{"cheby1_ripple_db", config.recipe.cheby1_ripple_db},
                      {"cheby2_atten_db", config.recipe.cheby2_atten_db},
                      {"cutoff_lo", config.recipe.cutoff_lo},
                      {"cutoff_hi", config.recipe.cutoff_hi},
                      {"nl_linear_coeff", config.recipe.nl_linear_coeff},
                      {"nl_coeff_lo", config.recipe.nl_coeff_lo},
                      {"nl_coeff_hi", config.recipe.nl_coeff_hi}}},
                    {"ga", ga}};
    return node.dump(2) + "\n";
}

std::string report_to_json(const BenchmarkReport& report) {
    json rows = json::array();
    for (const BenchmarkRow& row : report.rows) {
        rows.push_back(row_node(row));
    }
    json trials = json::array();
    for (const auto& order_trials : report.trials) {
        json order_node = json::array();
        for (const TrialRecord& t : order_trials) {
            order_node.push_back(json{{"trial_index", t.trial_index},
                                      {"group_count", t.group_count},
                                      {"scan_evaluations", t.scan_evaluations},
                                      {"ga_evaluations", t.ga_evaluations},
                                      {"scan_seconds", t.scan_seconds},
                                      {"ga_seconds", t.ga_seconds},
                                      {"scan_best_mse", t.scan_best_mse},
                                      {"ga_best_mse", t.ga_best_mse},
                                      {"scan_best", t.scan_best.to_string()},
                                      {"ga_best", t.ga_best.to_string()},
                                      {"status", status_name(t.status)},
                                      {"failure_reason", t.failure_reason}});
        }
        trials.push_back(std::move(order_node));
    }
    const json node{{"rows", rows}, {"trials", trials}, {"total_seconds", report.total_seconds}};
    return node.dump(2) + "\n";
}

std::string report_to_csv(const BenchmarkReport& report) {
    std::ostringstream out;
    out << "block_order,population_size,trials,successes,failures,success_rate,"
           "mean_group_count,mean_scan_seconds,mean_ga_seconds,mean_scan_evaluations,"
           "mean_ga_evaluations\n";
    for (const BenchmarkRow& row : report.rows) {
        out << row.block_order << ',' << row.population_size << ',' << row.trials << ','
            << row.successes << ',' << row.failures << ',' << format_double(row.success_rate)
            << ',' << format_double(row.mean_group_count) << ','
            << format_double(row.mean_scan_seconds) << ','
            << format_double(row.mean_ga_seconds) << ','
            << format_double(row.mean_scan_evaluations) << ','
            << format_double(row.mean_ga_evaluations) << '\n';
    }
    return out.str();
}

std::string report_to_markdown(const BenchmarkReport& report) {
    std::ostringstream out;
    out << "| order | population | trials | successes | failures | success rate | mean groups "
           "| scan s | ga s | scan evals | ga evals |\n";
    out << "|---|---|---|---|---|---|---|---|---|---|---|\n";
    const auto fixed = [](double v, int digits) {
        std::ostringstream s;
        s.setf(std::ios::fixed);
        s.precision(digits);
        s << v;
        return s.str();
    };
    for (const BenchmarkRow& row : report.rows) {
        out << "| " << row.block_order << " | " << row.population_size << " | " << row.trials
            << " | " << row.successes << " | " << row.failures << " | "
            << fixed(100.0 * row.success_rate, 1) << "% | " << fixed(row.mean_group_count, 1)
            << " | " << fixed(row.mean_scan_seconds, 3) << " | " << fixed(row.mean_ga_seconds, 3)
            << " | " << fixed(row.mean_scan_evaluations, 1) << " | "
            << fixed(row.mean_ga_evaluations, 1) << " |\n";
    }
    return out.str();
}

std::string RunManifest::to_json() const {
    const json node{{"command", command},          {"arguments", arguments},
                    {"seed", seed},                {"started_utc", started_utc},
                    {"elapsed_seconds", elapsed_seconds}, {"tool_version", tool_version}};
    return node.dump(2) + "\n";
}

RunManifest RunManifest::from_json(const std::string& json_text) {
    const json node = parse_json(json_text, "run manifest");
    if (!node.is_object()) {
        throw ConfigError("run manifest must be a JSON object");
    }
    RunManifest manifest;
    manifest.command = node.value("command", std::string());
    if (node.contains("arguments") && node["arguments"].is_array()) {
        for (const auto& a : node["arguments"]) {
            if (a.is_string()) {
                manifest.arguments.push_back(a.get<std::string>());
            }
        }
    }
    manifest.seed = node.value("seed", std::uint64_t(0));
    manifest.started_utc = node.value("started_utc", std::string());
    manifest.elapsed_seconds = node.value("elapsed_seconds", 0.0);
    manifest.tool_version = node.value("tool_version", std::string());
    return manifest;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open file for reading: " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open file for writing: " + path.string());
    }
    out << content;
    if (!out) {
        throw ConfigError("failed writing file: " + path.string());
    }
}

}  // namespace whid
