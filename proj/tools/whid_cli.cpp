// Command line front end: simulate datasets, design filters, identify
// models from data, run the search benchmark.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "whid/whid.hpp"

namespace fs = std::filesystem;

namespace {

std::string utc_timestamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

struct RunContext {
    std::vector<std::string> arguments;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string started_utc;
    std::chrono::steady_clock::time_point started_at;
};

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const RunContext& ctx) {
    whid::RunManifest manifest;
    manifest.command = command;
    manifest.arguments = ctx.arguments;
    manifest.seed = ctx.seed;
    manifest.started_utc = ctx.started_utc;
    manifest.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.started_at)
            .count();
    manifest.tool_version = whid::kVersionString;
    whid::write_text_file(out_dir / "manifest.json", manifest.to_json());
}

struct SimulateArgs {
    std::string model_path;
    std::size_t samples = 4096;
    double std_dev = 1.0;
    std::string out_dir = ".";
};

void run_simulate(const SimulateArgs& args, const RunContext& ctx) {
    const auto model = whid::model_from_json(whid::read_text_file(args.model_path));
    whid::Rng rng(ctx.seed);
    const whid::Signal u =
        whid::generate_periodic_gaussian(args.samples, 1, args.std_dev, rng);
    const whid::Signal y = whid::simulate_wh(model, u);
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    whid::write_signal_csv(dir / "u.csv", u);
    whid::write_signal_csv(dir / "y.csv", y);
    write_manifest(dir, "simulate", ctx);
    std::cout << "wrote " << (dir / "u.csv").string() << " and " << (dir / "y.csv").string()
              << " (" << u.size() << " samples)\n";
}

struct DesignFilterArgs {
    std::string type = "cheby1";
    int order = 5;
    double cutoff = 0.1;
    double db = 0.0;
    bool db_given = false;
    std::string out_dir = ".";
};

void run_design_filter(const DesignFilterArgs& args, const RunContext& ctx) {
    const bool lowpass_ripple = args.type == "cheby1";
    const double db = args.db_given ? args.db : (lowpass_ripple ? 3.0 : 50.0);
    const whid::TransferFunction tf =
        lowpass_ripple ? whid::cheby1_design(args.order, db, args.cutoff)
                       : whid::cheby2_design(args.order, db, args.cutoff);
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    whid::write_text_file(dir / "filter.json", whid::tf_to_json(tf));
    write_manifest(dir, "design-filter", ctx);
    std::cout << "wrote " << (dir / "filter.json").string() << '\n'
              << args.type << " order " << args.order << ", cutoff " << args.cutoff
              << ", max pole magnitude " << tf.max_pole_magnitude() << '\n';
}

struct IdentifyArgs {
    std::string u_path;
    std::string y_path;
    std::string zpk_path;
    std::string tf_path;
    bool fit_bla = false;
    int num_order = 0;
    int den_order = 0;
    std::size_t periods = 1;
    std::string method = "brute";
    std::vector<int> degrees = {1, 2, 3};
    whid::GAConfig ga;
    std::string out_dir = ".";
};

whid::PoleZeroGain identify_source(const IdentifyArgs& args, const whid::Signal& u,
                                   const whid::Signal& y, const fs::path& dir) {
    if (!args.zpk_path.empty()) {
        return whid::zpk_from_json(whid::read_text_file(args.zpk_path));
    }
    if (!args.tf_path.empty()) {
        return whid::zpk_from_tf(whid::tf_from_json(whid::read_text_file(args.tf_path)));
    }
    if (args.periods == 0 || u.size() % args.periods != 0) {
        throw whid::ConfigError("--periods must divide the record length");
    }
    const std::size_t period = u.size() / args.periods;
    const std::size_t discard = args.periods > 1 ? 1 : 0;
    const whid::FrfEstimate frf = whid::estimate_frf(u, y, period, discard);
    const whid::RationalFit fit =
        whid::fit_rational(frf, args.num_order, args.den_order, {});
    whid::write_text_file(dir / "bla.json", whid::tf_to_json(fit.tf));
    std::cout << "fitted linear approximation: residual " << fit.residual << ", "
              << fit.iterations << " iterations"
              << (fit.reflected_poles > 0 ? ", poles reflected inside the unit circle" : "")
              << '\n';
    return whid::zpk_from_tf(fit.tf);
}

void run_identify(const IdentifyArgs& args, const RunContext& ctx) {
    const whid::Signal u = whid::read_signal_csv(args.u_path);
    const whid::Signal y = whid::read_signal_csv(args.y_path);
    if (u.size() != y.size()) {
        throw whid::ConfigError("input and output records differ in length");
    }
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    const whid::PoleZeroGain zpk = identify_source(args, u, y, dir);
    const whid::PoleZeroGroups groups = whid::group_conjugates(zpk);
    const int m = groups.group_count();
    std::cout << "groups: " << m << '\n' << "method: " << args.method << '\n';

    whid::FitResult fit;
    whid::AllocationVector best;
    if (args.method == "brute") {
        if (m > whid::kMaxScanGroups) {
            throw whid::CapacityError(
                std::to_string(m) + " groups exceed the exhaustive scan limit of " +
                std::to_string(whid::kMaxScanGroups) + "; rerun with --method ga");
        }
        whid::ScanOptions options;
        options.jobs = ctx.jobs;
        options.max_kept = 64;
        const whid::ScanResult scan =
            whid::brute_force_scan(groups, u, y, args.degrees, options);
        whid::write_scan_csv(dir / "scan.csv", scan);
        best = scan.best.alloc;
        fit = whid::fit_allocation(groups, best, u, y, args.degrees);
        std::cout << "evaluations: " << scan.evaluations << '\n';
    } else {
        whid::GAConfig ga = args.ga;
        ga.rng_seed = ctx.seed;
        const whid::GAIdentification result =
            whid::identify_wh_ga(groups, u, y, args.degrees, ga);
        whid::write_text_file(dir / "history.csv",
                              whid::ga_history_to_csv(result.search.history));
        best = result.search.best;
        fit = result.fit;
        std::cout << "evaluations: " << result.search.evaluations << '\n'
                  << "generations: " << result.search.generations_run << '\n';
    }

    whid::WienerHammersteinModel model;
    model.front = fit.front;
    model.back = fit.back;
    model.nonlinearity.degrees = args.degrees;
    model.nonlinearity.weights = fit.weights;
    whid::write_text_file(dir / "model.json", whid::model_to_json(model));
    write_manifest(dir, "identify", ctx);
    std::cout << "best allocation: " << best.to_string() << '\n'
              << "best mse: " << whid::format_double(fit.mse) << '\n'
              << "wrote " << (dir / "model.json").string() << '\n';
}

struct BenchmarkArgs {
    std::string config_path;
    bool markdown = false;
    bool seed_given = false;
    bool jobs_given = false;
    std::string out_dir = ".";
};

void run_benchmark(const BenchmarkArgs& args, const RunContext& ctx) {
    whid::MonteCarloConfig config =
        whid::benchmark_config_from_json(whid::read_text_file(args.config_path));
    if (args.seed_given) {
        config.master_seed = ctx.seed;
    }
    if (args.jobs_given) {
        config.scan_jobs = ctx.jobs;
    }
    const auto progress = [&](int order, int trial, const whid::TrialRecord& record) {
        std::cerr << "order " << order << " trial " << (trial + 1) << '/' << config.trials
                  << ": "
                  << (record.status == whid::TrialRecord::Status::Ok
                          ? "ok"
                          : (record.status == whid::TrialRecord::Status::GaMissed
                                 ? "ga missed"
                                 : "failed"))
                  << '\n';
    };
    const whid::BenchmarkReport report = whid::run_monte_carlo(config, progress);
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    whid::write_text_file(dir / "report.csv", whid::report_to_csv(report));
    whid::write_text_file(dir / "report.json", whid::report_to_json(report));
    if (args.markdown) {
        whid::write_text_file(dir / "report.md", whid::report_to_markdown(report));
    }
    write_manifest(dir, "benchmark", ctx);
    std::cout << whid::report_to_markdown(report) << "total seconds: " << report.total_seconds
              << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wiener-Hammerstein identification by pole-zero allocation"};
    app.require_subcommand(1);
    app.fallthrough();

    RunContext ctx;
    ctx.arguments.assign(argv + 1, argv + argc);
    auto* seed_opt =
        app.add_option("--seed", ctx.seed, "Master seed for all randomness")
            ->capture_default_str();
    auto* jobs_opt =
        app.add_option("--jobs", ctx.jobs, "Worker threads for the exhaustive scan")
            ->capture_default_str();

    SimulateArgs sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Simulate a model on periodic Gaussian input");
    sim_cmd->add_option("--model", sim.model_path, "Model JSON file")->required();
    sim_cmd->add_option("--samples", sim.samples, "Samples per period")->capture_default_str();
    sim_cmd->add_option("--std", sim.std_dev, "Input standard deviation")->capture_default_str();
    sim_cmd->add_option("--out-dir", sim.out_dir, "Output directory")->capture_default_str();

    DesignFilterArgs design;
    auto* design_cmd = app.add_subcommand("design-filter", "Design a lowpass Chebyshev filter");
    design_cmd->add_option("--type", design.type, "Filter family")
        ->check(CLI::IsMember({"cheby1", "cheby2"}))
        ->capture_default_str();
    design_cmd->add_option("--order", design.order, "Filter order")->capture_default_str();
    design_cmd->add_option("--cutoff", design.cutoff, "Cutoff as a fraction of the sample rate")
        ->capture_default_str();
    auto* db_opt = design_cmd->add_option(
        "--db", design.db, "Passband ripple (cheby1) or stopband attenuation (cheby2) in dB");
    design_cmd->add_option("--out-dir", design.out_dir, "Output directory")
        ->capture_default_str();

    IdentifyArgs ident;
    auto* ident_cmd =
        app.add_subcommand("identify", "Allocate poles and zeros to the two linear blocks");
    ident_cmd->add_option("--u", ident.u_path, "Input signal CSV")->required();
    ident_cmd->add_option("--y", ident.y_path, "Output signal CSV")->required();
    auto* zpk_opt = ident_cmd->add_option("--zpk", ident.zpk_path,
                                          "Poles and zeros of the overall dynamics, JSON");
    auto* tf_opt = ident_cmd->add_option("--tf", ident.tf_path,
                                         "Transfer function of the overall dynamics, JSON");
    auto* bla_opt = ident_cmd->add_flag("--fit-bla", ident.fit_bla,
                                        "Estimate the overall dynamics from the data");
    zpk_opt->excludes(tf_opt)->excludes(bla_opt);
    tf_opt->excludes(bla_opt);
    ident_cmd->add_option("--num-order", ident.num_order, "Numerator order for --fit-bla")
        ->capture_default_str();
    ident_cmd->add_option("--den-order", ident.den_order, "Denominator order for --fit-bla")
        ->capture_default_str();
    ident_cmd->add_option("--periods", ident.periods, "Periods contained in the record")
        ->capture_default_str();
    ident_cmd->add_option("--method", ident.method, "Search strategy")
        ->check(CLI::IsMember({"brute", "ga"}))
        ->capture_default_str();
    ident_cmd->add_option("--degrees", ident.degrees, "Polynomial degrees of the nonlinearity")
        ->delimiter(',')
        ->capture_default_str();
    ident_cmd->add_option("--population", ident.ga.population_size, "GA population size")
        ->capture_default_str();
    ident_cmd->add_option("--generations", ident.ga.max_generations, "GA generation limit")
        ->capture_default_str();
    ident_cmd->add_option("--stall", ident.ga.stall_generation_limit, "GA stall limit")
        ->capture_default_str();
    ident_cmd->add_option("--cost-tol", ident.ga.cost_tolerance, "GA cost tolerance")
        ->capture_default_str();
    ident_cmd->add_option("--crossover", ident.ga.crossover_fraction, "GA crossover fraction")
        ->capture_default_str();
    double mutation_rate = 0.0;
    auto* mutation_opt =
        ident_cmd->add_option("--mutation", mutation_rate, "GA per-bit mutation rate");
    ident_cmd->add_option("--elite", ident.ga.elite_count, "GA elite count")
        ->capture_default_str();
    ident_cmd->add_option("--out-dir", ident.out_dir, "Output directory")
        ->capture_default_str();

    BenchmarkArgs bench;
    auto* bench_cmd =
        app.add_subcommand("benchmark", "Compare exhaustive scan and GA over random systems");
    bench_cmd->add_option("--config", bench.config_path, "Benchmark configuration JSON")
        ->required();
    bench_cmd->add_flag("--markdown", bench.markdown, "Also write a markdown report table");
    bench_cmd->add_option("--out-dir", bench.out_dir, "Output directory")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    ctx.started_utc = utc_timestamp();
    ctx.started_at = std::chrono::steady_clock::now();
    design.db_given = db_opt->count() > 0;
    if (mutation_opt->count() > 0) {
        ident.ga.mutation_rate = mutation_rate;
    }
    bench.seed_given = seed_opt->count() > 0;
    bench.jobs_given = jobs_opt->count() > 0;

    try {
        if (sim_cmd->parsed()) {
            run_simulate(sim, ctx);
        } else if (design_cmd->parsed()) {
            run_design_filter(design, ctx);
        } else if (ident_cmd->parsed()) {
            if (ident.zpk_path.empty() && ident.tf_path.empty() && !ident.fit_bla) {
                throw whid::ConfigError(
                    "one of --zpk, --tf, or --fit-bla must name the overall dynamics");
            }
            run_identify(ident, ctx);
        } else if (bench_cmd->parsed()) {
            run_benchmark(bench, ctx);
        }
    } catch (const whid::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const whid::DesignError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const whid::CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const whid::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
