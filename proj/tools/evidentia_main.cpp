// Command-line front end: scenario ingestion, analysis and simulation
// drivers, with reports in table or machine form.
//
// Exit codes: 0 success, 2 validation failure, 3 evaluation error,
// 4 oracle mismatch (a 3-standard-error comparison failed or the sample
// starved a cell).

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "evidentia/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitEvaluation = 3;
constexpr int kExitOracleMismatch = 4;

void print_diagnostics(const std::vector<evidentia::Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) {
        std::cerr << (d.path.empty() ? "/" : d.path) << ": " << d.code << ": " << d.message
                  << "\n";
    }
}

evidentia::ReportFormat parse_format(const std::string& format) {
    return format == "machine" ? evidentia::ReportFormat::Machine
                               : evidentia::ReportFormat::Table;
}

int run_analyze(const std::string& path, const std::string& format) {
    evidentia::LoadResult loaded = evidentia::load_scenario_file(path);
    if (!loaded.ok()) {
        print_diagnostics(loaded.diagnostics);
        return kExitValidation;
    }
    try {
        evidentia::AnalysisResult result = evidentia::analyze_scenario(*loaded.file);
        std::cout << evidentia::render_analysis(*loaded.file, result, parse_format(format));
        return kExitOk;
    } catch (const evidentia::Error& e) {
        std::cerr << "evaluation error: " << e.what() << "\n";
        return kExitEvaluation;
    }
}

int run_simulate(const std::string& path, const std::string& format, std::uint64_t* seed_flag,
                 std::uint64_t* samples_flag, std::uint64_t* replications_flag) {
    evidentia::LoadResult loaded = evidentia::load_scenario_file(path);
    if (!loaded.ok()) {
        print_diagnostics(loaded.diagnostics);
        return kExitValidation;
    }
    if (!loaded.file->simulation.has_value()) {
        std::cerr << "/simulation: missing-field: the file contains no simulation block\n";
        return kExitValidation;
    }
    evidentia::SimulationConfig cfg = *loaded.file->simulation;
    if (seed_flag != nullptr) {
        cfg.seed = *seed_flag;
    } else if (!loaded.file->simulation_has_seed) {
        if (const char* env = std::getenv("EVIDENTIA_SEED")) {
            try {
                cfg.seed = std::stoull(env);
            } catch (const std::exception&) {
                std::cerr << "EVIDENTIA_SEED: invalid-value: expected an unsigned integer\n";
                return kExitValidation;
            }
        }
    }
    if (samples_flag != nullptr) {
        cfg.population_size = *samples_flag;
    }
    if (replications_flag != nullptr) {
        cfg.replications = *replications_flag;
    }
    try {
        evidentia::SimulationOutcome outcome = evidentia::run_simulation(cfg);
        std::cout << evidentia::render_simulation(*loaded.file, cfg, outcome,
                                                  parse_format(format));
        return outcome.all_pass ? kExitOk : kExitOracleMismatch;
    } catch (const evidentia::Error& e) {
        std::cerr << e.what() << "\n";
        if (e.code() == "insufficient-samples") {
            return kExitOracleMismatch;
        }
        return e.code() == "invalid-config" ? kExitValidation : kExitEvaluation;
    }
}

int run_validate(const std::string& path) {
    evidentia::LoadResult loaded = evidentia::load_scenario_file(path);
    if (!loaded.ok()) {
        print_diagnostics(loaded.diagnostics);
        return kExitValidation;
    }
    std::cout << "ok\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generic-vs-specific evidential analysis"};
    app.require_subcommand(1);

    std::string path;
    std::string format = "table";

    CLI::App* analyze = app.add_subcommand("analyze", "Evaluate a scenario file");
    analyze->add_option("file", path, "scenario file")->required();
    analyze->add_option("--format", format, "table or machine")
        ->check(CLI::IsMember({"table", "machine"}));

    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    std::uint64_t replications = 0;
    CLI::App* simulate = app.add_subcommand("simulate", "Run the population oracle");
    simulate->add_option("file", path, "scenario file with a simulation block")->required();
    CLI::Option* seed_opt = simulate->add_option("--seed", seed, "override the seed");
    CLI::Option* samples_opt =
        simulate->add_option("--samples", samples, "override the population size");
    CLI::Option* replications_opt =
        simulate->add_option("--replications", replications, "override the replication count");
    simulate->add_option("--format", format, "table or machine")
        ->check(CLI::IsMember({"table", "machine"}));

    CLI::App* validate = app.add_subcommand("validate", "Check a scenario file");
    validate->add_option("file", path, "scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (analyze->parsed()) {
            return run_analyze(path, format);
        }
        if (simulate->parsed()) {
            return run_simulate(path, format, seed_opt->count() > 0 ? &seed : nullptr,
                                samples_opt->count() > 0 ? &samples : nullptr,
                                replications_opt->count() > 0 ? &replications : nullptr);
        }
        return run_validate(path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEvaluation;
    }
}
