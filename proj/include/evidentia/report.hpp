#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evidentia/scenario_io.hpp"

namespace evidentia {

enum class ReportFormat { Table, Machine };

// Everything `analyze` computes for a scenario file.
struct AnalysisResult {
    EvaluationReport evaluation;
    std::optional<Warning> level_link_warning;
    std::optional<StereotypeGap> stereotype;
};

AnalysisResult analyze_scenario(const ScenarioFile& file);

// Analytic-vs-empirical check for one simulated quantity. `pass` is the
// three-standard-error criterion; a zero standard error demands equality.
struct Comparison {
    std::string name;
    double analytic = 0.0;
    double estimate = 0.0;
    double se = 0.0;
    double z = 0.0;
    bool pass = false;
};

struct SimulationOutcome {
    SampleStats stats;
    std::vector<Comparison> comparisons;
    bool all_pass = false;
};

std::vector<Comparison> oracle_comparisons(const PartitionModel& partition, double crime_rate,
                                           const SampleStats& stats);

SimulationOutcome run_simulation(const SimulationConfig& cfg);

// Rendering. Table output rounds to four significant figures and appends
// display annotations; machine output is full-precision, fixed field order,
// byte-stable for identical inputs.
std::string render_analysis(const ScenarioFile& file, const AnalysisResult& result,
                            ReportFormat format);
std::string render_simulation(const ScenarioFile& file, const SimulationConfig& cfg,
                              const SimulationOutcome& outcome, ReportFormat format);

// "value (≈ N)" helpers: the annotation is the file's hint for this key when
// present, else the nearest integer (ratios) or integer percent
// (probabilities). Infinite values annotate as certainty.
std::string annotate_ratio(const ScenarioFile& file, const std::string& key, double value);
std::string annotate_probability(const ScenarioFile& file, const std::string& key, double value);

std::string level_string(const HypothesisLevel& level);

} // namespace evidentia
