#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evidentia/scenario.hpp"
#include "evidentia/simulate.hpp"

namespace evidentia {

inline constexpr const char* kSupportedSchemaVersion = "1";

// One validation finding, addressed by JSON-pointer-style path.
struct Diagnostic {
    std::string path;
    std::string code;
    std::string message;
};

// A parsed scenario file: the scenario itself, optional simulation
// parameters, and display annotations keyed by report row
// ("generic_lr", "posterior_generic_probability", ...).
struct ScenarioFile {
    std::string schema_version;
    Scenario scenario;
    std::map<std::string, std::string> annotations;
    std::optional<SimulationConfig> simulation;
    bool simulation_has_seed = false;
};

struct LoadResult {
    std::optional<ScenarioFile> file;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty() && file.has_value(); }
};

// Parses and validates against the strict schema: unknown fields are
// rejected, and every violation is reported, not only the first.
LoadResult parse_scenario_text(const std::string& text);

LoadResult load_scenario_file(const std::string& path);

} // namespace evidentia
