#include <doctest.h>

#include <algorithm>

#include <json.hpp>

#include "evidentia/report.hpp"
#include "support/generators.hpp"

using namespace evidentia;

namespace {

bool has_diagnostic(const LoadResult& r, std::string_view code) {
    return std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                       [&](const Diagnostic& d) { return d.code == code; });
}

const char* kMinimal = R"({
  "schema_version": "1",
  "scenario": {
    "crime_type": "burglary",
    "independence_assumed": true,
    "prior_generic": {"odds": 1.0},
    "prior_specific": {"odds": 1.0},
    "evidence": []
  }
})";

} // namespace

TEST_CASE("minimal scenario parses") {
    LoadResult r = parse_scenario_text(kMinimal);
    REQUIRE(r.ok());
    CHECK(r.file->scenario.crime_type == "burglary");
    CHECK(r.file->scenario.evidence.empty());
    CHECK_FALSE(r.file->simulation.has_value());
}

TEST_CASE("malformed JSON names the position") {
    LoadResult r = parse_scenario_text("{ \"schema_version\": ");
    REQUIRE_FALSE(r.ok());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].code == "malformed-json");
    CHECK(r.diagnostics[0].message.find("line") != std::string::npos);
}

TEST_CASE("unknown fields are rejected at every level") {
    LoadResult top = parse_scenario_text(R"({
      "schema_version": "1", "extra": 1,
      "scenario": {"crime_type": "x", "independence_assumed": true,
                   "prior_generic": {"odds": 1}, "prior_specific": {"odds": 1},
                   "evidence": [], "bogus": true}
    })");
    REQUIRE_FALSE(top.ok());
    CHECK(has_diagnostic(top, "unknown-field"));
    CHECK(std::any_of(top.diagnostics.begin(), top.diagnostics.end(),
                      [](const Diagnostic& d) { return d.path == "/extra"; }));
    CHECK(std::any_of(top.diagnostics.begin(), top.diagnostics.end(),
                      [](const Diagnostic& d) { return d.path == "/scenario/bogus"; }));
}

TEST_CASE("schema version must match") {
    LoadResult r = parse_scenario_text(R"({
      "schema_version": "2",
      "scenario": {"crime_type": "x", "independence_assumed": true,
                   "prior_generic": {"odds": 1}, "prior_specific": {"odds": 1},
                   "evidence": []}
    })");
    REQUIRE_FALSE(r.ok());
    CHECK(has_diagnostic(r, "unsupported-schema-version"));
}

TEST_CASE("weights that do not sum to one are diagnosed") {
    LoadResult r = parse_scenario_text(R"({
      "schema_version": "1",
      "scenario": {"crime_type": "x", "independence_assumed": true,
                   "prior_generic": {"odds": 1}, "prior_specific": {"odds": 1},
                   "partition": {"profile_base_rate": 0.01,
                                 "contexts": [{"label": "a", "weight": 0.5, "prevalence": 0.2},
                                              {"label": "b", "weight": 0.4, "prevalence": 0.3}]},
                   "evidence": []}
    })");
    REQUIRE_FALSE(r.ok());
    CHECK(has_diagnostic(r, "weights-sum"));
}

TEST_CASE("profiling on the specific level needs the override") {
    LoadResult r = parse_scenario_text(R"({
      "schema_version": "1",
      "scenario": {"crime_type": "x", "independence_assumed": true,
                   "prior_generic": {"odds": 1}, "prior_specific": {"odds": 1},
                   "partition": {"profile_base_rate": 0.01,
                                 "contexts": [{"label": "a", "weight": 1.0, "prevalence": 0.2}]},
                   "evidence": [{"label": "p", "kind": "profiling",
                                 "target_level": "specific", "context": "a"}]}
    })");
    REQUIRE_FALSE(r.ok());
    CHECK(has_diagnostic(r, "profiling-level"));
}

TEST_CASE("independence must be acknowledged") {
    LoadResult r = parse_scenario_text(R"({
      "schema_version": "1",
      "scenario": {"crime_type": "x", "independence_assumed": false,
                   "prior_generic": {"odds": 1}, "prior_specific": {"odds": 1},
                   "evidence": []}
    })");
    REQUIRE_FALSE(r.ok());
    CHECK(has_diagnostic(r, "independence-not-acknowledged"));
}

TEST_CASE("all violations are listed, not only the first") {
    LoadResult r = parse_scenario_text(R"({
      "schema_version": "3",
      "scenario": {"crime_type": "x", "independence_assumed": false,
                   "prior_generic": {"odds": -2}, "prior_specific": {"odds": 1},
                   "evidence": [{"label": "e", "kind": "nonsense",
                                 "target_level": "generic", "lr": {"point": 3}}]}
    })");
    REQUIRE_FALSE(r.ok());
    CHECK(r.diagnostics.size() >= 4);
    CHECK(has_diagnostic(r, "unsupported-schema-version"));
    CHECK(has_diagnostic(r, "independence-not-acknowledged"));
    CHECK(has_diagnostic(r, "invalid-value"));
}

TEST_CASE("LR forms: point, inf, interval, from_probabilities") {
    LoadResult r = parse_scenario_text(R"({
      "schema_version": "1",
      "scenario": {"crime_type": "x", "independence_assumed": true,
                   "prior_generic": {"probability": 0.5}, "prior_specific": {"odds": "inf"},
                   "evidence": [
        {"label": "a", "kind": "case_specific", "target_level": "generic", "lr": {"point": 3.5}},
        {"label": "b", "kind": "case_specific", "target_level": "generic", "lr": {"point": "inf"}},
        {"label": "c", "kind": "case_specific", "target_level": "specific",
         "lr": {"interval": [2, 9]}},
        {"label": "d", "kind": "case_specific", "target_level": "generic",
         "lr": {"from_probabilities": {"num": 0.8, "den": 0.01}}}
      ]}
    })");
    REQUIRE(r.ok());
    const auto& ev = r.file->scenario.evidence;
    CHECK(ev[0].lr->value() == 3.5);
    CHECK(ev[1].lr->is_certainty());
    CHECK(ev[2].lr->lo() == 2.0);
    CHECK(ev[2].lr->hi() == 9.0);
    CHECK(ev[2].target.is_specific());
    CHECK_FALSE(ev[2].target.context_known());
    CHECK(ev[3].lr->value() == 80.0);
    CHECK(r.file->scenario.prior_generic.ratio() == 1.0);
    CHECK(r.file->scenario.prior_specific.is_infinite());
}

TEST_CASE("invalid LR and prior forms") {
    LoadResult r = parse_scenario_text(R"({
      "schema_version": "1",
      "scenario": {"crime_type": "x", "independence_assumed": true,
                   "prior_generic": {"odds": 1, "probability": 0.5},
                   "prior_specific": {"odds": 1},
                   "evidence": [
        {"label": "a", "kind": "case_specific", "target_level": "generic",
         "lr": {"point": 1, "interval": [1, 2]}},
        {"label": "b", "kind": "case_specific", "target_level": "generic",
         "lr": {"interval": [5, 2]}},
        {"label": "c", "kind": "case_specific", "target_level": "generic"}
      ]}
    })");
    REQUIRE_FALSE(r.ok());
    CHECK(has_diagnostic(r, "invalid-prior"));
    CHECK(has_diagnostic(r, "invalid-lr"));
    CHECK(has_diagnostic(r, "invalid-value"));
    CHECK(has_diagnostic(r, "missing-field")); // item c has no lr
}

TEST_CASE("context on a generic target is rejected") {
    LoadResult r = parse_scenario_text(R"({
      "schema_version": "1",
      "scenario": {"crime_type": "x", "independence_assumed": true,
                   "prior_generic": {"odds": 1}, "prior_specific": {"odds": 1},
                   "evidence": [{"label": "a", "kind": "case_specific",
                                 "target_level": "generic", "context": "S1",
                                 "lr": {"point": 2}}]}
    })");
    REQUIRE_FALSE(r.ok());
    CHECK(has_diagnostic(r, "invalid-value"));
}

TEST_CASE("evidence context must resolve against the partition") {
    LoadResult r = parse_scenario_text(R"({
      "schema_version": "1",
      "scenario": {"crime_type": "x", "independence_assumed": true,
                   "prior_generic": {"odds": 1}, "prior_specific": {"odds": 1},
                   "partition": {"profile_base_rate": 0.01,
                                 "contexts": [{"label": "a", "weight": 1.0, "prevalence": 0.2}]},
                   "evidence": [{"label": "e", "kind": "case_specific",
                                 "target_level": "specific", "context": "zzz",
                                 "lr": {"point": 2}}]}
    })");
    REQUIRE_FALSE(r.ok());
    CHECK(has_diagnostic(r, "no-such-context"));
}

TEST_CASE("duplicate evidence labels are diagnosed") {
    LoadResult r = parse_scenario_text(R"({
      "schema_version": "1",
      "scenario": {"crime_type": "x", "independence_assumed": true,
                   "prior_generic": {"odds": 1}, "prior_specific": {"odds": 1},
                   "evidence": [
        {"label": "e", "kind": "case_specific", "target_level": "generic", "lr": {"point": 2}},
        {"label": "e", "kind": "case_specific", "target_level": "generic", "lr": {"point": 3}}]}
    })");
    REQUIRE_FALSE(r.ok());
    CHECK(has_diagnostic(r, "duplicate-evidence-label"));
}

TEST_CASE("simulation block requires the partition and valid ranges") {
    LoadResult no_partition = parse_scenario_text(R"({
      "schema_version": "1",
      "scenario": {"crime_type": "x", "independence_assumed": true,
                   "prior_generic": {"odds": 1}, "prior_specific": {"odds": 1},
                   "evidence": []},
      "simulation": {"population_size": 100, "crime_rate": 0.1}
    })");
    REQUIRE_FALSE(no_partition.ok());
    CHECK(has_diagnostic(no_partition, "partition-required"));

    LoadResult bad_rate = parse_scenario_text(R"({
      "schema_version": "1",
      "scenario": {"crime_type": "x", "independence_assumed": true,
                   "prior_generic": {"odds": 1}, "prior_specific": {"odds": 1},
                   "partition": {"profile_base_rate": 0.01,
                                 "contexts": [{"label": "a", "weight": 1.0, "prevalence": 0.2}]},
                   "evidence": []},
      "simulation": {"population_size": 100, "crime_rate": 1.5}
    })");
    REQUIRE_FALSE(bad_rate.ok());
    CHECK(has_diagnostic(bad_rate, "invalid-value"));
}

TEST_CASE("bundled fixtures parse cleanly") {
    for (const char* name :
         {"burglary.scenario", "vue.scenario", "footnote4.scenario", "appendix.scenario",
          "stereotype.scenario"}) {
        CAPTURE(name);
        LoadResult r = load_scenario_file(std::string(EVIDENTIA_FIXTURE_DIR) + "/" + name);
        for (const auto& d : r.diagnostics) {
            CAPTURE(d.path);
            CAPTURE(d.code);
        }
        REQUIRE(r.ok());
    }
}

TEST_CASE("machine analysis report round-trips every number exactly") {
    LoadResult r = load_scenario_file(std::string(EVIDENTIA_FIXTURE_DIR) + "/appendix.scenario");
    REQUIRE(r.ok());
    AnalysisResult analysis = analyze_scenario(*r.file);
    std::string machine = render_analysis(*r.file, analysis, ReportFormat::Machine);

    nlohmann::json parsed = nlohmann::json::parse(machine);
    CHECK(parsed["partition"]["generic_prevalence"].get<double>() ==
          generic_prevalence(*r.file->scenario.partition).value());
    CHECK(parsed["partition"]["generic_lr"]["value"].get<double>() ==
          generic_lr(*r.file->scenario.partition).value());
    CHECK(parsed["partition"]["unknown_context_lr"]["lo"].get<double>() == 40.0);
    CHECK(parsed["partition"]["unknown_context_lr"]["hi"].get<double>() == 95.0);
    CHECK(parsed["posteriors"]["generic"]["odds"].get<double>() ==
          analysis.evaluation.posterior_generic.odds().ratio());
    CHECK(parsed["posteriors"]["generic"]["probability"].get<double>() ==
          probability_from_odds(analysis.evaluation.posterior_generic.odds()).value());

    // Dumping the reparsed document reproduces the bytes.
    CHECK(nlohmann::ordered_json::parse(machine).dump(2) + "\n" == machine);
}

TEST_CASE("simulation machine report round-trips and stays byte-stable") {
    LoadResult r = load_scenario_file(std::string(EVIDENTIA_FIXTURE_DIR) + "/appendix.scenario");
    REQUIRE(r.ok());
    SimulationConfig cfg = *r.file->simulation;
    cfg.population_size = 20000;
    cfg.replications = 2;
    SimulationOutcome a = run_simulation(cfg);
    SimulationOutcome b = run_simulation(cfg);
    std::string ra = render_simulation(*r.file, cfg, a, ReportFormat::Machine);
    std::string rb = render_simulation(*r.file, cfg, b, ReportFormat::Machine);
    CHECK(ra == rb);

    nlohmann::json parsed = nlohmann::json::parse(ra);
    CHECK(parsed["counts"]["population"].get<std::uint64_t>() == 40000);
    for (const auto& c : parsed["comparisons"]) {
        CHECK(c["se"].is_number());
    }
}
