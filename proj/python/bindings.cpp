#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "evidentia/bayes.hpp"
#include "evidentia/report.hpp"

namespace py = pybind11;
using namespace evidentia;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Odds-form Bayesian updating, generic vs specific likelihood "
              "ratios, partitioned offender populations and their Monte Carlo "
              "oracle";

    py::register_exception<Error>(m, "EvidentiaError");

    py::class_<Probability>(m, "Probability")
        .def(py::init<double>())
        .def_property_readonly("value", &Probability::value)
        .def("__float__", &Probability::value)
        .def("__repr__", [](const Probability& p) {
            return "Probability(" + std::to_string(p.value()) + ")";
        });

    py::class_<Odds>(m, "Odds")
        .def(py::init<double>())
        .def_static("infinite", &Odds::infinite)
        .def_property_readonly("ratio", &Odds::ratio)
        .def_property_readonly("is_infinite", &Odds::is_infinite)
        .def("__float__", &Odds::ratio)
        .def("__repr__",
             [](const Odds& o) { return "Odds(" + std::to_string(o.ratio()) + ")"; });

    m.def("odds_from_probability", &odds_from_probability, py::arg("p"));
    m.def("probability_from_odds", &probability_from_odds, py::arg("o"));

    py::class_<LikelihoodRatio> lr(m, "LikelihoodRatio");
    py::enum_<LikelihoodRatio::Kind>(lr, "Kind")
        .value("Point", LikelihoodRatio::Kind::Point)
        .value("Interval", LikelihoodRatio::Kind::Interval)
        .value("Undefined", LikelihoodRatio::Kind::Undefined);
    lr.def_static("point", &LikelihoodRatio::point, py::arg("value"))
        .def_static("interval", &LikelihoodRatio::interval, py::arg("lo"), py::arg("hi"))
        .def_static("undefined", &LikelihoodRatio::undefined, py::arg("reason"))
        .def_property_readonly("kind", &LikelihoodRatio::kind)
        .def_property_readonly("is_point", &LikelihoodRatio::is_point)
        .def_property_readonly("is_interval", &LikelihoodRatio::is_interval)
        .def_property_readonly("is_undefined", &LikelihoodRatio::is_undefined)
        .def_property_readonly("is_certainty", &LikelihoodRatio::is_certainty)
        .def_property_readonly("is_degenerate_interval",
                               &LikelihoodRatio::is_degenerate_interval)
        .def_property_readonly("value", &LikelihoodRatio::value)
        .def_property_readonly("lo", &LikelihoodRatio::lo)
        .def_property_readonly("hi", &LikelihoodRatio::hi)
        .def_property_readonly("reason", &LikelihoodRatio::reason);

    m.def("likelihood_ratio", &likelihood_ratio, py::arg("num"), py::arg("den"));

    py::class_<Posterior> posterior(m, "Posterior");
    py::enum_<Posterior::Kind>(posterior, "Kind")
        .value("Point", Posterior::Kind::Point)
        .value("Interval", Posterior::Kind::Interval)
        .value("Undefined", Posterior::Kind::Undefined);
    posterior.def_property_readonly("kind", &Posterior::kind)
        .def_property_readonly("is_point", &Posterior::is_point)
        .def_property_readonly("is_interval", &Posterior::is_interval)
        .def_property_readonly("is_undefined", &Posterior::is_undefined)
        .def_property_readonly("odds", &Posterior::odds)
        .def_property_readonly("lo", &Posterior::lo)
        .def_property_readonly("hi", &Posterior::hi)
        .def_property_readonly("reason", &Posterior::reason);

    m.def("bayes_update", &bayes_update, py::arg("prior"), py::arg("lr"));

    py::enum_<RateMode>(m, "RateMode")
        .value("Exact", RateMode::Exact)
        .value("Approximate", RateMode::Approximate);
    m.def("innocent_profile_rate", &innocent_profile_rate, py::arg("p_profile"),
          py::arg("p_profile_given_guilt"), py::arg("p_guilt"), py::arg("mode"));
    m.def("innocent_profile_rate_error_bound", &innocent_profile_rate_error_bound,
          py::arg("p_profile"), py::arg("p_profile_given_guilt"), py::arg("p_guilt"));

    py::class_<ContextCell>(m, "ContextCell")
        .def(py::init([](std::string label, double weight, double prevalence) {
                 return ContextCell{std::move(label), weight, prevalence};
             }),
             py::arg("label"), py::arg("weight"), py::arg("prevalence"))
        .def_readonly("label", &ContextCell::label)
        .def_readonly("weight", &ContextCell::weight)
        .def_readonly("prevalence", &ContextCell::prevalence);

    py::class_<PartitionModel>(m, "PartitionModel")
        .def(py::init<std::string, std::vector<ContextCell>, Probability>(),
             py::arg("crime_type"), py::arg("cells"), py::arg("profile_base_rate"))
        .def_property_readonly("crime_type", &PartitionModel::crime_type)
        .def_property_readonly("cells", &PartitionModel::cells)
        .def_property_readonly("profile_base_rate", &PartitionModel::profile_base_rate);

    py::class_<HypothesisLevel>(m, "HypothesisLevel")
        .def_static("generic", &HypothesisLevel::generic)
        .def_static("specific", &HypothesisLevel::specific, py::arg("context_label"))
        .def_static("specific_unknown", &HypothesisLevel::specific_unknown)
        .def_property_readonly("is_generic", &HypothesisLevel::is_generic)
        .def_property_readonly("is_specific", &HypothesisLevel::is_specific)
        .def_property_readonly("context_known", &HypothesisLevel::context_known)
        .def_property_readonly("context", &HypothesisLevel::context)
        .def("__repr__", [](const HypothesisLevel& h) { return level_string(h); });

    m.def("generic_prevalence", &generic_prevalence, py::arg("model"));
    m.def("specific_prevalence", &specific_prevalence, py::arg("model"), py::arg("context"));
    m.def("generic_lr", &generic_lr, py::arg("model"));
    m.def("specific_lr", &specific_lr, py::arg("model"), py::arg("level"));
    m.def("uniformity_check", &uniformity_check, py::arg("model"),
          py::arg("tol") = kDefaultConditionTolerance);
    m.def("representativeness_check", &representativeness_check, py::arg("model"),
          py::arg("context"), py::arg("tol") = kDefaultConditionTolerance);
    m.def("invariance_gap", &invariance_gap, py::arg("model"), py::arg("context"));
    m.def(
        "restrict_to",
        [](const PartitionModel& model, const std::vector<std::string>& labels) {
            return restrict_to(model, labels);
        },
        py::arg("model"), py::arg("labels"));

    py::class_<PrevalenceBounds>(m, "PrevalenceBounds")
        .def_readonly("lo", &PrevalenceBounds::lo)
        .def_readonly("hi", &PrevalenceBounds::hi)
        .def_readonly("lo_label", &PrevalenceBounds::lo_label)
        .def_readonly("hi_label", &PrevalenceBounds::hi_label);
    m.def("prevalence_bounds", &prevalence_bounds, py::arg("model"));

    py::class_<ConditionCheck>(m, "ConditionCheck")
        .def_readonly("holds", &ConditionCheck::holds)
        .def_readonly("gap", &ConditionCheck::gap);

    py::enum_<EvidenceKind>(m, "EvidenceKind")
        .value("Profiling", EvidenceKind::Profiling)
        .value("CaseSpecific", EvidenceKind::CaseSpecific);

    py::class_<EvidenceItem>(m, "EvidenceItem")
        .def(py::init([](std::string label, HypothesisLevel target,
                         std::optional<LikelihoodRatio> lr, EvidenceKind kind) {
                 return EvidenceItem{std::move(label), std::move(target), std::move(lr), kind};
             }),
             py::arg("label"), py::arg("target"), py::arg("lr"), py::arg("kind"))
        .def_readonly("label", &EvidenceItem::label)
        .def_readonly("target", &EvidenceItem::target)
        .def_readonly("lr", &EvidenceItem::lr)
        .def_readonly("kind", &EvidenceItem::kind);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init([](std::string crime_type, std::optional<PartitionModel> partition,
                         Odds prior_generic, Odds prior_specific,
                         std::vector<EvidenceItem> evidence, bool allow_profiling_on_specific,
                         bool independence_assumed) {
                 return Scenario{std::move(crime_type),    std::move(partition),
                                 prior_generic,            prior_specific,
                                 std::move(evidence),      allow_profiling_on_specific,
                                 independence_assumed};
             }),
             py::arg("crime_type"), py::arg("partition"), py::arg("prior_generic"),
             py::arg("prior_specific"), py::arg("evidence"),
             py::arg("allow_profiling_on_specific") = false,
             py::arg("independence_assumed") = true)
        .def_readonly("crime_type", &Scenario::crime_type)
        .def_readonly("partition", &Scenario::partition)
        .def_readonly("prior_generic", &Scenario::prior_generic)
        .def_readonly("prior_specific", &Scenario::prior_specific)
        .def_readonly("evidence", &Scenario::evidence)
        .def_readonly("allow_profiling_on_specific", &Scenario::allow_profiling_on_specific)
        .def_readonly("independence_assumed", &Scenario::independence_assumed);

    py::class_<Contribution>(m, "Contribution")
        .def_readonly("label", &Contribution::label)
        .def_readonly("level", &Contribution::level)
        .def_readonly("applied", &Contribution::applied);

    py::class_<Warning>(m, "Warning")
        .def_readonly("code", &Warning::code)
        .def_readonly("detail", &Warning::detail);

    py::class_<EvaluationReport>(m, "EvaluationReport")
        .def_readonly("posterior_generic", &EvaluationReport::posterior_generic)
        .def_readonly("posterior_specific", &EvaluationReport::posterior_specific)
        .def_readonly("contributions", &EvaluationReport::contributions)
        .def_readonly("warnings", &EvaluationReport::warnings);

    m.def("evaluate", &evaluate, py::arg("scenario"));
    m.def("combine_levels_diagnostic", &combine_levels_diagnostic, py::arg("scenario"));

    py::enum_<TruthTracking>(m, "TruthTracking")
        .value("Tracking", TruthTracking::Tracking)
        .value("NonTracking", TruthTracking::NonTracking)
        .value("Indeterminate", TruthTracking::Indeterminate);
    m.def("truth_tracking_status", &truth_tracking_status, py::arg("lr"));

    py::class_<ProbabilityBand>(m, "ProbabilityBand")
        .def_readonly("kind", &ProbabilityBand::kind)
        .def_readonly("lo", &ProbabilityBand::lo)
        .def_readonly("hi", &ProbabilityBand::hi)
        .def_readonly("reason", &ProbabilityBand::reason);

    py::class_<StereotypeGap>(m, "StereotypeGap")
        .def_readonly("generic", &StereotypeGap::generic)
        .def_readonly("specific", &StereotypeGap::specific);
    m.def("stereotype_gap", &stereotype_gap, py::arg("scenario"));

    py::class_<SimulationConfig>(m, "SimulationConfig")
        .def(py::init([](std::uint64_t population_size, double crime_rate,
                         PartitionModel partition, std::uint64_t seed,
                         std::uint64_t replications, std::optional<std::string> designated,
                         std::optional<double> non_offender_profile_rate) {
                 return SimulationConfig{population_size,
                                         crime_rate,
                                         std::move(partition),
                                         seed,
                                         replications,
                                         std::move(designated),
                                         non_offender_profile_rate};
             }),
             py::arg("population_size"), py::arg("crime_rate"), py::arg("partition"),
             py::arg("seed") = 0, py::arg("replications") = 1,
             py::arg("designated_context") = std::nullopt,
             py::arg("non_offender_profile_rate") = std::nullopt)
        .def_readonly("population_size", &SimulationConfig::population_size)
        .def_readonly("crime_rate", &SimulationConfig::crime_rate)
        .def_readonly("partition", &SimulationConfig::partition)
        .def_readonly("seed", &SimulationConfig::seed)
        .def_readonly("replications", &SimulationConfig::replications)
        .def_readonly("designated_context", &SimulationConfig::designated_context)
        .def_readonly("non_offender_profile_rate",
                      &SimulationConfig::non_offender_profile_rate);

    py::class_<ContextCounts>(m, "ContextCounts")
        .def_readonly("offenders", &ContextCounts::offenders)
        .def_readonly("offenders_with_profile", &ContextCounts::offenders_with_profile);

    py::class_<SampleStats>(m, "SampleStats")
        .def_readonly("context_labels", &SampleStats::context_labels)
        .def_readonly("per_context", &SampleStats::per_context)
        .def_readonly("population", &SampleStats::population)
        .def_readonly("non_offenders", &SampleStats::non_offenders)
        .def_readonly("non_offenders_with_profile", &SampleStats::non_offenders_with_profile)
        .def_readonly("designated", &SampleStats::designated)
        .def_readonly("designated_with_profile", &SampleStats::designated_with_profile)
        .def_readonly("replications", &SampleStats::replications)
        .def_readonly("non_offender_rate_used", &SampleStats::non_offender_rate_used)
        .def_property_readonly("offenders", &SampleStats::offenders)
        .def_property_readonly("offenders_with_profile", &SampleStats::offenders_with_profile)
        .def_property_readonly("profiled_total", &SampleStats::profiled_total)
        .def("p_profile", &SampleStats::p_profile)
        .def("p_profile_given_offender", &SampleStats::p_profile_given_offender)
        .def("p_profile_given_non_offender", &SampleStats::p_profile_given_non_offender)
        .def("prevalence", &SampleStats::prevalence, py::arg("context_index"))
        .def("p_profile_given_designated", &SampleStats::p_profile_given_designated)
        .def("p_profile_given_not_designated", &SampleStats::p_profile_given_not_designated)
        .def("__eq__", [](const SampleStats& a, const SampleStats& b) { return a == b; });

    m.def("simulate", &simulate, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<RatioEstimate>(m, "RatioEstimate")
        .def_readonly("value", &RatioEstimate::value)
        .def_readonly("se", &RatioEstimate::se);

    py::class_<EmpiricalLrs>(m, "EmpiricalLrs")
        .def_readonly("generic_lr", &EmpiricalLrs::generic_lr)
        .def_readonly("specific_lr", &EmpiricalLrs::specific_lr)
        .def_readonly("innocent_rate", &EmpiricalLrs::innocent_rate);
    m.def("empirical_lrs", &empirical_lrs, py::arg("stats"));

    py::class_<InvarianceRow>(m, "InvarianceRow")
        .def_readonly("label", &InvarianceRow::label)
        .def_readonly("analytic_lr", &InvarianceRow::analytic_lr)
        .def_readonly("empirical_lr", &InvarianceRow::empirical_lr)
        .def_readonly("designated", &InvarianceRow::designated)
        .def_readonly("designated_profile_rate", &InvarianceRow::designated_profile_rate);

    py::class_<InvarianceReport>(m, "InvarianceReport")
        .def_readonly("rows", &InvarianceReport::rows)
        .def_readonly("analytic_generic_lr", &InvarianceReport::analytic_generic_lr)
        .def_readonly("interval_lo", &InvarianceReport::interval_lo)
        .def_readonly("interval_hi", &InvarianceReport::interval_hi)
        .def_readonly("empirical_spread", &InvarianceReport::empirical_spread)
        .def_readonly("focus_label", &InvarianceReport::focus_label)
        .def_readonly("focus_analytic_gap", &InvarianceReport::focus_analytic_gap);
    m.def("invariance_experiment", &invariance_experiment, py::arg("config"), py::arg("focus"),
          py::call_guard<py::gil_scoped_release>());

    py::class_<Diagnostic>(m, "Diagnostic")
        .def_readonly("path", &Diagnostic::path)
        .def_readonly("code", &Diagnostic::code)
        .def_readonly("message", &Diagnostic::message);

    py::class_<ScenarioFile>(m, "ScenarioFile")
        .def_readonly("schema_version", &ScenarioFile::schema_version)
        .def_readonly("scenario", &ScenarioFile::scenario)
        .def_readonly("annotations", &ScenarioFile::annotations)
        .def_readonly("simulation", &ScenarioFile::simulation);

    py::class_<LoadResult>(m, "LoadResult")
        .def_readonly("file", &LoadResult::file)
        .def_readonly("diagnostics", &LoadResult::diagnostics)
        .def_property_readonly("ok", &LoadResult::ok);

    m.def("parse_scenario_text", &parse_scenario_text, py::arg("text"));
    m.def("load_scenario_file", &load_scenario_file, py::arg("path"));

    py::enum_<ReportFormat>(m, "ReportFormat")
        .value("Table", ReportFormat::Table)
        .value("Machine", ReportFormat::Machine);

    py::class_<AnalysisResult>(m, "AnalysisResult")
        .def_readonly("evaluation", &AnalysisResult::evaluation)
        .def_readonly("level_link_warning", &AnalysisResult::level_link_warning)
        .def_readonly("stereotype", &AnalysisResult::stereotype);
    m.def("analyze_scenario", &analyze_scenario, py::arg("file"));

    py::class_<Comparison>(m, "Comparison")
        .def_readonly("name", &Comparison::name)
        .def_readonly("analytic", &Comparison::analytic)
        .def_readonly("estimate", &Comparison::estimate)
        .def_readonly("se", &Comparison::se)
        .def_readonly("z", &Comparison::z)
        .def_readonly("pass_", &Comparison::pass);

    py::class_<SimulationOutcome>(m, "SimulationOutcome")
        .def_readonly("stats", &SimulationOutcome::stats)
        .def_readonly("comparisons", &SimulationOutcome::comparisons)
        .def_readonly("all_pass", &SimulationOutcome::all_pass);
    m.def("run_simulation", &run_simulation, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    m.def("render_analysis", &render_analysis, py::arg("file"), py::arg("result"),
          py::arg("format"));
    m.def("render_simulation", &render_simulation, py::arg("file"), py::arg("config"),
          py::arg("outcome"), py::arg("format"));
}
