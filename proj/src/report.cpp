#include "evidentia/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "evidentia/bayes.hpp"

namespace evidentia {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt4(double v) {
    if (std::isinf(v)) {
        return "inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

ordered_json number_or_inf(double v) {
    if (std::isinf(v)) {
        return "inf";
    }
    return v;
}

ordered_json lr_json(const LikelihoodRatio& lr) {
    ordered_json j;
    switch (lr.kind()) {
    case LikelihoodRatio::Kind::Point:
        j["kind"] = "point";
        j["value"] = number_or_inf(lr.value());
        break;
    case LikelihoodRatio::Kind::Interval:
        j["kind"] = "interval";
        j["lo"] = number_or_inf(lr.lo());
        j["hi"] = number_or_inf(lr.hi());
        break;
    case LikelihoodRatio::Kind::Undefined:
        j["kind"] = "undefined";
        j["reason"] = lr.reason();
        break;
    }
    return j;
}

ordered_json posterior_json(const Posterior& p) {
    ordered_json j;
    switch (p.kind()) {
    case Posterior::Kind::Point:
        j["kind"] = "point";
        j["odds"] = number_or_inf(p.odds().ratio());
        j["probability"] = probability_from_odds(p.odds()).value();
        break;
    case Posterior::Kind::Interval:
        j["kind"] = "interval";
        j["odds"] = ordered_json::array(
            {number_or_inf(p.lo().ratio()), number_or_inf(p.hi().ratio())});
        j["probability"] = ordered_json::array({probability_from_odds(p.lo()).value(),
                                                probability_from_odds(p.hi()).value()});
        break;
    case Posterior::Kind::Undefined:
        j["kind"] = "undefined";
        j["reason"] = p.reason();
        break;
    }
    return j;
}

ordered_json band_json(const ProbabilityBand& b) {
    ordered_json j;
    switch (b.kind) {
    case Posterior::Kind::Point:
        j["kind"] = "point";
        j["probability"] = b.lo;
        break;
    case Posterior::Kind::Interval:
        j["kind"] = "interval";
        j["probability"] = ordered_json::array({b.lo, b.hi});
        break;
    case Posterior::Kind::Undefined:
        j["kind"] = "undefined";
        j["reason"] = b.reason;
        break;
    }
    return j;
}

std::string lr_text(const ScenarioFile& file, const std::string& key,
                    const LikelihoodRatio& lr) {
    switch (lr.kind()) {
    case LikelihoodRatio::Kind::Point:
        return annotate_ratio(file, key, lr.value());
    case LikelihoodRatio::Kind::Interval: {
        std::string text = "[" + fmt4(lr.lo()) + ", " + fmt4(lr.hi()) + "]";
        if (auto hint = file.annotations.find(key); hint != file.annotations.end()) {
            text += " (" + hint->second + ")";
        }
        if (lr.is_degenerate_interval()) {
            text += " (effectively a point)";
        }
        return text;
    }
    case LikelihoodRatio::Kind::Undefined:
        return "undefined (" + lr.reason() + ")";
    }
    return {};
}

std::string odds_text(double ratio) {
    if (std::isinf(ratio)) {
        return "certain";
    }
    return fmt4(ratio) + " : 1";
}

std::string posterior_odds_text(const Posterior& p) {
    switch (p.kind()) {
    case Posterior::Kind::Point:
        return odds_text(p.odds().ratio());
    case Posterior::Kind::Interval:
        return "[" + fmt4(p.lo().ratio()) + ", " + fmt4(p.hi().ratio()) + "] : 1";
    case Posterior::Kind::Undefined:
        return "undefined (" + p.reason() + ")";
    }
    return {};
}

std::string posterior_probability_text(const ScenarioFile& file, const std::string& key,
                                       const Posterior& p) {
    switch (p.kind()) {
    case Posterior::Kind::Point:
        return annotate_probability(file, key, probability_from_odds(p.odds()).value());
    case Posterior::Kind::Interval:
        return "[" + fmt4(probability_from_odds(p.lo()).value()) + ", " +
               fmt4(probability_from_odds(p.hi()).value()) + "]";
    case Posterior::Kind::Undefined:
        return "undefined (" + p.reason() + ")";
    }
    return {};
}

std::string band_text(const ScenarioFile& file, const std::string& key,
                      const ProbabilityBand& b) {
    switch (b.kind) {
    case Posterior::Kind::Point:
        return annotate_probability(file, key, b.lo);
    case Posterior::Kind::Interval:
        return "[" + fmt4(b.lo) + ", " + fmt4(b.hi) + "]";
    case Posterior::Kind::Undefined:
        return "undefined (" + b.reason + ")";
    }
    return {};
}

double proportion_se(double p, std::uint64_t n) {
    return n == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

Comparison make_comparison(std::string name, double analytic, double estimate, double se) {
    Comparison c;
    c.name = std::move(name);
    c.analytic = analytic;
    c.estimate = estimate;
    c.se = se;
    if (se == 0.0) {
        c.z = estimate == analytic ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
        c.z = std::abs(estimate - analytic) / se;
    }
    c.pass = c.z <= 3.0;
    return c;
}

} // namespace

std::string level_string(const HypothesisLevel& level) {
    if (level.is_generic()) {
        return "generic";
    }
    return level.context_known() ? "specific:" + level.context() : "specific:unknown";
}

std::string annotate_ratio(const ScenarioFile& file, const std::string& key, double value) {
    if (auto hint = file.annotations.find(key); hint != file.annotations.end()) {
        return fmt4(value) + " (" + hint->second + ")";
    }
    if (std::isinf(value)) {
        return "infinite";
    }
    return fmt4(value) + " (≈ " + std::to_string(std::llround(value)) + ")";
}

std::string annotate_probability(const ScenarioFile& file, const std::string& key,
                                 double value) {
    if (auto hint = file.annotations.find(key); hint != file.annotations.end()) {
        return fmt4(value) + " (" + hint->second + ")";
    }
    return fmt4(value) + " (≈ " + std::to_string(std::llround(value * 100.0)) + "%)";
}

AnalysisResult analyze_scenario(const ScenarioFile& file) {
    AnalysisResult result;
    result.evaluation = evaluate(file.scenario);
    result.level_link_warning = combine_levels_diagnostic(file.scenario);
    bool any_profiling =
        std::any_of(file.scenario.evidence.begin(), file.scenario.evidence.end(),
                    [](const auto& e) { return e.kind == EvidenceKind::Profiling; });
    if (any_profiling) {
        result.stereotype = stereotype_gap(file.scenario);
    }
    return result;
}

std::vector<Comparison> oracle_comparisons(const PartitionModel& partition, double crime_rate,
                                           const SampleStats& stats) {
    std::vector<Comparison> out;
    const double base = partition.profile_base_rate().value();
    const double gp = generic_prevalence(partition).value();
    EmpiricalLrs lrs = empirical_lrs(stats);

    // The generative process realizes P(P) = gp*cr + r*(1-cr); with the
    // default solved non-offender rate this equals the declared base rate.
    double analytic_p_profile =
        gp * crime_rate + stats.non_offender_rate_used * (1.0 - crime_rate);
    double p_profile_est = stats.p_profile();
    out.push_back(make_comparison("p_profile", analytic_p_profile, p_profile_est,
                                  proportion_se(p_profile_est, stats.population)));

    double prev_est = stats.p_profile_given_offender();
    out.push_back(make_comparison("p_profile_given_offender", gp, prev_est,
                                  proportion_se(prev_est, stats.offenders())));

    for (std::size_t i = 0; i < partition.cells().size(); ++i) {
        const auto& cell = partition.cells()[i];
        double est = stats.prevalence(i);
        out.push_back(make_comparison("prevalence:" + cell.label, cell.prevalence, est,
                                      proportion_se(est, stats.per_context[i].offenders)));
    }

    out.push_back(
        make_comparison("generic_lr", gp / base, lrs.generic_lr.value, lrs.generic_lr.se));
    for (std::size_t i = 0; i < partition.cells().size(); ++i) {
        const auto& cell = partition.cells()[i];
        out.push_back(make_comparison("specific_lr:" + cell.label, cell.prevalence / base,
                                      lrs.specific_lr[i].second.value,
                                      lrs.specific_lr[i].second.se));
    }

    out.push_back(make_comparison("innocent_rate", stats.non_offender_rate_used,
                                  lrs.innocent_rate.value, lrs.innocent_rate.se));
    return out;
}

SimulationOutcome run_simulation(const SimulationConfig& cfg) {
    SimulationOutcome outcome;
    outcome.stats = simulate(cfg);
    outcome.comparisons = oracle_comparisons(cfg.partition, cfg.crime_rate, outcome.stats);
    outcome.all_pass = std::all_of(outcome.comparisons.begin(), outcome.comparisons.end(),
                                   [](const Comparison& c) { return c.pass; });
    return outcome;
}

namespace {

void render_partition_table(std::ostringstream& out, const ScenarioFile& file,
                            const PartitionModel& m) {
    out << "partition (" << m.cells().size() << " contexts, profile base rate "
        << fmt4(m.profile_base_rate().value()) << ")\n";
    out << "  context               weight    prevalence  specific LR\n";
    for (const auto& cell : m.cells()) {
        LikelihoodRatio lr = specific_lr(m, HypothesisLevel::specific(cell.label));
        char line[160];
        std::snprintf(line, sizeof(line), "  %-20s  %-8s  %-10s  %s\n", cell.label.c_str(),
                      fmt4(cell.weight).c_str(), fmt4(cell.prevalence).c_str(),
                      lr_text(file, "specific_lr:" + cell.label, lr).c_str());
        out << line;
    }
    out << "  generic prevalence:   "
        << annotate_probability(file, "generic_prevalence", generic_prevalence(m).value())
        << "\n";
    out << "  generic LR:           " << lr_text(file, "generic_lr", generic_lr(m)) << "\n";
    out << "  unknown-context LR:   "
        << lr_text(file, "unknown_context_lr", specific_lr(m, HypothesisLevel::specific_unknown()))
        << "\n";
    ConditionCheck uniformity = uniformity_check(m);
    out << "  uniformity (tol " << fmt4(kDefaultConditionTolerance)
        << "): " << (uniformity.holds ? "holds" : "fails") << " (spread "
        << fmt4(uniformity.gap) << ")\n";
}

std::string render_analysis_table(const ScenarioFile& file, const AnalysisResult& result) {
    std::ostringstream out;
    out << "scenario: " << file.scenario.crime_type << "\n";
    out << "prior odds: generic " << odds_text(file.scenario.prior_generic.ratio())
        << ", specific " << odds_text(file.scenario.prior_specific.ratio()) << "\n\n";

    if (file.scenario.partition.has_value()) {
        render_partition_table(out, file, *file.scenario.partition);
        out << "\n";
    }

    if (!result.evaluation.contributions.empty()) {
        out << "evidence\n";
        out << "  label                 kind           level              applied LR"
               "            tracking\n";
        for (const auto& c : result.evaluation.contributions) {
            const EvidenceItem* item = nullptr;
            for (const auto& e : file.scenario.evidence) {
                if (e.label == c.label) {
                    item = &e;
                    break;
                }
            }
            char line[240];
            std::snprintf(line, sizeof(line), "  %-20s  %-13s  %-17s  %-20s  %s\n",
                          c.label.c_str(),
                          item != nullptr && item->kind == EvidenceKind::Profiling
                              ? "profiling"
                              : "case_specific",
                          level_string(c.level).c_str(),
                          lr_text(file, "item:" + c.label, c.applied).c_str(),
                          to_string(truth_tracking_status(c.applied)));
            out << line;
        }
        out << "\n";
    }

    out << "posteriors\n";
    out << "  generic:  odds " << posterior_odds_text(result.evaluation.posterior_generic)
        << ", probability "
        << posterior_probability_text(file, "posterior_generic_probability",
                                      result.evaluation.posterior_generic)
        << "\n";
    out << "  specific: odds " << posterior_odds_text(result.evaluation.posterior_specific)
        << ", probability "
        << posterior_probability_text(file, "posterior_specific_probability",
                                      result.evaluation.posterior_specific)
        << "\n";

    std::vector<Warning> warnings = result.evaluation.warnings;
    if (result.level_link_warning.has_value()) {
        warnings.push_back(*result.level_link_warning);
    }
    if (!warnings.empty()) {
        out << "\nwarnings\n";
        for (const auto& w : warnings) {
            out << "  - " << w.code << ": " << w.detail << "\n";
        }
    }

    if (result.stereotype.has_value()) {
        out << "\nstereotype gap\n";
        out << "  generic posterior probability:  "
            << band_text(file, "posterior_generic_probability", result.stereotype->generic)
            << "\n";
        out << "  specific posterior probability: "
            << band_text(file, "posterior_specific_probability", result.stereotype->specific)
            << "\n";
    }
    return out.str();
}

ordered_json analysis_machine_json(const ScenarioFile& file, const AnalysisResult& result) {
    ordered_json j;
    j["format"] = "evidentia.analysis.v1";
    j["crime_type"] = file.scenario.crime_type;

    if (file.scenario.partition.has_value()) {
        const PartitionModel& m = *file.scenario.partition;
        ordered_json pj;
        pj["profile_base_rate"] = m.profile_base_rate().value();
        pj["contexts"] = ordered_json::array();
        for (const auto& cell : m.cells()) {
            ordered_json cj;
            cj["label"] = cell.label;
            cj["weight"] = cell.weight;
            cj["prevalence"] = cell.prevalence;
            cj["specific_lr"] = lr_json(specific_lr(m, HypothesisLevel::specific(cell.label)));
            pj["contexts"].push_back(std::move(cj));
        }
        pj["generic_prevalence"] = generic_prevalence(m).value();
        pj["generic_lr"] = lr_json(generic_lr(m));
        pj["unknown_context_lr"] = lr_json(specific_lr(m, HypothesisLevel::specific_unknown()));
        ConditionCheck uniformity = uniformity_check(m);
        pj["uniformity"] = ordered_json{{"holds", uniformity.holds},
                                        {"spread", uniformity.gap},
                                        {"tol", kDefaultConditionTolerance}};
        j["partition"] = std::move(pj);
    } else {
        j["partition"] = nullptr;
    }

    j["priors"] = ordered_json{{"generic", number_or_inf(file.scenario.prior_generic.ratio())},
                               {"specific", number_or_inf(file.scenario.prior_specific.ratio())}};
    j["posteriors"] = ordered_json{
        {"generic", posterior_json(result.evaluation.posterior_generic)},
        {"specific", posterior_json(result.evaluation.posterior_specific)}};

    j["contributions"] = ordered_json::array();
    for (const auto& c : result.evaluation.contributions) {
        ordered_json cj;
        cj["label"] = c.label;
        cj["level"] = level_string(c.level);
        cj["lr"] = lr_json(c.applied);
        cj["tracking"] = to_string(truth_tracking_status(c.applied));
        j["contributions"].push_back(std::move(cj));
    }

    j["warnings"] = ordered_json::array();
    for (const auto& w : result.evaluation.warnings) {
        j["warnings"].push_back(ordered_json{{"code", w.code}, {"detail", w.detail}});
    }
    if (result.level_link_warning.has_value()) {
        j["warnings"].push_back(ordered_json{{"code", result.level_link_warning->code},
                                             {"detail", result.level_link_warning->detail}});
    }

    if (result.stereotype.has_value()) {
        j["stereotype_gap"] = ordered_json{{"generic", band_json(result.stereotype->generic)},
                                           {"specific", band_json(result.stereotype->specific)}};
    } else {
        j["stereotype_gap"] = nullptr;
    }
    return j;
}

std::string render_simulation_table(const ScenarioFile& file, const SimulationConfig& cfg,
                                    const SimulationOutcome& outcome) {
    (void)file;
    std::ostringstream out;
    const SampleStats& s = outcome.stats;
    out << "simulation: seed " << cfg.seed << ", population " << cfg.population_size << " x "
        << cfg.replications << " replications\n";
    out << "designated context: "
        << (cfg.designated_context.has_value() ? *cfg.designated_context : "(unknown)") << "\n";
    out << "non-offender profile rate used: " << fmt4(s.non_offender_rate_used) << "\n";
    out << "counts: offenders " << s.offenders() << " (profiled " << s.offenders_with_profile()
        << "), non-offenders " << s.non_offenders << " (profiled " << s.non_offenders_with_profile
        << "), designated " << s.designated << " (profiled " << s.designated_with_profile
        << ")\n\n";
    out << "  comparison                  analytic    estimate    se          z       result\n";
    for (const auto& c : outcome.comparisons) {
        char line[200];
        std::snprintf(line, sizeof(line), "  %-26s  %-10s  %-10s  %-10s  %-6s  %s\n",
                      c.name.c_str(), fmt4(c.analytic).c_str(), fmt4(c.estimate).c_str(),
                      fmt4(c.se).c_str(), fmt4(c.z).c_str(), c.pass ? "pass" : "FAIL");
        out << line;
    }
    out << "\noverall: " << (outcome.all_pass ? "pass" : "FAIL")
        << " (3 standard-error criterion)\n";
    return out.str();
}

ordered_json simulation_machine_json(const SimulationConfig& cfg,
                                     const SimulationOutcome& outcome) {
    const SampleStats& s = outcome.stats;
    ordered_json j;
    j["format"] = "evidentia.simulation.v1";
    j["seed"] = cfg.seed;
    j["population_size"] = cfg.population_size;
    j["replications"] = cfg.replications;
    if (cfg.designated_context.has_value()) {
        j["designated_context"] = *cfg.designated_context;
    } else {
        j["designated_context"] = nullptr;
    }
    j["crime_rate"] = cfg.crime_rate;
    j["non_offender_profile_rate"] = s.non_offender_rate_used;

    ordered_json counts;
    counts["population"] = s.population;
    counts["non_offenders"] = s.non_offenders;
    counts["non_offenders_with_profile"] = s.non_offenders_with_profile;
    counts["designated"] = s.designated;
    counts["designated_with_profile"] = s.designated_with_profile;
    counts["contexts"] = ordered_json::array();
    for (std::size_t i = 0; i < s.per_context.size(); ++i) {
        counts["contexts"].push_back(
            ordered_json{{"label", s.context_labels[i]},
                         {"offenders", s.per_context[i].offenders},
                         {"offenders_with_profile", s.per_context[i].offenders_with_profile}});
    }
    j["counts"] = std::move(counts);

    j["comparisons"] = ordered_json::array();
    for (const auto& c : outcome.comparisons) {
        j["comparisons"].push_back(ordered_json{{"name", c.name},
                                                {"analytic", c.analytic},
                                                {"estimate", c.estimate},
                                                {"se", c.se},
                                                {"z", number_or_inf(c.z)},
                                                {"pass", c.pass}});
    }
    j["all_pass"] = outcome.all_pass;
    return j;
}

} // namespace

std::string render_analysis(const ScenarioFile& file, const AnalysisResult& result,
                            ReportFormat format) {
    if (format == ReportFormat::Table) {
        return render_analysis_table(file, result);
    }
    return analysis_machine_json(file, result).dump(2) + "\n";
}

std::string render_simulation(const ScenarioFile& file, const SimulationConfig& cfg,
                              const SimulationOutcome& outcome, ReportFormat format) {
    if (format == ReportFormat::Table) {
        return render_simulation_table(file, cfg, outcome);
    }
    return simulation_machine_json(cfg, outcome).dump(2) + "\n";
}

} // namespace evidentia
