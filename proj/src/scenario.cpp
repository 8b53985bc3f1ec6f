#include "evidentia/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace evidentia {

namespace {

bool targets_specific(const EvidenceItem& item) {
    return item.target.is_specific();
}

// Endpoint-wise posterior * LR. Undefined sticks once it appears; a zero
// odds endpoint against an infinite LR endpoint (or the reverse) has no
// coherent reading and turns the posterior undefined.
Posterior apply_lr(const Posterior& current, const LikelihoodRatio& lr) {
    if (current.is_undefined()) {
        return current;
    }
    if (lr.is_undefined()) {
        return Posterior::undefined(lr.reason());
    }
    auto mul = [](double odds, double ratio) -> std::optional<double> {
        if ((odds == 0.0 && std::isinf(ratio)) || (std::isinf(odds) && ratio == 0.0)) {
            return std::nullopt;
        }
        return odds * ratio;
    };
    std::optional<double> lo = mul(current.lo().ratio(), lr.lo());
    std::optional<double> hi = mul(current.hi().ratio(), lr.hi());
    if (!lo || !hi) {
        return Posterior::undefined("contradictory-certainty");
    }
    auto as_odds = [](double r) { return std::isinf(r) ? Odds::infinite() : Odds(r); };
    if (current.is_interval() || lr.is_interval()) {
        return Posterior::interval(as_odds(*lo), as_odds(*hi));
    }
    return Posterior::point(as_odds(*lo));
}

LikelihoodRatio applied_lr(const Scenario& s, const EvidenceItem& item) {
    if (item.kind == EvidenceKind::Profiling && targets_specific(item)) {
        return specific_lr(*s.partition, item.target);
    }
    return *item.lr;
}

} // namespace

void check_scenario(const Scenario& s) {
    if (!s.independence_assumed) {
        throw Error("independence-not-acknowledged",
                    "combining evidence multiplies LRs; the scenario must set "
                    "independence_assumed to true");
    }
    std::unordered_set<std::string_view> labels;
    for (const auto& item : s.evidence) {
        if (item.label.empty()) {
            throw Error("invalid-evidence", "evidence label must be non-empty");
        }
        if (!labels.insert(item.label).second) {
            throw Error("duplicate-evidence-label",
                        "duplicate evidence label '" + item.label + "'");
        }
        if (item.kind == EvidenceKind::Profiling && targets_specific(item)) {
            if (!s.allow_profiling_on_specific) {
                throw Error("profiling-level",
                            "profiling item '" + item.label +
                                "' targets the specific level without the override");
            }
            if (!s.partition.has_value()) {
                throw Error("partition-required",
                            "profiling item '" + item.label +
                                "' needs a partition to derive its specific-level LR");
            }
            if (item.lr.has_value()) {
                throw Error("profiling-specific-lr",
                            "profiling item '" + item.label +
                                "' targets the specific level; its LR is derived from "
                                "the partition and must not be declared");
            }
        } else if (!item.lr.has_value()) {
            throw Error("missing-lr", "evidence item '" + item.label + "' declares no LR");
        }
        if (targets_specific(item) && item.target.context_known() && s.partition.has_value()) {
            s.partition->cell(item.target.context()); // throws "no-such-context"
        }
    }
}

EvaluationReport evaluate(const Scenario& s) {
    check_scenario(s);

    EvaluationReport report;
    report.posterior_generic = Posterior::point(s.prior_generic);
    report.posterior_specific = Posterior::point(s.prior_specific);

    if (!s.prior_generic.is_infinite() && !s.prior_specific.is_infinite() &&
        s.prior_specific.ratio() > s.prior_generic.ratio()) {
        report.warnings.push_back(
            {"specific-prior-exceeds-generic",
             "specific guilt entails generic guilt, yet the specific prior is larger"});
    }

    for (const auto& item : s.evidence) {
        LikelihoodRatio lr = applied_lr(s, item);
        if (item.target.is_generic()) {
            report.posterior_generic = apply_lr(report.posterior_generic, lr);
            if (item.kind == EvidenceKind::Profiling) {
                // Contributes exactly 1 to the specific level.
                report.warnings.push_back(
                    {"profiling-non-probative-specific",
                     "profiling item '" + item.label +
                         "' leaves the specific posterior unchanged"});
            }
        } else {
            report.posterior_specific = apply_lr(report.posterior_specific, lr);
        }
        if (lr.is_interval()) {
            report.warnings.push_back(
                {"interval-lr", "item '" + item.label + "' applies an interval LR"});
        } else if (lr.is_undefined()) {
            report.warnings.push_back(
                {"undefined-lr",
                 "item '" + item.label + "' applies an undefined LR (" + lr.reason() + ")"});
        }
        report.contributions.push_back({item.label, item.target, lr});
    }
    return report;
}

std::optional<Warning> combine_levels_diagnostic(const Scenario& s) {
    bool generic_certainty = false;
    bool any_specific = false;
    for (const auto& item : s.evidence) {
        if (item.target.is_generic() && item.lr.has_value() && item.lr->is_certainty()) {
            generic_certainty = true;
        }
        if (targets_specific(item)) {
            any_specific = true;
        }
    }
    if (generic_certainty && any_specific) {
        return Warning{"generic-specific-not-linked",
                       "certainty about generic guilt does not raise the specific "
                       "posterior; connecting the two needs additional information"};
    }
    return std::nullopt;
}

TruthTracking truth_tracking_status(const LikelihoodRatio& lr) {
    switch (lr.kind()) {
    case LikelihoodRatio::Kind::Undefined:
        return TruthTracking::Indeterminate;
    case LikelihoodRatio::Kind::Point:
        return lr.value() > 1.0 ? TruthTracking::Tracking : TruthTracking::NonTracking;
    case LikelihoodRatio::Kind::Interval:
        if (lr.lo() > 1.0) {
            return TruthTracking::Tracking;
        }
        if (lr.hi() <= 1.0) {
            return TruthTracking::NonTracking;
        }
        return TruthTracking::Indeterminate;
    }
    return TruthTracking::Indeterminate;
}

const char* to_string(TruthTracking t) noexcept {
    switch (t) {
    case TruthTracking::Tracking:
        return "tracking";
    case TruthTracking::NonTracking:
        return "non-tracking";
    case TruthTracking::Indeterminate:
        return "indeterminate";
    }
    return "indeterminate";
}

ProbabilityBand ProbabilityBand::from(const Posterior& p) {
    ProbabilityBand band;
    band.kind = p.kind();
    if (p.is_undefined()) {
        band.reason = p.reason();
        return band;
    }
    band.lo = probability_from_odds(p.lo()).value();
    band.hi = probability_from_odds(p.hi()).value();
    return band;
}

StereotypeGap stereotype_gap(const Scenario& s) {
    bool any_profiling = std::any_of(s.evidence.begin(), s.evidence.end(), [](const auto& e) {
        return e.kind == EvidenceKind::Profiling;
    });
    if (!any_profiling) {
        throw Error("no-profiling-items",
                    "stereotype_gap needs at least one profiling item to contrast");
    }
    EvaluationReport report = evaluate(s);
    return StereotypeGap{ProbabilityBand::from(report.posterior_generic),
                         ProbabilityBand::from(report.posterior_specific)};
}

} // namespace evidentia
