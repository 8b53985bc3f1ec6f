#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evidentia/partition.hpp"

namespace evidentia {

enum class EvidenceKind { Profiling, CaseSpecific };

// One item of evidence, tagged with the hypothesis level it addresses.
// Profiling items targeting the specific level carry no LR of their own:
// it is derived from the partition, and only under the scenario override.
struct EvidenceItem {
    std::string label;
    HypothesisLevel target = HypothesisLevel::generic();
    std::optional<LikelihoodRatio> lr;
    EvidenceKind kind = EvidenceKind::CaseSpecific;
};

struct Scenario {
    std::string crime_type;
    std::optional<PartitionModel> partition;
    Odds prior_generic{1.0};
    Odds prior_specific{1.0};
    std::vector<EvidenceItem> evidence;
    // Lets profiling evidence address the specific hypothesis, reproducing
    // the computation this model otherwise blocks.
    bool allow_profiling_on_specific = false;
    // Combining items by multiplying LRs presumes conditional independence
    // given the hypothesis; the scenario must assert it explicitly.
    bool independence_assumed = false;
};

struct Contribution {
    std::string label;
    HypothesisLevel level;
    LikelihoodRatio applied;
};

struct Warning {
    std::string code;
    std::string detail;

    bool operator==(const Warning&) const = default;
};

struct EvaluationReport {
    Posterior posterior_generic = Posterior::point(Odds(1.0));
    Posterior posterior_specific = Posterior::point(Odds(1.0));
    std::vector<Contribution> contributions;
    std::vector<Warning> warnings;
};

// Checks scenario coherence without evaluating; throws Error with the first
// violation's code ("profiling-level", "no-such-context", ...).
void check_scenario(const Scenario& s);

// Posterior at each level = prior at that level times the product of the LRs
// of the items targeting it. Profiling items contribute exactly 1 to the
// specific level (warned as non-probative there) unless the override is set,
// in which case their specific-level LR is derived from the partition.
EvaluationReport evaluate(const Scenario& s);

// Warns when an infallible generic item sits alongside specific-level items:
// generic certainty does not raise the specific posterior under this model,
// and no combination rule is chosen on the scenario's behalf.
std::optional<Warning> combine_levels_diagnostic(const Scenario& s);

enum class TruthTracking { Tracking, NonTracking, Indeterminate };

// Minimal truth tracking: LR strictly above one. Intervals straddling one,
// and undefined LRs, are indeterminate.
TruthTracking truth_tracking_status(const LikelihoodRatio& lr);

const char* to_string(TruthTracking t) noexcept;

// A probability, a probability interval, or undefined: posterior odds mapped
// through o/(1+o) for side-by-side display.
struct ProbabilityBand {
    Posterior::Kind kind;
    double lo = 0.0;
    double hi = 0.0;
    std::string reason;

    static ProbabilityBand from(const Posterior& p);
};

// Both posterior probabilities of a scenario containing profiling evidence,
// for contrasting the generic and specific pictures. Errors with
// "no-profiling-items" when the scenario has none.
struct StereotypeGap {
    ProbabilityBand generic;
    ProbabilityBand specific;
};
StereotypeGap stereotype_gap(const Scenario& s);

} // namespace evidentia
