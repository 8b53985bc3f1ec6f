#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evidentia/likelihood_ratio.hpp"
#include "evidentia/probability.hpp"

namespace evidentia {

// Default tolerance for the uniformity and representativeness checks when
// the caller gives none: one percentage point, absolute.
inline constexpr double kDefaultConditionTolerance = 0.01;

// One offender subpopulation: the share of crimes of this type committed in
// this context, and the profile prevalence among its offenders.
struct ContextCell {
    std::string label;
    double weight;     // P(context | generic guilt)
    double prevalence; // P(profile | generic guilt, context)
};

// Offender population for one crime type, partitioned into contexts, plus
// the population-wide profile base rate. Immutable after construction.
class PartitionModel {
public:
    PartitionModel(std::string crime_type, std::vector<ContextCell> cells,
                   Probability profile_base_rate);

    const std::string& crime_type() const noexcept { return crime_type_; }
    const std::vector<ContextCell>& cells() const noexcept { return cells_; }
    Probability profile_base_rate() const noexcept { return profile_base_rate_; }

    const ContextCell* find(std::string_view label) const noexcept;
    const ContextCell& cell(std::string_view label) const; // throws "no-such-context"
    std::size_t index_of(std::string_view label) const;    // throws "no-such-context"

private:
    std::string crime_type_;
    std::vector<ContextCell> cells_;
    Probability profile_base_rate_;
};

// Which guilt hypothesis evidence addresses: the generic one (some crime of
// the type), or the specific one (this crime), whose context may be a named
// cell or unknown.
class HypothesisLevel {
public:
    static HypothesisLevel generic() { return HypothesisLevel(Kind::Generic, {}); }
    static HypothesisLevel specific(std::string context_label) {
        return HypothesisLevel(Kind::Specific, std::move(context_label));
    }
    static HypothesisLevel specific_unknown() { return HypothesisLevel(Kind::Specific, std::nullopt); }

    bool is_generic() const noexcept { return kind_ == Kind::Generic; }
    bool is_specific() const noexcept { return kind_ == Kind::Specific; }
    bool context_known() const noexcept { return context_.has_value(); }
    const std::string& context() const; // throws when generic or unknown

    bool operator==(const HypothesisLevel&) const = default;

private:
    enum class Kind { Generic, Specific };
    HypothesisLevel(Kind kind, std::optional<std::string> context)
        : kind_(kind), context_(std::move(context)) {}

    Kind kind_;
    std::optional<std::string> context_;
};

// Weighted-average profile prevalence across contexts, P(profile | generic guilt).
Probability generic_prevalence(const PartitionModel& m);

// Prevalence of the named context, P(profile | specific guilt in that context).
Probability specific_prevalence(const PartitionModel& m, std::string_view context_label);

// Range of prevalences an unknown-context crime could see. Zero-weight cells
// describe no offenders and are excluded. Ties resolve to the first cell in
// declaration order.
struct PrevalenceBounds {
    double lo;
    double hi;
    std::string lo_label;
    std::string hi_label;
};
PrevalenceBounds prevalence_bounds(const PartitionModel& m);

// P(profile | generic guilt) / P(profile). Zero base rate -> undefined.
LikelihoodRatio generic_lr(const PartitionModel& m);

// P(profile | specific guilt) / P(profile). A known context gives a point
// ratio; an unknown one gives the interval spanned by the cell prevalences,
// never a weighted average.
LikelihoodRatio specific_lr(const PartitionModel& m, const HypothesisLevel& level);

struct ConditionCheck {
    bool holds;
    double gap; // max spread (uniformity) or |cell - average| (representativeness)
};

// Do all contexts share approximately one prevalence?
ConditionCheck uniformity_check(const PartitionModel& m,
                                double tol = kDefaultConditionTolerance);

// Is the named context's prevalence approximately the weighted average?
ConditionCheck representativeness_check(const PartitionModel& m,
                                        std::string_view context_label,
                                        double tol = kDefaultConditionTolerance);

// |P(profile | specific guilt in context) - P(profile | generic guilt)|: how
// far the invariance assumption is off for this context.
double invariance_gap(const PartitionModel& m, std::string_view context_label);

// Sub-model containing only the named cells, weights renormalized to sum to
// one. Represents case evidence narrowing the crime to several contexts.
PartitionModel restrict_to(const PartitionModel& m, std::span<const std::string> labels);

} // namespace evidentia
