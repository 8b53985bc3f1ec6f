#include "evidentia/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace evidentia {

namespace {
constexpr double kWeightSumTolerance = 1e-9;
} // namespace

PartitionModel::PartitionModel(std::string crime_type, std::vector<ContextCell> cells,
                               Probability profile_base_rate)
    : crime_type_(std::move(crime_type)),
      cells_(std::move(cells)),
      profile_base_rate_(profile_base_rate) {
    if (cells_.empty()) {
        throw Error("empty-partition", "a partition needs at least one context");
    }
    std::unordered_set<std::string_view> seen;
    double weight_sum = 0.0;
    for (const auto& c : cells_) {
        if (c.label.empty()) {
            throw Error("invalid-context", "context label must be non-empty");
        }
        if (!seen.insert(c.label).second) {
            throw Error("duplicate-label", "duplicate context label '" + c.label + "'");
        }
        if (std::isnan(c.weight) || c.weight < 0.0) {
            throw Error("invalid-context",
                        "context '" + c.label + "' has negative weight");
        }
        Probability check(c.prevalence); // rejects prevalence outside [0,1]
        (void)check;
        weight_sum += c.weight;
    }
    if (std::abs(weight_sum - 1.0) > kWeightSumTolerance) {
        throw Error("weights-sum", "context weights sum to " + std::to_string(weight_sum) +
                                       ", expected 1");
    }
}

const ContextCell* PartitionModel::find(std::string_view label) const noexcept {
    for (const auto& c : cells_) {
        if (c.label == label) {
            return &c;
        }
    }
    return nullptr;
}

const ContextCell& PartitionModel::cell(std::string_view label) const {
    const ContextCell* c = find(label);
    if (c == nullptr) {
        throw Error("no-such-context", "no context labelled '" + std::string(label) + "'");
    }
    return *c;
}

std::size_t PartitionModel::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        if (cells_[i].label == label) {
            return i;
        }
    }
    throw Error("no-such-context", "no context labelled '" + std::string(label) + "'");
}

const std::string& HypothesisLevel::context() const {
    if (!context_.has_value()) {
        throw Error("no-context", "hypothesis level carries no context label");
    }
    return *context_;
}

Probability generic_prevalence(const PartitionModel& m) {
    // Summed in label order so cell reordering cannot perturb the result,
    // and anchored at the minimum prevalence so a uniform partition returns
    // the shared value exactly.
    std::vector<std::size_t> order(m.cells().size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return m.cells()[a].label < m.cells()[b].label;
    });
    double anchor = m.cells().front().prevalence;
    for (const auto& c : m.cells()) {
        anchor = std::min(anchor, c.prevalence);
    }
    double sum = 0.0;
    for (std::size_t i : order) {
        sum += m.cells()[i].weight * (m.cells()[i].prevalence - anchor);
    }
    return Probability(anchor + sum);
}

Probability specific_prevalence(const PartitionModel& m, std::string_view context_label) {
    return Probability(m.cell(context_label).prevalence);
}

PrevalenceBounds prevalence_bounds(const PartitionModel& m) {
    const ContextCell* lo = nullptr;
    const ContextCell* hi = nullptr;
    for (const auto& c : m.cells()) {
        if (c.weight == 0.0) {
            continue; // describes no offenders, cannot bound the specific prevalence
        }
        if (lo == nullptr || c.prevalence < lo->prevalence) {
            lo = &c;
        }
        if (hi == nullptr || c.prevalence > hi->prevalence) {
            hi = &c;
        }
    }
    if (lo == nullptr) {
        throw Error("empty-partition", "all contexts carry zero weight");
    }
    return PrevalenceBounds{lo->prevalence, hi->prevalence, lo->label, hi->label};
}

LikelihoodRatio generic_lr(const PartitionModel& m) {
    double base = m.profile_base_rate().value();
    if (base == 0.0) {
        return LikelihoodRatio::undefined("zero-base-rate");
    }
    return LikelihoodRatio::point(generic_prevalence(m).value() / base);
}

LikelihoodRatio specific_lr(const PartitionModel& m, const HypothesisLevel& level) {
    if (!level.is_specific()) {
        throw Error("wrong-level", "specific_lr requires a specific hypothesis level");
    }
    double base = m.profile_base_rate().value();
    if (base == 0.0) {
        return LikelihoodRatio::undefined("zero-base-rate");
    }
    if (level.context_known()) {
        return LikelihoodRatio::point(specific_prevalence(m, level.context()).value() / base);
    }
    PrevalenceBounds b = prevalence_bounds(m);
    return LikelihoodRatio::interval(b.lo / base, b.hi / base);
}

ConditionCheck uniformity_check(const PartitionModel& m, double tol) {
    if (tol < 0.0) {
        throw Error("invalid-tolerance", "tolerance must be nonnegative");
    }
    // All cells count here, zero-weight included: uniformity is a statement
    // about every context's prevalence, not only the populated ones.
    double lo = m.cells().front().prevalence;
    double hi = lo;
    for (const auto& c : m.cells()) {
        lo = std::min(lo, c.prevalence);
        hi = std::max(hi, c.prevalence);
    }
    double spread = hi - lo;
    return ConditionCheck{spread <= tol, spread};
}

ConditionCheck representativeness_check(const PartitionModel& m,
                                        std::string_view context_label, double tol) {
    if (tol < 0.0) {
        throw Error("invalid-tolerance", "tolerance must be nonnegative");
    }
    double gap = invariance_gap(m, context_label);
    return ConditionCheck{gap <= tol, gap};
}

double invariance_gap(const PartitionModel& m, std::string_view context_label) {
    return std::abs(specific_prevalence(m, context_label).value() -
                    generic_prevalence(m).value());
}

PartitionModel restrict_to(const PartitionModel& m, std::span<const std::string> labels) {
    if (labels.empty()) {
        throw Error("empty-partition", "restriction needs at least one context label");
    }
    std::vector<ContextCell> kept;
    kept.reserve(labels.size());
    double weight_sum = 0.0;
    std::unordered_set<std::string_view> seen;
    for (const auto& label : labels) {
        if (!seen.insert(label).second) {
            throw Error("duplicate-label", "duplicate restriction label '" + label + "'");
        }
        kept.push_back(m.cell(label));
        weight_sum += kept.back().weight;
    }
    if (weight_sum == 0.0) {
        throw Error("zero-weight-restriction",
                    "restricted contexts carry no offender mass to renormalize");
    }
    for (auto& c : kept) {
        c.weight /= weight_sum;
    }
    return PartitionModel(m.crime_type(), std::move(kept), m.profile_base_rate());
}

} // namespace evidentia
