#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evidentia/partition.hpp"

namespace evidentia {

// Synthetic-population parameters. Generation is deterministic given the
// seed: replication r draws from a std::mt19937_64 seeded with a splitmix64
// mix of (seed, r), so replications can run in any order, in parallel, and
// merge to the same result.
struct SimulationConfig {
    std::uint64_t population_size = 0;
    double crime_rate = 0.0; // P(generic guilt) in the population, in (0,1)
    PartitionModel partition;
    std::uint64_t seed = 0;
    std::uint64_t replications = 1;
    // Context of the designated specific crime; unset means unknown, i.e.
    // the perpetrator is drawn uniformly from all offenders.
    std::optional<std::string> designated_context;
    // Profile rate among non-offenders. Unset means solved from the base
    // rate so the population-wide profile rate matches the partition's.
    std::optional<double> non_offender_profile_rate;
};

struct ContextCounts {
    std::uint64_t offenders = 0;
    std::uint64_t offenders_with_profile = 0;

    bool operator==(const ContextCounts&) const = default;
};

// Empirical counts over (offender, context, profile), plus the designated
// perpetrators realizing the specific hypothesis, one per replication.
struct SampleStats {
    std::vector<std::string> context_labels;
    std::vector<ContextCounts> per_context;
    std::uint64_t population = 0; // population_size * replications
    std::uint64_t non_offenders = 0;
    std::uint64_t non_offenders_with_profile = 0;
    std::uint64_t designated = 0;
    std::uint64_t designated_with_profile = 0;
    std::uint64_t replications = 0;
    double non_offender_rate_used = 0.0;

    std::uint64_t offenders() const;
    std::uint64_t offenders_with_profile() const;
    std::uint64_t profiled_total() const;

    // Empirical conditional probabilities; each throws
    // "insufficient-samples" naming the starved cell when its denominator
    // has no observations.
    double p_profile() const;
    double p_profile_given_offender() const;
    double p_profile_given_non_offender() const;
    double prevalence(std::size_t context_index) const;
    double p_profile_given_designated() const;
    double p_profile_given_not_designated() const;

    void merge(const SampleStats& other);
    bool operator==(const SampleStats&) const = default;
};

SampleStats simulate(const SimulationConfig& cfg);

// A plug-in ratio estimate with its delta-method standard error.
struct RatioEstimate {
    double value = 0.0;
    double se = 0.0;
};

struct EmpiricalLrs {
    RatioEstimate generic_lr;                                   // P(P|Gg) / P(P)
    std::vector<std::pair<std::string, RatioEstimate>> specific_lr; // per context
    RatioEstimate innocent_rate;                                // P(P|not Gg)
};

EmpiricalLrs empirical_lrs(const SampleStats& stats);

// One sweep row: the specific crime designated into this context.
struct InvarianceRow {
    std::string label;
    double analytic_lr = 0.0;
    RatioEstimate empirical_lr;
    std::uint64_t designated = 0;
    double designated_profile_rate = 0.0;
};

struct InvarianceReport {
    std::vector<InvarianceRow> rows;
    double analytic_generic_lr = 0.0;
    double interval_lo = 0.0; // analytic unknown-context LR bounds
    double interval_hi = 0.0;
    double empirical_spread = 0.0; // max - min empirical per-context LR
    std::string focus_label;
    double focus_analytic_gap = 0.0; // |analytic LR at focus - generic LR|
};

// Sweeps the designated-crime context over the cells (same seed, so the
// population is identical and only the designation moves) and contrasts
// empirical per-context LRs with the analytic interval bounds.
InvarianceReport invariance_experiment(const SimulationConfig& cfg,
                                       std::string_view focus_label);

} // namespace evidentia
