#include "evidentia/simulate.hpp"

#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "evidentia/bayes.hpp"

namespace evidentia {

namespace {

// Uniform doubles in [0,1) from the top 53 bits, so draws depend only on the
// mt19937_64 output sequence, which the standard fixes bit for bit.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    bool bernoulli(double p) { return uniform() < p; }

    std::size_t index(std::size_t size) {
        auto i = static_cast<std::size_t>(uniform() * static_cast<double>(size));
        return i < size ? i : size - 1;
    }

private:
    std::mt19937_64 engine_;
};

std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

void check_config(const SimulationConfig& cfg) {
    if (cfg.population_size < 1) {
        throw Error("invalid-config", "population_size must be at least 1");
    }
    if (cfg.replications < 1) {
        throw Error("invalid-config", "replications must be at least 1");
    }
    if (!(cfg.crime_rate > 0.0) || !(cfg.crime_rate < 1.0)) {
        throw Error("invalid-config", "crime_rate must lie strictly between 0 and 1");
    }
    if (cfg.designated_context.has_value()) {
        cfg.partition.cell(*cfg.designated_context); // throws "no-such-context"
    }
    if (cfg.non_offender_profile_rate.has_value()) {
        double r = *cfg.non_offender_profile_rate;
        if (std::isnan(r) || r < 0.0 || r > 1.0) {
            throw Error("invalid-config", "non_offender_profile_rate must lie in [0,1]");
        }
    }
}

// Solves P(P) = P(P|Gg) P(Gg) + r (1 - P(Gg)) for r, so the population
// reproduces the declared base rate.
double solve_non_offender_rate(const SimulationConfig& cfg) {
    if (cfg.non_offender_profile_rate.has_value()) {
        return *cfg.non_offender_profile_rate;
    }
    try {
        return innocent_profile_rate(cfg.partition.profile_base_rate(),
                                     generic_prevalence(cfg.partition),
                                     Probability(cfg.crime_rate), RateMode::Exact)
            .value();
    } catch (const Error& e) {
        if (e.code() == "incoherent-inputs") {
            throw Error("infeasible-base-rate",
                        "no non-offender profile rate in [0,1] reproduces the base rate "
                        "given the partition and crime rate");
        }
        throw;
    }
}

SampleStats run_replication(const SimulationConfig& cfg,
                            const std::vector<double>& cumulative_weights,
                            double non_offender_rate,
                            std::optional<std::size_t> designated_index,
                            std::uint64_t replication) {
    SampleStats stats;
    stats.per_context.resize(cfg.partition.cells().size());
    stats.population = cfg.population_size;
    stats.replications = 1;
    stats.non_offender_rate_used = non_offender_rate;

    Rng rng(child_seed(cfg.seed, replication));
    const auto& cells = cfg.partition.cells();

    std::vector<unsigned char> eligible_profiles; // offenders eligible for designation
    for (std::uint64_t i = 0; i < cfg.population_size; ++i) {
        if (rng.bernoulli(cfg.crime_rate)) {
            double u = rng.uniform();
            std::size_t ctx = cells.size() - 1;
            for (std::size_t c = 0; c < cumulative_weights.size(); ++c) {
                if (u < cumulative_weights[c]) {
                    ctx = c;
                    break;
                }
            }
            bool profiled = rng.bernoulli(cells[ctx].prevalence);
            stats.per_context[ctx].offenders += 1;
            stats.per_context[ctx].offenders_with_profile += profiled ? 1 : 0;
            if (!designated_index.has_value() || *designated_index == ctx) {
                eligible_profiles.push_back(profiled ? 1 : 0);
            }
        } else {
            bool profiled = rng.bernoulli(non_offender_rate);
            stats.non_offenders += 1;
            stats.non_offenders_with_profile += profiled ? 1 : 0;
        }
    }
    if (!eligible_profiles.empty()) {
        std::size_t pick = rng.index(eligible_profiles.size());
        stats.designated += 1;
        stats.designated_with_profile += eligible_profiles[pick];
    }
    return stats;
}

double proportion_se(double p, std::uint64_t n) {
    return n == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

// Delta-method SE for T = X/Y where X is a proportion over a subgroup of
// size n and Y a proportion over the whole sample of size N containing it.
// Cov(X, Y) = X(1-X)/N because Y's numerator includes the subgroup's.
RatioEstimate ratio_of_proportions(std::uint64_t x_count, std::uint64_t n,
                                   std::uint64_t y_count, std::uint64_t N) {
    double x = static_cast<double>(x_count) / static_cast<double>(n);
    double y = static_cast<double>(y_count) / static_cast<double>(N);
    double t = x / y;
    if (x == 0.0 || y == 0.0) {
        return RatioEstimate{t, 0.0};
    }
    double vx = x * (1.0 - x) / static_cast<double>(n);
    double vy = y * (1.0 - y) / static_cast<double>(N);
    double cxy = x * (1.0 - x) / static_cast<double>(N);
    double rel = vx / (x * x) + vy / (y * y) - 2.0 * cxy / (x * y);
    return RatioEstimate{t, t * std::sqrt(std::max(rel, 0.0))};
}

} // namespace

std::uint64_t SampleStats::offenders() const {
    std::uint64_t n = 0;
    for (const auto& c : per_context) {
        n += c.offenders;
    }
    return n;
}

std::uint64_t SampleStats::offenders_with_profile() const {
    std::uint64_t n = 0;
    for (const auto& c : per_context) {
        n += c.offenders_with_profile;
    }
    return n;
}

std::uint64_t SampleStats::profiled_total() const {
    return offenders_with_profile() + non_offenders_with_profile;
}

namespace {
double safe_rate(std::uint64_t num, std::uint64_t den, const std::string& cell) {
    if (den == 0) {
        throw Error("insufficient-samples", "no observations in cell '" + cell + "'");
    }
    return static_cast<double>(num) / static_cast<double>(den);
}
} // namespace

double SampleStats::p_profile() const {
    return safe_rate(profiled_total(), population, "population");
}

double SampleStats::p_profile_given_offender() const {
    return safe_rate(offenders_with_profile(), offenders(), "offenders");
}

double SampleStats::p_profile_given_non_offender() const {
    return safe_rate(non_offenders_with_profile, non_offenders, "non-offenders");
}

double SampleStats::prevalence(std::size_t context_index) const {
    const auto& c = per_context.at(context_index);
    return safe_rate(c.offenders_with_profile, c.offenders,
                     "context:" + context_labels.at(context_index));
}

double SampleStats::p_profile_given_designated() const {
    return safe_rate(designated_with_profile, designated, "designated");
}

double SampleStats::p_profile_given_not_designated() const {
    return safe_rate(profiled_total() - designated_with_profile, population - designated,
                     "not-designated");
}

void SampleStats::merge(const SampleStats& other) {
    if (per_context.size() != other.per_context.size()) {
        throw Error("merge-mismatch", "merging stats over different partitions");
    }
    for (std::size_t i = 0; i < per_context.size(); ++i) {
        per_context[i].offenders += other.per_context[i].offenders;
        per_context[i].offenders_with_profile += other.per_context[i].offenders_with_profile;
    }
    population += other.population;
    non_offenders += other.non_offenders;
    non_offenders_with_profile += other.non_offenders_with_profile;
    designated += other.designated;
    designated_with_profile += other.designated_with_profile;
    replications += other.replications;
}

SampleStats simulate(const SimulationConfig& cfg) {
    check_config(cfg);
    double non_offender_rate = solve_non_offender_rate(cfg);

    const auto& cells = cfg.partition.cells();
    std::vector<double> cumulative(cells.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        acc += cells[i].weight;
        cumulative[i] = acc;
    }
    std::optional<std::size_t> designated_index;
    if (cfg.designated_context.has_value()) {
        designated_index = cfg.partition.index_of(*cfg.designated_context);
    }

    std::vector<SampleStats> parts(cfg.replications);
    unsigned workers = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                                       static_cast<unsigned>(cfg.replications)));
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t r = next.fetch_add(1); r < cfg.replications; r = next.fetch_add(1)) {
            parts[r] = run_replication(cfg, cumulative, non_offender_rate, designated_index, r);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
        for (auto& t : pool) {
            t.join();
        }
    }

    // Merge in replication order: the result is the same no matter how the
    // replications were scheduled.
    SampleStats total = std::move(parts[0]);
    for (std::size_t r = 1; r < parts.size(); ++r) {
        total.merge(parts[r]);
    }
    total.context_labels.reserve(cells.size());
    for (const auto& c : cells) {
        total.context_labels.push_back(c.label);
    }
    return total;
}

EmpiricalLrs empirical_lrs(const SampleStats& stats) {
    if (stats.profiled_total() == 0) {
        throw Error("insufficient-samples", "no observations in cell 'profiled'");
    }
    EmpiricalLrs out;
    std::uint64_t offenders = stats.offenders();
    if (offenders == 0) {
        throw Error("insufficient-samples", "no observations in cell 'offenders'");
    }
    out.generic_lr = ratio_of_proportions(stats.offenders_with_profile(), offenders,
                                          stats.profiled_total(), stats.population);
    out.specific_lr.reserve(stats.per_context.size());
    for (std::size_t i = 0; i < stats.per_context.size(); ++i) {
        const auto& c = stats.per_context[i];
        if (c.offenders == 0) {
            throw Error("insufficient-samples",
                        "no observations in cell 'context:" + stats.context_labels[i] + "'");
        }
        out.specific_lr.emplace_back(
            stats.context_labels[i],
            ratio_of_proportions(c.offenders_with_profile, c.offenders,
                                 stats.profiled_total(), stats.population));
    }
    if (stats.non_offenders == 0) {
        throw Error("insufficient-samples", "no observations in cell 'non-offenders'");
    }
    double rate = stats.p_profile_given_non_offender();
    out.innocent_rate = RatioEstimate{rate, proportion_se(rate, stats.non_offenders)};
    return out;
}

InvarianceReport invariance_experiment(const SimulationConfig& cfg,
                                       std::string_view focus_label) {
    cfg.partition.cell(focus_label); // throws "no-such-context"

    InvarianceReport report;
    double base = cfg.partition.profile_base_rate().value();
    if (base == 0.0) {
        throw Error("zero-base-rate", "analytic LRs need a positive base rate");
    }
    PrevalenceBounds bounds = prevalence_bounds(cfg.partition);
    report.interval_lo = bounds.lo / base;
    report.interval_hi = bounds.hi / base;
    report.analytic_generic_lr = generic_prevalence(cfg.partition).value() / base;
    report.focus_label = std::string(focus_label);

    double min_lr = 0.0;
    double max_lr = 0.0;
    for (std::size_t i = 0; i < cfg.partition.cells().size(); ++i) {
        const auto& cell = cfg.partition.cells()[i];
        SimulationConfig sweep = cfg;
        sweep.designated_context = cell.label; // same seed: only the designation moves
        SampleStats stats = simulate(sweep);
        EmpiricalLrs lrs = empirical_lrs(stats);

        InvarianceRow row;
        row.label = cell.label;
        row.analytic_lr = cell.prevalence / base;
        row.empirical_lr = lrs.specific_lr[i].second;
        row.designated = stats.designated;
        row.designated_profile_rate =
            stats.designated == 0 ? 0.0 : stats.p_profile_given_designated();
        if (report.rows.empty() || row.empirical_lr.value < min_lr) {
            min_lr = row.empirical_lr.value;
        }
        if (report.rows.empty() || row.empirical_lr.value > max_lr) {
            max_lr = row.empirical_lr.value;
        }
        if (cell.label == focus_label) {
            report.focus_analytic_gap = std::abs(row.analytic_lr - report.analytic_generic_lr);
        }
        report.rows.push_back(std::move(row));
    }
    report.empirical_spread = max_lr - min_lr;
    return report;
}

} // namespace evidentia
