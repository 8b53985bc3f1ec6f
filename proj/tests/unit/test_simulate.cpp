#include <doctest.h>

#include <cmath>

#include "evidentia/bayes.hpp"
#include "evidentia/report.hpp"
#include "support/generators.hpp"

using namespace evidentia;
using testgen::four_context_model;

namespace {

SimulationConfig appendix_config(std::uint64_t population, std::uint64_t replications,
                                 std::uint64_t seed) {
    return SimulationConfig{population, 0.001, four_context_model(), seed,
                            replications, std::nullopt, std::nullopt};
}

} // namespace

TEST_CASE("identical configs give bit-identical stats") {
    SimulationConfig cfg = appendix_config(50000, 4, 99);
    cfg.designated_context = "S2";
    SampleStats a = simulate(cfg);
    SampleStats b = simulate(cfg);
    REQUIRE(a == b);

    cfg.seed = 100;
    SampleStats c = simulate(cfg);
    CHECK_FALSE(a == c);
}

TEST_CASE("counts conserve the population") {
    SimulationConfig cfg = appendix_config(30000, 3, 7);
    SampleStats s = simulate(cfg);
    CHECK(s.population == 90000);
    CHECK(s.replications == 3);
    CHECK(s.offenders() + s.non_offenders == s.population);
    std::uint64_t ctx_sum = 0;
    for (const auto& c : s.per_context) {
        CHECK(c.offenders_with_profile <= c.offenders);
        ctx_sum += c.offenders;
    }
    CHECK(ctx_sum == s.offenders());
    CHECK(s.designated == 3); // one per replication at this population size
}

TEST_CASE("deterministic profile assignment at the extremes") {
    PartitionModel all_profiled("x", {{"only", 1.0, 1.0}}, Probability(0.5));
    SimulationConfig cfg{20000, 0.5, all_profiled, 11, 2, std::nullopt, 0.0};
    SampleStats s = simulate(cfg);
    CHECK(s.offenders_with_profile() == s.offenders());
    CHECK(s.non_offenders_with_profile == 0);
    CHECK(s.p_profile_given_designated() == 1.0);
}

TEST_CASE("profile independent of guilt gives LR near one") {
    PartitionModel flat("x", {{"only", 1.0, 0.3}}, Probability(0.3));
    SimulationConfig cfg{100000, 0.5, flat, 13, 2, std::nullopt, std::nullopt};
    EmpiricalLrs lrs = empirical_lrs(simulate(cfg));
    CHECK(std::abs(lrs.generic_lr.value - 1.0) <= 3.0 * lrs.generic_lr.se);
}

TEST_CASE("appendix population reproduces the analytic prevalence") {
    SampleStats s = simulate(appendix_config(1000000, 10, 5));
    CHECK(std::abs(s.p_profile_given_offender() - 0.7375) <= 0.02);
    CHECK(std::abs(s.p_profile() - 0.01) <= 0.001);
}

TEST_CASE("empirical ratios agree with the analytic values at three sigma") {
    SimulationConfig cfg = appendix_config(100000, 10, 21);
    cfg.designated_context = "S1";
    SampleStats s = simulate(cfg);
    EmpiricalLrs lrs = empirical_lrs(s);

    CHECK(std::abs(lrs.generic_lr.value - 73.75) <= 3.0 * lrs.generic_lr.se);
    CHECK(lrs.specific_lr[0].first == "S1");
    CHECK(std::abs(lrs.specific_lr[0].second.value - 40.0) <=
          3.0 * lrs.specific_lr[0].second.se);

    double exact_innocent =
        innocent_profile_rate(Probability(0.01), generic_prevalence(four_context_model()),
                              Probability(0.001), RateMode::Exact)
            .value();
    CHECK(s.non_offender_rate_used == doctest::Approx(exact_innocent).epsilon(1e-15));
    CHECK(std::abs(lrs.innocent_rate.value - exact_innocent) <= 3.0 * lrs.innocent_rate.se);
}

TEST_CASE("infeasible base rates are rejected") {
    // Offenders alone already exceed the declared base rate.
    PartitionModel heavy("x", {{"only", 1.0, 0.7375}}, Probability(0.001));
    SimulationConfig cfg{1000, 0.5, heavy, 1, 1, std::nullopt, std::nullopt};
    CHECK_THROWS_WITH_AS(simulate(cfg), doctest::Contains("infeasible-base-rate"), Error);

    // Implied non-offender rate above one.
    PartitionModel thin("x", {{"only", 1.0, 0.0}}, Probability(0.99));
    SimulationConfig cfg2{1000, 0.5, thin, 1, 1, std::nullopt, std::nullopt};
    CHECK_THROWS_WITH_AS(simulate(cfg2), doctest::Contains("infeasible-base-rate"), Error);
}

TEST_CASE("config invariants are enforced") {
    SimulationConfig cfg = appendix_config(0, 1, 1);
    CHECK_THROWS_WITH_AS(simulate(cfg), doctest::Contains("invalid-config"), Error);
    cfg = appendix_config(10, 0, 1);
    CHECK_THROWS_WITH_AS(simulate(cfg), doctest::Contains("invalid-config"), Error);
    cfg = appendix_config(10, 1, 1);
    cfg.crime_rate = 0.0;
    CHECK_THROWS_WITH_AS(simulate(cfg), doctest::Contains("invalid-config"), Error);
    cfg.crime_rate = 0.5;
    cfg.designated_context = "S9";
    CHECK_THROWS_WITH_AS(simulate(cfg), doctest::Contains("no-such-context"), Error);
}

TEST_CASE("starved cells raise insufficient-samples") {
    SimulationConfig cfg = appendix_config(100, 10, 42); // ~1 offender in 1000 draws
    SampleStats s = simulate(cfg);
    CHECK_THROWS_WITH_AS(empirical_lrs(s), doctest::Contains("insufficient-samples"), Error);
}

TEST_CASE("designated perpetrator tracks the context prevalence, not the average") {
    SimulationConfig cfg{10000, 0.01, four_context_model(), 17, 400, "S1", std::nullopt};
    SampleStats s = simulate(cfg);
    REQUIRE(s.designated >= 350); // nearly every replication has an S1 offender
    double rate = s.p_profile_given_designated();
    double se = std::sqrt(0.4 * 0.6 / static_cast<double>(s.designated));
    CHECK(std::abs(rate - 0.40) <= 3.0 * se);
    CHECK(std::abs(rate - 0.7375) > 3.0 * se);
}

TEST_CASE("profile rate among the non-designated approaches the base rate") {
    SimulationConfig cfg = appendix_config(200000, 5, 23);
    cfg.designated_context = "S4";
    SampleStats s = simulate(cfg);
    double rate = s.p_profile_given_not_designated();
    double se = std::sqrt(0.01 * 0.99 / static_cast<double>(s.population - s.designated));
    CHECK(std::abs(rate - 0.01) <= 4.0 * se);
}

TEST_CASE("invariance experiment sweeps the designation over contexts") {
    SimulationConfig cfg = appendix_config(100000, 4, 31);
    InvarianceReport report = invariance_experiment(cfg, "S1");

    REQUIRE(report.rows.size() == 4);
    CHECK(report.rows[0].analytic_lr == 40.0);
    CHECK(report.rows[1].analytic_lr == 70.0);
    CHECK(report.rows[2].analytic_lr == 90.0);
    CHECK(report.rows[3].analytic_lr == 95.0);
    CHECK(report.interval_lo == 40.0);
    CHECK(report.interval_hi == 95.0);
    CHECK(report.analytic_generic_lr == doctest::Approx(73.75).epsilon(1e-12));
    CHECK(report.focus_analytic_gap == doctest::Approx(33.75).epsilon(1e-12));

    double previous = 0.0;
    for (const auto& row : report.rows) {
        CHECK(std::abs(row.empirical_lr.value - row.analytic_lr) <= 3.0 * row.empirical_lr.se);
        CHECK(row.empirical_lr.value > previous); // ordered like the analytic values
        previous = row.empirical_lr.value;
        CHECK(row.empirical_lr.value >= report.interval_lo - 3.0 * row.empirical_lr.se);
        CHECK(row.empirical_lr.value <= report.interval_hi + 3.0 * row.empirical_lr.se);
    }
    CHECK(report.empirical_spread > 0.0);

    CHECK_THROWS_WITH_AS(invariance_experiment(cfg, "S9"), doctest::Contains("no-such-context"),
                         Error);
}

TEST_CASE("uniform partitions show no spread beyond noise") {
    PartitionModel uniform("x", {{"a", 0.5, 0.3}, {"b", 0.5, 0.3}}, Probability(0.01));
    SimulationConfig cfg{100000, 0.01, uniform, 37, 4, std::nullopt, std::nullopt};
    InvarianceReport report = invariance_experiment(cfg, "a");
    double pooled_se =
        std::hypot(report.rows[0].empirical_lr.se, report.rows[1].empirical_lr.se);
    CHECK(report.empirical_spread <= 3.0 * pooled_se);
}

TEST_CASE("two-cell generic LR lies between the per-cell LRs, empirically") {
    PartitionModel two("x", {{"heavy", 0.9, 0.2}, {"light", 0.1, 0.8}}, Probability(0.01));
    SimulationConfig cfg{200000, 0.01, two, 41, 4, std::nullopt, std::nullopt};
    EmpiricalLrs lrs = empirical_lrs(simulate(cfg));
    double lo = std::min(lrs.specific_lr[0].second.value, lrs.specific_lr[1].second.value);
    double hi = std::max(lrs.specific_lr[0].second.value, lrs.specific_lr[1].second.value);
    CHECK(lrs.generic_lr.value >= lo);
    CHECK(lrs.generic_lr.value <= hi);
}

TEST_CASE("estimates converge toward the analytic values as the population grows") {
    double prev_err = std::numeric_limits<double>::infinity();
    for (std::uint64_t n : {std::uint64_t{10000}, std::uint64_t{100000}, std::uint64_t{1000000}}) {
        SimulationConfig cfg = appendix_config(n, 2, 57);
        cfg.crime_rate = 0.01; // keep every context populated at the smallest size
        SampleStats s = simulate(cfg);
        double err = std::abs(s.p_profile_given_offender() - 0.7375);
        double se = std::sqrt(0.7375 * 0.2625 / static_cast<double>(s.offenders()));
        CHECK(err <= 4.0 * se);
        if (n == 1000000) {
            CHECK(err <= prev_err + 0.01);
        }
        prev_err = std::min(prev_err, err);
    }
}

TEST_CASE("three-sigma checks pass for at least 99 percent of seed-quantity pairs") {
    SimulationConfig base = appendix_config(100000, 2, 0);
    base.crime_rate = 0.005;
    std::uint64_t checks = 0;
    std::uint64_t passes = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        SimulationConfig cfg = base;
        cfg.seed = seed;
        SampleStats stats = simulate(cfg);
        for (const auto& c : oracle_comparisons(cfg.partition, cfg.crime_rate, stats)) {
            ++checks;
            passes += c.pass ? 1 : 0;
        }
    }
    CHECK(checks == 1200);
    CHECK(static_cast<double>(passes) >= 0.99 * static_cast<double>(checks));
}
