#include <doctest.h>

#include <cmath>

#include "evidentia/bayes.hpp"
#include "support/generators.hpp"

using namespace evidentia;

TEST_CASE("probability constructor validates and clamps") {
    CHECK(Probability(0.5).value() == 0.5);
    CHECK(Probability(0.0).value() == 0.0);
    CHECK(Probability(1.0).value() == 1.0);
    CHECK(Probability(-1e-12).value() == 0.0);
    CHECK(Probability(1.0 + 1e-12).value() == 1.0);
    CHECK_THROWS_AS(Probability(-0.1), Error);
    CHECK_THROWS_AS(Probability(1.1), Error);
    CHECK_THROWS_AS(Probability(std::nan("")), Error);
}

TEST_CASE("odds constructor validates") {
    CHECK(Odds(0.0).ratio() == 0.0);
    CHECK(Odds::infinite().is_infinite());
    CHECK_THROWS_AS(Odds(-1.0), Error);
}

TEST_CASE("odds from probability") {
    CHECK(odds_from_probability(Probability(0.5)).ratio() == 1.0);
    CHECK(odds_from_probability(Probability(0.9375)).ratio() == doctest::Approx(15.0).epsilon(1e-12));
    CHECK(odds_from_probability(Probability(0.0)).ratio() == 0.0);
    CHECK(odds_from_probability(Probability(1.0)).is_infinite());
}

TEST_CASE("probability from odds") {
    CHECK(probability_from_odds(Odds(15.0)).value() == 0.9375);
    CHECK(probability_from_odds(Odds(80.0)).value() ==
          doctest::Approx(80.0 / 81.0).epsilon(1e-14));
    CHECK(probability_from_odds(Odds(1.0)).value() == 0.5);
    CHECK(probability_from_odds(Odds::infinite()).value() == 1.0);
}

TEST_CASE("odds/probability roundtrip property") {
    testgen::Rng rng(101);
    for (int i = 0; i < 10000; ++i) {
        double p = rng.uniform(0.0, 1.0 - 1e-9);
        double back = probability_from_odds(odds_from_probability(Probability(p))).value();
        REQUIRE(std::abs(back - p) <= 1e-12);
    }
}

TEST_CASE("likelihood ratio from probabilities") {
    LikelihoodRatio burglary = likelihood_ratio(Probability(0.80), Probability(0.01));
    REQUIRE(burglary.is_point());
    CHECK(burglary.value() == 80.0); // IEEE-exact

    LikelihoodRatio vue = likelihood_ratio(Probability(0.95), Probability(0.06));
    REQUIRE(vue.is_point());
    CHECK(vue.value() == doctest::Approx(95.0 / 6.0).epsilon(1e-15));

    LikelihoodRatio flat = likelihood_ratio(Probability(0.3), Probability(0.3));
    CHECK(flat.value() == 1.0);

    CHECK(likelihood_ratio(Probability(0.5), Probability(0.0)).reason() == "zero-denominator");
    CHECK(likelihood_ratio(Probability(0.0), Probability(0.0)).reason() == "vacuous");
}

TEST_CASE("identical conditionals are non-probative") {
    testgen::Rng rng(102);
    for (int i = 0; i < 1000; ++i) {
        double x = rng.uniform(1e-6, 1.0);
        CHECK(likelihood_ratio(Probability(x), Probability(x)).value() == 1.0);
    }
}

TEST_CASE("likelihood ratio invariants") {
    CHECK_THROWS_AS(LikelihoodRatio::point(-1.0), Error);
    CHECK_THROWS_AS(LikelihoodRatio::interval(2.0, 1.0), Error);
    CHECK_THROWS_AS(LikelihoodRatio::interval(-1.0, 1.0), Error);
    CHECK_THROWS_AS(LikelihoodRatio::undefined(""), Error);
    CHECK(LikelihoodRatio::interval(3.0, 3.0).is_degenerate_interval());
    CHECK(LikelihoodRatio::point(std::numeric_limits<double>::infinity()).is_certainty());
}

TEST_CASE("bayes update on points") {
    Posterior p15 = bayes_update(Odds(1.0), LikelihoodRatio::point(15.0));
    REQUIRE(p15.is_point());
    CHECK(p15.odds().ratio() == 15.0);

    Posterior p80 = bayes_update(Odds(1.0), LikelihoodRatio::point(80.0));
    CHECK(p80.odds().ratio() == 80.0);

    Posterior flat = bayes_update(Odds(2.0), LikelihoodRatio::point(1.0));
    CHECK(flat.odds().ratio() == 2.0);
}

TEST_CASE("bayes update propagates intervals and undefined") {
    Posterior interval = bayes_update(Odds(2.0), LikelihoodRatio::interval(3.0, 5.0));
    REQUIRE(interval.is_interval());
    CHECK(interval.lo().ratio() == 6.0);
    CHECK(interval.hi().ratio() == 10.0);

    Posterior undef = bayes_update(Odds(2.0), LikelihoodRatio::undefined("zero-denominator"));
    REQUIRE(undef.is_undefined());
    CHECK(undef.reason() == "zero-denominator");
}

TEST_CASE("bayes update with certainty") {
    Posterior certain =
        bayes_update(Odds(1.0), LikelihoodRatio::point(std::numeric_limits<double>::infinity()));
    REQUIRE(certain.is_point());
    CHECK(certain.odds().is_infinite());
    CHECK(probability_from_odds(certain.odds()).value() == 1.0);

    Posterior clash =
        bayes_update(Odds(0.0), LikelihoodRatio::point(std::numeric_limits<double>::infinity()));
    REQUIRE(clash.is_undefined());
    CHECK(clash.reason() == "contradictory-certainty");
}

TEST_CASE("bayes consistency property") {
    testgen::Rng rng(103);
    for (int i = 0; i < 10000; ++i) {
        double p = rng.uniform(1e-6, 1.0 - 1e-6);
        double lr = rng.uniform(1e-3, 1e3);
        Posterior post = bayes_update(odds_from_probability(Probability(p)),
                                      LikelihoodRatio::point(lr));
        double via_odds = probability_from_odds(post.odds()).value();
        double direct = p * lr / (p * lr + (1.0 - p));
        REQUIRE(std::abs(via_odds - direct) <= 1e-12);
    }
}

TEST_CASE("bayes update monotonicity property") {
    testgen::Rng rng(104);
    for (int i = 0; i < 2000; ++i) {
        double prior = rng.uniform(1e-3, 1e3);
        double lr1 = rng.uniform(1e-3, 1e3);
        double lr2 = lr1 * rng.uniform(1.001, 4.0);
        CHECK(bayes_update(Odds(prior), LikelihoodRatio::point(lr2)).odds().ratio() >
              bayes_update(Odds(prior), LikelihoodRatio::point(lr1)).odds().ratio());

        double prior2 = prior * rng.uniform(1.001, 4.0);
        CHECK(bayes_update(Odds(prior2), LikelihoodRatio::point(lr1)).odds().ratio() >
              bayes_update(Odds(prior), LikelihoodRatio::point(lr1)).odds().ratio());
    }
}

TEST_CASE("innocent profile rate, exact and approximate") {
    // Total-probability identity evaluated by direct arithmetic.
    double expected = (0.01 - 0.8 * 0.001) / (1.0 - 0.001);
    CHECK(expected == doctest::Approx(0.0092092092).epsilon(1e-8));

    Probability exact = innocent_profile_rate(Probability(0.01), Probability(0.8),
                                              Probability(0.001), RateMode::Exact);
    CHECK(exact.value() == doctest::Approx(expected).epsilon(1e-15));

    Probability approx = innocent_profile_rate(Probability(0.01), Probability(0.8),
                                               Probability(0.001), RateMode::Approximate);
    CHECK(approx.value() == 0.01);

    // A profile independent of guilt leaves the rate unchanged.
    Probability indep = innocent_profile_rate(Probability(0.06), Probability(0.06),
                                              Probability(0.5), RateMode::Exact);
    CHECK(indep.value() == 0.06);
}

TEST_CASE("innocent profile rate error cases") {
    CHECK_THROWS_WITH_AS(innocent_profile_rate(Probability(0.5), Probability(0.5),
                                               Probability(1.0), RateMode::Exact),
                         doctest::Contains("degenerate-conditioning"), Error);
    // P(P) < P(P|G) P(G): negative implied numerator.
    CHECK_THROWS_WITH_AS(innocent_profile_rate(Probability(0.01), Probability(0.9),
                                               Probability(0.5), RateMode::Exact),
                         doctest::Contains("incoherent-inputs"), Error);
    // Implied rate above one.
    CHECK_THROWS_WITH_AS(innocent_profile_rate(Probability(0.9), Probability(0.1),
                                               Probability(0.5), RateMode::Exact),
                         doctest::Contains("incoherent-inputs"), Error);
}

TEST_CASE("approximation error meets its bound on coherent inputs") {
    testgen::Rng rng(105);
    for (int i = 0; i < 10000; ++i) {
        double pg = rng.uniform(1e-6, 0.9);
        double ppg = rng.uniform(0.0, 1.0);
        double rate = rng.uniform(0.0, 1.0);
        double pp = ppg * pg + rate * (1.0 - pg); // coherent by construction
        double exact = innocent_profile_rate(Probability(pp), Probability(ppg),
                                             Probability(pg), RateMode::Exact)
                           .value();
        double approx = pp;
        double bound = innocent_profile_rate_error_bound(Probability(pp), Probability(ppg),
                                                         Probability(pg));
        // The gap equals the bound analytically; 1e-15 absorbs the rounding
        // of the two expressions.
        REQUIRE(std::abs(exact - approx) <= bound + 1e-15);
    }
}
