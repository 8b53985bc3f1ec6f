#include "evidentia/bayes.hpp"

#include <cmath>

namespace evidentia {

Probability innocent_profile_rate(Probability p_profile,
                                  Probability p_profile_given_guilt,
                                  Probability p_guilt,
                                  RateMode mode) {
    if (mode == RateMode::Approximate) {
        return p_profile;
    }
    if (p_guilt.value() == 1.0) {
        throw Error("degenerate-conditioning",
                    "P(guilt) = 1 leaves no innocent subpopulation to condition on");
    }
    double numerator = p_profile.value() - p_profile_given_guilt.value() * p_guilt.value();
    if (numerator < 0.0) {
        throw Error("incoherent-inputs",
                    "P(profile) < P(profile|guilt) * P(guilt) violates total probability");
    }
    double rate = numerator / (1.0 - p_guilt.value());
    if (rate > 1.0 + kProbabilityClampTolerance) {
        throw Error("incoherent-inputs",
                    "implied innocent profile rate " + std::to_string(rate) +
                        " exceeds 1; the inputs jointly violate total probability");
    }
    return Probability(std::min(rate, 1.0));
}

double innocent_profile_rate_error_bound(Probability p_profile,
                                         Probability p_profile_given_guilt,
                                         Probability p_guilt) {
    if (p_guilt.value() == 1.0) {
        throw Error("degenerate-conditioning",
                    "P(guilt) = 1 leaves no innocent subpopulation to condition on");
    }
    return p_guilt.value() * std::abs(p_profile_given_guilt.value() - p_profile.value()) /
           (1.0 - p_guilt.value());
}

} // namespace evidentia
