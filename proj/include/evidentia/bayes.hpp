#pragma once

#include "evidentia/likelihood_ratio.hpp"
#include "evidentia/probability.hpp"

namespace evidentia {

enum class RateMode {
    Exact,       // solve the total-probability identity
    Approximate, // use the base rate directly (valid when guilt is rare)
};

// The profile rate among those innocent of the crime type,
// P(profile | not guilty), recovered from P(profile), P(profile | guilty)
// and P(guilty) by the law of total probability:
//
//   exact:       (P(P) - P(P|G) * P(G)) / (1 - P(G))
//   approximate: P(P)
//
// Errors: "degenerate-conditioning" when P(G) = 1 in exact mode;
// "incoherent-inputs" when the implied rate falls outside [0,1], i.e. the
// three inputs jointly violate total probability.
Probability innocent_profile_rate(Probability p_profile,
                                  Probability p_profile_given_guilt,
                                  Probability p_guilt,
                                  RateMode mode);

// Upper bound on |exact - approximate| for coherent inputs:
// P(G) * |P(P|G) - P(P)| / (1 - P(G)). The gap attains this bound.
double innocent_profile_rate_error_bound(Probability p_profile,
                                         Probability p_profile_given_guilt,
                                         Probability p_guilt);

} // namespace evidentia
