#pragma once

#include <cmath>
#include <compare>
#include <limits>

#include "evidentia/error.hpp"

namespace evidentia {

// Values within this distance outside [0,1] are clamped; anything further
// out is rejected. Absorbs parser rounding without masking real errors.
inline constexpr double kProbabilityClampTolerance = 1e-9;

// A degree of belief in [0,1].
class Probability {
public:
    explicit Probability(double value) : value_(value) {
        if (std::isnan(value_)) {
            throw Error("invalid-probability", "probability is NaN");
        }
        if (value_ < 0.0) {
            if (value_ < -kProbabilityClampTolerance) {
                throw Error("invalid-probability",
                            "value " + std::to_string(value_) + " below 0");
            }
            value_ = 0.0;
        } else if (value_ > 1.0) {
            if (value_ > 1.0 + kProbabilityClampTolerance) {
                throw Error("invalid-probability",
                            "value " + std::to_string(value_) + " above 1");
            }
            value_ = 1.0;
        }
    }

    double value() const noexcept { return value_; }

    friend auto operator<=>(Probability a, Probability b) noexcept = default;

private:
    double value_;
};

// For-to-against odds; ratio >= 0, +infinity represents certainty.
class Odds {
public:
    explicit Odds(double ratio) : ratio_(ratio) {
        if (std::isnan(ratio_) || ratio_ < 0.0) {
            throw Error("invalid-odds",
                        "odds ratio must be nonnegative, got " + std::to_string(ratio_));
        }
    }

    static Odds infinite() noexcept {
        Odds o;
        o.ratio_ = std::numeric_limits<double>::infinity();
        return o;
    }

    double ratio() const noexcept { return ratio_; }
    bool is_infinite() const noexcept { return std::isinf(ratio_); }

    friend auto operator<=>(Odds a, Odds b) noexcept = default;

private:
    Odds() : ratio_(0.0) {}
    double ratio_;
};

// p/(1-p); p = 1 maps to infinite odds.
inline Odds odds_from_probability(Probability p) {
    if (p.value() == 1.0) {
        return Odds::infinite();
    }
    return Odds(p.value() / (1.0 - p.value()));
}

// o/(1+o); infinite odds map to 1.
inline Probability probability_from_odds(Odds o) {
    if (o.is_infinite()) {
        return Probability(1.0);
    }
    return Probability(o.ratio() / (1.0 + o.ratio()));
}

} // namespace evidentia
