#pragma once

#include <string>

#include "evidentia/probability.hpp"

namespace evidentia {

// Evidential strength of an item of evidence: a point ratio, an interval of
// possible ratios (context unknown), or undefined with a reason code.
// +infinity as a point value represents infallible evidence.
class LikelihoodRatio {
public:
    enum class Kind { Point, Interval, Undefined };

    static LikelihoodRatio point(double value);
    static LikelihoodRatio interval(double lo, double hi);
    static LikelihoodRatio undefined(std::string reason);

    Kind kind() const noexcept { return kind_; }
    bool is_point() const noexcept { return kind_ == Kind::Point; }
    bool is_interval() const noexcept { return kind_ == Kind::Interval; }
    bool is_undefined() const noexcept { return kind_ == Kind::Undefined; }

    // An interval that collapsed to a single value. Still reported as
    // non-point; this flag only drives the "effectively point" display.
    bool is_degenerate_interval() const noexcept {
        return kind_ == Kind::Interval && lo_ == hi_;
    }

    // Point LR of +infinity, the representation of infallible evidence.
    bool is_certainty() const noexcept {
        return kind_ == Kind::Point && std::isinf(lo_);
    }

    double value() const;            // Point only
    double lo() const;               // Point or Interval
    double hi() const;               // Point or Interval
    const std::string& reason() const; // Undefined only

private:
    LikelihoodRatio(Kind kind, double lo, double hi, std::string reason)
        : kind_(kind), lo_(lo), hi_(hi), reason_(std::move(reason)) {}

    Kind kind_;
    double lo_;
    double hi_;
    std::string reason_;
};

// num/den. A zero denominator makes the ratio undefined: "zero-denominator"
// when the numerator is positive, "vacuous" when both are zero.
LikelihoodRatio likelihood_ratio(Probability num, Probability den);

// Posterior odds after an update: a point, an interval of odds (from an
// interval LR), or undefined when the LR was undefined.
class Posterior {
public:
    enum class Kind { Point, Interval, Undefined };

    static Posterior point(Odds o);
    static Posterior interval(Odds lo, Odds hi);
    static Posterior undefined(std::string reason);

    Kind kind() const noexcept { return kind_; }
    bool is_point() const noexcept { return kind_ == Kind::Point; }
    bool is_interval() const noexcept { return kind_ == Kind::Interval; }
    bool is_undefined() const noexcept { return kind_ == Kind::Undefined; }

    Odds odds() const;               // Point only
    Odds lo() const;                 // Point or Interval
    Odds hi() const;                 // Point or Interval
    const std::string& reason() const;

    bool operator==(const Posterior&) const = default;

private:
    Posterior(Kind kind, double lo, double hi, std::string reason)
        : kind_(kind), lo_(lo), hi_(hi), reason_(std::move(reason)) {}

    Kind kind_;
    double lo_;
    double hi_;
    std::string reason_;
};

// Odds-form update: posterior = prior * LR. Interval LRs multiply endpoint
// by endpoint; undefined LRs propagate, never collapse to a point.
// prior 0 with infinite LR (and the mirror case) is "contradictory-certainty".
Posterior bayes_update(Odds prior, const LikelihoodRatio& lr);

} // namespace evidentia
