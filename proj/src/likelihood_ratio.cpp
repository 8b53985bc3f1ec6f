#include "evidentia/likelihood_ratio.hpp"

namespace evidentia {

LikelihoodRatio LikelihoodRatio::point(double value) {
    if (std::isnan(value) || value < 0.0) {
        throw Error("invalid-likelihood-ratio",
                    "point LR must be nonnegative, got " + std::to_string(value));
    }
    return LikelihoodRatio(Kind::Point, value, value, {});
}

LikelihoodRatio LikelihoodRatio::interval(double lo, double hi) {
    if (std::isnan(lo) || std::isnan(hi) || lo < 0.0 || lo > hi) {
        throw Error("invalid-likelihood-ratio",
                    "interval LR requires 0 <= lo <= hi, got [" + std::to_string(lo) +
                        ", " + std::to_string(hi) + "]");
    }
    return LikelihoodRatio(Kind::Interval, lo, hi, {});
}

LikelihoodRatio LikelihoodRatio::undefined(std::string reason) {
    if (reason.empty()) {
        throw Error("invalid-likelihood-ratio", "undefined LR requires a reason code");
    }
    return LikelihoodRatio(Kind::Undefined, 0.0, 0.0, std::move(reason));
}

double LikelihoodRatio::value() const {
    if (kind_ != Kind::Point) {
        throw Error("wrong-kind", "value() called on a non-point likelihood ratio");
    }
    return lo_;
}

double LikelihoodRatio::lo() const {
    if (kind_ == Kind::Undefined) {
        throw Error("wrong-kind", "lo() called on an undefined likelihood ratio");
    }
    return lo_;
}

double LikelihoodRatio::hi() const {
    if (kind_ == Kind::Undefined) {
        throw Error("wrong-kind", "hi() called on an undefined likelihood ratio");
    }
    return hi_;
}

const std::string& LikelihoodRatio::reason() const {
    if (kind_ != Kind::Undefined) {
        throw Error("wrong-kind", "reason() called on a defined likelihood ratio");
    }
    return reason_;
}

LikelihoodRatio likelihood_ratio(Probability num, Probability den) {
    if (den.value() == 0.0) {
        return num.value() > 0.0 ? LikelihoodRatio::undefined("zero-denominator")
                                 : LikelihoodRatio::undefined("vacuous");
    }
    return LikelihoodRatio::point(num.value() / den.value());
}

Posterior Posterior::point(Odds o) {
    return Posterior(Kind::Point, o.ratio(), o.ratio(), {});
}

Posterior Posterior::interval(Odds lo, Odds hi) {
    if (lo.ratio() > hi.ratio()) {
        throw Error("invalid-posterior", "interval endpoints out of order");
    }
    return Posterior(Kind::Interval, lo.ratio(), hi.ratio(), {});
}

Posterior Posterior::undefined(std::string reason) {
    if (reason.empty()) {
        throw Error("invalid-posterior", "undefined posterior requires a reason code");
    }
    return Posterior(Kind::Undefined, 0.0, 0.0, std::move(reason));
}

Odds Posterior::odds() const {
    if (kind_ != Kind::Point) {
        throw Error("wrong-kind", "odds() called on a non-point posterior");
    }
    return std::isinf(lo_) ? Odds::infinite() : Odds(lo_);
}

Odds Posterior::lo() const {
    if (kind_ == Kind::Undefined) {
        throw Error("wrong-kind", "lo() called on an undefined posterior");
    }
    return std::isinf(lo_) ? Odds::infinite() : Odds(lo_);
}

Odds Posterior::hi() const {
    if (kind_ == Kind::Undefined) {
        throw Error("wrong-kind", "hi() called on an undefined posterior");
    }
    return std::isinf(hi_) ? Odds::infinite() : Odds(hi_);
}

const std::string& Posterior::reason() const {
    if (kind_ != Kind::Undefined) {
        throw Error("wrong-kind", "reason() called on a defined posterior");
    }
    return reason_;
}

namespace {

// 0 * inf has no sensible odds reading: certainty of the evidence against an
// impossible prior (or the reverse).
bool contradictory(double odds, double lr) {
    return (odds == 0.0 && std::isinf(lr)) || (std::isinf(odds) && lr == 0.0);
}

} // namespace

Posterior bayes_update(Odds prior, const LikelihoodRatio& lr) {
    switch (lr.kind()) {
    case LikelihoodRatio::Kind::Undefined:
        return Posterior::undefined(lr.reason());
    case LikelihoodRatio::Kind::Point: {
        if (contradictory(prior.ratio(), lr.value())) {
            return Posterior::undefined("contradictory-certainty");
        }
        double r = prior.ratio() * lr.value();
        return Posterior::point(std::isinf(r) ? Odds::infinite() : Odds(r));
    }
    case LikelihoodRatio::Kind::Interval: {
        if (contradictory(prior.ratio(), lr.lo()) || contradictory(prior.ratio(), lr.hi())) {
            return Posterior::undefined("contradictory-certainty");
        }
        double lo = prior.ratio() * lr.lo();
        double hi = prior.ratio() * lr.hi();
        return Posterior::interval(std::isinf(lo) ? Odds::infinite() : Odds(lo),
                                   std::isinf(hi) ? Odds::infinite() : Odds(hi));
    }
    }
    throw Error("wrong-kind", "unreachable likelihood ratio kind");
}

} // namespace evidentia
