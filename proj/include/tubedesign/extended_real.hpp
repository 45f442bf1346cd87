#pragma once

#include <cmath>
#include <string>

namespace tubedesign {

// A point of the projective real line: either a finite real or the single
// point at infinity.  The infinity point is a tagged value, never a float
// inf, so that basis evaluation and group maps can branch on it exactly.
class ExtendedReal {
public:
    ExtendedReal() : value_(0.0), infinite_(false) {}
    ExtendedReal(double x) : value_(x), infinite_(false) {}

    static ExtendedReal infinity() {
        ExtendedReal r;
        r.infinite_ = true;
        return r;
    }

    bool isInfinite() const { return infinite_; }
    bool isFinite() const { return !infinite_; }

    // Finite value; meaningless when infinite (callers must branch first).
    double value() const { return value_; }

    bool operator==(const ExtendedReal &o) const {
        if (infinite_ || o.infinite_) return infinite_ == o.infinite_;
        return value_ == o.value_;
    }
    bool operator!=(const ExtendedReal &o) const { return !(*this == o); }

    std::string str() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    double value_;
    bool infinite_;
};

} // namespace tubedesign
