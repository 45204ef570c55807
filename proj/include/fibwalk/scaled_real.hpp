#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "fibwalk/errors.hpp"

namespace fibwalk {

/// Signed real stored as mantissa * 2^exponent with |mantissa| in [1, 2)
/// or exactly zero. Keeps long coefficient products representable far
/// beyond the double exponent range; ratios of two values with a bounded
/// exponent gap convert back to ordinary doubles exactly.
class ScaledReal {
public:
    ScaledReal() = default;

    static ScaledReal from(double v) {
        if (!std::isfinite(v)) throw error("ScaledReal: non-finite input");
        return normalized(v, 0);
    }

    double mantissa() const { return mant_; }
    std::int64_t exponent() const { return exp_; }
    bool is_zero() const { return mant_ == 0.0; }

    double to_double() const {
        if (mant_ == 0.0) return 0.0;
        if (exp_ > 1100)
            return mant_ > 0 ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
        if (exp_ < -1100) return mant_ > 0 ? 0.0 : -0.0;
        return std::ldexp(mant_, static_cast<int>(exp_));
    }

    ScaledReal operator-() const {
        ScaledReal r = *this;
        r.mant_ = -r.mant_;
        return r;
    }

    friend ScaledReal operator*(const ScaledReal& a, const ScaledReal& b) {
        if (a.is_zero() || b.is_zero()) return ScaledReal{};
        return normalized(a.mant_ * b.mant_, a.exp_ + b.exp_);
    }

    friend ScaledReal operator+(const ScaledReal& a, const ScaledReal& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const ScaledReal& hi = (a.exp_ >= b.exp_) ? a : b;
        const ScaledReal& lo = (a.exp_ >= b.exp_) ? b : a;
        const std::int64_t d = hi.exp_ - lo.exp_;
        if (d > 64) return hi;
        return normalized(hi.mant_ + std::ldexp(lo.mant_, -static_cast<int>(d)),
                          hi.exp_);
    }

    friend ScaledReal operator-(const ScaledReal& a, const ScaledReal& b) {
        return a + (-b);
    }

    /// a / b as an ordinary double; overflows/underflows saturate through
    /// ldexp semantics.
    static double ratio(const ScaledReal& a, const ScaledReal& b) {
        if (b.is_zero()) throw error("ScaledReal::ratio: division by zero");
        if (a.is_zero()) return 0.0;
        std::int64_t d = a.exp_ - b.exp_;
        if (d > 1100) d = 1100;
        if (d < -1100) d = -1100;
        return std::ldexp(a.mant_ / b.mant_, static_cast<int>(d));
    }

private:
    static ScaledReal normalized(double m, std::int64_t e) {
        ScaledReal r;
        if (m == 0.0) return r;
        int k = 0;
        const double frac = std::frexp(m, &k);  // |frac| in [0.5, 1)
        r.mant_ = frac * 2.0;
        r.exp_ = e + k - 1;
        return r;
    }

    double mant_ = 0.0;
    std::int64_t exp_ = 0;
};

}  // namespace fibwalk
