#pragma once

#include <cmath>
#include <limits>

#include "errors.hpp"

namespace rangewalk {

// Nonnegative real carried in log-space. Zero is log = -inf. All probability
// mass inside the library flows through this type; linear values only appear
// at API edges.
class LogReal {
public:
    constexpr LogReal() : lg_(-std::numeric_limits<double>::infinity()) {}

    static LogReal from_log(double lg) {
        LogReal v;
        v.lg_ = lg;
        return v;
    }

    static LogReal from_linear(double x) {
        if (std::isnan(x) || x < 0.0)
            throw invalid_argument("LogReal::from_linear: value must be nonnegative");
        return from_log(std::log(x));
    }

    static constexpr LogReal zero() { return LogReal(); }
    static LogReal one() { return from_log(0.0); }

    double log() const { return lg_; }
    double linear() const { return std::exp(lg_); }
    bool is_zero() const { return std::isinf(lg_) && lg_ < 0.0; }

    LogReal& operator*=(LogReal o) {
        if (is_zero() || o.is_zero())
            lg_ = -std::numeric_limits<double>::infinity();
        else
            lg_ += o.lg_;
        return *this;
    }
    LogReal& operator/=(LogReal o) {
        if (o.is_zero())
            throw domain_error("LogReal: division by zero");
        if (!is_zero())
            lg_ -= o.lg_;
        return *this;
    }
    // log-sum-exp
    LogReal& operator+=(LogReal o) {
        if (o.is_zero()) return *this;
        if (is_zero()) { lg_ = o.lg_; return *this; }
        double hi = lg_ > o.lg_ ? lg_ : o.lg_;
        double lo = lg_ > o.lg_ ? o.lg_ : lg_;
        lg_ = hi + std::log1p(std::exp(lo - hi));
        return *this;
    }

    friend LogReal operator*(LogReal a, LogReal b) { return a *= b; }
    friend LogReal operator/(LogReal a, LogReal b) { return a /= b; }
    friend LogReal operator+(LogReal a, LogReal b) { return a += b; }

    friend bool operator==(LogReal a, LogReal b) { return a.lg_ == b.lg_; }
    friend bool operator<(LogReal a, LogReal b) { return a.lg_ < b.lg_; }
    friend bool operator>(LogReal a, LogReal b) { return a.lg_ > b.lg_; }
    friend bool operator<=(LogReal a, LogReal b) { return a.lg_ <= b.lg_; }
    friend bool operator>=(LogReal a, LogReal b) { return a.lg_ >= b.lg_; }

private:
    double lg_;
};

// Relative difference in linear scale, safe for log-space inputs.
inline double relative_difference(LogReal a, LogReal b) {
    if (a.is_zero() && b.is_zero()) return 0.0;
    if (a.is_zero() || b.is_zero()) return std::numeric_limits<double>::infinity();
    // |a-b| / max(a,b) = 1 - exp(-|log a - log b|)
    return -std::expm1(-std::fabs(a.log() - b.log()));
}

} // namespace rangewalk
