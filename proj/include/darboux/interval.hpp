#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace darboux {

// Open interval (left, right); either endpoint may be infinite.
struct Interval {
    double left = -std::numeric_limits<double>::infinity();
    double right = std::numeric_limits<double>::infinity();

    Interval() = default;
    Interval(double l, double r) : left(l), right(r) {
        if (!(l < r)) throw std::invalid_argument("Interval: need left < right");
    }

    static Interval real_line() { return {}; }
    static Interval positive_half_line() { return {0.0, std::numeric_limits<double>::infinity()}; }

    bool contains(double x) const { return x > left && x < right; }
    bool left_finite() const { return std::isfinite(left); }
    bool right_finite() const { return std::isfinite(right); }

    // A representative interior point (0 on the whole line, midpoint when
    // finite, unit offset from a single finite endpoint).
    double reference_point() const {
        if (left_finite() && right_finite()) return 0.5 * (left + right);
        if (left_finite()) return left + 1.0;
        if (right_finite()) return right - 1.0;
        return 0.0;
    }

    bool operator==(const Interval&) const = default;
};

}  // namespace darboux
