#pragma once

#include "reebsweep/geometry.h"

#include <limits>
#include <string>

namespace reebsweep {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One end of a cell.  Infinite ends are always exclusive.
struct CellBound {
    double value = 0.0;
    bool inclusive = false;

    static CellBound open(double v) { return {v, false}; }
    static CellBound closed(double v) { return {v, true}; }
    bool finite() const { return value != kInf && value != -kInf; }

    friend bool operator==(const CellBound&, const CellBound&) = default;
};

/// A nonempty interval of the real line with independently open/closed ends.
struct CellRange {
    CellBound lo{-kInf, false};
    CellBound hi{kInf, false};

    bool contains(double x) const {
        return (x > lo.value || (x == lo.value && lo.inclusive)) &&
               (x < hi.value || (x == hi.value && hi.inclusive));
    }
    bool intersects(const LabeledInterval& i) const {
        return (lo.value < i.hi || (lo.value == i.hi && lo.inclusive)) &&
               (hi.value > i.lo || (hi.value == i.lo && hi.inclusive));
    }
    bool inside(const LabeledInterval& i) const { return lo.value >= i.lo && hi.value <= i.hi; }
    /// Every point of the range is smaller than every point of i.
    bool entirely_left_of(const LabeledInterval& i) const {
        return hi.value < i.lo || (hi.value == i.lo && !hi.inclusive);
    }
    /// A few levels inside the range: closed finite ends plus an interior point.
    std::vector<double> sample_levels() const;
    std::string to_string() const;

    friend bool operator==(const CellRange&, const CellRange&) = default;
};

/// Shortest round-trip decimal form of v.
std::string format_number(double v);

}  // namespace reebsweep
