#pragma once

#include <initializer_list>
#include <vector>

namespace lyapsft {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Closure { open, closed };

/// Finite union of pairwise disjoint open intervals, sorted.
///
/// Overlapping intervals are merged; intervals that only touch stay separate,
/// since the shared endpoint belongs to neither. Measures ignore endpoints.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<Interval> intervals);
    IntervalSet(std::initializer_list<Interval> intervals) : IntervalSet(std::vector<Interval>(intervals)) {}

    const std::vector<Interval>& intervals() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }

    /// Sum of lengths (compensated summation).
    double measure() const;

    /// Open: x lies at distance > tol inside some interval. Closed: x within tol of the closure.
    bool contains(double x, Closure side = Closure::open, double tol = 0.0) const;

    /// Every interval of *this, shrunk by `slack` at both ends, lies inside a single interval of `other`.
    bool is_subset_of(const IntervalSet& other, double slack = 0.0) const;

    IntervalSet restrict(double lo, double hi) const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    std::vector<Interval> parts_;
};

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_intersection(const IntervalSet& a, const IntervalSet& b);
/// a minus b, with the null boundary points of b dropped.
IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b);

enum class SetOp { unite, intersect, subtract };
IntervalSet interval_algebra(const IntervalSet& a, const IntervalSet& b, SetOp op);

} // namespace lyapsft
