#include "lyapsft/intervals.hpp"

#include <algorithm>
#include <cmath>

namespace lyapsft {

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
    std::erase_if(intervals, [](const Interval& iv) { return !(iv.lo < iv.hi); });
    std::sort(intervals.begin(), intervals.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi); });
    for (const auto& iv : intervals) {
        if (!parts_.empty() && iv.lo < parts_.back().hi) parts_.back().hi = std::max(parts_.back().hi, iv.hi);
        else parts_.push_back(iv);
    }
}

double IntervalSet::measure() const {
    double sum = 0.0;
    double carry = 0.0;
    for (const auto& iv : parts_) {
        const double x = iv.length();
        const double t = sum + x;
        carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return sum + carry;
}

bool IntervalSet::contains(double x, Closure side, double tol) const {
    for (const auto& iv : parts_) {
        if (side == Closure::open ? (iv.lo + tol < x && x < iv.hi - tol) : (iv.lo - tol <= x && x <= iv.hi + tol))
            return true;
    }
    return false;
}

bool IntervalSet::is_subset_of(const IntervalSet& other, double slack) const {
    for (const auto& iv : parts_) {
        const double lo = iv.lo + slack;
        const double hi = iv.hi - slack;
        if (!(lo < hi)) continue;
        const bool covered = std::any_of(other.parts_.begin(), other.parts_.end(),
                                         [&](const Interval& o) { return o.lo <= lo && hi <= o.hi; });
        if (!covered) return false;
    }
    return true;
}

IntervalSet IntervalSet::restrict(double lo, double hi) const {
    return set_intersection(*this, IntervalSet{{lo, hi}});
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> all = a.intervals();
    all.insert(all.end(), b.intervals().begin(), b.intervals().end());
    return IntervalSet(std::move(all));
}

IntervalSet set_intersection(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> out;
    std::size_t i = 0;
    std::size_t j = 0;
    const auto& x = a.intervals();
    const auto& y = b.intervals();
    while (i < x.size() && j < y.size()) {
        const double lo = std::max(x[i].lo, y[j].lo);
        const double hi = std::min(x[i].hi, y[j].hi);
        if (lo < hi) out.push_back({lo, hi});
        if (x[i].hi < y[j].hi) ++i;
        else ++j;
    }
    return IntervalSet(std::move(out));
}

IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> out;
    for (const auto& iv : a.intervals()) {
        double cursor = iv.lo;
        for (const auto& cut : b.intervals()) {
            if (cut.hi <= cursor) continue;
            if (cut.lo >= iv.hi) break;
            if (cut.lo > cursor) out.push_back({cursor, cut.lo});
            cursor = std::max(cursor, cut.hi);
            if (cursor >= iv.hi) break;
        }
        if (cursor < iv.hi) out.push_back({cursor, iv.hi});
    }
    return IntervalSet(std::move(out));
}

IntervalSet interval_algebra(const IntervalSet& a, const IntervalSet& b, SetOp op) {
    switch (op) {
    case SetOp::unite: return set_union(a, b);
    case SetOp::intersect: return set_intersection(a, b);
    case SetOp::subtract: return set_difference(a, b);
    }
    return {};
}

} // namespace lyapsft
