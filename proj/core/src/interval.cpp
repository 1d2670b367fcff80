#include "cvinfer/interval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cvinfer {

IntervalUnion IntervalUnion::full() { return of(-kInf, kInf); }

IntervalUnion IntervalUnion::of(double lo, double hi) {
  return from_intervals({Interval{lo, hi}});
}

IntervalUnion IntervalUnion::nonnegative() { return of(0.0, kInf); }

IntervalUnion IntervalUnion::from_intervals(std::vector<Interval> pieces,
                                            double merge_eps) {
  std::vector<Interval> kept;
  kept.reserve(pieces.size());
  for (const Interval& iv : pieces) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.lo > iv.hi) continue;
    kept.push_back(iv);
  }
  std::sort(kept.begin(), kept.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

  IntervalUnion out;
  for (const Interval& iv : kept) {
    if (!out.intervals_.empty() && iv.lo <= out.intervals_.back().hi + merge_eps) {
      out.intervals_.back().hi = std::max(out.intervals_.back().hi, iv.hi);
    } else {
      out.intervals_.push_back(iv);
    }
  }
  return out;
}

bool IntervalUnion::contains(double t, double tol) const {
  for (const Interval& iv : intervals_) {
    if (iv.contains(t, tol)) return true;
    if (t < iv.lo - tol) break;  // sorted, nothing further can match
  }
  return false;
}

double IntervalUnion::distance_to(double t) const {
  double best = kInf;
  for (const Interval& iv : intervals_) {
    if (iv.contains(t)) return 0.0;
    best = std::min(best, std::min(std::fabs(t - iv.lo), std::fabs(t - iv.hi)));
  }
  return best;
}

double IntervalUnion::min() const {
  return intervals_.empty() ? kInf : intervals_.front().lo;
}

double IntervalUnion::max() const {
  return intervals_.empty() ? -kInf : intervals_.back().hi;
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
  std::vector<Interval> pieces;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < intervals_.size() && j < other.intervals_.size()) {
    const Interval& a = intervals_[i];
    const Interval& b = other.intervals_[j];
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    if (lo <= hi) pieces.push_back(Interval{lo, hi});
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return from_intervals(std::move(pieces));
}

IntervalUnion IntervalUnion::drop_narrow(double min_width) const {
  std::vector<Interval> pieces;
  for (const Interval& iv : intervals_) {
    if (iv.width() >= min_width) pieces.push_back(iv);
  }
  return from_intervals(std::move(pieces));
}

std::string IntervalUnion::to_string() const {
  if (intervals_.empty()) return "{}";
  std::ostringstream os;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (i) os << " u ";
    os << "[" << intervals_[i].lo << ", " << intervals_[i].hi << "]";
  }
  return os.str();
}

}  // namespace cvinfer
