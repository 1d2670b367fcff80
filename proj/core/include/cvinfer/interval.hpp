#ifndef CVINFER_INTERVAL_HPP_
#define CVINFER_INTERVAL_HPP_

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace cvinfer {

/// Closed interval over the extended reals, lo <= hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double t, double tol = 0.0) const {
    return t >= lo - tol && t <= hi + tol;
  }
};

/// Union of disjoint closed intervals, sorted by left endpoint.
///
/// Intervals whose endpoints come within kIntervalMergeEps of each other are
/// merged on construction; repeated roots of tied quadratics otherwise leave
/// hairline gaps.
class IntervalUnion {
 public:
  static constexpr double kMergeEps = 1e-10;

  IntervalUnion() = default;  // empty set

  static IntervalUnion empty_set() { return IntervalUnion(); }
  static IntervalUnion full();
  static IntervalUnion of(double lo, double hi);
  static IntervalUnion nonnegative();
  /// Normalizes: drops invalid/NaN pieces, sorts, merges near-touching ones.
  static IntervalUnion from_intervals(std::vector<Interval> pieces,
                                      double merge_eps = kMergeEps);

  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }
  const std::vector<Interval>& intervals() const { return intervals_; }

  bool contains(double t, double tol = 0.0) const;
  /// Distance from t to the nearest point of the set; +inf for the empty set.
  double distance_to(double t) const;
  /// Leftmost point of the set; +inf for the empty set.
  double min() const;
  /// Rightmost point of the set; -inf for the empty set.
  double max() const;

  IntervalUnion intersect(const IntervalUnion& other) const;
  /// Removes intervals of width below min_width (keeps unbounded ones).
  IntervalUnion drop_narrow(double min_width) const;

  std::string to_string() const;

 private:
  std::vector<Interval> intervals_;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace cvinfer

#endif  // CVINFER_INTERVAL_HPP_
