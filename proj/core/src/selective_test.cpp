#include "cvinfer/selective_test.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cvinfer/distributions.hpp"
#include "cvinfer/errors.hpp"

namespace cvinfer {

double truncated_chi_survival(double t, int df,
                              const IntervalUnion& truncation) {
  if (!(t >= 0.0)) {
    throw ContractViolation("truncated_chi_survival: T must be >= 0");
  }
  if (df < 1) {
    throw ContractViolation("truncated_chi_survival: df must be >= 1");
  }
  const IntervalUnion m = truncation.intersect(IntervalUnion::nonnegative());
  if (m.empty()) {
    throw ContractViolation(
        "truncated_chi_survival: truncation set is empty within [0, inf)");
  }
  if (m.distance_to(t) > kStatInTruncationTol) {
    throw ContractViolation(
        "truncated_chi_survival: T lies outside the truncation set");
  }

  const double dff = static_cast<double>(df);
  const double log_den = chi_log_union_prob(dff, m);
  const double log_num =
      chi_log_union_prob(dff, m.intersect(IntervalUnion::of(t, kInf)));

  if (std::isinf(log_den)) {
    // Even log-space survival underflowed: both masses live absurdly far
    // out. The ratio of Mills-type tail asymptotics still makes sense and
    // is dominated by the left endpoints.
    const double lo = std::max(m.min(), 1e-300);
    if (t <= lo) return 1.0;
    const double log_ratio =
        -0.5 * (t - lo) * (t + lo) + (dff - 2.0) * (std::log(t) - std::log(lo));
    return std::clamp(std::exp(log_ratio), 0.0, 1.0);
  }
  return std::clamp(std::exp(log_num - log_den), 0.0, 1.0);
}

double estimate_sigma(const Matrix& x, const Vector& y, SigmaMethod method) {
  if (method != SigmaMethod::kFullModelResidual) {
    throw ContractViolation("estimate_sigma: unknown method");
  }
  const auto n = x.rows();
  if (y.size() != n) throw ContractViolation("estimate_sigma: length mismatch");
  if (n <= x.cols()) {
    throw InsufficientDof(
        "estimate_sigma: need more rows than columns for the full-model "
        "residual estimate; supply sigma explicitly");
  }
  const int rank = numeric_rank(x);
  if (n <= rank) {
    throw InsufficientDof(
        "estimate_sigma: no residual degrees of freedom; supply sigma "
        "explicitly");
  }
  const Vector resid = y - column_space_projector(x) * y;
  return resid.norm() / std::sqrt(static_cast<double>(n - rank));
}

SelectiveTestResult selective_test(const Matrix& x, const Vector& y,
                                   const CvSelection& sel, int j,
                                   std::optional<double> sigma) {
  const auto n = x.rows();
  if (y.size() != n) throw ContractViolation("selective_test: length mismatch");
  const std::vector<int>& active = sel.active_set;
  if (std::find(active.begin(), active.end(), j) == active.end()) {
    throw ContractViolation("selective_test: variable " + std::to_string(j) +
                            " is not in the active set");
  }

  SelectiveTestResult res;
  res.variable = j;
  res.df = 1;
  if (sigma.has_value()) {
    if (!(*sigma > 0.0)) {
      throw ContractViolation("selective_test: sigma must be positive");
    }
    res.sigma = *sigma;
    res.sigma_source = SigmaSource::kKnown;
  } else {
    res.sigma = estimate_sigma(x, y);
    res.sigma_source = SigmaSource::kPlugin;
    if (!(res.sigma > 0.0)) {
      throw NumericalFailure(
          "selective_test: plug-in sigma estimate is zero (response lies in "
          "the column span); supply sigma explicitly");
    }
  }

  std::vector<int> reduced;
  reduced.reserve(active.size() - 1);
  for (int v : active) {
    if (v != j) reduced.push_back(v);
  }
  const Matrix p_full = column_space_projector(select_columns(x, active));
  const Matrix p_reduced =
      reduced.empty() ? Matrix::Zero(n, n).eval()
                      : column_space_projector(select_columns(x, reduced));
  const Matrix d = p_full - p_reduced;

  const Vector dy = d * y;
  const double norm_dy = dy.norm();
  if (norm_dy <= 1e-12 * std::max(1.0, y.norm())) {
    throw NumericalFailure(
        "selective_test: response is orthogonal to the test direction");
  }
  // D should be a rank-1 projector; a vanishing trace means dropping j did
  // not change the span at all.
  if (std::fabs(d.trace() - 1.0) > 1e-6) {
    throw NumericalFailure(
        "selective_test: projector difference is not rank one (collinear "
        "active set)");
  }

  const Vector u = dy / norm_dy;
  const Vector z0 = y - dy;
  res.statistic = norm_dy / res.sigma;

  // Along y(t) = z0 + t*(sigma*u) the statistic equals t, so the sliced
  // event is already on the statistic's own scale.
  IntervalUnion m = sel.event.slice(z0, res.sigma * u)
                        .intersect(IntervalUnion::nonnegative())
                        .drop_narrow(kNarrowTruncationTol);
  if (m.empty()) {
    throw InconsistentEvent(
        "selective_test: truncation set is empty after clipping to [0, inf)");
  }
  if (m.distance_to(res.statistic) > kStatInTruncationTol) {
    throw InconsistentEvent(
        "selective_test: observed statistic lies outside its truncation set");
  }
  res.truncation = m;
  res.p_value = truncated_chi_survival(res.statistic, res.df, m);
  return res;
}

}  // namespace cvinfer
