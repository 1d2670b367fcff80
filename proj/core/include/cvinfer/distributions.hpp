#ifndef CVINFER_DISTRIBUTIONS_HPP_
#define CVINFER_DISTRIBUTIONS_HPP_

#include "cvinfer/interval.hpp"

namespace cvinfer {

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile (inverse CDF), accurate to full double
/// precision over (0, 1). Throws ContractViolation outside the open
/// interval.
double normal_quantile(double p);

/// log of the regularized upper incomplete gamma Q(a, x) = Γ(a,x)/Γ(a),
/// a > 0, x >= 0. Series expansion below a+1, continued fraction above,
/// both carried in log space so far tails stay finite.
double log_gamma_q(double a, double x);

/// log P(chi_df >= t); 0 for t <= 0.
double chi_log_survival(double df, double t);

/// log density of the chi distribution with df degrees of freedom.
double chi_log_pdf(double df, double t);

/// log P(lo <= chi_df <= hi) for 0 <= lo <= hi (hi may be +inf), computed
/// as a log-scale survival difference with a quadrature fallback when the
/// difference cancels.
double chi_log_interval_prob(double df, double lo, double hi);

/// log P(chi_df in M) where M is clipped to [0, inf); -inf when the
/// clipped set is empty.
double chi_log_union_prob(double df, const IntervalUnion& m);

}  // namespace cvinfer

#endif  // CVINFER_DISTRIBUTIONS_HPP_
