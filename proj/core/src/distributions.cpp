#include "cvinfer/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "cvinfer/errors.hpp"

namespace cvinfer {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Wichura's PPND16 rational approximations: one central and two tail
// expansions in sqrt(-log(min(p, 1-p))), each good to ~1e-16.
double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw ContractViolation("normal_quantile: p must lie in (0, 1)");
  }
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) *
                 r +
             4.5921953931549871457e4) *
                r +
            1.3731693765509461125e4) *
               r +
           1.9715909503065514427e3) *
              r +
          1.3314166789178437745e2) *
             r +
         3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) *
                 r +
             2.1213794301586595867e4) *
                r +
            5.3941960214247511077e3) *
               r +
           6.8718700749205790830e2) *
              r +
          4.2313330701600911252e1) *
             r +
         1.0);
    return q * num / den;
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) *
                 r +
             1.27045825245236838258e0) *
                r +
            3.64784832476320460504e0) *
               r +
           5.76949722146069140550e0) *
              r +
          4.63033784615654529590e0) *
             r +
         1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) *
                 r +
             1.48103976427480074590e-1) *
                r +
            6.89767334985100004550e-1) *
               r +
           1.67638483018380384940e0) *
              r +
          2.05319162663775882187e0) *
             r +
         1.0);
    val = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) *
                 r +
             2.65321895265761230930e-2) *
                r +
            2.96560571828504891230e-1) *
               r +
           1.78482653991729133580e0) *
              r +
          5.46378491116411436990e0) *
             r +
         6.65790464350110377720e0);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) *
                  r +
              1.84631831751005468180e-5) *
                 r +
             7.86869131145613259100e-4) *
                r +
            1.48753612908506148525e-2) *
               r +
           1.36929880922735805310e-1) *
              r +
          5.99832206555887937690e-1) *
             r +
         1.0);
    val = num / den;
  }
  return q < 0.0 ? -val : val;
}

namespace {

constexpr int kMaxIter = 500;
constexpr double kConvergenceEps = 1e-15;

// log of the lower regularized incomplete gamma P(a, x) by power series;
// reliable for x < a + 1 where the series converges quickly.
double log_gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k <= kMaxIter; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kConvergenceEps) break;
  }
  return a * std::log(x) - x - std::lgamma(a) + std::log(sum);
}

// log of Q(a, x) by the Lentz continued fraction; reliable for x >= a + 1.
double log_gamma_q_cf(double a, double x) {
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kConvergenceEps) break;
  }
  return a * std::log(x) - x - std::lgamma(a) + std::log(h);
}

// log(e^la - e^lb) for lb <= la; expm1 keeps the difference accurate even
// when the two logs nearly coincide.
double log_diff_exp(double la, double lb) {
  if (std::isinf(lb) && lb < 0.0) return la;
  return la + std::log(-std::expm1(lb - la));
}

double log_sum_exp(const std::vector<double>& logs) {
  double lmax = -kInf;
  for (double v : logs) lmax = std::max(lmax, v);
  if (std::isinf(lmax) && lmax < 0.0) return -kInf;
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - lmax);
  return lmax + std::log(acc);
}

// Composite Simpson's rule on the chi density over [lo, hi], accumulated in
// log space. Only used for slivers where the survival difference cancels,
// so a fixed node count is ample.
double log_simpson_chi(double df, double lo, double hi) {
  constexpr int kPanels = 32;
  const double h = (hi - lo) / (2 * kPanels);
  if (!(h > 0.0)) return -kInf;
  std::vector<double> terms;
  terms.reserve(2 * kPanels + 1);
  const double log_h3 = std::log(h / 3.0);
  for (int i = 0; i <= 2 * kPanels; ++i) {
    const double t = lo + i * h;
    const double w = (i == 0 || i == 2 * kPanels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    terms.push_back(chi_log_pdf(df, t) + std::log(w) + log_h3);
  }
  return log_sum_exp(terms);
}

}  // namespace

double log_gamma_q(double a, double x) {
  if (!(a > 0.0)) throw ContractViolation("log_gamma_q: a must be positive");
  if (std::isnan(x) || x < 0.0) {
    throw ContractViolation("log_gamma_q: x must be >= 0");
  }
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return -kInf;
  if (x < a + 1.0) return std::log1p(-std::exp(log_gamma_p_series(a, x)));
  return log_gamma_q_cf(a, x);
}

double chi_log_survival(double df, double t) {
  if (!(df > 0.0)) {
    throw ContractViolation("chi_log_survival: df must be positive");
  }
  if (t <= 0.0) return 0.0;
  return log_gamma_q(0.5 * df, 0.5 * t * t);
}

double chi_log_pdf(double df, double t) {
  if (!(df > 0.0)) {
    throw ContractViolation("chi_log_pdf: df must be positive");
  }
  if (t < 0.0) return -kInf;
  if (t == 0.0) {
    if (df == 1.0) return 0.5 * std::log(2.0 / std::numbers::pi);
    return df > 1.0 ? -kInf : kInf;
  }
  return (1.0 - 0.5 * df) * std::log(2.0) + (df - 1.0) * std::log(t) -
         0.5 * t * t - std::lgamma(0.5 * df);
}

double chi_log_interval_prob(double df, double lo, double hi) {
  lo = std::max(lo, 0.0);
  if (!(hi > lo)) return -kInf;
  const double la = chi_log_survival(df, lo);
  if (std::isinf(hi)) return la;
  const double lb = chi_log_survival(df, hi);
  const double delta = lb - la;  // <= 0 up to roundoff
  // When the two survival logs nearly coincide their difference is mostly
  // roundoff; integrate the density directly instead.
  const double guard = 1e-8 * std::max(1.0, std::fabs(la));
  if (-delta > guard) return log_diff_exp(la, lb);
  return log_simpson_chi(df, lo, hi);
}

double chi_log_union_prob(double df, const IntervalUnion& m) {
  std::vector<double> piece_logs;
  for (const Interval& iv : m.intervals()) {
    if (iv.hi <= 0.0) continue;
    piece_logs.push_back(chi_log_interval_prob(df, std::max(iv.lo, 0.0), iv.hi));
  }
  if (piece_logs.empty()) return -kInf;
  return log_sum_exp(piece_logs);
}

}  // namespace cvinfer
