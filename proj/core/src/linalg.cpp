#include "cvinfer/linalg.hpp"

#include <cmath>
#include <string>

#include "cvinfer/errors.hpp"

namespace cvinfer {

namespace {

Eigen::JacobiSVD<Matrix> checked_svd(const Matrix& a) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalFailure("SVD did not converge on a " +
                           std::to_string(a.rows()) + "x" +
                           std::to_string(a.cols()) + " matrix");
  }
  return svd;
}

}  // namespace

Matrix pseudoinverse(const Matrix& a, double tol) {
  if (a.cols() == 0 || a.rows() == 0) return Matrix::Zero(a.cols(), a.rows());
  if (!(tol > 0.0)) throw ContractViolation("pseudoinverse: tol must be > 0");
  const auto svd = checked_svd(a);
  const Vector& sv = svd.singularValues();
  const double cutoff = tol * sv(0);
  Vector inv_sv = Vector::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) inv_sv(i) = 1.0 / sv(i);
  }
  return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().transpose();
}

Eigen::Index numeric_rank(const Matrix& a, double tol) {
  if (a.cols() == 0 || a.rows() == 0) return 0;
  const auto svd = checked_svd(a);
  const Vector& sv = svd.singularValues();
  const double cutoff = tol * sv(0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  return rank;
}

Matrix column_space_projector(const Matrix& a, double tol) {
  if (a.cols() == 0) return Matrix::Zero(a.rows(), a.rows());
  return a * pseudoinverse(a, tol);
}

double quad_eval(const Matrix& q, const Vector& a, double b, const Vector& z) {
  if (q.rows() != q.cols() || q.rows() != z.size() || a.size() != z.size()) {
    throw ContractViolation("quad_eval: dimension mismatch (Q " +
                            std::to_string(q.rows()) + "x" +
                            std::to_string(q.cols()) + ", a " +
                            std::to_string(a.size()) + ", z " +
                            std::to_string(z.size()) + ")");
  }
  return z.dot(q * z) + a.dot(z) + b;
}

IntervalUnion solve_quadratic_ineq(double alpha, double beta, double gamma,
                                   double tol) {
  if (std::fabs(alpha) <= tol) alpha = 0.0;
  if (std::fabs(beta) <= tol) beta = 0.0;
  if (std::fabs(gamma) <= tol) gamma = 0.0;

  if (alpha == 0.0 && beta == 0.0) {
    return gamma >= 0.0 ? IntervalUnion::full() : IntervalUnion::empty_set();
  }
  if (alpha == 0.0) {
    const double root = -gamma / beta;
    return beta > 0.0 ? IntervalUnion::of(root, kInf)
                      : IntervalUnion::of(-kInf, root);
  }

  const double disc = beta * beta - 4.0 * alpha * gamma;
  if (disc <= 0.0) {
    // No sign change: the parabola stays on one side of zero (touching it
    // at a single point when disc == 0, which the closed sets keep).
    if (alpha > 0.0) return IntervalUnion::full();
    if (disc == 0.0) {
      const double root = -beta / (2.0 * alpha);
      return IntervalUnion::of(root, root);
    }
    return IntervalUnion::empty_set();
  }

  // Stable root pair: avoid cancellation by computing the larger-magnitude
  // root first.
  const double sqrt_disc = std::sqrt(disc);
  const double q = -0.5 * (beta + (beta >= 0.0 ? sqrt_disc : -sqrt_disc));
  double r1;
  double r2;
  if (q != 0.0) {
    r1 = q / alpha;
    r2 = gamma / q;
  } else {  // q vanishes only when gamma == 0: roots are 0 and -beta/alpha
    r1 = 0.0;
    r2 = -beta / alpha;
  }
  if (r1 > r2) std::swap(r1, r2);

  if (alpha > 0.0) {
    return IntervalUnion::from_intervals(
        {Interval{-kInf, r1}, Interval{r2, kInf}});
  }
  return IntervalUnion::of(r1, r2);
}

Matrix select_columns(const Matrix& x, const std::vector<int>& idx) {
  Matrix out(x.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = x.col(idx[k]);
  }
  return out;
}

Vector select_entries(const Vector& v, const std::vector<int>& idx) {
  Vector out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out(static_cast<Eigen::Index>(k)) = v(idx[k]);
  }
  return out;
}

Matrix select_rows(const Matrix& x, const std::vector<int>& idx) {
  Matrix out(static_cast<Eigen::Index>(idx.size()), x.cols());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = x.row(idx[k]);
  }
  return out;
}

}  // namespace cvinfer
