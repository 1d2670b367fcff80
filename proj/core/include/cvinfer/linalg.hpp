#ifndef CVINFER_LINALG_HPP_
#define CVINFER_LINALG_HPP_

#include <vector>

#include <Eigen/Dense>

#include "cvinfer/interval.hpp"

namespace cvinfer {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative singular-value cutoff for rank decisions.
inline constexpr double kPinvTol = 1e-10;
/// Quadratic coefficients at or below this magnitude are treated as zero.
inline constexpr double kQuadCoefTol = 1e-12;

/// Moore-Penrose pseudoinverse via SVD. Singular values at or below
/// tol * sigma_max are treated as zero. A matrix with zero columns (the
/// empty model) yields a 0 x rows result.
Matrix pseudoinverse(const Matrix& a, double tol = kPinvTol);

/// Numerical rank with the same cutoff rule as pseudoinverse().
Eigen::Index numeric_rank(const Matrix& a, double tol = kPinvTol);

/// Orthogonal projector onto the column space of a (a * pinv(a)).
Matrix column_space_projector(const Matrix& a, double tol = kPinvTol);

/// z^T q z + a^T z + b. Throws ContractViolation on dimension mismatch.
double quad_eval(const Matrix& q, const Vector& a, double b, const Vector& z);

/// Solution set {t : alpha t^2 + beta t + gamma >= 0} as a union of at most
/// two closed intervals. Coefficients with |.| <= tol count as zero, so the
/// linear and constant degenerations are handled explicitly. Total function.
IntervalUnion solve_quadratic_ineq(double alpha, double beta, double gamma,
                                   double tol = kQuadCoefTol);

/// Columns of x selected by idx, in idx order.
Matrix select_columns(const Matrix& x, const std::vector<int>& idx);

/// Entries of v selected by idx, in idx order.
Vector select_entries(const Vector& v, const std::vector<int>& idx);

/// Rows of x selected by idx, in idx order.
Matrix select_rows(const Matrix& x, const std::vector<int>& idx);

}  // namespace cvinfer

#endif  // CVINFER_LINALG_HPP_
