#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"

#include "cvinfer/errors.hpp"
#include "cvinfer/rng.hpp"
#include "cvinfer/stepwise.hpp"

using namespace cvinfer;

namespace {

Matrix random_matrix(CounterRng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.standard_normal();
  }
  return m;
}

Vector random_vector(CounterRng& rng, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.standard_normal();
  return v;
}

double rss_of(const Matrix& x, const Vector& y, const std::vector<int>& active) {
  const Matrix xa = select_columns(x, active);
  const Vector fitted = xa * (pseudoinverse(xa) * y);
  return (y - fitted).squaredNorm();
}

// Greedy oracle: at each step refit every candidate superset by QR and add
// the variable with the smallest resulting RSS (ties to the lowest index).
std::vector<std::vector<int>> greedy_oracle(const Matrix& x, const Vector& y,
                                            int steps) {
  std::vector<std::vector<int>> sets;
  std::vector<int> active;
  for (int s = 0; s < steps; ++s) {
    int best = -1;
    double best_rss = kInf;
    for (int j = 0; j < x.cols(); ++j) {
      if (std::find(active.begin(), active.end(), j) != active.end()) continue;
      std::vector<int> trial = active;
      trial.push_back(j);
      const double rss = rss_of(x, y, trial);
      if (rss < best_rss - 1e-12) {
        best_rss = rss;
        best = j;
      }
    }
    active.push_back(best);
    sets.push_back(active);
  }
  return sets;
}

}  // namespace

TEST_SUITE("stepwise") {

TEST_CASE("identity design picks coordinates by magnitude") {
  Vector y(3);
  y << 0.0, 5.0, 1.0;
  const StepwisePath path = fit_stepwise(Matrix::Identity(3, 3), y, 2);
  REQUIRE(path.steps() == 2);
  CHECK(path.active_sets[0] == std::vector<int>{1});
  CHECK(path.active_sets[1] == std::vector<int>{1, 2});
  CHECK(!path.truncated);
}

TEST_CASE("dominant column wins under an orthonormal design") {
  // Columns of a 4x3 orthonormal matrix; y is almost exactly 10 * x_2.
  Matrix x(4, 3);
  x << 0.5, 0.5, 0.5,
       0.5, -0.5, 0.5,
       0.5, 0.5, -0.5,
       0.5, -0.5, -0.5;
  // Gram-Schmidt not needed: those three columns are orthonormal already.
  Vector y = 10.0 * x.col(2);
  y(0) += 0.01;
  y(3) -= 0.02;
  const StepwisePath path = fit_stepwise(x, y, 1);
  REQUIRE(path.steps() == 1);
  CHECK(path.active_sets[0] == std::vector<int>{2});
}

TEST_CASE("path matches the exhaustive greedy oracle") {
  CounterRng rng(909);
  for (int trial = 0; trial < 8; ++trial) {
    const Matrix x = random_matrix(rng, 20, 6);
    const Vector y = random_vector(rng, 20);
    const StepwisePath path = fit_stepwise(x, y, 4);
    CHECK(path.active_sets == greedy_oracle(x, y, 4));
  }
}

TEST_CASE("active sets are strictly nested prefixes") {
  CounterRng rng(910);
  const Matrix x = random_matrix(rng, 15, 7);
  const Vector y = random_vector(rng, 15);
  const StepwisePath path = fit_stepwise(x, y, 5);
  REQUIRE(path.steps() == 5);
  for (int s = 0; s + 1 < path.steps(); ++s) {
    REQUIRE(path.active_sets[s].size() == static_cast<std::size_t>(s + 1));
    CHECK(std::equal(path.active_sets[s].begin(), path.active_sets[s].end(),
                     path.active_sets[s + 1].begin()));
  }
}

TEST_CASE("RSS is non-increasing along the path") {
  CounterRng rng(911);
  const Matrix x = random_matrix(rng, 18, 6);
  const Vector y = random_vector(rng, 18);
  const StepwisePath path = fit_stepwise(x, y, 5);
  double prev = y.squaredNorm();
  for (int s = 0; s < path.steps(); ++s) {
    const double rss = rss_of(x, y, path.active_sets[s]);
    CHECK(rss <= prev + 1e-10);
    prev = rss;
  }
}

TEST_CASE("coefficients are least-squares refits") {
  CounterRng rng(912);
  const Matrix x = random_matrix(rng, 12, 5);
  const Vector y = random_vector(rng, 12);
  const StepwisePath path = fit_stepwise(x, y, 3);
  for (int s = 0; s < path.steps(); ++s) {
    const Matrix xa = select_columns(x, path.active_sets[s]);
    const Vector refit = pseudoinverse(xa) * y;
    CHECK((path.coefficients[s] - refit).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("training response satisfies every path constraint") {
  CounterRng rng(913);
  const Matrix x = random_matrix(rng, 16, 6);
  const Vector y = random_vector(rng, 16);
  const StepwisePath path = fit_stepwise(x, y, 4);
  CHECK(!path.constraints.empty());
  for (const QuadraticConstraint& c : path.constraints) {
    CHECK(c.value(y) >= -1e-8);
  }
}

TEST_CASE("resampled responses reproduce the path iff they satisfy it") {
  CounterRng rng(914);
  const Matrix x = random_matrix(rng, 14, 5);
  const Vector y = random_vector(rng, 14);
  const StepwisePath path = fit_stepwise(x, y, 3);

  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Vector z = random_vector(rng, 14);
    double closest = kInf;
    for (const QuadraticConstraint& c : path.constraints) {
      closest = std::min(closest, std::fabs(c.value(z)));
    }
    if (closest <= 1e-6) continue;  // boundary sample, excluded
    bool satisfied = true;
    for (const QuadraticConstraint& c : path.constraints) {
      if (c.value(z) < -1e-8) {
        satisfied = false;
        break;
      }
    }
    const StepwisePath rerun = fit_stepwise(x, z, 3);
    CHECK((rerun.active_sets == path.active_sets) == satisfied);
    ++checked;
  }
  CHECK(checked > 50);  // the exclusion rule should not eat the sample
}

TEST_CASE("ties break toward the lowest column index") {
  // Two identical-in-magnitude but distinct columns: +e1 and -e1 score the
  // same on any y, so the tie goes to column 0.
  Matrix x(3, 2);
  x << 1.0, -1.0,
       0.0, 0.0,
       0.0, 0.0;
  Vector y(3);
  y << 2.0, 1.0, 0.0;
  const StepwisePath path = fit_stepwise(x, y, 1);
  CHECK(path.active_sets[0] == std::vector<int>{0});
}

TEST_CASE("collinear candidates are dropped and may truncate the path") {
  Matrix x(4, 3);
  CounterRng rng(915);
  x.col(0) = random_vector(rng, 4);
  x.col(1) = 2.0 * x.col(0);          // exact duplicate direction
  x.col(2) = random_vector(rng, 4);
  const Vector y = random_vector(rng, 4);
  const StepwisePath path = fit_stepwise(x, y, 3);
  // After columns 0 and 2 enter, candidate 1 residualizes to zero, so the
  // path stops at two steps and reports the truncation.
  CHECK(path.steps() == 2);
  CHECK(path.truncated);
  for (const auto& a : path.active_sets) {
    CHECK(std::find(a.begin(), a.end(), 1) == a.end());
  }
}

TEST_CASE("zero columns and bad step counts are rejected") {
  Matrix x = Matrix::Identity(3, 3);
  x.col(1).setZero();
  CHECK_THROWS_AS(fit_stepwise(x, Vector::Ones(3), 1), ContractViolation);
  CHECK_THROWS_AS(fit_stepwise(Matrix::Identity(3, 3), Vector::Ones(3), 4),
                  ContractViolation);
  CHECK_THROWS_AS(fit_stepwise(Matrix::Identity(3, 3), Vector::Ones(2), 1),
                  ContractViolation);
}

TEST_CASE("in-sample hat matrix is an orthogonal projector") {
  CounterRng rng(916);
  const Matrix x = random_matrix(rng, 10, 4);
  const Vector y = random_vector(rng, 10);
  const StepwisePath path = fit_stepwise(x, y, 3);
  const Matrix h = hat_matrix(path, x, 2);
  CHECK((h * h - h).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((h - h.transpose()).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("rank-1 hat matrix is the explicit outer product") {
  CounterRng rng(917);
  Matrix x_train(6, 1);
  x_train.col(0) = random_vector(rng, 6);
  Matrix x_new(4, 1);
  x_new.col(0) = random_vector(rng, 4);
  const Vector y = random_vector(rng, 6);
  const StepwisePath path = fit_stepwise(x_train, y, 1);
  const Matrix h = hat_matrix(path, x_new, 0);
  const Matrix expected =
      x_new.col(0) * x_train.col(0).transpose() / x_train.col(0).squaredNorm();
  CHECK((h - expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("hat matrix times training response equals predictions") {
  CounterRng rng(918);
  const Matrix x_train = random_matrix(rng, 12, 5);
  const Matrix x_new = random_matrix(rng, 7, 5);
  const Vector y = random_vector(rng, 12);
  const StepwisePath path = fit_stepwise(x_train, y, 4);
  for (int s = 0; s < path.steps(); ++s) {
    const Vector via_hat = hat_matrix(path, x_new, s) * y;
    const Vector via_coef =
        select_columns(x_new, path.active_sets[s]) * path.coefficients[s];
    CHECK((via_hat - via_coef).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("hat matrix rejects out-of-range steps and wrong widths") {
  CounterRng rng(919);
  const Matrix x = random_matrix(rng, 8, 3);
  const StepwisePath path = fit_stepwise(x, random_vector(rng, 8), 2);
  CHECK_THROWS_AS(hat_matrix(path, x, 2), ContractViolation);
  CHECK_THROWS_AS(hat_matrix(path, x, -1), ContractViolation);
  CHECK_THROWS_AS(hat_matrix(path, random_matrix(rng, 8, 4), 0),
                  ContractViolation);
}

}  // TEST_SUITE("stepwise")
