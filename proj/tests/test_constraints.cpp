#include <cmath>
#include <vector>

#include "doctest.h"

#include "cvinfer/constraints.hpp"
#include "cvinfer/errors.hpp"
#include "cvinfer/rng.hpp"

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

// A random constraint nudged to hold with positive margin at `base`, so
// events built from several of them are feasible there.
QuadraticConstraint feasible_constraint(CounterRng& rng, const Vector& base) {
  const int n = static_cast<int>(base.size());
  Matrix q = random_matrix(rng, n, n);
  q = (0.5 * (q + q.transpose())).eval();
  const Vector a = random_vector(rng, n);
  const double margin = 0.1 + rng.uniform01();
  const double b = margin - quad_eval(q, a, 0.0, base);
  return QuadraticConstraint(q, a, b);
}

}  // namespace

TEST_SUITE("constraints") {

TEST_CASE("constructor symmetrizes Q") {
  Matrix q(2, 2);
  q << 0.0, 2.0, 0.0, 0.0;
  const QuadraticConstraint c(q, Vector::Zero(2), 0.0);
  CHECK(c.q()(0, 1) == doctest::Approx(1.0));
  CHECK(c.q()(1, 0) == doctest::Approx(1.0));
  // The form's value is unchanged by symmetrization.
  Vector z(2);
  z << 1.0, 3.0;
  CHECK(c.value(z) == doctest::Approx(6.0));
}

TEST_CASE("constructor rejects inconsistent dimensions") {
  CHECK_THROWS_AS(QuadraticConstraint(Matrix::Zero(2, 3), Vector::Zero(2), 0.0),
                  ContractViolation);
  CHECK_THROWS_AS(QuadraticConstraint(Matrix::Zero(2, 2), Vector::Zero(3), 0.0),
                  ContractViolation);
}

TEST_CASE("embed scatters a 1-dim constraint and preserves its value") {
  // Q=[2], a=[0], b=0 placed at position 1 of 3; at (5,3,7) the gathered
  // sub-vector is (3), so the value is 2*9 = 18.
  const QuadraticConstraint c(2.0 * Matrix::Identity(1, 1), Vector::Zero(1),
                              0.0);
  const QuadraticConstraint full = embed(c, {1}, 3);
  Vector z(3);
  z << 5.0, 3.0, 7.0;
  CHECK(full.value(z) == doctest::Approx(18.0));
  CHECK(full.dim() == 3);
  CHECK(full.q()(0, 0) == 0.0);
  CHECK(full.q()(2, 2) == 0.0);
}

TEST_CASE("embedding with the identity map is a no-op") {
  CounterRng rng(11);
  Vector base = random_vector(rng, 4);
  const QuadraticConstraint c = feasible_constraint(rng, base);
  const QuadraticConstraint same = embed(c, {0, 1, 2, 3}, 4);
  CHECK((same.q() - c.q()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((same.a() - c.a()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(same.b() == c.b());
}

TEST_CASE("embed round-trips through gather on random vectors") {
  CounterRng rng(22);
  const std::vector<int> index_map = {7, 2, 9, 4};
  Vector origin = Vector::Zero(4);
  const QuadraticConstraint c = feasible_constraint(rng, origin);
  const QuadraticConstraint full = embed(c, index_map, 10);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector z = random_vector(rng, 10);
    const Vector sub = select_entries(z, index_map);
    CHECK(full.value(z) == doctest::Approx(c.value(sub)).epsilon(1e-12));
  }
}

TEST_CASE("embed rejects bad index maps") {
  const QuadraticConstraint c(Matrix::Identity(2, 2), Vector::Zero(2), 0.0);
  CHECK_THROWS_AS(embed(c, {0}, 3), ContractViolation);        // size mismatch
  CHECK_THROWS_AS(embed(c, {0, 3}, 3), ContractViolation);     // out of range
  CHECK_THROWS_AS(embed(c, {1, 1}, 3), ContractViolation);     // collision
  CHECK_THROWS_AS(embed(c, {-1, 0}, 3), ContractViolation);    // negative
}

TEST_CASE("checked event construction accepts the observed point") {
  CounterRng rng(33);
  const Vector y = random_vector(rng, 5);
  std::vector<QuadraticConstraint> cs;
  for (int i = 0; i < 4; ++i) cs.push_back(feasible_constraint(rng, y));
  const SelectionEvent event(cs, y);
  CHECK(event.dimension() == 5);
  CHECK(event.constraints().size() == 4);
  CHECK(event.contains(y, 1e-8));
  CHECK(event.min_constraint_value(y) > 0.0);
}

TEST_CASE("checked event construction rejects an infeasible point") {
  Vector y(2);
  y << 1.0, 0.0;
  // -z^T z >= 0 holds only at the origin.
  std::vector<QuadraticConstraint> cs;
  cs.emplace_back(-Matrix::Identity(2, 2), Vector::Zero(2), 0.0);
  CHECK_THROWS_AS(SelectionEvent(cs, y), InconsistentEvent);
}

TEST_CASE("contains: only the origin satisfies -z^T z >= 0") {
  std::vector<QuadraticConstraint> cs;
  cs.emplace_back(-Matrix::Identity(2, 2), Vector::Zero(2), 0.0);
  const SelectionEvent event(cs, 2);
  Vector z(2);
  z << 1.0, 0.0;
  CHECK(!event.contains(z, 1e-8));
  CHECK(event.contains(Vector::Zero(2), 1e-8));
}

TEST_CASE("a vacuous constraint slices to the whole line") {
  std::vector<QuadraticConstraint> cs;
  cs.emplace_back(Matrix::Zero(3, 3), Vector::Zero(3), 1.0);
  const SelectionEvent event(cs, 3);
  CounterRng rng(44);
  const IntervalUnion m = event.slice(random_vector(rng, 3),
                                      random_vector(rng, 3));
  CHECK(m.size() == 1);
  CHECK(m.min() == -kInf);
  CHECK(m.max() == kInf);
}

TEST_CASE("slice of z^2 >= 1 from base 2 along direction 1") {
  // (2 + t)^2 >= 1  <=>  t <= -3 or t >= -1.
  std::vector<QuadraticConstraint> cs;
  cs.emplace_back(Matrix::Identity(1, 1), Vector::Zero(1), -1.0);
  const SelectionEvent event(cs, 1);
  Vector base(1), dir(1);
  base << 2.0;
  dir << 1.0;
  const IntervalUnion m = event.slice(base, dir);
  REQUIRE(m.size() == 2);
  CHECK(m.intervals()[0].lo == -kInf);
  CHECK(m.intervals()[0].hi == doctest::Approx(-3.0));
  CHECK(m.intervals()[1].lo == doctest::Approx(-1.0));
  CHECK(m.intervals()[1].hi == kInf);
}

TEST_CASE("slice contains t=0 whenever the base is feasible") {
  CounterRng rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng.index(4));
    const Vector base = random_vector(rng, n);
    std::vector<QuadraticConstraint> cs;
    for (int i = 0; i < 5; ++i) cs.push_back(feasible_constraint(rng, base));
    const SelectionEvent event(cs, base);
    const IntervalUnion m = event.slice(base, random_vector(rng, n));
    CHECK(m.contains(0.0, 1e-12));
  }
}

TEST_CASE("slice agrees with grid membership of the substituted point") {
  CounterRng rng(66);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4;
    const Vector base = random_vector(rng, n);
    std::vector<QuadraticConstraint> cs;
    for (int i = 0; i < 5; ++i) cs.push_back(feasible_constraint(rng, base));
    const SelectionEvent event(cs, base);
    const Vector dir = random_vector(rng, n);
    const IntervalUnion m = event.slice(base, dir);
    for (int i = 0; i <= 2000; ++i) {
      const double t = -50.0 + i * 0.05;
      const double worst = event.min_constraint_value(base + t * dir);
      if (std::fabs(worst) < 1e-7) continue;  // grazing a boundary
      CHECK(m.contains(t, 1e-9) == (worst >= 0.0));
    }
  }
}

TEST_CASE("direction rescaling scales the slice reciprocally") {
  CounterRng rng(77);
  const int n = 5;
  const Vector base = random_vector(rng, n);
  std::vector<QuadraticConstraint> cs;
  for (int i = 0; i < 4; ++i) cs.push_back(feasible_constraint(rng, base));
  const SelectionEvent event(cs, base);
  const Vector dir = random_vector(rng, n);
  const double c = 2.5;
  const IntervalUnion m1 = event.slice(base, dir);
  const IntervalUnion m2 = event.slice(base, c * dir);
  REQUIRE(m1.size() == m2.size());
  for (std::size_t i = 0; i < m1.size(); ++i) {
    const Interval& a = m1.intervals()[i];
    const Interval& b = m2.intervals()[i];
    if (std::isfinite(a.lo)) {
      CHECK(b.lo == doctest::Approx(a.lo / c).epsilon(1e-8));
    } else {
      CHECK(b.lo == a.lo);
    }
    if (std::isfinite(a.hi)) {
      CHECK(b.hi == doctest::Approx(a.hi / c).epsilon(1e-8));
    } else {
      CHECK(b.hi == a.hi);
    }
  }
}

TEST_CASE("slicing a concatenated event intersects the separate slices") {
  CounterRng rng(88);
  const int n = 4;
  const Vector base = random_vector(rng, n);
  std::vector<QuadraticConstraint> ca, cb;
  for (int i = 0; i < 3; ++i) ca.push_back(feasible_constraint(rng, base));
  for (int i = 0; i < 3; ++i) cb.push_back(feasible_constraint(rng, base));
  std::vector<QuadraticConstraint> both = ca;
  both.insert(both.end(), cb.begin(), cb.end());

  const Vector dir = random_vector(rng, n);
  const IntervalUnion ma = SelectionEvent(ca, n).slice(base, dir);
  const IntervalUnion mb = SelectionEvent(cb, n).slice(base, dir);
  const IntervalUnion mboth = SelectionEvent(both, n).slice(base, dir);
  const IntervalUnion expected = ma.intersect(mb);
  REQUIRE(mboth.size() == expected.size());
  for (std::size_t i = 0; i < mboth.size(); ++i) {
    CHECK(mboth.intervals()[i].lo ==
          doctest::Approx(expected.intervals()[i].lo));
    CHECK(mboth.intervals()[i].hi ==
          doctest::Approx(expected.intervals()[i].hi));
  }
}

TEST_CASE("slice throws when the whole line is infeasible") {
  // z^T z + 1 <= 0 never holds, i.e. the constraint -z^Tz - 1 >= 0.
  std::vector<QuadraticConstraint> cs;
  cs.emplace_back(-Matrix::Identity(2, 2), Vector::Zero(2), -1.0);
  const SelectionEvent event(cs, 2);
  Vector base(2), dir(2);
  base << 0.0, 0.0;
  dir << 1.0, 0.0;
  CHECK_THROWS_AS(event.slice(base, dir), InconsistentEvent);
}

TEST_CASE("slice rejects a zero direction") {
  std::vector<QuadraticConstraint> cs;
  cs.emplace_back(Matrix::Zero(2, 2), Vector::Zero(2), 1.0);
  const SelectionEvent event(cs, 2);
  CHECK_THROWS_AS(event.slice(Vector::Zero(2), Vector::Zero(2)),
                  ContractViolation);
}

}  // TEST_SUITE("constraints")
