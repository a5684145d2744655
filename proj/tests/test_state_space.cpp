#include <set>

#include <gtest/gtest.h>

#include "gpt/random.hpp"
#include "gpt/state_space.hpp"
#include "gpt/theory.hpp"
#include "test_helpers.hpp"

namespace gpt {
namespace {

using testing::max_abs;

RVec vec(std::initializer_list<double> xs) {
  RVec v(xs.size());
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

CMatrix ket_bra(int n, int k) {
  CMatrix m = CMatrix::Zero(n, n);
  m(k, k) = 1.0;
  return m;
}

class QubitStates : public ::testing::Test {
 protected:
  Theory q2 = quantum_theory(2);
};

TEST_F(QubitStates, BasisStateProbabilities) {
  const auto p = p_from_density(DensityOperator{ket_bra(2, 0)}, *q2.frame);
  EXPECT_LE(max_abs(RVec(p.values - vec({1, 0, 0.5, 0.5}))), 1e-15);
}

TEST_F(QubitStates, NullAndMaximallyMixed) {
  EXPECT_EQ(max_abs(p_from_density(DensityOperator{CMatrix::Zero(2, 2)}, *q2.frame).values), 0.0);
  const CMatrix mixed = CMatrix::Identity(2, 2) / 2.0;
  const auto p = p_from_density(DensityOperator{mixed}, *q2.frame);
  EXPECT_LE(max_abs(RVec(p.values - RVec::Constant(4, 0.5))), 1e-15);
}

TEST_F(QubitStates, WrongDimensionIsRejected) {
  EXPECT_THROW(p_from_density(DensityOperator{CMatrix::Identity(3, 3)}, *q2.frame),
               DimensionMismatch);
}

TEST_F(QubitStates, RFromPSolvesHalfMatrix) {
  const PVector p{vec({1, 0, 0.5, 0.5}), 2};
  EXPECT_LE(max_abs(RVec(r_from_p(p, q2.d).values - vec({1, 0, 0, 0}))), 1e-14);
  EXPECT_EQ(max_abs(r_from_p(PVector{RVec::Zero(4), 2}, q2.d).values), 0.0);
}

TEST(StateSpace, ClassicalRFromPIsIdentity) {
  const Theory c3 = classical_theory(3);
  const PVector p{vec({0.2, 0.3, 0.5}), 3, TheoryKind::Classical};
  EXPECT_EQ(max_abs(RVec(r_from_p(p, c3.d).values - p.values)), 0.0);
}

TEST_F(QubitStates, DensityAndMeasurementFromR) {
  EXPECT_LE(max_abs(CMatrix(density_from_r(RVector{vec({1, 0, 0, 0})}, *q2.frame).matrix -
                            ket_bra(2, 0))),
            1e-15);
  EXPECT_EQ(max_abs(density_from_r(RVector{RVec::Zero(4)}, *q2.frame).matrix), 0.0);
  const auto id = measurement_from_r(q2.identity, *q2.frame).matrix;
  EXPECT_LE(max_abs(CMatrix(id - CMatrix::Identity(2, 2))), 1e-15);
  EXPECT_LE(max_abs(CMatrix(measurement_from_r(RVector{vec({1, 0, 0, 0}), Role::Measurement},
                                               *q2.frame).matrix -
                            ket_bra(2, 0))),
            1e-15);
  EXPECT_THROW(density_from_r(RVector{RVec::Zero(3)}, *q2.frame), DimensionMismatch);
}

TEST(StateSpace, RoundTripRandomDensities) {
  for (int n : {2, 3, 4}) {
    const Theory t = quantum_theory(n);
    Rng rng(100 + n);
    for (int s = 0; s < 100; ++s) {
      const CMatrix rho = random_density(n, rng);
      const auto r = r_from_p(p_from_density(DensityOperator{rho}, *t.frame), t.d);
      EXPECT_LE(max_abs(CMatrix(density_from_r(r, *t.frame).matrix - rho)), 1e-10);
      // p_from_r inverts r_from_p
      const auto p = p_from_density(DensityOperator{rho}, *t.frame);
      EXPECT_LE(max_abs(RVec(p_from_r(r, t.d).values - p.values)), 1e-10);
    }
  }
}

TEST(StateSpace, TraceFormulaMatchesBilinearForm) {
  for (int n : {2, 3}) {
    const Theory t = quantum_theory(n);
    Rng rng(200 + n);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int s = 0; s < 100; ++s) {
      const CMatrix rho = random_density(n, rng);
      const CMatrix u = random_unitary(n, rng);
      RVec ev(n);
      for (int i = 0; i < n; ++i) ev(i) = unit(rng);
      const CMatrix a = u * ev.cast<Complex>().asDiagonal() * u.adjoint();
      ASSERT_TRUE(is_valid_measurement(a));
      const auto r_s = r_from_p(p_from_density(DensityOperator{rho}, *t.frame), t.d);
      auto r_m = r_from_p(p_from_density(DensityOperator{a}, *t.frame), t.d);
      r_m.role = Role::Measurement;
      const double direct = (a * rho).trace().real();
      EXPECT_NEAR(probability(r_m, t.d, r_s), direct, 1e-12);
      EXPECT_LE(max_abs(CMatrix(measurement_from_r(r_m, *t.frame).matrix - a)), 1e-10);
    }
  }
}

TEST_F(QubitStates, ProbabilityExamples) {
  const RVector e1{vec({1, 0, 0, 0})};
  const RVector e2{vec({0, 1, 0, 0}), Role::Measurement};
  EXPECT_NEAR(probability(e1, q2.d, e1), 1.0, 1e-15);
  EXPECT_NEAR(probability(e2, q2.d, e1), 0.0, 1e-15);
}

TEST(StateSpace, ClassicalProbabilityIsDotProduct) {
  const Theory c = classical_theory(3);
  const RVector m{vec({0.1, 0.7, 0.3}), Role::Measurement};
  const RVector s{vec({0.5, 0.25, 0.25})};
  EXPECT_DOUBLE_EQ(probability(m, c.d, s), m.values.dot(s.values));
}

TEST_F(QubitStates, Normalization) {
  EXPECT_EQ(normalization(PVector{RVec::Zero(4), 2}, q2.identity), 0.0);
  const PVector p{vec({1, 0, 0.5, 0.5}), 2};
  EXPECT_DOUBLE_EQ(normalization(p, q2.identity), 1.0);
  EXPECT_DOUBLE_EQ(normalization(PVector{0.5 * p.values, 2}, q2.identity), 0.5);
}

TEST_F(QubitStates, PurityExamples) {
  EXPECT_TRUE(is_pure(RVector{vec({1, 0, 0, 0})}, q2.d, q2.identity));
  const auto r = r_from_p(PVector{RVec::Constant(4, 0.5), 2}, q2.d);
  EXPECT_NEAR(r.values.dot(q2.d.matrix() * r.values), 0.5, 1e-14);
  EXPECT_FALSE(is_pure(r, q2.d, q2.identity));
}

TEST(StateSpace, ClassicalBasisVectorsArePure) {
  const Theory c = classical_theory(4);
  for (const auto& p : c.basis_states()) {
    EXPECT_TRUE(is_pure(r_from_p(p, c.d), c.d, c.identity));
  }
}

TEST(StateSpace, PurityAgreesWithOperatorPurity) {
  for (int n : {2, 3, 4}) {
    const Theory t = quantum_theory(n);
    Rng rng(300 + n);
    for (int s = 0; s < 50; ++s) {
      const CMatrix rho = s % 2 ? random_pure_density(n, rng) : random_density(n, rng);
      const auto r = r_from_p(p_from_density(DensityOperator{rho}, *t.frame), t.d);
      const CMatrix back = density_from_r(r, *t.frame).matrix;
      const bool op_pure = std::abs((back * back).trace().real() - 1.0) <= 1e-9 &&
                           std::abs(back.trace().real() - 1.0) <= 1e-9;
      EXPECT_EQ(is_pure(r, t.d, t.identity), op_pure);
      EXPECT_EQ(op_pure, s % 2 == 1);
    }
  }
}

TEST_F(QubitStates, MixExamples) {
  const auto basis = q2.basis_states();
  const std::vector<PVector> one{basis[0]};
  const std::vector<double> w1{1.0};
  EXPECT_EQ(max_abs(RVec(mix(one, w1).values - basis[0].values)), 0.0);

  const std::vector<double> halves{0.5, 0.5};
  EXPECT_LE(max_abs(RVec(mix(basis, halves).values - RVec::Constant(4, 0.5))), 1e-15);

  const std::vector<double> half_null{0.5, 0.0};
  const auto sub = mix(basis, half_null);
  EXPECT_DOUBLE_EQ(normalization(sub, q2.identity), 0.5);
  EXPECT_TRUE(is_valid_state(sub, q2.identity));

  const std::vector<double> negative{-0.1, 0.5};
  EXPECT_THROW(mix(basis, negative), OutOfRange);
  const std::vector<double> too_much{0.7, 0.7};
  EXPECT_THROW(mix(basis, too_much), OutOfRange);
}

TEST(StateSpace, LinearityOfMeasurementFunctional) {
  const Theory t = quantum_theory(3);
  Rng rng(4);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const RVec rm = t.basis_measurements()[1].values;
  for (int s = 0; s < 200; ++s) {
    const RVec pa = p_from_density(DensityOperator{random_density(3, rng)}, *t.frame).values;
    const RVec pb = p_from_density(DensityOperator{random_density(3, rng)}, *t.frame).values;
    const double l = unit(rng);
    const double nu = unit(rng);
    EXPECT_NEAR(rm.dot(l * pa + (1 - l) * pb), l * rm.dot(pa) + (1 - l) * rm.dot(pb), 1e-15);
    EXPECT_NEAR(rm.dot(nu * pa), nu * rm.dot(pa), 1e-15);
  }
}

TEST(StateSpace, ClassicalTheoryShape) {
  const Theory c2 = classical_theory(2);
  EXPECT_EQ(max_abs(RMatrix(c2.d.matrix() - RMatrix::Identity(2, 2))), 0.0);
  const Theory c1 = classical_theory(1);
  ASSERT_EQ(c1.basis_states().size(), 1u);
  EXPECT_EQ(c1.basis_states()[0].values(0), 1.0);
  const Theory c4 = classical_theory(4);
  EXPECT_EQ(c4.identity.values, RVec::Ones(4));
  const auto ms = c4.basis_measurements();
  const auto ps = c4.basis_states();
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) EXPECT_EQ(ms[m].values.dot(ps[n].values), m == n ? 1.0 : 0.0);
}

// Brute-force oracle: every simplex grid point at step 1e-3 with sum p^2 = 1
// within 1e-6.
std::set<std::vector<long>> grid_pure_points(int n) {
  constexpr long kSteps = 1000;
  std::set<std::vector<long>> found;
  std::vector<long> idx(n, 0);
  auto visit = [&](auto&& self, int pos, long remaining) -> void {
    if (pos == n - 1) {
      idx[pos] = remaining;
      double sq = 0.0;
      for (long v : idx) sq += (v / double(kSteps)) * (v / double(kSteps));
      if (std::abs(sq - 1.0) <= 1e-6) found.insert(idx);
      return;
    }
    for (long v = 0; v <= remaining; ++v) {
      idx[pos] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  visit(visit, 0, kSteps);
  return found;
}

TEST(StateSpace, ClassicalPureStatesMatchGridOracle) {
  for (int n : {1, 2, 3}) {
    const auto oracle = grid_pure_points(n);
    const auto pure = classical_pure_states(n);
    ASSERT_EQ(pure.size(), oracle.size()) << n;
    for (const auto& p : pure) {
      std::vector<long> key(n);
      for (int i = 0; i < n; ++i) key[i] = std::lround(p.values(i) * 1000);
      EXPECT_TRUE(oracle.count(key)) << n;
    }
  }
  EXPECT_EQ(classical_pure_states(3).size(), 3u);
}

TEST(StateSpace, ValidityPredicates) {
  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 0) = 1.2;
  bad(1, 1) = -0.2;
  EXPECT_FALSE(is_valid_density(bad));
  EXPECT_TRUE(is_valid_density(CMatrix::Identity(2, 2) / 2.0));
  CMatrix nonherm = CMatrix::Zero(2, 2);
  nonherm(0, 1) = 1.0;
  EXPECT_FALSE(is_valid_density(nonherm));
  EXPECT_FALSE(is_valid_measurement(2.0 * CMatrix::Identity(2, 2)));

  const Theory q2 = quantum_theory(2);
  EXPECT_FALSE(is_valid_state(PVector{RVec::Constant(4, 1.5), 2}, q2.identity));
  // conversions stay total on out-of-range input
  EXPECT_NO_THROW(r_from_p(PVector{RVec::Constant(4, 1.5), 2}, q2.d));
}

}  // namespace
}  // namespace gpt
