#include <algorithm>
#include <numbers>

#include <gtest/gtest.h>

#include "gpt/dynamics.hpp"
#include "gpt/random.hpp"
#include "test_helpers.hpp"

namespace gpt {
namespace {

using testing::max_abs;

const Complex kI(0.0, 1.0);

CMatrix pauli_x() {
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  return x;
}

CMatrix pauli_y() {
  CMatrix y = CMatrix::Zero(2, 2);
  y(0, 1) = -kI;
  y(1, 0) = kI;
  return y;
}

CMatrix pauli_z() {
  CMatrix z = CMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

CMatrix projector(int n, int k) {
  CMatrix m = CMatrix::Zero(n, n);
  m(k, k) = 1.0;
  return m;
}

PVector p_of(const CMatrix& rho, const Theory& t) {
  return p_from_density(DensityOperator{rho}, *t.frame);
}

KrausSet depolarizing(double p) {
  const double s = std::sqrt(p / 4.0);
  return KrausSet{{std::sqrt(1.0 - 3.0 * p / 4.0) * CMatrix::Identity(2, 2), s * pauli_x(),
                   s * pauli_y(), s * pauli_z()}};
}

class QubitDynamics : public ::testing::Test {
 protected:
  Theory t = quantum_theory(2);
  TransformMatrix z_of(const KrausSet& k) { return z_from_kraus(k, *t.frame, t.d); }
};

TEST_F(QubitDynamics, IdentityMapGivesIdentity) {
  const auto z = z_of(KrausSet{{CMatrix::Identity(2, 2)}});
  EXPECT_LE(max_abs(RMatrix(z.z - RMatrix::Identity(4, 4))), 1e-14);
  EXPECT_EQ(z.provenance, Provenance::FromKraus);
}

TEST_F(QubitDynamics, ProjectionOntoFirstBasisState) {
  RMatrix expected = RMatrix::Zero(4, 4);
  expected.col(0) << 1.0, 0.0, 0.5, 0.5;
  const auto z = z_of(KrausSet{{projector(2, 0)}});
  EXPECT_LE(max_abs(RMatrix(z.z - expected)), 1e-14);
}

TEST_F(QubitDynamics, BitFlipAndPhaseGate) {
  RMatrix zx(4, 4);
  zx << 0, 1, 0, 0,
        1, 0, 0, 0,
        0, 0, 1, 0,
        1, 1, 0, -1;
  EXPECT_LE(max_abs(RMatrix(z_from_unitary(pauli_x(), *t.frame, t.d).z - zx)), 1e-14);

  CMatrix s = CMatrix::Identity(2, 2);
  s(1, 1) = kI;
  RMatrix zs(4, 4);
  zs << 1, 0, 0, 0,
        0, 1, 0, 0,
        1, 1, 0, -1,
        0, 0, 1, 0;
  const auto z = z_from_unitary(s, *t.frame, t.d);
  EXPECT_LE(max_abs(RMatrix(z.z - zs)), 1e-14);
  EXPECT_EQ(z.provenance, Provenance::FromUnitary);

  // operator-level oracle
  Rng rng(21);
  for (int k = 0; k < 20; ++k) {
    const CMatrix rho = random_density(2, rng);
    EXPECT_LE(max_abs(RVec(zs * p_of(rho, t).values - p_of(s * rho * s.adjoint(), t).values)),
              1e-12);
  }
}

TEST_F(QubitDynamics, UnitaryInverse) {
  Rng rng(22);
  for (int k = 0; k < 20; ++k) {
    const CMatrix u = random_unitary(2, rng);
    const auto z = z_from_unitary(u, *t.frame, t.d);
    const auto zi = z_from_unitary(u.adjoint(), *t.frame, t.d);
    EXPECT_LE(max_abs(RMatrix(zi.z * z.z - RMatrix::Identity(4, 4))), 1e-12);
  }
}

TEST_F(QubitDynamics, NonUnitaryRejected) {
  EXPECT_THROW(z_from_unitary(1.001 * CMatrix::Identity(2, 2), *t.frame, t.d), NotUnitary);
  EXPECT_THROW(z_from_unitary(CMatrix::Identity(3, 3), *t.frame, t.d), DimensionMismatch);
  EXPECT_THROW(z_of(KrausSet{{CMatrix::Identity(3, 3)}}), DimensionMismatch);
}

TEST(Dynamics, TraceConditions) {
  EXPECT_TRUE(is_trace_preserving(KrausSet{{CMatrix::Identity(2, 2)}}));
  const KrausSet half{{0.5 * CMatrix::Identity(2, 2)}};
  EXPECT_TRUE(is_trace_nonincreasing(half));
  EXPECT_FALSE(is_trace_preserving(half));
  EXPECT_FALSE(is_trace_nonincreasing(KrausSet{{2.0 * CMatrix::Identity(2, 2)}}));
  EXPECT_TRUE(is_trace_preserving(depolarizing(0.5)));
  EXPECT_TRUE(is_trace_preserving(KrausSet{{projector(3, 0), projector(3, 1), projector(3, 2)}}));
}

TEST(Dynamics, SuperoperatorActsOnColumnMajorVec) {
  Rng rng(23);
  for (int n : {2, 3}) {
    const KrausSet k{random_kraus(n, 3, true, rng)};
    const CMatrix s = superoperator_matrix(k);
    const CMatrix rho = random_density(n, rng);
    const CVec vec_in = Eigen::Map<const CVec>(rho.data(), n * n);
    const CMatrix out = k.apply(rho);
    const CVec vec_out = Eigen::Map<const CVec>(out.data(), n * n);
    EXPECT_LE(max_abs(CMatrix(s * vec_in - vec_out)), 1e-13);
  }
}

TEST(Dynamics, TransposeMapIsNotCompletelyPositive) {
  const CMatrix s = transpose_superoperator(2);
  const CMatrix choi = choi_matrix(s, 2);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(choi / 2.0);
  Eigen::Vector4d expected(-0.5, 0.5, 0.5, 0.5);
  EXPECT_LE((eig.eigenvalues() - expected).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_FALSE(is_completely_positive(s, 2));
  // it still maps density operators to density operators
  Rng rng(24);
  const CMatrix rho = random_density(2, rng);
  const CVec v = Eigen::Map<const CVec>(rho.data(), 4);
  const CVec w = s * v;
  EXPECT_LE(max_abs(CMatrix(Eigen::Map<const CMatrix>(w.data(), 2, 2) - rho.transpose())), 0.0);
}

TEST(Dynamics, KrausMapsAreCompletelyPositive) {
  Rng rng(25);
  for (int n : {2, 3}) {
    for (int c : {1, 2, 4}) {
      EXPECT_TRUE(is_completely_positive(KrausSet{random_kraus(n, c, false, rng)}));
    }
  }
  EXPECT_TRUE(is_completely_positive(depolarizing(1.0)));
  EXPECT_THROW(choi_matrix(CMatrix::Identity(3, 3), 2), DimensionMismatch);
}

TEST_F(QubitDynamics, Reversibility) {
  Rng rng(26);
  std::vector<PVector> witnesses;
  for (int k = 0; k < 4; ++k) witnesses.push_back(t.fiducial_state(k));
  for (int k = 0; k < 20; ++k) witnesses.push_back(p_of(random_pure_density(2, rng), t));

  EXPECT_TRUE(is_reversible(z_from_unitary(random_unitary(2, rng), *t.frame, t.d), witnesses, t));
  EXPECT_FALSE(is_reversible(z_of(KrausSet{{projector(2, 0)}}), witnesses, t));
  // invertible as a matrix, but its inverse leaves the state space
  const auto dep = z_of(depolarizing(0.5));
  EXPECT_LT(std::abs(dep.z.determinant()), 1.0);
  EXPECT_GT(std::abs(dep.z.determinant()), 1e-3);
  EXPECT_FALSE(is_reversible(dep, witnesses, t));
}

TEST_F(QubitDynamics, VonNeumannMeasurementUpdate) {
  std::vector<MeasurementBranch> branches;
  const auto rs = t.basis_measurements();
  for (int l = 0; l < 2; ++l) {
    const KrausSet k{{projector(2, l)}};
    branches.push_back({z_of(k), rs[l], k});
  }
  std::vector<PVector> witnesses;
  Rng rng(27);
  for (int k = 0; k < 20; ++k) witnesses.push_back(p_of(random_density(2, rng), t));
  const auto report = check_measurement_update(branches, t, witnesses);
  EXPECT_TRUE(report.passed());
  EXPECT_TRUE(report.kraus_complete.value());
  EXPECT_LE(report.max_outcome_deviation, 1e-12);

  const std::vector<MeasurementBranch> partial{branches[0]};
  const auto bad = check_measurement_update(partial, t, witnesses);
  EXPECT_FALSE(bad.passed());
  EXPECT_FALSE(bad.total_preserving);
  EXPECT_FALSE(bad.kraus_complete.value());
  EXPECT_FALSE(bad.violations.empty());
}

TEST_F(QubitDynamics, CoinFlipMeasurementUpdate) {
  const KrausSet k{{CMatrix::Identity(2, 2) / std::sqrt(2.0)}};
  const RVector r_half{0.5 * t.identity.values, Role::Measurement};
  const std::vector<MeasurementBranch> branches{{z_of(k), r_half, k}, {z_of(k), r_half, k}};
  std::vector<PVector> witnesses{t.fiducial_state(0), t.fiducial_state(3)};
  const auto report = check_measurement_update(branches, t, witnesses);
  EXPECT_TRUE(report.passed());
  // Z_l is half the identity
  EXPECT_LE(max_abs(RMatrix(branches[0].z.z - 0.5 * RMatrix::Identity(4, 4))), 1e-14);
}

TEST_F(QubitDynamics, MismatchedOutcomeMeasurementIsFlagged) {
  const KrausSet k{{projector(2, 0)}};
  const auto rs = t.basis_measurements();
  const std::vector<MeasurementBranch> branches{{z_of(k), rs[1], std::nullopt},
                                                {z_of(KrausSet{{projector(2, 1)}}), rs[0],
                                                 std::nullopt}};
  const std::vector<PVector> witnesses{t.fiducial_state(0)};
  const auto report = check_measurement_update(branches, t, witnesses);
  EXPECT_FALSE(report.outcome_normalization);
  EXPECT_TRUE(report.total_preserving);
  EXPECT_FALSE(report.kraus_complete.has_value());
  EXPECT_NEAR(report.max_outcome_deviation, 1.0, 1e-14);
}

TEST(Dynamics, ConnectingUnitaryMapsStates) {
  Rng rng(28);
  for (int n : {2, 3, 5}) {
    const CVec a = random_pure_vector(n, rng);
    const CVec b = random_pure_vector(n, rng);
    const CMatrix u = connecting_unitary(a, b);
    EXPECT_LE(max_abs(CMatrix(u.adjoint() * u - CMatrix::Identity(n, n))), 1e-12);
    EXPECT_LE(max_abs(CMatrix(u * a - b)), 1e-12);
  }
}

TEST(Dynamics, QuantumContinuityBetweenBasisStates) {
  const Theory t = quantum_theory(2);
  const auto r0 = r_from_p(t.fiducial_state(0), t.d);
  const auto r1 = r_from_p(t.fiducial_state(1), t.d);
  const auto rep = continuity_probe(r0, r1, 100, t);
  EXPECT_TRUE(rep.pure_path);
  EXPECT_LE(rep.max_purity_deviation, 1e-9);
  EXPECT_NEAR(rep.midpoint_purity, 1.0, 1e-9);
  EXPECT_LE(rep.endpoint_error, 1e-9);
  EXPECT_EQ(rep.steps, 100);
}

TEST(Dynamics, QuantumContinuityRandomPairs) {
  for (int n : {2, 3, 4}) {
    const Theory t = quantum_theory(n);
    Rng rng(29 + n);
    for (int k = 0; k < 10; ++k) {
      const auto ra = r_from_p(p_of(random_pure_density(n, rng), t), t.d);
      const auto rb = r_from_p(p_of(random_pure_density(n, rng), t), t.d);
      EXPECT_TRUE(continuity_probe(ra, rb, 50, t).pure_path);
    }
  }
}

TEST(Dynamics, ClassicalSegmentLeavesPureStates) {
  const Theory c = classical_theory(2);
  const RVector a{(RVec(2) << 1, 0).finished()};
  const RVector b{(RVec(2) << 0, 1).finished()};
  const auto rep = continuity_probe(a, b, 100, c);
  EXPECT_FALSE(rep.pure_path);
  EXPECT_DOUBLE_EQ(rep.midpoint_purity, 0.5);
  EXPECT_DOUBLE_EQ(rep.max_purity_deviation, 0.5);
  // the degenerate path between a state and itself is pure
  EXPECT_TRUE(continuity_probe(a, a, 10, c).pure_path);
}

TEST(Dynamics, ContinuityRejectsMixedEndpoints) {
  const Theory t = quantum_theory(2);
  const auto mixed = r_from_p(PVector{RVec::Constant(4, 0.5), 2}, t.d);
  const auto pure = r_from_p(t.fiducial_state(0), t.d);
  EXPECT_THROW(continuity_probe(mixed, pure, 10, t), ImpureState);
  EXPECT_THROW(continuity_probe(pure, pure, 0, t), OutOfRange);
}

TEST(Dynamics, CompositionIsMatrixProduct) {
  for (int n : {2, 3}) {
    const Theory t = quantum_theory(n);
    Rng rng(30 + n);
    for (int k = 0; k < 10; ++k) {
      const KrausSet first{random_kraus(n, 2, false, rng)};
      const KrausSet second{random_kraus(n, 3, true, rng)};
      const auto z1 = z_from_kraus(first, *t.frame, t.d);
      const auto z2 = z_from_kraus(second, *t.frame, t.d);
      const auto z21 = z_from_kraus(second.after(first), *t.frame, t.d);
      EXPECT_LE(max_abs(RMatrix(z21.z - z2.z * z1.z)), 1e-10);
    }
  }
}

TEST(Dynamics, TransformCommutesWithOperatorMap) {
  for (int n : {2, 3}) {
    const Theory t = quantum_theory(n);
    Rng rng(40 + n);
    double worst = 0.0;
    for (int m = 0; m < 50; ++m) {
      const KrausSet k{random_kraus(n, 1 + m % 4, m % 2 == 0, rng)};
      const auto z = z_from_kraus(k, *t.frame, t.d);
      for (int s = 0; s < 50; ++s) {
        const CMatrix rho = random_density(n, rng);
        const RVec lhs = apply_transform(z, p_of(rho, t)).values;
        const RVec rhs = p_of(k.apply(rho), t).values;
        worst = std::max(worst, max_abs(RVec(lhs - rhs)));
      }
    }
    EXPECT_LE(worst, 1e-10) << n;
  }
}

TEST(Dynamics, TracePreservingMapsKeepNormalization) {
  const Theory t = quantum_theory(3);
  Rng rng(50);
  for (int m = 0; m < 20; ++m) {
    const KrausSet k{random_kraus(3, 2, true, rng)};
    const auto z = z_from_kraus(k, *t.frame, t.d);
    const auto p = p_of(random_density(3, rng), t);
    EXPECT_NEAR(normalization(apply_transform(z, p), t.identity), normalization(p, t.identity),
                1e-12);
    EXPECT_LE(max_abs(RVec(z.z.transpose() * t.identity.values - t.identity.values)), 1e-12);
  }
}

TEST(Dynamics, UnitariesPreservePurity) {
  const Theory t = quantum_theory(3);
  Rng rng(51);
  for (int m = 0; m < 20; ++m) {
    const auto z = z_from_unitary(random_unitary(3, rng), *t.frame, t.d);
    const auto p = p_of(random_pure_density(3, rng), t);
    const auto r = r_from_p(apply_transform(z, p), t.d);
    EXPECT_TRUE(is_pure(r, t.d, t.identity));
  }
}

}  // namespace
}  // namespace gpt
