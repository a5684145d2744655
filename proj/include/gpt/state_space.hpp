#pragma once

#include <span>
#include <vector>

#include "gpt/fiducial_frame.hpp"
#include "gpt/types.hpp"

namespace gpt {

enum class Role { State, Measurement };

std::string to_string(Role role);

/// Probabilities of the K fiducial measurements for one preparation.
struct PVector {
  RVec values;
  int dimension = 0;
  TheoryKind theory = TheoryKind::Quantum;

  int size() const { return static_cast<int>(values.size()); }
};

/// Expansion coefficients over the fiducial frame; entries may be negative.
struct RVector {
  RVec values;
  Role role = Role::State;

  int size() const { return static_cast<int>(values.size()); }
};

/// Complex N x N operator representing a (possibly subnormalized) state.
struct DensityOperator {
  CMatrix matrix;
};

/// Complex N x N POVM element.
struct MeasurementOperator {
  CMatrix matrix;
};

// Validity predicates. Conversions never call these; callers decide policy.

/// Hermitian to 1e-12, eigenvalues >= -1e-10, 0 <= trace <= 1 + 1e-12.
bool is_valid_density(const CMatrix& rho);
/// Hermitian, eigenvalues in [-1e-10, 1 + 1e-10].
bool is_valid_measurement(const CMatrix& a);
/// Entries in [-tol, 1 + tol] and normalization in [-tol, 1 + tol].
bool is_valid_state(const PVector& p, const RVector& r_identity, double tol = kPurityTol);

PVector p_from_density(const DensityOperator& rho, const FiducialFrame& frame);
/// r = D^{-1} p via the cached LU factorization.
RVector r_from_p(const PVector& p, const DMatrix& d);
/// p = D r.
PVector p_from_r(const RVector& r, const DMatrix& d, TheoryKind theory = TheoryKind::Quantum);
/// rho = sum_k r_k P_k.
DensityOperator density_from_r(const RVector& r, const FiducialFrame& frame);
/// A = sum_k r_k P_k.
MeasurementOperator measurement_from_r(const RVector& r, const FiducialFrame& frame);

/// r_m^T D r_s. Not clamped to [0, 1].
double probability(const RVector& r_m, const DMatrix& d, const RVector& r_s);
/// mu = r_I . p
double normalization(const PVector& p, const RVector& r_identity);

/// |r^T D r - 1| <= tol and |mu - 1| <= tol.
bool is_pure(const RVector& r, const DMatrix& d, const RVector& r_identity,
             double tol = kPurityTol);

/// Convex combination; weights must be non-negative with sum <= 1 (the
/// deficit is weight on the null state). Throws OutOfRange otherwise.
PVector mix(std::span<const PVector> states, std::span<const double> weights);

/// Pure states of the classical theory: simplex points with sum p^2 = 1.
std::vector<PVector> classical_pure_states(int n);

}  // namespace gpt
