#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gpt/theory.hpp"

namespace gpt {

/// Operators M_l of a superoperator rho -> sum_l M_l rho M_l^dag.
struct KrausSet {
  std::vector<CMatrix> ops;

  int dimension() const { return ops.empty() ? 0 : static_cast<int>(ops.front().rows()); }
  /// sum_l M_l^dag M_l
  CMatrix effect_sum() const;
  CMatrix apply(const CMatrix& rho) const;
  /// Kraus set of (*this) applied after `first`.
  KrausSet after(const KrausSet& first) const;
};

enum class Provenance { FromUnitary, FromKraus, Raw };

std::string to_string(Provenance p);

/// K x K real matrix acting on p-vectors.
struct TransformMatrix {
  RMatrix z;
  int dimension = 0;
  Provenance provenance = Provenance::Raw;
};

/// Z = [tr(P_i $(P_j))] D^{-1}.
TransformMatrix z_from_kraus(const KrausSet& kraus, const FiducialFrame& frame, const DMatrix& d);
/// Throws NotUnitary unless u^dag u = I to 1e-10.
TransformMatrix z_from_unitary(const CMatrix& u, const FiducialFrame& frame, const DMatrix& d);
PVector apply_transform(const TransformMatrix& z, const PVector& p);

/// I - sum M^dag M positive semidefinite to 1e-10.
bool is_trace_nonincreasing(const KrausSet& kraus);
/// sum M^dag M = I to `tol`.
bool is_trace_preserving(const KrausSet& kraus, double tol = kPsdTol);

/// N^2 x N^2 matrix of the map on column-major vectorized operators:
/// vec(M rho M^dag) = (conj(M) (x) M) vec(rho).
CMatrix superoperator_matrix(const KrausSet& kraus);
/// The transpose map rho -> rho^T as a superoperator matrix.
CMatrix transpose_superoperator(int n);
/// Choi matrix sum_ij |i><j| (x) $(|i><j|). Throws DimensionMismatch for a
/// superoperator that is not N^2 x N^2.
CMatrix choi_matrix(const CMatrix& superop, int n);
/// Choi matrix Hermitian and positive semidefinite to 1e-10.
bool is_completely_positive(const CMatrix& superop, int n);
bool is_completely_positive(const KrausSet& kraus);

/// Z invertible (condition number below 1e9) and Z^{-1} maps every witness
/// to a valid state of `theory` (entries and normalization in bounds, and for
/// quantum theories a reconstructed operator that is PSD to 1e-9).
bool is_reversible(const TransformMatrix& z, std::span<const PVector> witnesses,
                   const Theory& theory);

/// One outcome channel of a measurement: its transform and outcome measurement.
struct MeasurementBranch {
  TransformMatrix z;
  RVector r;
  std::optional<KrausSet> kraus;
};

struct MeasurementUpdateReport {
  bool outcome_normalization = true;  // r_I . Z_l p = r_l . p on every witness
  bool total_preserving = true;       // (sum Z_l)^T r_I = r_I
  std::optional<bool> kraus_complete;  // sum M^dag M = I, when Kraus sets are given
  double max_outcome_deviation = 0.0;
  double max_total_deviation = 0.0;
  double max_kraus_deviation = 0.0;
  std::vector<std::string> violations;

  bool passed() const {
    return outcome_normalization && total_preserving && kraus_complete.value_or(true);
  }
};

MeasurementUpdateReport check_measurement_update(std::span<const MeasurementBranch> branches,
                                                 const Theory& theory,
                                                 std::span<const PVector> witnesses,
                                                 double tol = kPsdTol);

struct ContinuityReport {
  TheoryKind mode;
  int steps = 0;
  /// max over path points of |r^T D r - 1|
  double max_purity_deviation = 0.0;
  /// r^T D r at the path midpoint
  double midpoint_purity = 1.0;
  /// distance of the path end from the target state (quantum mode)
  double endpoint_error = 0.0;
  /// whether a path of pure states joins the endpoints
  bool pure_path = false;
};

/// Quantum theories: follows U(t) = exp(t log U_ab) where U_ab maps the
/// endpoint state vectors onto each other. Classical theories: walks the
/// straight segment, the only path available inside the simplex. Throws
/// ImpureState if either endpoint is not pure.
ContinuityReport continuity_probe(const RVector& r_a, const RVector& r_b, int steps,
                                  const Theory& theory);

/// Unitary with U psi_a = psi_b, other columns completed by Gram-Schmidt
/// over the standard basis.
CMatrix connecting_unitary(const CVec& psi_a, const CVec& psi_b);

}  // namespace gpt
