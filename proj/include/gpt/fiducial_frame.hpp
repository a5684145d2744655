#pragma once

#include <vector>

#include "gpt/types.hpp"

namespace gpt {

/// Position of a fiducial projector in the canonical ordering: the N basis
/// projectors first, then for each pair m < n (lexicographic) the x and the
/// y projector of that two-dimensional subspace.
struct FiducialLabel {
  enum class Kind { Basis, X, Y };
  Kind kind = Kind::Basis;
  int m = 0;  // basis index, or first index of the pair
  int n = 0;  // second index of the pair (equal to m for Basis)

  bool operator==(const FiducialLabel&) const = default;
};

/// Canonical labels for dimension n, in frame order.
std::vector<FiducialLabel> canonical_labels(int n);

/// Basis indices a fiducial is supported on.
std::vector<int> support_of(const FiducialLabel& label);

/// Ordered set of K = N^2 rank-one Hermitian projectors spanning the
/// Hermitian operators on C^N. Immutable once built.
class FiducialFrame {
 public:
  /// Validates the projector invariants (Hermitian, idempotent, unit trace
  /// to 1e-12) and linear independence; throws DegenerateFrame otherwise.
  FiducialFrame(int dimension, std::vector<CMatrix> projectors,
                std::vector<FiducialLabel> labels);

  int dimension() const { return dimension_; }
  int size() const { return static_cast<int>(projectors_.size()); }
  const std::vector<CMatrix>& projectors() const { return projectors_; }
  const CMatrix& operator[](int k) const { return projectors_[k]; }
  const std::vector<FiducialLabel>& labels() const { return labels_; }

 private:
  int dimension_;
  std::vector<CMatrix> projectors_;
  std::vector<FiducialLabel> labels_;
};

/// Rank of the K x 2N^2 real flattening (Re, Im) with relative SVD threshold.
int flattened_rank(const std::vector<CMatrix>& ops, double rel_tol = kRankRelTol);

/// K x K real Gram matrix of a frame, with a factorization cached for solves.
class DMatrix {
 public:
  DMatrix(RMatrix m, int dimension);

  const RMatrix& matrix() const { return m_; }
  int dimension() const { return dimension_; }
  int size() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }

  double min_singular_value() const { return min_singular_; }
  double condition_number() const { return condition_; }
  bool invertible() const { return min_singular_ > kMinSingular; }

  /// Solves D x = b. Throws SingularMatrix when D is not invertible.
  RVec solve(const RVec& b) const;
  /// Solves D X = B column by column.
  RMatrix solve(const RMatrix& b) const;

 private:
  void require_invertible() const;

  RMatrix m_;
  int dimension_;
  double min_singular_ = 0.0;
  double condition_ = 0.0;
  Eigen::PartialPivLU<RMatrix> lu_;
};

struct Signature {
  std::vector<long long> x;
  bool operator==(const Signature&) const = default;
};

/// Throws InvalidDimension for n == 0.
FiducialFrame build_canonical_frame(int n);

/// D_ij = Re tr(P_i P_j). Throws DegenerateFrame if the imaginary residue
/// exceeds 1e-12, D is not symmetric, or D is singular.
DMatrix gram_matrix(const FiducialFrame& frame);

/// Solves K(N) = sum_k C(N,k) x_k for N = 1..N_max. Throws NoSignature when
/// the table is not consecutive from 1 or any x_k is negative.
Signature signature_from_table(const KTable& table);

/// Inverse of signature_from_table: K(N) for N = 1..n_max.
KTable table_from_signature(const Signature& sig, int n_max);

}  // namespace gpt
