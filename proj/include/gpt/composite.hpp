#pragma once

#include "gpt/dynamics.hpp"
#include "gpt/theory.hpp"

namespace gpt {

/// K_A x K_B matrix of joint fiducial probabilities p_ij.
struct CompositeState {
  RMatrix p;
  int n_a = 0;
  int n_b = 0;

  int k_a() const { return static_cast<int>(p.rows()); }
  int k_b() const { return static_cast<int>(p.cols()); }
};

/// p_a p_b^T
CompositeState product_state(const PVector& p_a, const PVector& p_b);

/// p[i][j] = tr((P_i (x) P_j) rho_ab).
CompositeState composite_from_density(const CMatrix& rho_ab, const FiducialFrame& frame_a,
                                      const FiducialFrame& frame_b);

/// Z_A p Z_B^T
CompositeState local_transform(const CompositeState& pt, const TransformMatrix& z_a,
                               const TransformMatrix& z_b);

/// Column j of p: the A-state prepared by conditioning on fiducial j at B.
PVector conditional_state(const CompositeState& pt, int j);

/// Joint normalization r_I^A^T p r_I^B.
double joint_normalization(const CompositeState& pt, const RVector& id_a, const RVector& id_b);

/// r solving p = D_A r D_B^T.
RMatrix composite_r(const CompositeState& pt, const DMatrix& d_a, const DMatrix& d_b);

/// sum_ij r_ij P_i (x) P_j
CMatrix density_from_composite_r(const RMatrix& r, const FiducialFrame& frame_a,
                                 const FiducialFrame& frame_b);

/// Row-major flattening of p into a K_A K_B vector.
RVec flatten(const CompositeState& pt);

/// Kronecker product with the first factor most significant.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Transpose on the B factor of an (n_a n_b)-dimensional operator.
CMatrix partial_transpose(const CMatrix& rho, int n_a, int n_b);

/// Rank of the K_A K_B product states built from fiducial-state pairs.
int dof_count_check(const Theory& a, const Theory& b);

}  // namespace gpt
