#include "gpt/composite.hpp"

#include "gpt/kernels.hpp"

namespace gpt {

CompositeState product_state(const PVector& p_a, const PVector& p_b) {
  return CompositeState{p_a.values * p_b.values.transpose(), p_a.dimension, p_b.dimension};
}

CompositeState composite_from_density(const CMatrix& rho_ab, const FiducialFrame& frame_a,
                                      const FiducialFrame& frame_b) {
  const auto table = kernels::joint_traces(frame_a.projectors(), frame_b.projectors(), rho_ab);
  return CompositeState{table.real, frame_a.dimension(), frame_b.dimension()};
}

CompositeState local_transform(const CompositeState& pt, const TransformMatrix& z_a,
                               const TransformMatrix& z_b) {
  if (z_a.z.cols() != pt.k_a() || z_b.z.cols() != pt.k_b()) {
    throw DimensionMismatch("local_transform: transform sizes differ from composite shape");
  }
  return CompositeState{z_a.z * pt.p * z_b.z.transpose(), pt.n_a, pt.n_b};
}

PVector conditional_state(const CompositeState& pt, int j) {
  if (j < 0 || j >= pt.k_b()) {
    throw OutOfRange("conditional_state: index " + std::to_string(j) + " outside [0, " +
                     std::to_string(pt.k_b()) + ")");
  }
  return PVector{pt.p.col(j), pt.n_a, TheoryKind::Quantum};
}

double joint_normalization(const CompositeState& pt, const RVector& id_a, const RVector& id_b) {
  return id_a.values.dot(pt.p * id_b.values);
}

RMatrix composite_r(const CompositeState& pt, const DMatrix& d_a, const DMatrix& d_b) {
  // p = D_A r D_B^T  =>  X = D_A^{-1} p, then r^T = D_B^{-1} X^T.
  const RMatrix x = d_a.solve(pt.p);
  return d_b.solve(RMatrix(x.transpose())).transpose();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix density_from_composite_r(const RMatrix& r, const FiducialFrame& frame_a,
                                 const FiducialFrame& frame_b) {
  if (r.rows() != frame_a.size() || r.cols() != frame_b.size()) {
    throw DimensionMismatch("composite r has wrong shape");
  }
  const int n = frame_a.dimension() * frame_b.dimension();
  CMatrix out = CMatrix::Zero(n, n);
  for (int i = 0; i < frame_a.size(); ++i)
    for (int j = 0; j < frame_b.size(); ++j) out += r(i, j) * kron(frame_a[i], frame_b[j]);
  return out;
}

RVec flatten(const CompositeState& pt) {
  RVec out(pt.p.size());
  for (int i = 0; i < pt.k_a(); ++i)
    for (int j = 0; j < pt.k_b(); ++j) out(i * pt.k_b() + j) = pt.p(i, j);
  return out;
}

CMatrix partial_transpose(const CMatrix& rho, int n_a, int n_b) {
  if (rho.rows() != n_a * n_b || rho.cols() != n_a * n_b) {
    throw DimensionMismatch("partial_transpose: shape differs from n_a n_b");
  }
  CMatrix out(rho.rows(), rho.cols());
  for (int a = 0; a < n_a; ++a)
    for (int b = 0; b < n_b; ++b)
      for (int c = 0; c < n_a; ++c)
        for (int d = 0; d < n_b; ++d) out(a * n_b + b, c * n_b + d) = rho(a * n_b + d, c * n_b + b);
  return out;
}

int dof_count_check(const Theory& a, const Theory& b) {
  const int ka = a.k();
  const int kb = b.k();
  RMatrix stacked(ka * kb, ka * kb);
  for (int i = 0; i < ka; ++i) {
    for (int j = 0; j < kb; ++j) {
      const auto pt = product_state(a.fiducial_state(i), b.fiducial_state(j));
      stacked.row(i * kb + j) = flatten(pt).transpose();
    }
  }
  Eigen::JacobiSVD<RMatrix> svd(stacked);
  const RVec& s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > kRankRelTol * s(0)) ++rank;
  }
  return rank;
}

}  // namespace gpt
