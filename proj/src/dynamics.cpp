#include "gpt/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "gpt/kernels.hpp"

namespace gpt {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::FromUnitary:
      return "from-unitary";
    case Provenance::FromKraus:
      return "from-kraus";
    case Provenance::Raw:
      return "raw";
  }
  return "raw";
}

CMatrix KrausSet::effect_sum() const {
  const int n = dimension();
  CMatrix sum = CMatrix::Zero(n, n);
  for (const auto& m : ops) sum += m.adjoint() * m;
  return sum;
}

CMatrix KrausSet::apply(const CMatrix& rho) const {
  if (ops.empty()) return CMatrix::Zero(rho.rows(), rho.cols());
  if (rho.rows() != dimension() || rho.cols() != dimension()) {
    throw DimensionMismatch("Kraus set and operator dimensions differ");
  }
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& m : ops) out += m * rho * m.adjoint();
  return out;
}

KrausSet KrausSet::after(const KrausSet& first) const {
  KrausSet out;
  for (const auto& m2 : ops) {
    for (const auto& m1 : first.ops) out.ops.push_back(m2 * m1);
  }
  return out;
}

namespace {

void require_square_ops(const KrausSet& kraus, int n) {
  if (kraus.ops.empty()) throw DimensionMismatch("empty Kraus set");
  for (const auto& m : kraus.ops) {
    if (m.rows() != n || m.cols() != n) {
      throw DimensionMismatch("Kraus operator is " + std::to_string(m.rows()) + "x" +
                              std::to_string(m.cols()) + ", expected " + std::to_string(n));
    }
  }
}

double min_hermitian_eigenvalue(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

}  // namespace

TransformMatrix z_from_kraus(const KrausSet& kraus, const FiducialFrame& frame,
                             const DMatrix& d) {
  require_square_ops(kraus, frame.dimension());
  if (d.size() != frame.size()) throw DimensionMismatch("D size differs from frame size");
  std::vector<CMatrix> images;
  images.reserve(frame.size());
  for (const auto& p : frame.projectors()) images.push_back(kraus.apply(p));
  const auto g = kernels::cross_traces(frame.projectors(), images);
  // Z D = G, and D is symmetric, so Z^T = D^{-1} G^T.
  RMatrix z = d.solve(RMatrix(g.real.transpose())).transpose();
  return TransformMatrix{std::move(z), frame.dimension(), Provenance::FromKraus};
}

TransformMatrix z_from_unitary(const CMatrix& u, const FiducialFrame& frame, const DMatrix& d) {
  const int n = frame.dimension();
  if (u.rows() != n || u.cols() != n) throw DimensionMismatch("unitary has wrong shape");
  if ((u.adjoint() * u - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
    throw NotUnitary("u^dag u differs from the identity by more than 1e-10");
  }
  TransformMatrix out = z_from_kraus(KrausSet{{u}}, frame, d);
  out.provenance = Provenance::FromUnitary;
  return out;
}

PVector apply_transform(const TransformMatrix& z, const PVector& p) {
  if (z.z.cols() != p.size()) throw DimensionMismatch("transform and p-vector sizes differ");
  return PVector{z.z * p.values, p.dimension, p.theory};
}

bool is_trace_nonincreasing(const KrausSet& kraus) {
  if (kraus.ops.empty()) return true;
  const int n = kraus.dimension();
  return min_hermitian_eigenvalue(CMatrix::Identity(n, n) - kraus.effect_sum()) >= -kPsdTol;
}

bool is_trace_preserving(const KrausSet& kraus, double tol) {
  if (kraus.ops.empty()) return false;
  const int n = kraus.dimension();
  return (kraus.effect_sum() - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= tol;
}

CMatrix superoperator_matrix(const KrausSet& kraus) {
  const int n = kraus.dimension();
  require_square_ops(kraus, n);
  const int n2 = n * n;
  CMatrix s = CMatrix::Zero(n2, n2);
  for (const auto& m : kraus.ops) {
    const CMatrix mc = m.conjugate();
    // (A (x) B)[(i,k),(j,l)] = A(i,j) B(k,l), with the A index most significant.
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) s(i * n + k, j * n + l) += mc(i, j) * m(k, l);
  }
  return s;
}

CMatrix transpose_superoperator(int n) {
  if (n < 1) throw InvalidDimension("transpose map needs n >= 1");
  const int n2 = n * n;
  CMatrix s = CMatrix::Zero(n2, n2);
  // Column-major vec: entry (r, c) sits at r + n c.
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) s(c + n * r, r + n * c) = 1.0;
  return s;
}

CMatrix choi_matrix(const CMatrix& superop, int n) {
  const int n2 = n * n;
  if (n < 1 || superop.rows() != n2 || superop.cols() != n2) {
    throw DimensionMismatch("superoperator must be " + std::to_string(n2) + "x" +
                            std::to_string(n2));
  }
  CMatrix choi = CMatrix::Zero(n2, n2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // $(|i><j|) is column (i + n j) of the superoperator, unvectorized.
      const auto image = superop.col(i + n * j);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) choi(i * n + r, j * n + c) = image(r + n * c);
    }
  }
  return choi;
}

bool is_completely_positive(const CMatrix& superop, int n) {
  const CMatrix choi = choi_matrix(superop, n);
  if ((choi - choi.adjoint()).cwiseAbs().maxCoeff() > kPsdTol) return false;
  return min_hermitian_eigenvalue(choi) >= -kPsdTol;
}

bool is_completely_positive(const KrausSet& kraus) {
  return is_completely_positive(superoperator_matrix(kraus), kraus.dimension());
}

bool is_reversible(const TransformMatrix& z, std::span<const PVector> witnesses,
                   const Theory& theory) {
  if (z.z.rows() != z.z.cols() || z.z.rows() != theory.k()) {
    throw DimensionMismatch("transform size differs from theory K");
  }
  Eigen::JacobiSVD<RMatrix> svd(z.z);
  const RVec& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin <= 0.0 || s(0) / smin >= kConditionCutoff) return false;
  const Eigen::PartialPivLU<RMatrix> lu(z.z);
  for (const auto& w : witnesses) {
    const PVector back{lu.solve(w.values), w.dimension, w.theory};
    if (!is_valid_state(back, theory.identity, kPurityTol)) return false;
    if (theory.frame) {
      const auto rho = density_from_r(r_from_p(back, theory.d), *theory.frame);
      if (min_hermitian_eigenvalue(rho.matrix) < -kPurityTol) return false;
    }
  }
  return true;
}

MeasurementUpdateReport check_measurement_update(std::span<const MeasurementBranch> branches,
                                                 const Theory& theory,
                                                 std::span<const PVector> witnesses,
                                                 double tol) {
  if (branches.empty()) throw OutOfRange("check_measurement_update: no branches");
  MeasurementUpdateReport report;
  const RVec& r_identity = theory.identity.values;
  RMatrix total = RMatrix::Zero(theory.k(), theory.k());
  for (std::size_t l = 0; l < branches.size(); ++l) {
    const auto& br = branches[l];
    total += br.z.z;
    for (const auto& p : witnesses) {
      const double dev = std::abs(r_identity.dot(br.z.z * p.values) - br.r.values.dot(p.values));
      report.max_outcome_deviation = std::max(report.max_outcome_deviation, dev);
    }
  }
  if (report.max_outcome_deviation > tol) {
    report.outcome_normalization = false;
    report.violations.push_back("r_I . Z_l p != r_l . p");
  }
  report.max_total_deviation = (total.transpose() * r_identity - r_identity).cwiseAbs().maxCoeff();
  if (report.max_total_deviation > tol) {
    report.total_preserving = false;
    report.violations.push_back("(sum Z_l)^T r_I != r_I");
  }
  const bool have_kraus = std::all_of(branches.begin(), branches.end(),
                                      [](const MeasurementBranch& b) { return b.kraus.has_value(); });
  if (have_kraus) {
    const int n = theory.n;
    CMatrix sum = CMatrix::Zero(n, n);
    for (const auto& br : branches) sum += br.kraus->effect_sum();
    report.max_kraus_deviation = (sum - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
    report.kraus_complete = report.max_kraus_deviation <= tol;
    if (!*report.kraus_complete) report.violations.push_back("sum M^dag M != I");
  }
  return report;
}

CMatrix connecting_unitary(const CVec& psi_a, const CVec& psi_b) {
  const auto n = psi_a.size();
  if (psi_b.size() != n) throw DimensionMismatch("state vectors differ in length");
  auto complete = [n](const CVec& first) {
    CMatrix basis(n, n);
    basis.col(0) = first / first.norm();
    Eigen::Index filled = 1;
    for (Eigen::Index e = 0; e < n && filled < n; ++e) {
      CVec v = CVec::Unit(n, e);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index c = 0; c < filled; ++c) {
          v -= basis.col(c) * basis.col(c).dot(v);
        }
      }
      const double norm = v.norm();
      if (norm > 1e-8) basis.col(filled++) = v / norm;
    }
    return basis;
  };
  return complete(psi_b) * complete(psi_a).adjoint();
}

namespace {

double self_overlap(const RVec& r, const DMatrix& d) { return r.dot(d.matrix() * r); }

CVec dominant_vector(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (rho + rho.adjoint()));
  return eig.eigenvectors().col(rho.rows() - 1);
}

}  // namespace

ContinuityReport continuity_probe(const RVector& r_a, const RVector& r_b, int steps,
                                  const Theory& theory) {
  if (steps < 1) throw OutOfRange("continuity_probe: steps must be >= 1");
  if (!is_pure(r_a, theory.d, theory.identity) || !is_pure(r_b, theory.d, theory.identity)) {
    throw ImpureState("continuity_probe: endpoints must be pure");
  }
  ContinuityReport report{theory.kind, steps};

  if (theory.kind == TheoryKind::Classical || !theory.frame) {
    // Inside the simplex the only path is the segment between the vertices.
    bool all_pure = true;
    for (int s = 0; s <= steps; ++s) {
      const double t = static_cast<double>(s) / steps;
      const RVec r = (1.0 - t) * r_a.values + t * r_b.values;
      const double dev = std::abs(self_overlap(r, theory.d) - 1.0);
      report.max_purity_deviation = std::max(report.max_purity_deviation, dev);
      if (dev > kPurityTol) all_pure = false;
    }
    report.midpoint_purity = self_overlap(0.5 * (r_a.values + r_b.values), theory.d);
    report.pure_path = all_pure;
    return report;
  }

  const FiducialFrame& frame = *theory.frame;
  const CMatrix rho_a = density_from_r(r_a, frame).matrix;
  const CMatrix rho_b = density_from_r(r_b, frame).matrix;
  const CMatrix u = connecting_unitary(dominant_vector(rho_a), dominant_vector(rho_b));
  const CMatrix log_u = u.log();

  auto purity_at = [&](double t, CMatrix* rho_out) {
    const CMatrix ut = (t * log_u).exp();
    const CMatrix rho = ut * rho_a * ut.adjoint();
    if (rho_out) *rho_out = rho;
    const RVector r = r_from_p(p_from_density(DensityOperator{rho}, frame), theory.d);
    return self_overlap(r.values, theory.d);
  };

  CMatrix rho_end;
  for (int s = 0; s <= steps; ++s) {
    const double t = static_cast<double>(s) / steps;
    const double purity = purity_at(t, s == steps ? &rho_end : nullptr);
    report.max_purity_deviation = std::max(report.max_purity_deviation, std::abs(purity - 1.0));
  }
  report.midpoint_purity = purity_at(0.5, nullptr);
  report.endpoint_error = (rho_end - rho_b).cwiseAbs().maxCoeff();
  report.pure_path = report.max_purity_deviation <= kPurityTol && report.endpoint_error <= kPurityTol;
  return report;
}

}  // namespace gpt
