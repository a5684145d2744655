#include "gpt/fiducial_frame.hpp"

#include <cmath>
#include <string>

#include "gpt/kernels.hpp"

namespace gpt {

std::vector<FiducialLabel> canonical_labels(int n) {
  std::vector<FiducialLabel> labels;
  labels.reserve(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n; ++k) labels.push_back({FiducialLabel::Kind::Basis, k, k});
  for (int m = 0; m < n; ++m) {
    for (int k = m + 1; k < n; ++k) {
      labels.push_back({FiducialLabel::Kind::X, m, k});
      labels.push_back({FiducialLabel::Kind::Y, m, k});
    }
  }
  return labels;
}

std::vector<int> support_of(const FiducialLabel& label) {
  if (label.kind == FiducialLabel::Kind::Basis) return {label.m};
  return {label.m, label.n};
}

int flattened_rank(const std::vector<CMatrix>& ops, double rel_tol) {
  if (ops.empty()) return 0;
  const auto n2 = ops.front().size();
  RMatrix flat(static_cast<Eigen::Index>(ops.size()), 2 * n2);
  for (std::size_t k = 0; k < ops.size(); ++k) {
    const CMatrix& op = ops[k];
    for (Eigen::Index e = 0; e < n2; ++e) {
      flat(k, e) = op(e).real();
      flat(k, n2 + e) = op(e).imag();
    }
  }
  Eigen::JacobiSVD<RMatrix> svd(flat);
  const RVec& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++rank;
  }
  return rank;
}

FiducialFrame::FiducialFrame(int dimension, std::vector<CMatrix> projectors,
                             std::vector<FiducialLabel> labels)
    : dimension_(dimension), projectors_(std::move(projectors)), labels_(std::move(labels)) {
  if (dimension_ < 1) throw InvalidDimension("frame dimension must be >= 1");
  if (labels_.size() != projectors_.size()) {
    throw DimensionMismatch("frame: label count differs from projector count");
  }
  for (std::size_t k = 0; k < projectors_.size(); ++k) {
    const CMatrix& p = projectors_[k];
    if (p.rows() != dimension_ || p.cols() != dimension_) {
      throw DimensionMismatch("frame: projector " + std::to_string(k) + " has wrong shape");
    }
    const bool hermitian = (p - p.adjoint()).cwiseAbs().maxCoeff() <= kLinalgTol;
    const bool idempotent = (p * p - p).cwiseAbs().maxCoeff() <= kLinalgTol;
    const bool unit_trace = std::abs(p.trace() - Complex(1.0, 0.0)) <= kLinalgTol;
    if (!hermitian || !idempotent || !unit_trace) {
      throw DegenerateFrame("frame: element " + std::to_string(k) +
                            " is not a rank-one Hermitian projector");
    }
  }
  if (flattened_rank(projectors_) != static_cast<int>(projectors_.size())) {
    throw DegenerateFrame("frame: projectors are linearly dependent");
  }
}

DMatrix::DMatrix(RMatrix m, int dimension) : m_(std::move(m)), dimension_(dimension) {
  if (m_.rows() != m_.cols()) throw DimensionMismatch("D matrix must be square");
  if (m_.rows() == 0) throw InvalidDimension("D matrix is empty");
  Eigen::JacobiSVD<RMatrix> svd(m_);
  const RVec& s = svd.singularValues();
  min_singular_ = s(s.size() - 1);
  condition_ = min_singular_ > 0.0 ? s(0) / min_singular_ : INFINITY;
  lu_.compute(m_);
}

void DMatrix::require_invertible() const {
  if (!invertible()) {
    throw SingularMatrix("D matrix is singular (smallest singular value " +
                         std::to_string(min_singular_) + ")");
  }
}

RVec DMatrix::solve(const RVec& b) const {
  require_invertible();
  if (b.size() != m_.rows()) throw DimensionMismatch("D solve: vector length differs from K");
  return lu_.solve(b);
}

RMatrix DMatrix::solve(const RMatrix& b) const {
  require_invertible();
  if (b.rows() != m_.rows()) throw DimensionMismatch("D solve: row count differs from K");
  return lu_.solve(b);
}

FiducialFrame build_canonical_frame(int n) {
  if (n < 1) throw InvalidDimension("dimension must be >= 1, got " + std::to_string(n));
  const double s = 1.0 / std::sqrt(2.0);
  const auto labels = canonical_labels(n);
  std::vector<CMatrix> projectors;
  projectors.reserve(labels.size());
  for (const auto& label : labels) {
    CVec v = CVec::Zero(n);
    switch (label.kind) {
      case FiducialLabel::Kind::Basis:
        v(label.m) = 1.0;
        break;
      case FiducialLabel::Kind::X:
        v(label.m) = s;
        v(label.n) = s;
        break;
      case FiducialLabel::Kind::Y:
        v(label.m) = s;
        v(label.n) = Complex(0.0, s);
        break;
    }
    projectors.push_back(v * v.adjoint());
  }
  return FiducialFrame(n, std::move(projectors), labels);
}

DMatrix gram_matrix(const FiducialFrame& frame) {
  const auto table = kernels::cross_traces(frame.projectors(), frame.projectors());
  if (table.max_imag > kLinalgTol) {
    throw DegenerateFrame("gram_matrix: traces have imaginary part " +
                          std::to_string(table.max_imag));
  }
  if ((table.real - table.real.transpose()).cwiseAbs().maxCoeff() > kLinalgTol) {
    throw DegenerateFrame("gram_matrix: D is not symmetric");
  }
  DMatrix d(table.real, frame.dimension());
  if (!d.invertible()) throw DegenerateFrame("gram_matrix: D is singular; frame is dependent");
  return d;
}

namespace {

long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

Signature signature_from_table(const KTable& table) {
  if (table.empty()) throw NoSignature("empty K table");
  int expected = 1;
  for (const auto& [n, k] : table) {
    if (n != expected) throw NoSignature("K table must cover N = 1, 2, ... consecutively");
    ++expected;
  }
  const int n_max = static_cast<int>(table.size());
  Signature sig;
  sig.x.reserve(n_max);
  // K(N) = sum_{k<=N} C(N,k) x_k with C(N,N) = 1, so x_N follows row by row.
  for (int n = 1; n <= n_max; ++n) {
    long long rest = table.at(n);
    for (int k = 1; k < n; ++k) rest -= binomial(n, k) * sig.x[k - 1];
    if (rest < 0) {
      throw NoSignature("K table implies negative x_" + std::to_string(n));
    }
    sig.x.push_back(rest);
  }
  return sig;
}

KTable table_from_signature(const Signature& sig, int n_max) {
  KTable table;
  for (int n = 1; n <= n_max; ++n) {
    long long k = 0;
    for (int i = 1; i <= n && i <= static_cast<int>(sig.x.size()); ++i) {
      k += binomial(n, i) * sig.x[i - 1];
    }
    table[n] = k;
  }
  return table;
}

}  // namespace gpt
