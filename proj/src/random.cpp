#include "gpt/random.hpp"

#include <cmath>

namespace gpt {

std::uint64_t split_seed(std::uint64_t root, std::uint64_t stream) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

CMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

CVec random_pure_vector(int n, Rng& rng) {
  CVec psi = ginibre(n, 1, rng).col(0);
  return psi / psi.norm();
}

CMatrix random_pure_density(int n, Rng& rng) {
  const CVec psi = random_pure_vector(n, rng);
  return psi * psi.adjoint();
}

CMatrix random_density(int n, Rng& rng) {
  const CMatrix g = ginibre(n, n, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

CMatrix random_unitary(int n, Rng& rng) {
  const CMatrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const Complex d = r(k, k);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(k) *= d / mag;
  }
  return q;
}

std::vector<CMatrix> random_kraus(int n, int count, bool trace_preserving, Rng& rng) {
  std::vector<CMatrix> ops;
  ops.reserve(count);
  CMatrix sum = CMatrix::Zero(n, n);
  for (int l = 0; l < count; ++l) {
    ops.push_back(ginibre(n, n, rng));
    sum += ops.back().adjoint() * ops.back();
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (sum + sum.adjoint()));
  if (trace_preserving) {
    // M_l -> M_l S^{-1/2} gives sum M^dag M = I.
    const CMatrix inv_sqrt = eig.operatorInverseSqrt();
    for (auto& m : ops) m = m * inv_sqrt;
  } else {
    std::uniform_real_distribution<double> shrink(0.5, 1.0);
    const double scale = std::sqrt(shrink(rng) / eig.eigenvalues().maxCoeff());
    for (auto& m : ops) m *= scale;
  }
  return ops;
}

}  // namespace gpt
