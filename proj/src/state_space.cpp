#include "gpt/state_space.hpp"

#include <algorithm>
#include <cmath>

#include "gpt/kernels.hpp"

namespace gpt {

std::string to_string(Role role) { return role == Role::State ? "state" : "measurement"; }

std::string to_string(TheoryKind kind) {
  return kind == TheoryKind::Classical ? "classical" : "quantum";
}

TheoryKind theory_kind_from_string(const std::string& s) {
  if (s == "classical") return TheoryKind::Classical;
  if (s == "quantum") return TheoryKind::Quantum;
  throw ConfigError("unknown theory '" + s + "' (expected quantum or classical)");
}

namespace {

bool hermitian(const CMatrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

RVec hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

CMatrix expand(const RVec& r, const FiducialFrame& frame) {
  if (r.size() != frame.size()) {
    throw DimensionMismatch("r-vector has " + std::to_string(r.size()) + " entries, frame has " +
                            std::to_string(frame.size()));
  }
  const int n = frame.dimension();
  CMatrix out = CMatrix::Zero(n, n);
  for (int k = 0; k < frame.size(); ++k) out += r(k) * frame[k];
  return out;
}

}  // namespace

bool is_valid_density(const CMatrix& rho) {
  if (rho.size() == 0 || !hermitian(rho, kLinalgTol)) return false;
  const double tr = rho.trace().real();
  if (tr < -kLinalgTol || tr > 1.0 + kLinalgTol) return false;
  return hermitian_eigenvalues(rho).minCoeff() >= -kPsdTol;
}

bool is_valid_measurement(const CMatrix& a) {
  if (a.size() == 0 || !hermitian(a, kLinalgTol)) return false;
  const RVec ev = hermitian_eigenvalues(a);
  return ev.minCoeff() >= -kPsdTol && ev.maxCoeff() <= 1.0 + kPsdTol;
}

bool is_valid_state(const PVector& p, const RVector& r_identity, double tol) {
  if (p.size() != r_identity.size()) return false;
  if (p.size() > 0 && (p.values.minCoeff() < -tol || p.values.maxCoeff() > 1.0 + tol)) {
    return false;
  }
  const double mu = normalization(p, r_identity);
  return mu >= -tol && mu <= 1.0 + tol;
}

PVector p_from_density(const DensityOperator& rho, const FiducialFrame& frame) {
  const int n = frame.dimension();
  if (rho.matrix.rows() != n || rho.matrix.cols() != n) {
    throw DimensionMismatch("density operator is " + std::to_string(rho.matrix.rows()) + "x" +
                            std::to_string(rho.matrix.cols()) + ", frame dimension is " +
                            std::to_string(n));
  }
  const std::vector<CMatrix> single{rho.matrix};
  const auto table = kernels::cross_traces(frame.projectors(), single);
  return PVector{table.real.col(0), n, TheoryKind::Quantum};
}

RVector r_from_p(const PVector& p, const DMatrix& d) {
  return RVector{d.solve(p.values), Role::State};
}

PVector p_from_r(const RVector& r, const DMatrix& d, TheoryKind theory) {
  if (r.size() != d.size()) throw DimensionMismatch("r-vector length differs from K");
  return PVector{d.matrix() * r.values, d.dimension(), theory};
}

DensityOperator density_from_r(const RVector& r, const FiducialFrame& frame) {
  return DensityOperator{expand(r.values, frame)};
}

MeasurementOperator measurement_from_r(const RVector& r, const FiducialFrame& frame) {
  return MeasurementOperator{expand(r.values, frame)};
}

double probability(const RVector& r_m, const DMatrix& d, const RVector& r_s) {
  if (r_m.size() != d.size() || r_s.size() != d.size()) {
    throw DimensionMismatch("probability: vector lengths differ from K");
  }
  return r_m.values.dot(d.matrix() * r_s.values);
}

double normalization(const PVector& p, const RVector& r_identity) {
  if (p.size() != r_identity.size()) throw DimensionMismatch("normalization: length mismatch");
  return r_identity.values.dot(p.values);
}

bool is_pure(const RVector& r, const DMatrix& d, const RVector& r_identity, double tol) {
  const RVec p = d.matrix() * r.values;
  const double self = r.values.dot(p);
  const double mu = r_identity.values.dot(p);
  return std::abs(self - 1.0) <= tol && std::abs(mu - 1.0) <= tol;
}

PVector mix(std::span<const PVector> states, std::span<const double> weights) {
  if (states.empty()) throw OutOfRange("mix: no states given");
  if (states.size() != weights.size()) throw DimensionMismatch("mix: one weight per state");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw OutOfRange("mix: negative weight");
    total += w;
  }
  if (total > 1.0 + kLinalgTol) throw OutOfRange("mix: weights sum above 1");
  PVector out{RVec::Zero(states.front().size()), states.front().dimension,
              states.front().theory};
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].size() != out.size()) throw DimensionMismatch("mix: state lengths differ");
    out.values += weights[i] * states[i].values;
  }
  return out;
}

std::vector<PVector> classical_pure_states(int n) {
  if (n < 1) throw InvalidDimension("classical_pure_states: n must be >= 1");
  // sum p^2 <= max p * sum p = max p, so sum p^2 = 1 on the simplex forces
  // max p = 1: only the vertices qualify. Each vertex is checked anyway.
  std::vector<PVector> pure;
  for (int k = 0; k < n; ++k) {
    RVec p = RVec::Zero(n);
    p(k) = 1.0;
    if (std::abs(p.squaredNorm() - 1.0) <= kLinalgTol && std::abs(p.sum() - 1.0) <= kLinalgTol) {
      pure.push_back(PVector{p, n, TheoryKind::Classical});
    }
  }
  return pure;
}

}  // namespace gpt
