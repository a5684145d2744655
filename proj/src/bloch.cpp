#include "gpt/bloch.hpp"

#include <cmath>
#include <numbers>

namespace gpt {

namespace {

void require_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw OutOfRange(std::string("parameter ") + name + " = " + std::to_string(x) +
                     " is outside [0, 1]");
  }
}

constexpr double kTemplateTol = 1e-10;
constexpr double kHalf = 0.5;
constexpr double kQuarter = 0.25;

}  // namespace

std::string to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Ellipsoid:
      return "ellipsoid";
    case SurfaceKind::Hyperboloid:
      return "hyperboloid";
    case SurfaceKind::Degenerate:
      return "degenerate";
    case SurfaceKind::Empty:
      return "empty";
  }
  return "unknown";
}

DMatrix d2_assemble(const D2Params& p) {
  require_unit_interval(p.a, "a");
  require_unit_interval(p.b, "b");
  require_unit_interval(p.c, "c");
  RMatrix d(4, 4);
  d << 1.0, 0.0, 1.0 - p.a, 1.0 - p.b,
       0.0, 1.0, p.a, p.b,
       1.0 - p.a, p.a, 1.0, p.c,
       1.0 - p.b, p.b, p.c, 1.0;
  return DMatrix(std::move(d), 2);
}

D2Params d2_params_of(const DMatrix& dm) {
  if (dm.size() != 4) throw DimensionMismatch("expected a 4x4 D matrix");
  const RMatrix& d = dm.matrix();
  const D2Params p{d(1, 2), d(1, 3), d(2, 3)};
  RMatrix expected = d2_assemble(p).matrix();
  if ((expected - d).cwiseAbs().maxCoeff() > kTemplateTol) {
    throw OutOfRange("matrix does not follow the N = 2 D template");
  }
  return p;
}

CBounds c_bounds(double a, double b) {
  const double centre = 1.0 - a - b + 2.0 * a * b;
  const double spread = 2.0 * std::sqrt(std::max(0.0, a * b * (1.0 - a) * (1.0 - b)));
  return {centre - spread, centre + spread};
}

BlochCoordinates bloch_coordinates(const RVector& r) {
  if (r.size() != 4) throw DimensionMismatch("bloch_coordinates needs a length-4 r-vector");
  const RVec& x = r.values;
  BlochCoordinates out;
  const double v0 = x(0);
  out.v = Eigen::Vector3d(x(1) - x(0), x(2), x(3));
  out.mu = 2.0 * v0 + out.v.sum();
  return out;
}

Eigen::Matrix3d a_matrix(const D2Params& p) {
  Eigen::Matrix3d a;
  a << kHalf, p.a - kHalf, p.b - kHalf,
       p.a - kHalf, kHalf, p.c - kHalf,
       p.b - kHalf, p.c - kHalf, kHalf;
  return a;
}

SurfaceClass classify_surface(const Eigen::Matrix3d& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(0.5 * (a + a.transpose()),
                                                     Eigen::EigenvaluesOnly);
  const Eigen::Vector3d ev = eig.eigenvalues();
  SurfaceClass out{SurfaceKind::Ellipsoid, ev};
  if (ev.cwiseAbs().minCoeff() < 1e-10) {
    out.kind = SurfaceKind::Degenerate;
    return out;
  }
  const int negative = static_cast<int>((ev.array() < 0.0).count());
  if (negative == 3) {
    out.kind = SurfaceKind::Empty;
  } else if (negative > 0) {
    out.kind = SurfaceKind::Hyperboloid;
  }
  return out;
}

PhaseRecovery recover_phases(const DMatrix& d) {
  const D2Params p = d2_params_of(d);
  const CBounds bounds = c_bounds(p.a, p.b);
  if (!(p.c > bounds.minus && p.c < bounds.plus)) {
    throw NoSolution("c = " + std::to_string(p.c) + " is not strictly inside (" +
                     std::to_string(bounds.minus) + ", " + std::to_string(bounds.plus) + ")");
  }
  const double root = std::sqrt(p.a * p.b * (1.0 - p.a) * (1.0 - p.b));
  const double cosine = (p.c - (1.0 - p.a - p.b + 2.0 * p.a * p.b)) / (2.0 * root);
  if (std::abs(cosine) > 1.0) throw NoSolution("|cos(phi4 - phi3)| exceeds 1");

  PhaseRecovery out;
  out.phi3 = 0.0;
  out.phi4 = std::acos(cosine);
  out.alpha = std::sqrt(1.0 - p.a);
  out.beta = std::polar(std::sqrt(p.a), out.phi3);
  out.gamma = std::sqrt(1.0 - p.b);
  out.delta = std::polar(std::sqrt(p.b), out.phi4);
  return out;
}

FiducialFrame frame_from_phases(const PhaseRecovery& ph) {
  CVec e1 = CVec::Zero(2);
  CVec e2 = CVec::Zero(2);
  e1(0) = 1.0;
  e2(1) = 1.0;
  CVec v3(2);
  v3 << ph.alpha, ph.beta;
  CVec v4(2);
  v4 << ph.gamma, ph.delta;
  std::vector<CMatrix> projectors{e1 * e1.adjoint(), e2 * e2.adjoint(), v3 * v3.adjoint(),
                                  v4 * v4.adjoint()};
  return FiducialFrame(2, std::move(projectors), canonical_labels(2));
}

DMatrix build_general_d(int n) {
  if (n < 1) throw InvalidDimension("build_general_d: n must be >= 1");
  const auto labels = canonical_labels(n);
  const auto k = static_cast<Eigen::Index>(labels.size());
  RMatrix d = RMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& li = labels[i];
      const auto& lj = labels[j];
      if (i == j) {
        d(i, j) = 1.0;
        continue;
      }
      const bool bi = li.kind == FiducialLabel::Kind::Basis;
      const bool bj = lj.kind == FiducialLabel::Kind::Basis;
      if (bi && bj) continue;  // distinct basis vectors
      if (bi || bj) {
        const auto& basis = bi ? li : lj;
        const auto& pair = bi ? lj : li;
        if (basis.m == pair.m || basis.m == pair.n) d(i, j) = kHalf;
        continue;
      }
      const bool same_subspace = li.m == lj.m && li.n == lj.n;
      if (same_subspace) {
        d(i, j) = kHalf;  // x against y in one subspace, the c = 1/2 entry
        continue;
      }
      const bool overlap = li.m == lj.m || li.m == lj.n || li.n == lj.m || li.n == lj.n;
      if (overlap) d(i, j) = kQuarter;
    }
  }
  return DMatrix(std::move(d), n);
}

}  // namespace gpt
