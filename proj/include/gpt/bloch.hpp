#pragma once

#include <array>

#include "gpt/fiducial_frame.hpp"
#include "gpt/state_space.hpp"

namespace gpt {

/// Parameters of the N = 2 D-matrix family
///
///       | 1    0   1-a  1-b |
///   D = | 0    1    a    b  |
///       | 1-a  a    1    c  |
///       | 1-b  b    c    1  |
struct D2Params {
  double a = 0.5;
  double b = 0.5;
  double c = 0.5;
};

/// Throws OutOfRange unless a, b, c lie in [0, 1].
DMatrix d2_assemble(const D2Params& params);

/// Reads (a, b, c) back out of a 4x4 matrix; throws OutOfRange if the matrix
/// does not follow the template to 1e-10.
D2Params d2_params_of(const DMatrix& d);

struct CBounds {
  double minus;
  double plus;
};

/// c_{+-} = 1 - a - b + 2ab +- 2 sqrt(ab(1-a)(1-b)).
CBounds c_bounds(double a, double b);

struct BlochCoordinates {
  double mu = 0.0;
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
};

/// v0 = r1, v = (r2 - r1, r3, r4), mu = 2 v0 + v1 + v2 + v3.
BlochCoordinates bloch_coordinates(const RVector& r);

/// Quadratic form with p_meas = v^T A v' + mu mu' / 2.
Eigen::Matrix3d a_matrix(const D2Params& params);

enum class SurfaceKind { Ellipsoid, Hyperboloid, Degenerate, Empty };

std::string to_string(SurfaceKind kind);

struct SurfaceClass {
  SurfaceKind kind;
  Eigen::Vector3d eigenvalues;  // ascending
};

/// Ellipsoid if every eigenvalue is positive, Hyperboloid with one or two
/// negative, Empty with three negative (no real points), and Degenerate when
/// any |eigenvalue| < 1e-10.
SurfaceClass classify_surface(const Eigen::Matrix3d& a);

/// Amplitudes of P3 = |alpha 1 + beta 2><..| and P4 = |gamma 1 + delta 2><..|
/// in the gauge phi3 = 0, phi4 - phi3 in [0, pi].
struct PhaseRecovery {
  double phi3 = 0.0;
  double phi4 = 0.0;
  Complex alpha;
  Complex beta;
  Complex gamma;
  Complex delta;
};

/// Throws NoSolution unless c lies strictly inside (c_-, c_+).
PhaseRecovery recover_phases(const DMatrix& d);

/// The four N = 2 projectors built from recovered amplitudes.
FiducialFrame frame_from_phases(const PhaseRecovery& phases);

/// D for the canonical frame of dimension n, assembled from subspace rules
/// without touching operators.
DMatrix build_general_d(int n);

}  // namespace gpt
