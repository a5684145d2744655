#pragma once

#include <optional>
#include <vector>

#include "gpt/fiducial_frame.hpp"
#include "gpt/state_space.hpp"

namespace gpt {

/// One probability theory instance at fixed dimension: its D matrix, the
/// identity measurement, and (quantum only) the operator-level frame.
struct Theory {
  TheoryKind kind;
  int n;
  DMatrix d;
  RVector identity;
  std::vector<FiducialLabel> labels;
  std::optional<FiducialFrame> frame;

  int k() const { return d.size(); }

  /// Fiducial state k as a p-vector (column k of D).
  PVector fiducial_state(int k) const;
  /// The N basis states n, as p-vectors.
  std::vector<PVector> basis_states() const;
  /// The N basis measurements, as r-vectors.
  std::vector<RVector> basis_measurements() const;
  /// Fiducial indices whose support lies inside `subset`, in frame order.
  std::vector<int> fiducials_within(const std::vector<int>& subset) const;
};

/// D = identity, K = N, r_I all ones.
Theory classical_theory(int n);
/// Canonical frame, D from its Gram matrix, r_I = ones on the basis entries.
Theory quantum_theory(int n);
Theory make_theory(TheoryKind kind, int n);

}  // namespace gpt
