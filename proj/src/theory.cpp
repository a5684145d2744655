#include "gpt/theory.hpp"

#include <algorithm>

namespace gpt {

PVector Theory::fiducial_state(int k) const {
  return PVector{d.matrix().col(k), n, kind};
}

std::vector<PVector> Theory::basis_states() const {
  std::vector<PVector> out;
  for (int b = 0; b < n; ++b) out.push_back(fiducial_state(b));
  return out;
}

std::vector<RVector> Theory::basis_measurements() const {
  std::vector<RVector> out;
  for (int b = 0; b < n; ++b) {
    RVec r = RVec::Zero(k());
    r(b) = 1.0;
    out.push_back(RVector{r, Role::Measurement});
  }
  return out;
}

std::vector<int> Theory::fiducials_within(const std::vector<int>& subset) const {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(labels.size()); ++k) {
    const auto s = support_of(labels[k]);
    const bool inside = std::all_of(s.begin(), s.end(), [&](int b) {
      return std::find(subset.begin(), subset.end(), b) != subset.end();
    });
    if (inside) out.push_back(k);
  }
  return out;
}

namespace {

RVector basis_identity(int n, int k) {
  RVec r = RVec::Zero(k);
  r.head(n).setOnes();
  return RVector{r, Role::Measurement};
}

}  // namespace

Theory classical_theory(int n) {
  if (n < 1) throw InvalidDimension("classical theory needs n >= 1");
  std::vector<FiducialLabel> labels;
  for (int b = 0; b < n; ++b) labels.push_back({FiducialLabel::Kind::Basis, b, b});
  return Theory{TheoryKind::Classical, n, DMatrix(RMatrix::Identity(n, n), n),
                basis_identity(n, n), std::move(labels), std::nullopt};
}

Theory quantum_theory(int n) {
  FiducialFrame frame = build_canonical_frame(n);
  DMatrix d = gram_matrix(frame);
  const int k = frame.size();
  auto labels = frame.labels();
  return Theory{TheoryKind::Quantum, n, std::move(d), basis_identity(n, k), std::move(labels),
                std::move(frame)};
}

Theory make_theory(TheoryKind kind, int n) {
  return kind == TheoryKind::Classical ? classical_theory(n) : quantum_theory(n);
}

}  // namespace gpt
