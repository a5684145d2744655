#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// `kernels::serial` and an OpenMP version in `kernels::parallel`; both
// produce bit-identical results (each output entry is reduced in the same
// order on both paths). The unqualified names forward to the parallel path.

#include <cstdint>
#include <span>
#include <vector>

#include "gpt/types.hpp"

namespace gpt::kernels {

/// Real part of a matrix of traces plus the largest imaginary residue seen.
struct TraceTable {
  RMatrix real;
  double max_imag = 0.0;
};

/// Outcome counts; index 0 is the null outcome.
using Counts = std::vector<std::uint64_t>;

/// Shots per independently seeded batch in sample_counts.
inline constexpr std::uint64_t kShotBatch = 1u << 16;

/// tr(A B) without forming the product.
Complex trace_product(const CMatrix& a, const CMatrix& b);

namespace serial {
TraceTable cross_traces(std::span<const CMatrix> left, std::span<const CMatrix> right);
TraceTable joint_traces(std::span<const CMatrix> left_a, std::span<const CMatrix> left_b,
                        const CMatrix& rho_ab);
Counts sample_counts(std::span<const double> branch_probs, std::uint64_t shots,
                     std::uint64_t seed);
}  // namespace serial

namespace parallel {
TraceTable cross_traces(std::span<const CMatrix> left, std::span<const CMatrix> right);
TraceTable joint_traces(std::span<const CMatrix> left_a, std::span<const CMatrix> left_b,
                        const CMatrix& rho_ab);
Counts sample_counts(std::span<const double> branch_probs, std::uint64_t shots,
                     std::uint64_t seed);
}  // namespace parallel

/// M[i][j] = tr(left[i] * right[j]).
inline TraceTable cross_traces(std::span<const CMatrix> left, std::span<const CMatrix> right) {
  return parallel::cross_traces(left, right);
}

/// M[i][j] = tr((left_a[i] (x) left_b[j]) rho_ab), with the A factor most significant.
inline TraceTable joint_traces(std::span<const CMatrix> left_a, std::span<const CMatrix> left_b,
                               const CMatrix& rho_ab) {
  return parallel::joint_traces(left_a, left_b, rho_ab);
}

/// Draws `shots` outcomes: branch l (1-based) with probability
/// branch_probs[l-1], null with the remainder.
inline Counts sample_counts(std::span<const double> branch_probs, std::uint64_t shots,
                            std::uint64_t seed) {
  return parallel::sample_counts(branch_probs, shots, seed);
}

}  // namespace gpt::kernels
