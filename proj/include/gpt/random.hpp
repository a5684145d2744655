#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gpt/types.hpp"

namespace gpt {

using Rng = std::mt19937_64;

/// Derives the seed of sub-stream `stream` from `root` (SplitMix64 finalizer).
std::uint64_t split_seed(std::uint64_t root, std::uint64_t stream);

/// Generator for sub-stream `stream` of `root`.
inline Rng make_stream(std::uint64_t root, std::uint64_t stream) {
  return Rng(split_seed(root, stream));
}

/// Normalized state vector from i.i.d. complex Gaussians (Haar measure).
CVec random_pure_vector(int n, Rng& rng);

/// |psi><psi| for a Haar-random psi.
CMatrix random_pure_density(int n, Rng& rng);

/// Ginibre-distributed full-rank density matrix with unit trace.
CMatrix random_density(int n, Rng& rng);

/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
CMatrix random_unitary(int n, Rng& rng);

/// `count` Kraus operators rescaled so that sum M^dag M <= I. When
/// `trace_preserving` is set the sum equals I.
std::vector<CMatrix> random_kraus(int n, int count, bool trace_preserving, Rng& rng);

}  // namespace gpt
