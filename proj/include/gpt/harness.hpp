#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gpt/dynamics.hpp"
#include "gpt/kernels.hpp"
#include "gpt/random.hpp"

namespace gpt {

/// Preparation -> optional transformation -> measurement, repeated `shots` times.
struct Experiment {
  PVector preparation;
  std::optional<TransformMatrix> transform;
  /// Outcome measurements r_l; they must sum to `identity`.
  std::vector<RVector> partition;
  RVector identity;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
};

/// counts[0] is the null outcome, counts[l] outcome l of the partition.
struct OutcomeCounts {
  std::vector<std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  double frequency(std::size_t outcome) const {
    return shots ? static_cast<double>(counts.at(outcome)) / static_cast<double>(shots) : 0.0;
  }
};

/// Branch probabilities r_l . (Z p) after validating the experiment.
/// Throws InvalidExperiment when the partition does not sum to the identity
/// (1e-12) or a branch probability leaves [-1e-12, 1 + 1e-12].
std::vector<double> branch_probabilities(const Experiment& exp);

/// Deterministic given the seed; shots are batched over independent sub-streams.
OutcomeCounts simulate(const Experiment& exp);

/// Per shot: prepare p_a with probability lambda, else p_b, then measure.
/// Realizes the mixture operationally rather than through its p-vector.
OutcomeCounts simulate_coin_flip(const PVector& p_a, const PVector& p_b, double lambda,
                                 const std::vector<RVector>& partition, const RVector& identity,
                                 std::uint64_t shots, std::uint64_t seed);

/// Random normalized state of a theory: Ginibre density operator (quantum)
/// or a uniform simplex point (classical).
PVector random_state(const Theory& theory, Rng& rng);

}  // namespace gpt
