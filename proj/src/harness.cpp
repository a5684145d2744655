#include "gpt/harness.hpp"

#include <algorithm>
#include <cmath>

#include "gpt/random.hpp"

namespace gpt {

namespace {
constexpr double kBranchTol = 1e-12;
}

std::vector<double> branch_probabilities(const Experiment& exp) {
  if (exp.partition.empty()) throw InvalidExperiment("experiment has an empty partition");
  const auto k = exp.identity.size();
  RVec sum = RVec::Zero(k);
  for (const auto& r : exp.partition) {
    if (r.size() != k) throw InvalidExperiment("partition element has wrong length");
    sum += r.values;
  }
  if ((sum - exp.identity.values).cwiseAbs().maxCoeff() > kBranchTol) {
    throw InvalidExperiment("partition does not sum to the identity measurement");
  }
  if (exp.preparation.size() != k) throw InvalidExperiment("preparation has wrong length");
  const PVector p = exp.transform ? apply_transform(*exp.transform, exp.preparation)
                                  : exp.preparation;
  std::vector<double> probs;
  double total = 0.0;
  for (std::size_t l = 0; l < exp.partition.size(); ++l) {
    const double q = exp.partition[l].values.dot(p.values);
    if (q < -kBranchTol || q > 1.0 + kBranchTol) {
      throw InvalidExperiment("branch " + std::to_string(l + 1) + " has probability " +
                              std::to_string(q));
    }
    probs.push_back(std::clamp(q, 0.0, 1.0));
    total += probs.back();
  }
  if (total > 1.0 + kBranchTol) {
    throw InvalidExperiment("non-null probability " + std::to_string(total) + " exceeds 1");
  }
  return probs;
}

OutcomeCounts simulate(const Experiment& exp) {
  const auto probs = branch_probabilities(exp);
  return OutcomeCounts{kernels::sample_counts(probs, exp.shots, exp.seed), exp.shots, exp.seed};
}

OutcomeCounts simulate_coin_flip(const PVector& p_a, const PVector& p_b, double lambda,
                                 const std::vector<RVector>& partition, const RVector& identity,
                                 std::uint64_t shots, std::uint64_t seed) {
  if (lambda < 0.0 || lambda > 1.0) throw InvalidExperiment("lambda outside [0, 1]");
  const auto probs_a = branch_probabilities(Experiment{p_a, std::nullopt, partition, identity});
  const auto probs_b = branch_probabilities(Experiment{p_b, std::nullopt, partition, identity});
  Rng rng = make_stream(seed, 0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  OutcomeCounts out{std::vector<std::uint64_t>(partition.size() + 1, 0), shots, seed};
  for (std::uint64_t s = 0; s < shots; ++s) {
    const auto& probs = uniform(rng) < lambda ? probs_a : probs_b;
    const double u = uniform(rng);
    double acc = 0.0;
    std::size_t outcome = 0;
    for (std::size_t l = 0; l < probs.size(); ++l) {
      acc += probs[l];
      if (u < acc) {
        outcome = l + 1;
        break;
      }
    }
    ++out.counts[outcome];
  }
  return out;
}

PVector random_state(const Theory& theory, Rng& rng) {
  if (theory.frame) {
    return p_from_density(DensityOperator{random_density(theory.n, rng)}, *theory.frame);
  }
  std::exponential_distribution<double> expo(1.0);
  RVec p(theory.n);
  for (int i = 0; i < theory.n; ++i) p(i) = expo(rng);
  p /= p.sum();
  return PVector{p, theory.n, theory.kind};
}

}  // namespace gpt
