#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gpt/state_space.hpp"
#include "gpt/theory.hpp"

namespace gpt {

/// Outcome of one executable check. `expected_pass` is false for checks a
/// theory is meant to fail (the classical continuity probe).
struct CheckResult {
  std::string name;
  bool passed = false;
  bool expected_pass = true;
  int witnesses = 0;
  double max_deviation = 0.0;
  std::string detail;

  bool as_expected() const { return passed == expected_pass; }
  /// "pass", "fail", or "expected-fail" (failed, and meant to).
  std::string status() const;
};

struct MultiplicativeResult {
  bool multiplicative = true;
  std::optional<std::pair<int, int>> counterexample;
};

/// Checks K(mn) = K(m) K(n) for all 1 <= m <= n with mn <= N_max, scanning m
/// then n ascending; reports the first violation.
MultiplicativeResult is_completely_multiplicative(const KTable& table);

struct PowerLawResult {
  std::optional<int> exponent;
  std::optional<std::pair<int, int>> counterexample;
  std::string reason;
};

/// Integer r with K(n) = n^r on every entry. Throws NotIncreasing when the
/// table is not strictly increasing.
PowerLawResult fit_power_law(const KTable& table);

/// K(N) = frame size of the theory for N = 1..n_max.
KTable k_table_from_theories(TheoryKind kind, int n_max);

/// Restriction of D to the fiducials inside `subset` must equal the D of a
/// |subset|-dimensional theory; fiducials supported off the subset must
/// read 0 on subset-supported states.
CheckResult check_subspace_axiom(const Theory& theory, std::vector<int> subset,
                                 std::uint64_t seed = 0);

/// r_m . p_n = delta_mn to 1e-12 and sum_n r_n = r_I.
CheckResult check_basis_distinguishability(std::span<const RVector> measurements,
                                           std::span<const PVector> states,
                                           const RVector& identity);
CheckResult check_basis_distinguishability(const Theory& theory);

struct FrequencyTrial {
  std::uint64_t shots = 0;
  std::uint64_t count = 0;
};

/// At each shot scale, at least 95% of trials satisfy |freq - p| < 5/sqrt(n).
CheckResult check_frequency_convergence(std::span<const FrequencyTrial> trials, double p_true);

/// Affine and homogeneity identities of p -> r_m . p over random samples,
/// to 1e-14 scaled by max(1, |r_m|_1).
CheckResult check_linearity(const RVector& r_m, const Theory& theory, std::uint64_t seed,
                            int samples = 1000);

/// Quantum: purity along unitary paths between random pure-state pairs.
/// Classical: the segment between two basis states, expected to fail.
CheckResult check_continuity(const Theory& theory, std::uint64_t seed, int pairs = 20,
                             int steps = 100);

/// Frequency convergence of simulated basis measurements on a random state.
CheckResult check_simulated_frequencies(const Theory& theory, std::uint64_t seed);

/// K(N) = N^r over N = 1..6 with r = 1 (classical) or 2 (quantum).
CheckResult check_power_law(TheoryKind kind);

/// Every check above for one theory instance.
std::vector<CheckResult> verify_theory(TheoryKind kind, int n, std::uint64_t seed);

}  // namespace gpt
