#include "gpt/axiom_suite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "gpt/bloch.hpp"
#include "gpt/dynamics.hpp"
#include "gpt/harness.hpp"
#include "gpt/random.hpp"

namespace gpt {

std::string CheckResult::status() const {
  if (passed) return "pass";
  return expected_pass ? "fail" : "expected-fail";
}

MultiplicativeResult is_completely_multiplicative(const KTable& table) {
  MultiplicativeResult out;
  if (table.empty()) return out;
  const int n_max = table.rbegin()->first;
  for (int m = 1; m <= n_max; ++m) {
    for (int n = m; static_cast<long long>(m) * n <= n_max; ++n) {
      const auto km = table.find(m);
      const auto kn = table.find(n);
      const auto kmn = table.find(m * n);
      if (km == table.end() || kn == table.end() || kmn == table.end()) continue;
      if (kmn->second != km->second * kn->second) {
        out.multiplicative = false;
        out.counterexample = std::make_pair(m, n);
        return out;
      }
    }
  }
  return out;
}

PowerLawResult fit_power_law(const KTable& table) {
  PowerLawResult out;
  long long prev = 0;
  bool first = true;
  for (const auto& [n, k] : table) {
    if (!first && k <= prev) {
      throw NotIncreasing("K table is not strictly increasing at N = " + std::to_string(n));
    }
    prev = k;
    first = false;
  }
  const auto mult = is_completely_multiplicative(table);
  if (!mult.multiplicative) {
    out.counterexample = mult.counterexample;
    out.reason = "not completely multiplicative";
    return out;
  }
  const auto k1 = table.find(1);
  const auto k2 = table.find(2);
  if (k1 == table.end() || k1->second != 1) {
    out.reason = "K(1) must equal 1";
    return out;
  }
  if (k2 == table.end()) {
    out.reason = "table must include N = 2 to fix the exponent";
    return out;
  }
  int r = 0;
  for (long long v = 1; v < k2->second; v *= 2) ++r;
  for (const auto& [n, k] : table) {
    long long power = 1;
    for (int i = 0; i < r; ++i) power *= n;
    if (power != k) {
      out.reason = "K(" + std::to_string(n) + ") = " + std::to_string(k) + " is not " +
                   std::to_string(n) + "^" + std::to_string(r);
      return out;
    }
  }
  out.exponent = r;
  return out;
}

KTable k_table_from_theories(TheoryKind kind, int n_max) {
  KTable table;
  for (int n = 1; n <= n_max; ++n) table[n] = make_theory(kind, n).k();
  return table;
}

CheckResult check_subspace_axiom(const Theory& theory, std::vector<int> subset,
                                 std::uint64_t seed) {
  CheckResult res{"subspace"};
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (subset.empty() || subset.front() < 0 || subset.back() >= theory.n) {
    throw OutOfRange("check_subspace_axiom: subset indices must lie in [0, N)");
  }
  const auto inside = theory.fiducials_within(subset);
  const Theory sub = make_theory(theory.kind, static_cast<int>(subset.size()));
  std::ostringstream detail;
  bool ok = true;

  // (i) D restricted to the subset's fiducials.
  if (static_cast<int>(inside.size()) != sub.k()) {
    ok = false;
    detail << "subset holds " << inside.size() << " fiducials, expected " << sub.k() << "; ";
  } else {
    for (std::size_t i = 0; i < inside.size(); ++i) {
      for (std::size_t j = 0; j < inside.size(); ++j) {
        const double dev = std::abs(theory.d(inside[i], inside[j]) - sub.d(i, j));
        res.max_deviation = std::max(res.max_deviation, dev);
      }
    }
  }

  // (ii) states supported in the subset.
  std::vector<PVector> states;
  for (int k : inside) states.push_back(theory.fiducial_state(k));
  Rng rng = make_stream(seed, 0x5b5);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    RVec w(inside.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = uniform(rng);
    w /= w.sum();
    RVec p = RVec::Zero(theory.k());
    for (std::size_t i = 0; i < inside.size(); ++i) p += w(i) * states[i].values;
    states.push_back(PVector{p, theory.n, theory.kind});
  }
  if (theory.frame) {
    const int m = static_cast<int>(subset.size());
    for (int t = 0; t < 10; ++t) {
      const CMatrix small = random_density(m, rng);
      CMatrix rho = CMatrix::Zero(theory.n, theory.n);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) rho(subset[i], subset[j]) = small(i, j);
      states.push_back(p_from_density(DensityOperator{rho}, *theory.frame));
    }
  }
  RVec id_subset = RVec::Zero(theory.k());
  for (int b : subset) id_subset(b) = 1.0;
  std::vector<int> disjoint;
  for (int k = 0; k < theory.k(); ++k) {
    const auto s = support_of(theory.labels[k]);
    const bool off = std::none_of(s.begin(), s.end(), [&](int b) {
      return std::binary_search(subset.begin(), subset.end(), b);
    });
    if (off) disjoint.push_back(k);
  }
  for (const auto& p : states) {
    const double mu_gap = std::abs(id_subset.dot(p.values) - theory.identity.values.dot(p.values));
    res.max_deviation = std::max(res.max_deviation, mu_gap);
    for (int k : disjoint) res.max_deviation = std::max(res.max_deviation, std::abs(p.values(k)));
  }
  res.witnesses = static_cast<int>(states.size());
  ok = ok && res.max_deviation <= kLinalgTol;
  res.passed = ok;
  detail << "subset size " << subset.size() << ", " << inside.size() << " fiducials, "
         << disjoint.size() << " disjoint";
  res.detail = detail.str();
  return res;
}

CheckResult check_basis_distinguishability(std::span<const RVector> measurements,
                                           std::span<const PVector> states,
                                           const RVector& identity) {
  CheckResult res{"basis_distinguishability"};
  if (measurements.size() != states.size() || measurements.empty()) {
    res.detail = "need one measurement per basis state";
    return res;
  }
  RVec sum = RVec::Zero(identity.size());
  for (std::size_t m = 0; m < measurements.size(); ++m) {
    sum += measurements[m].values;
    for (std::size_t n = 0; n < states.size(); ++n) {
      const double expected = m == n ? 1.0 : 0.0;
      const double dev = std::abs(measurements[m].values.dot(states[n].values) - expected);
      res.max_deviation = std::max(res.max_deviation, dev);
    }
  }
  res.max_deviation = std::max(res.max_deviation, (sum - identity.values).cwiseAbs().maxCoeff());
  res.witnesses = static_cast<int>(states.size());
  res.passed = res.max_deviation <= kLinalgTol;
  res.detail = "r_m . p_n against delta_mn, sum r_n against r_I";
  return res;
}

CheckResult check_basis_distinguishability(const Theory& theory) {
  const auto m = theory.basis_measurements();
  const auto s = theory.basis_states();
  return check_basis_distinguishability(m, s, theory.identity);
}

CheckResult check_frequency_convergence(std::span<const FrequencyTrial> trials, double p_true) {
  CheckResult res{"frequency_convergence"};
  std::map<std::uint64_t, std::pair<int, int>> per_scale;  // shots -> (inside, total)
  for (const auto& t : trials) {
    if (t.shots == 0) continue;
    const double freq = static_cast<double>(t.count) / static_cast<double>(t.shots);
    const double dev = std::abs(freq - p_true);
    const double bound = 5.0 / std::sqrt(static_cast<double>(t.shots));
    res.max_deviation = std::max(res.max_deviation, dev);
    auto& [inside, total] = per_scale[t.shots];
    if (dev < bound) ++inside;
    ++total;
  }
  res.passed = !per_scale.empty();
  std::ostringstream detail;
  for (const auto& [shots, tally] : per_scale) {
    const auto [inside, total] = tally;
    if (inside < 0.95 * total) res.passed = false;
    detail << "n=" << shots << ": " << inside << "/" << total << "; ";
  }
  res.witnesses = static_cast<int>(trials.size());
  res.detail = detail.str();
  return res;
}

CheckResult check_linearity(const RVector& r_m, const Theory& theory, std::uint64_t seed,
                            int samples) {
  CheckResult res{"linearity"};
  if (r_m.size() != theory.k()) throw DimensionMismatch("check_linearity: r_m has wrong length");
  const double tol = 1e-14 * std::max(1.0, r_m.values.lpNorm<1>());
  Rng rng = make_stream(seed, 0x11a);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  auto f = [&](const RVec& p) { return r_m.values.dot(p); };
  for (int s = 0; s < samples; ++s) {
    const RVec pa = random_state(theory, rng).values;
    const RVec pb = random_state(theory, rng).values;
    const double lambda = uniform(rng);
    const double nu = uniform(rng);
    const RVec mixed = lambda * pa + (1.0 - lambda) * pb;
    const double affine = std::abs(f(mixed) - (lambda * f(pa) + (1.0 - lambda) * f(pb)));
    const double homogeneous = std::abs(f(nu * pa) - nu * f(pa));
    res.max_deviation = std::max({res.max_deviation, affine, homogeneous});
  }
  res.witnesses = samples;
  res.passed = res.max_deviation <= tol;
  res.detail = "affine and homogeneity identities of p -> r_m . p";
  return res;
}

CheckResult check_continuity(const Theory& theory, std::uint64_t seed, int pairs, int steps) {
  CheckResult res{"continuity"};
  if (theory.kind == TheoryKind::Classical) {
    const auto basis = theory.basis_states();
    const int j = theory.n > 1 ? 1 : 0;
    const RVector ra{basis[0].values, Role::State};
    const RVector rb{basis[j].values, Role::State};
    const auto rep = continuity_probe(ra, rb, steps, theory);
    res.passed = rep.pure_path;
    res.expected_pass = theory.n == 1;
    res.max_deviation = rep.max_purity_deviation;
    res.witnesses = 1;
    std::ostringstream detail;
    detail << "segment e0 -> e" << j << ", midpoint sum p^2 = " << rep.midpoint_purity;
    res.detail = detail.str();
    return res;
  }
  Rng rng = make_stream(seed, 0xc0);
  res.passed = true;
  double worst_endpoint = 0.0;
  for (int t = 0; t < pairs; ++t) {
    const auto pa = p_from_density(DensityOperator{random_pure_density(theory.n, rng)}, *theory.frame);
    const auto pb = p_from_density(DensityOperator{random_pure_density(theory.n, rng)}, *theory.frame);
    const auto rep = continuity_probe(r_from_p(pa, theory.d), r_from_p(pb, theory.d), steps, theory);
    res.max_deviation = std::max(res.max_deviation, rep.max_purity_deviation);
    worst_endpoint = std::max(worst_endpoint, rep.endpoint_error);
    res.passed = res.passed && rep.pure_path;
  }
  res.witnesses = pairs;
  std::ostringstream detail;
  detail << pairs << " pure pairs, " << steps << " steps, worst endpoint error " << worst_endpoint;
  res.detail = detail.str();
  return res;
}

CheckResult check_simulated_frequencies(const Theory& theory, std::uint64_t seed) {
  Rng rng = make_stream(seed, 0xf4);
  const PVector p = random_state(theory, rng);
  const auto partition = theory.basis_measurements();
  const double p_true = partition[0].values.dot(p.values);
  std::vector<FrequencyTrial> trials;
  std::uint64_t stream = 0;
  for (const auto& [shots, repeats] :
       std::vector<std::pair<std::uint64_t, int>>{{1000, 20}, {10000, 20}, {100000, 20}, {1000000, 2}}) {
    for (int t = 0; t < repeats; ++t) {
      const Experiment exp{p, std::nullopt, partition, theory.identity, shots,
                           split_seed(seed, ++stream)};
      trials.push_back({shots, simulate(exp).counts[1]});
    }
  }
  return check_frequency_convergence(trials, p_true);
}

CheckResult check_power_law(TheoryKind kind) {
  CheckResult res{"power_law"};
  const auto fit = fit_power_law(k_table_from_theories(kind, 6));
  const int expected = kind == TheoryKind::Quantum ? 2 : 1;
  res.passed = fit.exponent && *fit.exponent == expected;
  res.witnesses = 6;
  res.detail = fit.exponent ? "K(N) = N^" + std::to_string(*fit.exponent) : fit.reason;
  return res;
}

std::vector<CheckResult> verify_theory(TheoryKind kind, int n, std::uint64_t seed) {
  const Theory theory = make_theory(kind, n);
  std::vector<CheckResult> out;
  out.push_back(check_basis_distinguishability(theory));

  // Every non-empty subset while that stays small, otherwise singletons and pairs.
  CheckResult sub{"subspace", true};
  std::vector<std::vector<int>> subsets;
  if (n <= 6) {
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> s;
      for (int b = 0; b < n; ++b)
        if (mask & (1u << b)) s.push_back(b);
      subsets.push_back(std::move(s));
    }
  } else {
    for (int i = 0; i < n; ++i) {
      subsets.push_back({i});
      for (int j = i + 1; j < n; ++j) subsets.push_back({i, j});
    }
  }
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    const auto r = check_subspace_axiom(theory, subsets[i], split_seed(seed, i));
    sub.passed = sub.passed && r.passed;
    sub.max_deviation = std::max(sub.max_deviation, r.max_deviation);
    sub.witnesses += r.witnesses;
  }
  sub.detail = std::to_string(subsets.size()) + " subsets";
  out.push_back(sub);

  out.push_back(check_linearity(theory.basis_measurements()[0], theory, seed));
  out.push_back(check_simulated_frequencies(theory, seed));
  out.push_back(check_continuity(theory, seed));
  out.push_back(check_power_law(kind));
  return out;
}

}  // namespace gpt
