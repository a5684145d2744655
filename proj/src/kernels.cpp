#include "gpt/kernels.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

#include "gpt/random.hpp"

namespace gpt::kernels {

Complex trace_product(const CMatrix& a, const CMatrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

namespace {

Complex joint_trace_entry(const CMatrix& a, const CMatrix& b, const CMatrix& rho) {
  const Eigen::Index na = a.rows();
  const Eigen::Index nb = b.rows();
  Complex acc{0.0, 0.0};
  for (Eigen::Index ia = 0; ia < na; ++ia) {
    for (Eigen::Index ib = 0; ib < nb; ++ib) {
      const Eigen::Index row = ia * nb + ib;
      for (Eigen::Index ja = 0; ja < na; ++ja) {
        const Complex av = a(ia, ja);
        if (av == Complex{}) continue;
        for (Eigen::Index jb = 0; jb < nb; ++jb) {
          acc += av * b(ib, jb) * rho(ja * nb + jb, row);
        }
      }
    }
  }
  return acc;
}

void check_joint_shapes(std::span<const CMatrix> left_a, std::span<const CMatrix> left_b,
                        const CMatrix& rho_ab) {
  if (left_a.empty() || left_b.empty()) return;
  const auto n = left_a.front().rows() * left_b.front().rows();
  if (rho_ab.rows() != n || rho_ab.cols() != n) {
    throw DimensionMismatch("joint_traces: operator is " + std::to_string(rho_ab.rows()) +
                            "x" + std::to_string(rho_ab.cols()) + ", expected " +
                            std::to_string(n));
  }
}

Counts sample_batch(std::span<const double> cumulative, std::uint64_t shots,
                    std::uint64_t seed, std::uint64_t batch) {
  Counts counts(cumulative.size() + 1, 0);
  Rng rng = make_stream(seed, batch);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform(rng);
    std::size_t outcome = 0;
    for (std::size_t l = 0; l < cumulative.size(); ++l) {
      if (u < cumulative[l]) {
        outcome = l + 1;
        break;
      }
    }
    ++counts[outcome];
  }
  return counts;
}

std::vector<double> cumulative_of(std::span<const double> probs) {
  std::vector<double> cumulative(probs.size());
  double acc = 0.0;
  for (std::size_t l = 0; l < probs.size(); ++l) {
    acc += std::max(0.0, probs[l]);
    cumulative[l] = acc;
  }
  return cumulative;
}

std::uint64_t batch_count(std::uint64_t shots) { return (shots + kShotBatch - 1) / kShotBatch; }

std::uint64_t batch_shots(std::uint64_t shots, std::uint64_t batch) {
  return std::min(kShotBatch, shots - batch * kShotBatch);
}

}  // namespace

namespace serial {

TraceTable cross_traces(std::span<const CMatrix> left, std::span<const CMatrix> right) {
  TraceTable out{RMatrix(left.size(), right.size()), 0.0};
  for (std::size_t i = 0; i < left.size(); ++i) {
    for (std::size_t j = 0; j < right.size(); ++j) {
      const Complex t = trace_product(left[i], right[j]);
      out.real(i, j) = t.real();
      out.max_imag = std::max(out.max_imag, std::abs(t.imag()));
    }
  }
  return out;
}

TraceTable joint_traces(std::span<const CMatrix> left_a, std::span<const CMatrix> left_b,
                        const CMatrix& rho_ab) {
  check_joint_shapes(left_a, left_b, rho_ab);
  TraceTable out{RMatrix(left_a.size(), left_b.size()), 0.0};
  for (std::size_t i = 0; i < left_a.size(); ++i) {
    for (std::size_t j = 0; j < left_b.size(); ++j) {
      const Complex t = joint_trace_entry(left_a[i], left_b[j], rho_ab);
      out.real(i, j) = t.real();
      out.max_imag = std::max(out.max_imag, std::abs(t.imag()));
    }
  }
  return out;
}

Counts sample_counts(std::span<const double> branch_probs, std::uint64_t shots,
                     std::uint64_t seed) {
  const auto cumulative = cumulative_of(branch_probs);
  Counts total(branch_probs.size() + 1, 0);
  for (std::uint64_t b = 0; b < batch_count(shots); ++b) {
    const Counts c = sample_batch(cumulative, batch_shots(shots, b), seed, b);
    for (std::size_t l = 0; l < total.size(); ++l) total[l] += c[l];
  }
  return total;
}

}  // namespace serial

namespace parallel {

TraceTable cross_traces(std::span<const CMatrix> left, std::span<const CMatrix> right) {
  const auto rows = static_cast<std::int64_t>(left.size());
  const auto cols = static_cast<std::int64_t>(right.size());
  TraceTable out{RMatrix(rows, cols), 0.0};
  RMatrix imag(rows, cols);
#pragma omp parallel for collapse(2) schedule(static)
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::int64_t j = 0; j < cols; ++j) {
      const Complex t = trace_product(left[i], right[j]);
      out.real(i, j) = t.real();
      imag(i, j) = std::abs(t.imag());
    }
  }
  out.max_imag = imag.size() ? imag.maxCoeff() : 0.0;
  return out;
}

TraceTable joint_traces(std::span<const CMatrix> left_a, std::span<const CMatrix> left_b,
                        const CMatrix& rho_ab) {
  check_joint_shapes(left_a, left_b, rho_ab);
  const auto rows = static_cast<std::int64_t>(left_a.size());
  const auto cols = static_cast<std::int64_t>(left_b.size());
  TraceTable out{RMatrix(rows, cols), 0.0};
  RMatrix imag(rows, cols);
#pragma omp parallel for collapse(2) schedule(dynamic)
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::int64_t j = 0; j < cols; ++j) {
      const Complex t = joint_trace_entry(left_a[i], left_b[j], rho_ab);
      out.real(i, j) = t.real();
      imag(i, j) = std::abs(t.imag());
    }
  }
  out.max_imag = imag.size() ? imag.maxCoeff() : 0.0;
  return out;
}

Counts sample_counts(std::span<const double> branch_probs, std::uint64_t shots,
                     std::uint64_t seed) {
  const auto cumulative = cumulative_of(branch_probs);
  const auto batches = static_cast<std::int64_t>(batch_count(shots));
  std::vector<Counts> per_batch(batches);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t b = 0; b < batches; ++b) {
    per_batch[b] = sample_batch(cumulative, batch_shots(shots, b), seed, b);
  }
  Counts total(branch_probs.size() + 1, 0);
  for (const auto& c : per_batch) {
    for (std::size_t l = 0; l < total.size(); ++l) total[l] += c[l];
  }
  return total;
}

}  // namespace parallel

}  // namespace gpt::kernels
