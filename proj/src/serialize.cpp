#include "gpt/serialize.hpp"

#include <fstream>
#include <sstream>

namespace gpt::io {

json complex_matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix complex_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw ConfigError("complex matrix must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ConfigError("complex matrix rows differ in length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& e = row[c];
      if (e.is_number()) {
        m(i, c) = Complex(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2) {
        m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw ConfigError("complex entries must be [re, im] pairs");
      }
    }
  }
  return m;
}

json real_matrix_to_json(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix real_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j.front().is_array()) {
    throw ConfigError("real matrix must be a non-empty array of rows");
  }
  RMatrix m(j.size(), j.front().size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != static_cast<std::size_t>(m.cols())) {
      throw ConfigError("real matrix rows differ in length");
    }
    for (std::size_t c = 0; c < j[i].size(); ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

namespace {

json label_to_json(const FiducialLabel& l) {
  switch (l.kind) {
    case FiducialLabel::Kind::Basis:
      return std::to_string(l.m + 1);
    case FiducialLabel::Kind::X:
      return std::to_string(l.m + 1) + std::to_string(l.n + 1) + "x";
    case FiducialLabel::Kind::Y:
      return std::to_string(l.m + 1) + std::to_string(l.n + 1) + "y";
  }
  return "";
}

RVec vector_from(const json& j) {
  RVec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = j[i].get<double>();
  return v;
}

json vector_to(const RVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

}  // namespace

json to_json(const FiducialFrame& frame) {
  json projectors = json::array();
  json labels = json::array();
  for (int k = 0; k < frame.size(); ++k) {
    projectors.push_back(complex_matrix_to_json(frame[k]));
    labels.push_back(label_to_json(frame.labels()[k]));
  }
  return {{"type", "frame"},
          {"dimension", frame.dimension()},
          {"K", frame.size()},
          {"labels", labels},
          {"projectors", projectors}};
}

FiducialFrame frame_from_json(const json& j) {
  const int n = j.at("dimension").get<int>();
  std::vector<CMatrix> projectors;
  for (const auto& p : j.at("projectors")) projectors.push_back(complex_matrix_from_json(p));
  auto labels = canonical_labels(n);
  if (labels.size() != projectors.size()) throw ConfigError("frame must hold N^2 projectors");
  return FiducialFrame(n, std::move(projectors), std::move(labels));
}

json to_json(const DMatrix& d) {
  return {{"type", "dmatrix"},
          {"dimension", d.dimension()},
          {"K", d.size()},
          {"rows", real_matrix_to_json(d.matrix())}};
}

DMatrix dmatrix_from_json(const json& j) {
  const json& rows = j.is_array() ? j : j.at("rows");
  RMatrix m = real_matrix_from_json(rows);
  int n = j.is_object() && j.contains("dimension") ? j.at("dimension").get<int>() : 0;
  if (n == 0) n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m.rows()))));
  return DMatrix(std::move(m), n);
}

json to_json(const PVector& p) {
  return {{"type", "p"},         {"dimension", p.dimension}, {"K", p.size()},
          {"role", "state"},     {"theory", to_string(p.theory)}, {"values", vector_to(p.values)}};
}

json to_json(const RVector& r, int dimension) {
  return {{"type", "r"},
          {"dimension", dimension},
          {"K", r.size()},
          {"role", to_string(r.role)},
          {"values", vector_to(r.values)}};
}

VectorFile vector_from_json(const json& j) {
  VectorFile out;
  if (j.is_array()) {
    out.values = vector_from(j);
    out.type = "p";
    out.dimension = static_cast<int>(std::lround(std::sqrt(static_cast<double>(out.values.size()))));
    return out;
  }
  out.values = vector_from(j.at("values"));
  out.type = j.value("type", "p");
  out.dimension = j.value("dimension", 0);
  out.role = j.value("role", "state") == "measurement" ? Role::Measurement : Role::State;
  out.theory = theory_kind_from_string(j.value("theory", "quantum"));
  if (j.contains("K") && j.at("K").get<int>() != out.values.size()) {
    throw ConfigError("vector header K differs from the number of values");
  }
  return out;
}

json operator_to_json(const CMatrix& m, const std::string& type) {
  return {{"type", type}, {"dimension", m.rows()}, {"matrix", complex_matrix_to_json(m)}};
}

CMatrix operator_from_json(const json& j) {
  if (j.is_object()) return complex_matrix_from_json(j.at("matrix"));
  return complex_matrix_from_json(j);
}

json to_json(const KrausSet& kraus) {
  json out = json::array();
  for (const auto& m : kraus.ops) out.push_back(complex_matrix_to_json(m));
  return out;
}

KrausSet kraus_from_json(const json& j) {
  const json& list = j.is_object() ? j.at("operators") : j;
  KrausSet out;
  for (const auto& m : list) out.ops.push_back(complex_matrix_from_json(m));
  if (out.ops.empty()) throw ConfigError("Kraus file holds no operators");
  return out;
}

json to_json(const TransformMatrix& z) {
  return {{"type", "transform"},
          {"dimension", z.dimension},
          {"K", z.z.rows()},
          {"provenance", to_string(z.provenance)},
          {"rows", real_matrix_to_json(z.z)}};
}

json to_json(const CompositeState& pt) {
  return {{"type", "composite"}, {"n_a", pt.n_a}, {"n_b", pt.n_b},
          {"k_a", pt.k_a()},     {"k_b", pt.k_b()}, {"rows", real_matrix_to_json(pt.p)}};
}

CompositeState composite_from_json(const json& j) {
  CompositeState pt{real_matrix_from_json(j.at("rows")), j.value("n_a", 0), j.value("n_b", 0)};
  if (pt.k_a() != j.at("k_a").get<int>() || pt.k_b() != j.at("k_b").get<int>()) {
    throw ConfigError("composite header differs from row shape");
  }
  return pt;
}

json to_json(const CheckResult& r) {
  return {{"check_name", r.name},
          {"status", r.status()},
          {"witnesses", r.witnesses},
          {"max_deviation", r.max_deviation},
          {"detail", r.detail}};
}

json to_json(const SurfaceClass& s) {
  return {{"classification", to_string(s.kind)},
          {"eigenvalues", {s.eigenvalues(0), s.eigenvalues(1), s.eigenvalues(2)}}};
}

json to_json(const PhaseRecovery& ph) {
  auto c = [](Complex z) { return json::array({z.real(), z.imag()}); };
  return {{"phi3", ph.phi3},         {"phi4", ph.phi4},  {"alpha", c(ph.alpha)},
          {"beta", c(ph.beta)},      {"gamma", c(ph.gamma)}, {"delta", c(ph.delta)}};
}

json to_json(const MeasurementUpdateReport& r) {
  json out = {{"outcome_normalization", r.outcome_normalization},
              {"total_preserving", r.total_preserving},
              {"max_outcome_deviation", r.max_outcome_deviation},
              {"max_total_deviation", r.max_total_deviation},
              {"violations", r.violations},
              {"status", r.passed() ? "pass" : "fail"}};
  if (r.kraus_complete) {
    out["kraus_complete"] = *r.kraus_complete;
    out["max_kraus_deviation"] = r.max_kraus_deviation;
  }
  return out;
}

json to_json(const ContinuityReport& r) {
  return {{"mode", to_string(r.mode)},
          {"steps", r.steps},
          {"max_purity_deviation", r.max_purity_deviation},
          {"midpoint_purity", r.midpoint_purity},
          {"endpoint_error", r.endpoint_error},
          {"pure_path", r.pure_path}};
}

json to_json(const OutcomeCounts& c) {
  json freqs = json::array();
  for (std::size_t l = 0; l < c.counts.size(); ++l) freqs.push_back(c.frequency(l));
  return {{"shots", c.shots}, {"seed", c.seed}, {"counts", c.counts}, {"frequencies", freqs}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << dump(j);
}

}  // namespace gpt::io
