#pragma once

// JSON wire formats. Complex entries are [re, im] pairs; real matrices are
// row-major arrays of arrays.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "gpt/axiom_suite.hpp"
#include "gpt/bloch.hpp"
#include "gpt/composite.hpp"
#include "gpt/dynamics.hpp"
#include "gpt/harness.hpp"

namespace gpt::io {

using nlohmann::json;

json complex_matrix_to_json(const CMatrix& m);
/// Accepts an array of rows; entries may be [re, im] pairs or plain numbers.
CMatrix complex_matrix_from_json(const json& j);
json real_matrix_to_json(const RMatrix& m);
RMatrix real_matrix_from_json(const json& j);

/// `.frame.json`
json to_json(const FiducialFrame& frame);
FiducialFrame frame_from_json(const json& j);

/// `.dmat.json`
json to_json(const DMatrix& d);
DMatrix dmatrix_from_json(const json& j);

/// {"type": "p", "dimension", "K", "role", "theory", "values"}
json to_json(const PVector& p);
/// {"type": "r", "dimension", "K", "role", "values"}
json to_json(const RVector& r, int dimension);

/// A p- or r-vector file with its header.
struct VectorFile {
  std::string type;  // "p" or "r"
  int dimension = 0;
  Role role = Role::State;
  TheoryKind theory = TheoryKind::Quantum;
  RVec values;
};
VectorFile vector_from_json(const json& j);

/// {"type": "rho", "dimension", "matrix"}
json operator_to_json(const CMatrix& m, const std::string& type);
/// Accepts a bare matrix or an object with a "matrix" field.
CMatrix operator_from_json(const json& j);

/// A bare list of complex matrices.
json to_json(const KrausSet& kraus);
/// Accepts a bare list or an object with an "operators" field.
KrausSet kraus_from_json(const json& j);

json to_json(const TransformMatrix& z);
/// {"n_a", "n_b", "k_a", "k_b", "rows"}
json to_json(const CompositeState& pt);
CompositeState composite_from_json(const json& j);

/// {"check_name", "status", "witnesses", "max_deviation", "detail"}
json to_json(const CheckResult& r);
json to_json(const SurfaceClass& s);
json to_json(const PhaseRecovery& ph);
json to_json(const MeasurementUpdateReport& r);
json to_json(const ContinuityReport& r);
/// counts with the null outcome at index 0
json to_json(const OutcomeCounts& c);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);
/// Two-space indented dump followed by a newline.
std::string dump(const json& j);

}  // namespace gpt::io
