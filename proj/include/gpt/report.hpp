#pragma once

// Named pipelines (frame, verify, bloch, transform, composite, simulate,
// continuity) shared by the CLI and the batch report runner.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "gpt/serialize.hpp"

namespace gpt {

using Params = std::map<std::string, std::string>;

struct PipelineSpec {
  std::string name;
  std::string pipeline;
  Params params;
};

struct ReportConfig {
  std::uint64_t seed = 1;
  std::vector<PipelineSpec> pipelines;
  /// Top-level INI keys other than seed.
  Params globals;
  std::filesystem::path base_dir;
};

/// INI-style sections ([name] with key = value lines, `pipeline` defaulting
/// to the section name, top-level `seed`), or JSON
/// {"seed": s, "pipelines": [{"name", "pipeline", ...}]} for `.json` files.
ReportConfig load_report_config(const std::filesystem::path& path);

struct PipelineResult {
  std::string name;
  std::string pipeline;
  bool ok = true;
  io::json body;
  std::vector<CheckResult> checks;
};

io::json frame_pipeline(int n, std::vector<CheckResult>& checks);
io::json bloch_pipeline(const D2Params& params, bool with_projectors);
io::json transform_pipeline(const KrausSet& kraus, bool unitary, std::vector<CheckResult>& checks);
io::json transform_superop_pipeline(const CMatrix& superop, int n, std::vector<CheckResult>& checks);
io::json composite_pipeline(const CMatrix& rho_ab, int n_a, int n_b, std::uint64_t seed,
                            std::vector<CheckResult>& checks);
io::json simulate_pipeline(const Experiment& exp, std::vector<CheckResult>& checks);

/// Builds an experiment from simulate parameters; relative paths resolve
/// against `base_dir`.
Experiment experiment_from_params(const Params& params, const std::filesystem::path& base_dir,
                                  std::uint64_t seed);

/// Throws ConfigError for an unknown pipeline or bad parameters.
PipelineResult run_pipeline(const PipelineSpec& spec, std::uint64_t seed,
                            const std::filesystem::path& base_dir);

struct Report {
  io::json document;
  std::string csv;
  bool all_pass = true;
};

Report run_report(const ReportConfig& config);

/// One CSV line per check: pipeline,check_name,status,witnesses,max_deviation.
std::string checks_csv(const std::string& pipeline, const std::vector<CheckResult>& checks);

}  // namespace gpt
