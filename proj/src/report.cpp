#include "gpt/report.hpp"

#include <cmath>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "gpt/random.hpp"

namespace gpt {

using io::json;

namespace {

std::string get_string(const Params& p, const std::string& key, const std::string& fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

double get_double(const Params& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("parameter " + key + " = '" + it->second + "' is not a number");
  }
}

std::uint64_t get_u64(const Params& p, const std::string& key, std::uint64_t fallback) {
  const auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("parameter " + key + " = '" + it->second + "' is not an unsigned integer");
  }
}

int get_int(const Params& p, const std::string& key, int fallback) {
  return static_cast<int>(get_u64(p, key, static_cast<std::uint64_t>(fallback)));
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::string body = s;
  // JSON configs hand arrays over in their dumped form
  std::erase_if(body, [](char ch) { return ch == '[' || ch == ']'; });
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw ConfigError("bad list entry '" + item + "'");
    }
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& file) {
  const std::filesystem::path p(file);
  return p.is_absolute() || base.empty() ? p : base / p;
}

CheckResult simple_check(std::string name, bool passed, double deviation, int witnesses,
                         std::string detail = {}) {
  CheckResult r{std::move(name), passed};
  r.max_deviation = deviation;
  r.witnesses = witnesses;
  r.detail = std::move(detail);
  return r;
}

json checks_json(const std::vector<CheckResult>& checks) {
  json out = json::array();
  for (const auto& c : checks) out.push_back(io::to_json(c));
  return out;
}

bool all_as_expected(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.as_expected()) return false;
  }
  return true;
}

}  // namespace

json frame_pipeline(int n, std::vector<CheckResult>& checks) {
  const FiducialFrame frame = build_canonical_frame(n);
  const DMatrix d = gram_matrix(frame);
  const int rank = flattened_rank(frame.projectors());
  checks.push_back(simple_check("frame_rank", rank == frame.size(), 0.0, frame.size(),
                                "rank " + std::to_string(rank)));
  const double asym = (d.matrix() - d.matrix().transpose()).cwiseAbs().maxCoeff();
  checks.push_back(simple_check("gram_symmetric", asym <= kLinalgTol, asym, d.size()));
  const double rule_gap = (build_general_d(n).matrix() - d.matrix()).cwiseAbs().maxCoeff();
  checks.push_back(simple_check("general_d_match", rule_gap <= kLinalgTol, rule_gap, d.size()));
  return {{"frame", io::to_json(frame)}, {"dmatrix", io::to_json(d)}};
}

json bloch_pipeline(const D2Params& params, bool with_projectors) {
  const DMatrix d = d2_assemble(params);
  const CBounds bounds = c_bounds(params.a, params.b);
  const SurfaceClass surface = classify_surface(a_matrix(params));
  json out = {{"a", params.a},
              {"b", params.b},
              {"c", params.c},
              {"c_minus", bounds.minus},
              {"c_plus", bounds.plus},
              {"inside_bounds", params.c > bounds.minus && params.c < bounds.plus},
              {"det_d", d.matrix().determinant()},
              {"surface", io::to_json(surface)},
              {"dmatrix", io::to_json(d)}};
  if (with_projectors) {
    try {
      const PhaseRecovery ph = recover_phases(d);
      const FiducialFrame frame = frame_from_phases(ph);
      out["phases"] = io::to_json(ph);
      out["frame"] = io::to_json(frame);
    } catch (const NoSolution& e) {
      out["phases"] = {{"error", e.what()}};
    }
  }
  return out;
}

namespace {

std::vector<PVector> reversibility_witnesses(const Theory& theory) {
  std::vector<PVector> w;
  for (int k = 0; k < theory.k(); ++k) w.push_back(theory.fiducial_state(k));
  if (theory.frame) {
    const CMatrix mixed = CMatrix::Identity(theory.n, theory.n) / static_cast<double>(theory.n);
    w.push_back(p_from_density(DensityOperator{mixed}, *theory.frame));
  }
  return w;
}

}  // namespace

json transform_pipeline(const KrausSet& kraus, bool unitary, std::vector<CheckResult>& checks) {
  const int n = kraus.dimension();
  const Theory theory = quantum_theory(n);
  const TransformMatrix z = unitary ? z_from_unitary(kraus.ops.front(), *theory.frame, theory.d)
                                    : z_from_kraus(kraus, *theory.frame, theory.d);
  const bool cp = is_completely_positive(kraus);
  const bool nonincreasing = is_trace_nonincreasing(kraus);
  const auto witnesses = reversibility_witnesses(theory);
  const bool reversible = is_reversible(z, witnesses, theory);
  checks.push_back(simple_check("completely_positive", cp, 0.0, 1));
  checks.push_back(simple_check("trace_nonincreasing", nonincreasing, 0.0, 1));
  return {{"transform", io::to_json(z)},
          {"completely_positive", cp},
          {"trace_nonincreasing", nonincreasing},
          {"trace_preserving", is_trace_preserving(kraus)},
          {"reversible", reversible}};
}

json transform_superop_pipeline(const CMatrix& superop, int n, std::vector<CheckResult>& checks) {
  const bool cp = is_completely_positive(superop, n);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(choi_matrix(superop, n), Eigen::EigenvaluesOnly);
  checks.push_back(simple_check("completely_positive", cp, 0.0, 1));
  json ev = json::array();
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) ev.push_back(eig.eigenvalues()(i));
  return {{"completely_positive", cp}, {"choi_eigenvalues", ev}};
}

json composite_pipeline(const CMatrix& rho_ab, int n_a, int n_b, std::uint64_t seed,
                        std::vector<CheckResult>& checks) {
  const Theory ta = quantum_theory(n_a);
  const Theory tb = quantum_theory(n_b);
  const CompositeState pt = composite_from_density(rho_ab, *ta.frame, *tb.frame);

  Rng rng = make_stream(seed, 0xc0a);
  double law_gap = 0.0;
  constexpr int kTrials = 10;
  for (int t = 0; t < kTrials; ++t) {
    const CMatrix ua = random_unitary(n_a, rng);
    const CMatrix ub = random_unitary(n_b, rng);
    const CMatrix u = kron(ua, ub);
    const auto direct = composite_from_density(u * rho_ab * u.adjoint(), *ta.frame, *tb.frame);
    const auto lifted = local_transform(pt, z_from_unitary(ua, *ta.frame, ta.d),
                                        z_from_unitary(ub, *tb.frame, tb.d));
    law_gap = std::max(law_gap, (direct.p - lifted.p).cwiseAbs().maxCoeff());
  }
  checks.push_back(simple_check("local_transform_law", law_gap <= 1e-10, law_gap, kTrials));
  const int rank = dof_count_check(ta, tb);
  checks.push_back(simple_check("dof_rank", rank == ta.k() * tb.k(), 0.0, ta.k() * tb.k(),
                                "rank " + std::to_string(rank)));

  Eigen::SelfAdjointEigenSolver<CMatrix> pt_eig(partial_transpose(rho_ab, n_a, n_b),
                                                Eigen::EigenvaluesOnly);
  const RMatrix r = composite_r(pt, ta.d, tb.d);
  const double rebuild = (density_from_composite_r(r, *ta.frame, *tb.frame) - rho_ab)
                             .cwiseAbs()
                             .maxCoeff();
  return {{"composite", io::to_json(pt)},
          {"r_rows", io::real_matrix_to_json(r)},
          {"reconstruction_error", rebuild},
          {"joint_normalization", joint_normalization(pt, ta.identity, tb.identity)},
          {"min_partial_transpose_eigenvalue", pt_eig.eigenvalues().minCoeff()}};
}

Experiment experiment_from_params(const Params& params, const std::filesystem::path& base_dir,
                                  std::uint64_t seed) {
  const TheoryKind kind = theory_kind_from_string(get_string(params, "theory", "quantum"));
  const int n = get_int(params, "n", 2);
  const Theory theory = make_theory(kind, n);
  Experiment exp;
  exp.identity = theory.identity;
  exp.shots = get_u64(params, "shots", 1000000);
  exp.seed = get_u64(params, "seed", seed);

  if (params.count("prep_p")) {
    const auto v = parse_list(params.at("prep_p"));
    if (static_cast<int>(v.size()) != theory.k()) throw ConfigError("prep_p must have K entries");
    exp.preparation = PVector{Eigen::Map<const RVec>(v.data(), v.size()), n, kind};
  } else if (params.count("prep_rho")) {
    if (!theory.frame) throw ConfigError("prep_rho needs the quantum theory");
    const CMatrix rho = io::operator_from_json(io::read_json_file(resolve(base_dir, params.at("prep_rho"))));
    exp.preparation = p_from_density(DensityOperator{rho}, *theory.frame);
  } else {
    const int b = get_int(params, "prep_basis", 0);
    if (b < 0 || b >= n) throw ConfigError("prep_basis outside [0, n)");
    exp.preparation = theory.fiducial_state(b);
  }

  if (params.count("kraus") || params.count("unitary")) {
    if (!theory.frame) throw ConfigError("transformations need the quantum theory");
    if (params.count("kraus")) {
      const KrausSet k = io::kraus_from_json(io::read_json_file(resolve(base_dir, params.at("kraus"))));
      exp.transform = z_from_kraus(k, *theory.frame, theory.d);
    } else {
      const CMatrix u = io::operator_from_json(io::read_json_file(resolve(base_dir, params.at("unitary"))));
      exp.transform = z_from_unitary(u, *theory.frame, theory.d);
    }
  }

  const std::string partition = get_string(params, "partition", "basis");
  if (partition == "basis") {
    exp.partition = theory.basis_measurements();
  } else {
    const json list = io::read_json_file(resolve(base_dir, partition));
    for (const auto& item : list) {
      const auto vf = io::vector_from_json(item);
      exp.partition.push_back(RVector{vf.values, Role::Measurement});
    }
  }
  return exp;
}

json simulate_pipeline(const Experiment& exp, std::vector<CheckResult>& checks) {
  const auto expected = branch_probabilities(exp);
  const OutcomeCounts counts = simulate(exp);
  const double bound = exp.shots ? 5.0 / std::sqrt(static_cast<double>(exp.shots)) : 1.0;
  double worst = 0.0;
  double non_null = 0.0;
  for (std::size_t l = 0; l < expected.size(); ++l) {
    worst = std::max(worst, std::abs(counts.frequency(l + 1) - expected[l]));
    non_null += expected[l];
  }
  worst = std::max(worst, std::abs(counts.frequency(0) - (1.0 - non_null)));
  checks.push_back(simple_check("frequency_envelope", worst < bound, worst,
                                static_cast<int>(expected.size()) + 1));
  json exp_json = json::array();
  exp_json.push_back(std::max(0.0, 1.0 - non_null));
  for (double q : expected) exp_json.push_back(q);
  return {{"counts", io::to_json(counts)}, {"expected", exp_json}, {"envelope", bound}};
}

PipelineResult run_pipeline(const PipelineSpec& spec, std::uint64_t seed,
                            const std::filesystem::path& base_dir) {
  PipelineResult res{spec.name, spec.pipeline};
  const Params& p = spec.params;
  const std::uint64_t local_seed = get_u64(p, "seed", seed);
  if (spec.pipeline == "frame") {
    res.body = frame_pipeline(get_int(p, "n", 2), res.checks);
  } else if (spec.pipeline == "verify") {
    const auto kind = theory_kind_from_string(get_string(p, "theory", "quantum"));
    res.checks = verify_theory(kind, get_int(p, "n", 2), local_seed);
    res.body = {{"theory", to_string(kind)}, {"n", get_int(p, "n", 2)}};
  } else if (spec.pipeline == "bloch") {
    const D2Params d2{get_double(p, "a", 0.5), get_double(p, "b", 0.5), get_double(p, "c", 0.5)};
    res.body = bloch_pipeline(d2, get_string(p, "projectors", "false") == "true");
  } else if (spec.pipeline == "transform") {
    if (p.count("kraus")) {
      const auto k = io::kraus_from_json(io::read_json_file(resolve(base_dir, p.at("kraus"))));
      res.body = transform_pipeline(k, false, res.checks);
    } else if (p.count("unitary")) {
      const auto u = io::operator_from_json(io::read_json_file(resolve(base_dir, p.at("unitary"))));
      res.body = transform_pipeline(KrausSet{{u}}, true, res.checks);
    } else {
      throw ConfigError("transform pipeline needs kraus or unitary");
    }
  } else if (spec.pipeline == "composite") {
    if (!p.count("rho")) throw ConfigError("composite pipeline needs rho");
    const auto rho = io::operator_from_json(io::read_json_file(resolve(base_dir, p.at("rho"))));
    res.body = composite_pipeline(rho, get_int(p, "n_a", 2), get_int(p, "n_b", 2), local_seed,
                                  res.checks);
  } else if (spec.pipeline == "simulate") {
    res.body = simulate_pipeline(experiment_from_params(p, base_dir, local_seed), res.checks);
  } else if (spec.pipeline == "continuity") {
    const auto kind = theory_kind_from_string(get_string(p, "theory", "quantum"));
    const Theory theory = make_theory(kind, get_int(p, "n", 2));
    res.checks.push_back(check_continuity(theory, local_seed, get_int(p, "pairs", 20),
                                          get_int(p, "steps", 100)));
    res.body = {{"theory", to_string(kind)}, {"n", theory.n}};
  } else {
    throw ConfigError("unknown pipeline '" + spec.pipeline + "'");
  }
  res.ok = all_as_expected(res.checks);
  return res;
}

std::string checks_csv(const std::string& pipeline, const std::vector<CheckResult>& checks) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& c : checks) {
    out << pipeline << ',' << c.name << ',' << c.status() << ',' << c.witnesses << ','
        << c.max_deviation << '\n';
  }
  return out.str();
}

Report run_report(const ReportConfig& config) {
  Report report;
  json pipelines = json::array();
  std::string csv = "pipeline,check_name,status,witnesses,max_deviation\n";
  for (const auto& spec : config.pipelines) {
    const PipelineResult r = run_pipeline(spec, config.seed, config.base_dir);
    report.all_pass = report.all_pass && r.ok;
    json entry = {{"name", r.name},
                  {"pipeline", r.pipeline},
                  {"status", r.ok ? "pass" : "fail"},
                  {"checks", checks_json(r.checks)},
                  {"result", r.body}};
    pipelines.push_back(std::move(entry));
    csv += checks_csv(r.name, r.checks);
  }
  report.document = {{"seed", config.seed},
                     {"status", report.all_pass ? "pass" : "fail"},
                     {"pipelines", pipelines}};
  report.csv = std::move(csv);
  return report;
}

ReportConfig load_report_config(const std::filesystem::path& path) {
  ReportConfig config;
  config.base_dir = path.parent_path();
  if (path.extension() == ".json") {
    const json j = io::read_json_file(path);
    if (!j.is_object()) throw ConfigError("report config must be a JSON object");
    config.seed = j.value("seed", std::uint64_t{1});
    for (const auto& item : j.value("pipelines", json::array())) {
      PipelineSpec spec;
      for (const auto& [key, value] : item.items()) {
        spec.params[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
      spec.pipeline = get_string(spec.params, "pipeline", "");
      spec.name = get_string(spec.params, "name", spec.pipeline);
      if (spec.pipeline.empty()) throw ConfigError("pipeline entry lacks a 'pipeline' field");
      config.pipelines.push_back(std::move(spec));
    }
    return config;
  }
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  for (const auto& [key, node] : tree) {
    if (key == "seed" && node.empty()) {
      config.seed = get_u64({{"seed", node.data()}}, "seed", 1);
      continue;
    }
    if (node.empty() && !node.data().empty()) {
      config.globals[key] = node.data();
      continue;
    }
    PipelineSpec spec{key, key, {}};
    for (const auto& [k, v] : node) spec.params[k] = v.data();
    spec.pipeline = get_string(spec.params, "pipeline", key);
    config.pipelines.push_back(std::move(spec));
  }
  return config;
}

}  // namespace gpt
