// gpt: command-line front end for frames, conversions, N = 2 geometry,
// transformations, composites, axiom checks, and outcome simulation.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "gpt/report.hpp"

namespace {

using gpt::io::json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << gpt::io::dump(j);
  } else {
    gpt::io::write_json_file(out, j);
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw gpt::ConfigError("cannot write " + path);
  f << text;
}

int status_of(const std::vector<gpt::CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.as_expected()) return kExitCheckFailed;
  }
  return kExitPass;
}

json with_checks(json body, const std::vector<gpt::CheckResult>& checks) {
  json arr = json::array();
  for (const auto& c : checks) arr.push_back(gpt::io::to_json(c));
  body["checks"] = arr;
  body["status"] = status_of(checks) == kExitPass ? "pass" : "fail";
  return body;
}

int run_convert(const std::string& in, const std::string& from, const std::string& to,
                const std::string& theory_name, int n_flag, const std::string& out) {
  const json src = gpt::io::read_json_file(in);
  const auto kind = gpt::theory_kind_from_string(theory_name);
  if (kind == gpt::TheoryKind::Classical && (from == "rho" || to == "rho")) {
    throw gpt::ConfigError("operator representations exist only for the quantum theory");
  }
  gpt::RVec p_values;
  int n = n_flag;
  if (from == "rho") {
    const gpt::CMatrix rho = gpt::io::operator_from_json(src);
    n = static_cast<int>(rho.rows());
    const auto theory = gpt::quantum_theory(n);
    p_values = gpt::p_from_density(gpt::DensityOperator{rho}, *theory.frame).values;
  } else {
    const auto vf = gpt::io::vector_from_json(src);
    if (n == 0) n = vf.dimension;
    if (n == 0) {
      n = kind == gpt::TheoryKind::Classical
              ? static_cast<int>(vf.values.size())
              : static_cast<int>(std::lround(std::sqrt(static_cast<double>(vf.values.size()))));
    }
    const auto theory = gpt::make_theory(kind, n);
    if (vf.values.size() != theory.k()) throw gpt::ConfigError("vector length differs from K");
    p_values = from == "p" ? vf.values : gpt::RVec(theory.d.matrix() * vf.values);
  }
  const auto theory = gpt::make_theory(kind, n);
  const gpt::PVector p{p_values, n, kind};
  const gpt::RVector r = gpt::r_from_p(p, theory.d);
  json result;
  if (to == "p") {
    result = gpt::io::to_json(p);
  } else if (to == "r") {
    result = gpt::io::to_json(r, n);
  } else {
    result = gpt::io::operator_to_json(gpt::density_from_r(r, *theory.frame).matrix, "rho");
  }
  result["normalization"] = gpt::normalization(p, theory.identity);
  result["pure"] = gpt::is_pure(r, theory.d, theory.identity);
  result["valid"] = gpt::is_valid_state(p, theory.identity);
  emit(result, out);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operational probability-theory toolkit: fiducial frames, D matrices, checks"};
  app.require_subcommand(1);

  int n = 2;
  std::string out;
  std::uint64_t seed = 1;

  auto* frame = app.add_subcommand("frame", "Canonical fiducial frame for dimension N");
  frame->add_option("--n", n, "Dimension N")->required();
  frame->add_option("--out", out, "Write the frame JSON here instead of stdout");

  bool dm_csv = false;
  auto* dmatrix = app.add_subcommand("dmatrix", "Gram (D) matrix of the canonical frame");
  dmatrix->add_option("--n", n, "Dimension N")->required();
  dmatrix->add_option("--out", out, "Output file");
  dmatrix->add_flag("--csv", dm_csv, "Print the matrix as CSV");

  std::string in, from, to, theory_name = "quantum";
  int conv_n = 0;
  auto* convert = app.add_subcommand("convert", "Convert between rho, p and r representations");
  convert->add_option("--in", in, "Input JSON file")->required();
  convert->add_option("--from", from, "Input representation")
      ->required()
      ->check(CLI::IsMember({"rho", "p", "r"}));
  convert->add_option("--to", to, "Output representation")
      ->required()
      ->check(CLI::IsMember({"rho", "p", "r"}));
  convert->add_option("--theory", theory_name, "quantum or classical")
      ->check(CLI::IsMember({"quantum", "classical"}));
  convert->add_option("--n", conv_n, "Dimension (inferred when omitted)");
  convert->add_option("--out", out, "Output file");

  double a = 0.5, b = 0.5, c = 0.5;
  bool projectors = false;
  auto* bloch = app.add_subcommand("bloch", "Classify the N = 2 pure-state surface for (a, b, c)");
  bloch->add_option("--a", a)->required();
  bloch->add_option("--b", b)->required();
  bloch->add_option("--c", c)->required();
  bloch->add_flag("--projectors", projectors, "Recover phases and print the projectors");
  bloch->add_option("--out", out, "Output file");

  std::string kraus_file, unitary_file, superop_file;
  auto* transform = app.add_subcommand("transform", "Z matrix plus CP/trace/reversibility report");
  auto* kopt = transform->add_option("--kraus", kraus_file, "Kraus set JSON");
  auto* uopt = transform->add_option("--unitary", unitary_file, "Unitary JSON");
  auto* sopt = transform->add_option("--superop", superop_file,
                                     "N^2 x N^2 superoperator on column-major vec (CP test only)");
  kopt->excludes(uopt)->excludes(sopt);
  uopt->excludes(sopt);
  transform->add_option("--n", n, "Dimension for --superop");
  transform->add_option("--out", out, "Output file");

  std::string rho_file;
  int n_a = 2, n_b = 2;
  auto* composite = app.add_subcommand("composite", "Joint fiducial probabilities and law checks");
  composite->add_option("--rho", rho_file, "Bipartite operator JSON")->required();
  composite->add_option("--na", n_a, "Dimension of A");
  composite->add_option("--nb", n_b, "Dimension of B");
  composite->add_option("--seed", seed, "Seed for the random local transforms");
  composite->add_option("--out", out, "Output file");

  auto* verify = app.add_subcommand("verify", "Run the axiom check suite for one theory");
  verify->add_option("--theory", theory_name, "quantum or classical")
      ->required()
      ->check(CLI::IsMember({"quantum", "classical"}));
  verify->add_option("--n", n, "Dimension N")->required();
  verify->add_option("--seed", seed, "Root seed");
  verify->add_option("--out", out, "Output file");

  std::string config, csv_out;
  std::optional<std::uint64_t> sim_seed;
  auto* simulate = app.add_subcommand("simulate", "Sample measurement outcomes for an experiment");
  simulate->add_option("--config", config, "Experiment config (INI or JSON)")->required();
  simulate->add_option("--seed", sim_seed, "Seed (overrides the config)");
  simulate->add_option("--out", out, "Report JSON file");
  simulate->add_option("--csv", csv_out, "Counts CSV file");

  std::string out_dir = ".";
  auto* report = app.add_subcommand("report", "Run every pipeline named in a config file");
  report->add_option("--config", config, "Report config (INI or JSON)")->required();
  report->add_option("--out-dir", out_dir, "Directory for report.json and summary.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*frame) {
      std::vector<gpt::CheckResult> checks;
      const json body = gpt::frame_pipeline(n, checks);
      emit(body.at("frame"), out);
      return status_of(checks);
    }
    if (*dmatrix) {
      const auto d = gpt::gram_matrix(gpt::build_canonical_frame(n));
      if (dm_csv) {
        std::ostringstream csv;
        csv.precision(17);
        for (int i = 0; i < d.size(); ++i) {
          for (int j = 0; j < d.size(); ++j) csv << (j ? "," : "") << d(i, j);
          csv << '\n';
        }
        if (out.empty()) {
          std::cout << csv.str();
        } else {
          write_text(out, csv.str());
        }
      } else {
        emit(gpt::io::to_json(d), out);
      }
      return kExitPass;
    }
    if (*convert) return run_convert(in, from, to, theory_name, conv_n, out);
    if (*bloch) {
      emit(gpt::bloch_pipeline(gpt::D2Params{a, b, c}, projectors), out);
      return kExitPass;
    }
    if (*transform) {
      std::vector<gpt::CheckResult> checks;
      json body;
      if (!kraus_file.empty()) {
        body = gpt::transform_pipeline(gpt::io::kraus_from_json(gpt::io::read_json_file(kraus_file)),
                                       false, checks);
      } else if (!unitary_file.empty()) {
        const auto u = gpt::io::operator_from_json(gpt::io::read_json_file(unitary_file));
        body = gpt::transform_pipeline(gpt::KrausSet{{u}}, true, checks);
      } else if (!superop_file.empty()) {
        const auto s = gpt::io::operator_from_json(gpt::io::read_json_file(superop_file));
        body = gpt::transform_superop_pipeline(s, n, checks);
      } else {
        std::cerr << "transform: one of --kraus, --unitary, --superop is required\n";
        return kExitUsage;
      }
      emit(with_checks(body, checks), out);
      return status_of(checks);
    }
    if (*composite) {
      std::vector<gpt::CheckResult> checks;
      const auto rho = gpt::io::operator_from_json(gpt::io::read_json_file(rho_file));
      const json body = gpt::composite_pipeline(rho, n_a, n_b, seed, checks);
      emit(with_checks(body, checks), out);
      return status_of(checks);
    }
    if (*verify) {
      const auto kind = gpt::theory_kind_from_string(theory_name);
      const auto checks = gpt::verify_theory(kind, n, seed);
      emit(with_checks({{"theory", theory_name}, {"n", n}, {"seed", seed}}, checks), out);
      return status_of(checks);
    }
    if (*simulate) {
      const auto cfg = gpt::load_report_config(config);
      gpt::Params params = cfg.globals;
      for (const auto& spec : cfg.pipelines) {
        for (const auto& [k, v] : spec.params) params[k] = v;
      }
      const std::uint64_t s = sim_seed.value_or(cfg.seed);
      params["seed"] = std::to_string(s);
      std::vector<gpt::CheckResult> checks;
      const auto exp = gpt::experiment_from_params(params, cfg.base_dir, s);
      json body = gpt::simulate_pipeline(exp, checks);
      body["seed"] = s;
      emit(with_checks(body, checks), out);
      if (!csv_out.empty()) {
        std::string csv = "outcome,count\n";
        const auto& counts = body.at("counts").at("counts");
        for (std::size_t l = 0; l < counts.size(); ++l) {
          csv += std::to_string(l) + "," + counts[l].dump() + "\n";
        }
        write_text(csv_out, csv);
      }
      return status_of(checks);
    }
    if (*report) {
      const auto cfg = gpt::load_report_config(config);
      const auto rep = gpt::run_report(cfg);
      std::filesystem::create_directories(out_dir);
      gpt::io::write_json_file(std::filesystem::path(out_dir) / "report.json", rep.document);
      write_text((std::filesystem::path(out_dir) / "summary.csv").string(), rep.csv);
      std::cout << (rep.all_pass ? "pass" : "fail") << '\n';
      return rep.all_pass ? kExitPass : kExitCheckFailed;
    }
  } catch (const gpt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
