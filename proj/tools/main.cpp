// Batch front door: space/map/operator definitions go in as JSON, reports
// and matrix artifacts come out. Exit codes: 0 all checks pass, 1 a check
// failed, 2 configuration or input error.

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "cohq/fock.hpp"
#include "cohq/generators.hpp"
#include "cohq/json_io.hpp"
#include "cohq/suite.hpp"

namespace {

using namespace cohq;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfigError = 2;

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* env = std::getenv("COHERENT_SEED")) return std::strtoull(env, nullptr, 10);
  return fallback;
}

void emit(const Json& j, const std::string& output) {
  if (output.empty())
    std::cout << j.dump(2) << '\n';
  else
    dump_json(output, j);
}

int run_gram(const std::string& input, const std::string& output, double eps) {
  const SampleSet sample = load_points(input);
  const Eigen::MatrixXcd g = gram_matrix(sample);
  const PositiveTypeReport rep = check_positive_type(sample, eps);
  Json j;
  j["gram"] = to_json(g);
  j["min_eigenvalue"] = rep.min_eigenvalue;
  j["max_eigenvalue"] = rep.max_eigenvalue;
  j["positive_type"] = rep.passed;
  emit(j, output);
  return rep.passed ? kExitPass : kExitCheckFailed;
}

int run_shadow(const std::string& sample_path, const std::string& kernel_path,
               const std::string& output, double tol, double eps_rank) {
  const SampleSet sample = load_points(sample_path);
  const Eigen::MatrixXcd x = load_matrix(kernel_path);
  auto fact = std::make_shared<const GramFactorization>(factor_gram(sample, eps_rank));
  double residual = 0.0;
  const OperatorOnSpan op = operator_from_kernel(fact, x, tol, &residual);
  Json j;
  j["rank"] = fact->rank;
  j["residual"] = residual;
  j["operator"] = to_json(op.M);
  j["shadow"] = to_json(shadow_of_operator(op));
  emit(j, output);
  return kExitPass;
}

int run_quantize(const std::string& sample_path, const std::string& map_path, int depth,
                 const std::string& output, double tol, double eps_rank) {
  const SampleSet base = load_points(sample_path);
  const MapSpec map = map_from_json(base.space, load_json(map_path));
  const OrbitSample orbit = build_orbit(base, {map}, depth, eps_rank);
  const QuantizeReport rep = quantize_report(orbit, map, tol);
  Json j;
  j["rank"] = orbit.fact->rank;
  j["closed_points"] = orbit.closed_points.size();
  j["shadow_residual"] = rep.shadow_residual;
  j["operator"] = to_json(rep.op.M);
  emit(j, output);
  return kExitPass;
}

int run_check_coherent(const std::string& sample_path, const std::string& map_path, double tol,
                       const std::string& output) {
  const SampleSet sample = load_points(sample_path);
  const MapSpec map = map_from_json(sample.space, load_json(map_path));
  const CheckReport rep = check_coherence(sample, map, tol);
  Json j;
  j["max_residual"] = rep.max_residual;
  j["tolerance"] = rep.tolerance;
  j["passed"] = rep.passed;
  emit(j, output);
  return rep.passed ? kExitPass : kExitCheckFailed;
}

int run_check_separable(const std::string& sample_path, const std::string& map_path,
                        const std::string& chi_str, double tol, const std::string& output) {
  const SampleSet sample = load_points(sample_path);
  const Json mj = load_json(map_path);
  const MapSpec map = map_from_json(sample.space, mj);
  Complex chi;
  if (!chi_str.empty()) {
    chi = complex_from_json(Json::parse(chi_str));
  } else if (mj.contains("chi")) {
    chi = complex_from_json(mj["chi"]);
  } else {
    throw ConfigError("separable check needs --chi or a 'chi' field in the map file");
  }
  const SeparableSpec sep{map.forward, chi, "separable"};
  const CheckReport rep = check_separable(sample, sep, tol);
  Json j;
  j["max_residual"] = rep.max_residual;
  j["tolerance"] = rep.tolerance;
  j["passed"] = rep.passed;
  emit(j, output);
  return rep.passed ? kExitPass : kExitCheckFailed;
}

int run_osc(const std::string& op, const std::string& x_path, const std::string& y_path,
            const std::string& point_str, const std::string& output) {
  const OscElement x = osc_from_json(load_json(x_path));
  Json j;
  if (op == "product") {
    if (y_path.empty()) throw ConfigError("osc product needs --y");
    const OscElement y = osc_from_json(load_json(y_path));
    j = osc_to_json(multiply(x, y));
  } else if (op == "adjoint") {
    j = osc_to_json(adjoint(x));
  } else if (op == "inverse") {
    j = osc_to_json(inverse(x));
    j["condition_number"] = condition_number(x);
  } else if (op == "act") {
    if (point_str.empty()) throw ConfigError("osc act needs --point");
    const CoherentSpace space = klauder_space(x.dim());
    const Point z = point_from_json(space, Json::parse(point_str));
    j = point_to_json(act_on_point(x, z));
  } else if (op == "block") {
    j = to_json(as_block_matrix(x));
  } else {
    throw ConfigError("unknown osc operation '" + op + "'");
  }
  emit(j, output);
  return kExitPass;
}

int report_outcome(const Report& report, const std::string& output, bool timing, bool quiet) {
  const Json j = report_to_json(report, timing);
  if (!output.empty()) dump_json(output, j);
  if (!quiet) {
    for (const CheckRecord& rec : report.checks)
      std::cout << (rec.passed ? "PASS" : "FAIL") << ' ' << rec.name << "  residual=" << rec.residual
                << " tol=" << rec.tolerance << '\n';
    std::cout << report.n_passed << " passed, " << report.n_failed << " failed\n";
  }
  if (output.empty() && quiet) std::cout << j.dump(2) << '\n';
  return report.all_passed() ? kExitPass : kExitCheckFailed;
}

int run_fock(const std::string& what, const Json& params, const std::string& output) {
  SuiteConfig config;
  config.suite = "fock-" + what;
  config.seed = seed_from_env(0);
  CheckSpec spec;
  spec.check = what == "overlap" ? "glauber-overlap" : what == "gamma" ? "gamma-action" : what;
  spec.name = spec.check;
  spec.params = params;
  if (params.contains("tol")) spec.tol = params["tol"].get<double>();
  config.checks.push_back(spec);
  return report_outcome(run_suite(config), output, false, false);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coherent spaces, quantum spans and truncated Fock checks"};
  app.require_subcommand(1);

  std::string input, output, kernel_path, map_path, y_path, point_str, chi_str, osc_op;
  std::string config_path, builtin;
  double tol = 1e-8, eps = 1e-10, eps_rank = 1e-10;
  int depth = 2, dim = 1, cutoff = 30, probe = 10, nodes = 64;
  double p_val = 0.5, q_val = 0.5;
  bool timing = false;
  std::uint64_t seed_flag = 0;
  bool seed_given = false;

  auto* gram = app.add_subcommand("gram", "Gram matrix and positive-type check of a sample");
  gram->add_option("--input", input, "sample JSON")->required();
  gram->add_option("--output", output, "write the report here (stdout otherwise)");
  gram->add_option("--eps", eps, "positive-type tolerance");

  auto* shadow = app.add_subcommand("shadow", "reconstruct an operator from a kernel matrix");
  shadow->add_option("--sample", input, "sample JSON")->required();
  shadow->add_option("--kernel", kernel_path, "kernel matrix JSON")->required();
  shadow->add_option("--output", output);
  shadow->add_option("--tol", tol);
  shadow->add_option("--eps-rank", eps_rank);

  auto* quant = app.add_subcommand("quantize", "quantize a coherent map on an orbit-closed span");
  quant->add_option("--sample", input, "base sample JSON")->required();
  quant->add_option("--map", map_path, "map JSON")->required();
  quant->add_option("--depth", depth, "orbit closure depth");
  quant->add_option("--output", output);
  quant->add_option("--tol", tol);
  quant->add_option("--eps-rank", eps_rank);

  auto* cohck = app.add_subcommand("check-coherent", "verify K(z, Az') = K(A*z, z') on a sample");
  cohck->add_option("--sample", input)->required();
  cohck->add_option("--map", map_path)->required();
  cohck->add_option("--tol", tol);
  cohck->add_option("--output", output);

  auto* sepck = app.add_subcommand("check-separable", "verify K(z, az') = chi K(z, z')");
  sepck->add_option("--sample", input)->required();
  sepck->add_option("--map", map_path)->required();
  sepck->add_option("--chi", chi_str, "separation constant as [re, im]");
  sepck->add_option("--tol", tol);
  sepck->add_option("--output", output);

  auto* osc = app.add_subcommand("osc", "oscillator semigroup algebra");
  osc->add_option("operation", osc_op, "product | adjoint | inverse | act | block")->required();
  osc->add_option("--x", input, "element JSON")->required();
  osc->add_option("--y", y_path, "second element JSON");
  osc->add_option("--point", point_str, "Klauder point JSON (inline)");
  osc->add_option("--output", output);

  auto* fock = app.add_subcommand("fock", "truncated Fock space checks");
  std::string fock_what;
  fock->add_option("what", fock_what, "ccr | weyl | gamma | overlap")->required();
  fock->add_option("--dim", dim);
  fock->add_option("--cutoff", cutoff);
  fock->add_option("--probe-degree", probe);
  fock->add_option("--tol", tol);
  fock->add_option("--nodes", nodes);
  fock->add_option("--p", p_val);
  fock->add_option("--q", q_val);
  fock->add_option("--output", output);

  auto* suite = app.add_subcommand("suite", "run a named verification suite");
  suite->add_option("--config", config_path, "suite config JSON");
  suite->add_option("--builtin", builtin, "bundled suite name (moebius-gamma, regression, failing-adjoint)");
  suite->add_option("--seed", seed_flag)->each([&](const std::string&) { seed_given = true; });
  double tol_override = 0.0;
  suite->add_option("--tol", tol_override, "override every check tolerance");
  suite->add_option("--output", output, "report JSON path");
  suite->add_flag("--timing", timing, "include wall_time fields in the report");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gram->parsed()) return run_gram(input, output, eps);
    if (shadow->parsed()) return run_shadow(input, kernel_path, output, tol, eps_rank);
    if (quant->parsed()) return run_quantize(input, map_path, depth, output, tol, eps_rank);
    if (cohck->parsed()) return run_check_coherent(input, map_path, tol, output);
    if (sepck->parsed()) return run_check_separable(input, map_path, chi_str, tol, output);
    if (osc->parsed()) return run_osc(osc_op, input, y_path, point_str, output);
    if (fock->parsed()) {
      Json params;
      params["dim"] = dim;
      params["cutoff"] = cutoff;
      params["probe"] = probe;
      params["nodes"] = nodes;
      params["p"] = p_val;
      params["q"] = q_val;
      if (fock->count("--tol") > 0) params["tol"] = tol;
      return run_fock(fock_what, params, output);
    }
    if (suite->parsed()) {
      Json config_json;
      if (!config_path.empty()) {
        config_json = load_json(config_path);
      } else if (!builtin.empty()) {
        config_json = builtin_suite(builtin);
      } else {
        throw ConfigError("suite needs --config or --builtin");
      }
      SuiteConfig config = parse_suite_config(config_json);
      config.seed = seed_from_env(seed_given ? seed_flag : config.seed);
      if (suite->count("--tol") > 0)
        for (CheckSpec& spec : config.checks) spec.tol = tol_override;
      return report_outcome(run_suite(config), output, timing, false);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;
}
