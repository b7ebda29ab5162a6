// timemap: construct and verify single-bump solutions of
// -u'' = lambda u + f(u), u(a) = u(b) = 0.
//
// Exit codes: 0 success, 1 usage / I/O, 2 lambda or domain outside the
// admissible range, 3 verification failure.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "timemap/timemap_all.hpp"

namespace {

using namespace timemap;

enum Exit : int { kOk = 0, kUsage = 1, kDomain = 2, kVerifyFailed = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

QuadratureConfig quadrature_from_env() {
  QuadratureConfig cfg;
  if (const char* env = std::getenv("TIMEMAP_QUAD_TOL"); env != nullptr && *env != '\0') {
    std::size_t used = 0;
    double tol = 0.0;
    try {
      tol = std::stod(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != std::string(env).size() || !(tol > 0.0))
      throw UsageError("TIMEMAP_QUAD_TOL must be a positive decimal number");
    cfg.abs_tol = tol;
    cfg.rel_tol = tol;
  }
  return cfg;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw UsageError("failed writing " + path);
}

void print_summary(const SolutionProfile& p, const VerificationReport& r) {
  std::cerr << "M=" << format_number(p.amplitude()) << '\n'
            << "u(mid)=" << format_number(p.u(p.spec().midpoint())) << '\n'
            << "fd_order=" << format_number(r.fd_order_estimate)
            << " shooting_deviation=" << format_number(r.shooting_max_deviation)
            << " shooting_endpoint=" << format_number(r.shooting_endpoint_value)
            << " energy_drift=" << format_number(r.energy_drift_sup)
            << " pohozaev=" << format_number(r.pohozaev_residual) << '\n'
            << "verification " << (r.passed ? "passed" : "FAILED") << '\n';
  for (const auto& name : r.failures) std::cerr << "  failed: " << name << '\n';
}

struct SolveArgs {
  double a = 0.0, b = 0.0, lambda = 0.0;
  int n = 256;
  int samples = 256;
  double tol = 1e-10;
  std::string format = "csv";
  std::string out;
};

int run_solve(const SolveArgs& args) {
  const ProblemSpec spec{args.a, args.b, args.lambda};
  if (!(spec.a < spec.b)) throw UsageError("--a must be smaller than --b");
  if (args.n < SolutionProfile::kMinNodes) throw UsageError("--n must be >= 16");
  if (!(args.tol > 0.0)) throw UsageError("--tol must be positive");
  if (args.samples < 2) throw UsageError("--samples must be >= 2");

  const QuadratureConfig qcfg = quadrature_from_env();
  RootFindConfig rcfg;
  rcfg.f_tol = args.tol;

  const auto profile = construct(spec, args.n, qcfg, rcfg);
  const auto report = full_report(profile);
  const Format format = args.format == "json" ? Format::Json : Format::Csv;
  write_output(export_profile(profile, format, args.samples, &report), args.out);
  print_summary(profile, report);
  return report.passed ? kOk : kVerifyFailed;
}

struct SweepArgs {
  double a = 0.0, b = 0.0, lambda_min = 0.0, lambda_max = 0.0;
  int steps = 0;
  int n = 256;
  std::string out;
};

int run_sweep(const SweepArgs& args) {
  const ProblemSpec base{args.a, args.b, 0.0};
  if (!(base.a < base.b)) throw UsageError("--a must be smaller than --b");
  if (args.steps < 2) throw UsageError("--steps must be >= 2");
  if (!(args.lambda_min < args.lambda_max)) throw UsageError("--lambda-min must be < --lambda-max");
  if (!admissible({base.a, base.b, args.lambda_min}) || !admissible({base.a, base.b, args.lambda_max}))
    throw Error(ErrorCode::LambdaOutOfRange, "sweep range must lie inside (0, lambda1)");

  const QuadratureConfig qcfg = quadrature_from_env();
  std::ostringstream os;
  os << std::setprecision(17) << "lambda,M,phi_residual,verify_passed\n";
  for (int i = 0; i < args.steps; ++i) {
    const double lambda = (i == args.steps - 1)
                              ? args.lambda_max
                              : args.lambda_min + (args.lambda_max - args.lambda_min) * i / (args.steps - 1);
    const ProblemSpec spec{base.a, base.b, lambda};
    const auto solved = solve_M(spec, {}, qcfg);
    const SolutionProfile profile(spec, solved.M, args.n, qcfg);
    const bool passed = full_report(profile).passed;
    os << lambda << ',' << solved.M << ',' << solved.residual << ',' << (passed ? "true" : "false") << '\n';
  }
  write_output(os.str(), args.out);
  return kOk;
}

int run_verify(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
  const ProfileDocument parsed = parse_profile_document(doc);
  const auto profile = rebuild_profile(parsed, quadrature_from_env());
  auto report = full_report(profile);

  // The stored samples must agree with the profile their metadata describes.
  const double mismatch = sample_mismatch(profile, parsed.samples);
  const double allowed = std::max(1e-9, 10.0 * parsed.tolerance);
  if (!(mismatch <= allowed)) {
    report.failures.emplace_back("samples");
    report.passed = false;
  }
  nlohmann::json out = to_json(report);
  out["sample_mismatch"] = std::isfinite(mismatch) ? nlohmann::json(mismatch) : nlohmann::json(nullptr);
  out["M"] = profile.amplitude();
  std::cout << out.dump(2) << '\n';
  return report.passed ? kOk : kVerifyFailed;
}

int run_phi(const std::vector<double>& ks, double lambda) {
  const QuadratureConfig cfg = quadrature_from_env();
  if (ks.size() == 1) {
    std::cout << format_number(phi(ks.front(), lambda, cfg)) << '\n';
    return kOk;
  }
  nlohmann::json table = nlohmann::json::array();
  for (double k : ks) table.push_back({{"k", k}, {"phi", phi(k, lambda, cfg)}});
  std::cout << table.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-map construction and verification of nontrivial solutions of -u'' = lambda u + f(u)"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "construct, verify and export the nontrivial solution");
  solve_cmd->add_option("--a", solve.a, "left endpoint")->required();
  solve_cmd->add_option("--b", solve.b, "right endpoint")->required();
  solve_cmd->add_option("--lambda", solve.lambda, "spectral parameter, 0 < lambda < pi^2/(b-a)^2")->required();
  solve_cmd->add_option("--n", solve.n, "profile nodes on the half-interval")->capture_default_str();
  solve_cmd->add_option("--tol", solve.tol, "tolerance on |Phi(M) - (b-a)/2|")->capture_default_str();
  solve_cmd->add_option("--samples", solve.samples, "number of output intervals")->capture_default_str();
  solve_cmd->add_option("--format", solve.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  solve_cmd->add_option("--out", solve.out, "output file (default: stdout)");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "tabulate M(lambda) across the admissible range");
  sweep_cmd->add_option("--a", sweep.a)->required();
  sweep_cmd->add_option("--b", sweep.b)->required();
  sweep_cmd->add_option("--lambda-min", sweep.lambda_min)->required();
  sweep_cmd->add_option("--lambda-max", sweep.lambda_max)->required();
  sweep_cmd->add_option("--steps", sweep.steps)->required();
  sweep_cmd->add_option("--n", sweep.n, "profile nodes used for verification")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "output file (default: stdout)");

  std::string verify_in;
  auto* verify_cmd = app.add_subcommand("verify", "re-verify a JSON profile written by solve");
  verify_cmd->add_option("--in", verify_in, "profile JSON")->required();

  std::vector<double> phi_k;
  double phi_lambda = 0.0;
  auto* phi_cmd = app.add_subcommand("phi", "evaluate the time map Phi(k); several --k values give a table");
  phi_cmd->add_option("--k", phi_k)->required()->take_all();
  phi_cmd->add_option("--lambda", phi_lambda)->required();

  std::string shape = "interval";
  int dim = 1, grid = 2048;
  double spec_a = 0.0, spec_b = 1.0, radius = 1.0;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "first Dirichlet eigenvalue of an interval or ball");
  spectrum_cmd->add_option("--shape", shape)->check(CLI::IsMember({"interval", "ball"}))->capture_default_str();
  spectrum_cmd->add_option("--dim", dim, "dimension (ball)")->capture_default_str();
  spectrum_cmd->add_option("--radius", radius, "radius (ball)")->capture_default_str();
  spectrum_cmd->add_option("--n", grid, "radial grid size (ball)")->capture_default_str();
  spectrum_cmd->add_option("--a", spec_a, "left endpoint (interval)")->capture_default_str();
  spectrum_cmd->add_option("--b", spec_b, "right endpoint (interval)")->capture_default_str();

  int cert_dim = 1;
  double cert_lambda = 0.0, cert_lambda1 = 0.0;
  bool starshaped = false;
  auto* certify_cmd = app.add_subcommand("certify", "classify (N, lambda, lambda1) into unique / exists / open");
  certify_cmd->add_option("--dim", cert_dim)->required();
  certify_cmd->add_option("--lambda", cert_lambda)->required();
  certify_cmd->add_option("--lambda1", cert_lambda1)->required();
  certify_cmd->add_flag("--starshaped", starshaped, "assert the domain is star-shaped");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve);
    if (sweep_cmd->parsed()) return run_sweep(sweep);
    if (verify_cmd->parsed()) return run_verify(verify_in);
    if (phi_cmd->parsed()) return run_phi(phi_k, phi_lambda);
    if (spectrum_cmd->parsed()) {
      const SpectralResult r = shape == "interval" ? lambda1_interval(spec_a, spec_b)
                                                   : lambda1_ball(dim, radius, grid);
      std::cout << to_json(r).dump(2) << '\n';
      return kOk;
    }
    if (certify_cmd->parsed()) {
      std::cout << to_json(classify(cert_dim, cert_lambda, cert_lambda1, starshaped)).dump(2) << '\n';
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::LambdaOutOfRange:
      case ErrorCode::BracketExhausted:
      case ErrorCode::InvalidInterval:
      case ErrorCode::DimensionTooLow:
        return kDomain;
      case ErrorCode::InvalidArgument:
        return kUsage;
      default:
        return kVerifyFailed;
    }
  }
  return kUsage;
}
