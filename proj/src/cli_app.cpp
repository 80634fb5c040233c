#include "trigmom/cli_app.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <optional>

#include "trigmom/hilbert.hpp"
#include "trigmom/isometry.hpp"
#include "trigmom/moments.hpp"
#include "trigmom/nevanlinna.hpp"
#include "trigmom/numeric.hpp"
#include "trigmom/solutions.hpp"
#include "trigmom/testkit.hpp"

namespace trigmom {
namespace {

using nlohmann::json;

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  std::string measure_path;
  std::string phi_spec = "zero";
  double psd_tol = kDefaultPsdTol;
  double rank_tol = kDefaultRankTol;
  double radius = 0.5;
  int samples = 0;  // 0 = default for the problem order
  double poisson_r = kDefaultPoissonRadius;
  int grid = kDefaultPoissonGrid;
  std::uint64_t seed = 1;
  int threads = 1;
  bool taylor = false;
};

std::string format17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct Pipeline {
  MomentSequence ms;
  ToeplitzForm tf;
  ProblemSpace ps;
  IsometryRep ir;
};

Pipeline build_pipeline(const RunConfig& cfg) {
  MomentSequence ms = load_moments(cfg.input);
  ToeplitzForm tf = build_toeplitz(ms, cfg.psd_tol);
  ProblemSpace ps = factor_gram(tf, cfg.rank_tol);
  IsometryRep ir = build_isometry(ps, cfg.rank_tol);
  return Pipeline{std::move(ms), std::move(tf), std::move(ps), std::move(ir)};
}

CMatrix complex_matrix_from_json(const json& j, int rows, int cols,
                                 const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw dimension_error(what + ": expected " + std::to_string(rows) +
                          " rows");
  CMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw dimension_error(what + ": bad row length");
    for (int c = 0; c < cols; ++c) {
      const json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
          !e[1].is_number())
        throw parse_error(what + ": entries must be [re, im] pairs");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

/// Parameter file: {"m": int, "coeffs": [ m x m matrix, ... ]}; one
/// coefficient makes the parameter constant.
SchurParameter load_parameter(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error("malformed JSON in " + path + ": " + e.what());
  }
  if (!j.contains("m") || !j["m"].is_number_integer())
    throw parse_error(path + ": missing integer field 'm'");
  const int m = j["m"].get<int>();
  if (m < 0) throw parse_error(path + ": field 'm' must be >= 0");
  if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].empty())
    throw parse_error(path + ": missing non-empty array field 'coeffs'");
  std::vector<CMatrix> coeffs;
  for (std::size_t k = 0; k < j["coeffs"].size(); ++k)
    coeffs.push_back(complex_matrix_from_json(
        j["coeffs"][k], m, m, path + ": coeff " + std::to_string(k)));
  return coeffs.size() == 1 ? SchurParameter::constant(std::move(coeffs[0]))
                            : SchurParameter::polynomial(std::move(coeffs));
}

SchurParameter make_parameter(const RunConfig& cfg, int m) {
  if (cfg.phi_spec == "zero")
    return SchurParameter::constant(CMatrix::Zero(m, m));
  if (cfg.phi_spec == "unitary") {
    if (m == 0) return SchurParameter::empty();
    return SchurParameter::constant(
        testkit::random_contraction(m, cfg.seed, true));
  }
  if (cfg.phi_spec.rfind("file:", 0) == 0)
    return load_parameter(cfg.phi_spec.substr(5));
  throw std::invalid_argument("--phi must be zero, unitary or file:PATH");
}

/// Output stream selection: file when --output was given, stdout otherwise.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw parse_error("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

json residual_report(const std::vector<double>& residuals) {
  json r;
  r["residuals"] = residuals;
  r["max_residual"] =
      residuals.empty() ? 0.0
                        : *std::max_element(residuals.begin(), residuals.end());
  return r;
}

// The order-zero problem has no shift to extend; it is answered directly
// with a one-atom measure and is determinate only for zero mass.
struct OrderZero {
  int p = 0;
  CMatrix s0;
};

std::optional<OrderZero> detect_order_zero(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw parse_error("malformed JSON in " + path + ": " + e.what());
  }
  if (!j.contains("d") || !j["d"].is_number_integer() || j["d"].get<int>() != 0)
    return std::nullopt;
  if (!j.contains("p") || !j["p"].is_number_integer() || j["p"].get<int>() < 1)
    throw parse_error(path + ": missing positive integer field 'p'");
  const int p = j["p"].get<int>();
  if (!j.contains("moments") || !j["moments"].is_array() ||
      j["moments"].size() != 1)
    throw dimension_error(path + ": order-zero file must carry exactly one "
                          "moment block");
  return OrderZero{p, complex_matrix_from_json(j["moments"][0], p, p,
                                               path + ": moment 0")};
}

int cmd_check_order_zero(const OrderZero& oz, const RunConfig& cfg) {
  const double scale = std::max(1.0, detail::op_norm(oz.s0));
  if (!detail::approx_hermitian(oz.s0, cfg.psd_tol * scale))
    throw std::invalid_argument("order-zero check: S_0 is not Hermitian");
  const double lambda_min =
      detail::min_hermitian_eig(detail::hermitian_part(oz.s0));
  const bool solvable = lambda_min >= -cfg.psd_tol * scale;
  json report;
  report["d"] = 0;
  report["solvable"] = solvable;
  report["lambda_min"] = lambda_min;
  if (solvable) {
    report["determinate"] = detail::op_norm(oz.s0) <= cfg.psd_tol;
    report["note"] =
        "order-zero problem: any distribution with total mass S_0 solves it; "
        "canonical solution is a single atom at angle 0";
  }
  OutputTarget out(cfg.output);
  out.stream() << report.dump(2) << '\n';
  return solvable ? 0 : 2;
}

int cmd_solve_order_zero(const OrderZero& oz, const RunConfig& cfg) {
  const double scale = std::max(1.0, detail::op_norm(oz.s0));
  const CMatrix s0 = detail::hermitian_part(oz.s0);
  if (!detail::approx_hermitian(oz.s0, cfg.psd_tol * scale) ||
      detail::min_hermitian_eig(s0) < -cfg.psd_tol * scale)
    throw not_solvable_error("order-zero solve: S_0 is not PSD");
  std::vector<AtomicMeasure::Atom> atoms;
  if (detail::op_norm(s0) > cfg.psd_tol) atoms.push_back({0.0, s0});
  const AtomicMeasure mu(oz.p, std::move(atoms));
  if (cfg.output.empty())
    throw std::invalid_argument("solve: --output is required");
  save_measure(mu, cfg.output);
  json report;
  report["d"] = 0;
  report["atoms"] = mu.atoms.size();
  report["max_residual"] = 0.0;
  report["determinate"] = mu.atoms.empty();
  report["note"] = "order-zero problem is indeterminate unless S_0 = 0";
  std::cout << report.dump(2) << '\n';
  return 0;
}

int cmd_check(const RunConfig& cfg) {
  if (auto oz = detect_order_zero(cfg.input))
    return cmd_check_order_zero(*oz, cfg);
  MomentSequence ms = load_moments(cfg.input);
  ToeplitzForm tf = build_toeplitz(ms, cfg.psd_tol);
  const SolvabilityResult sol = check_solvable(tf);
  json report;
  report["solvable"] = sol.solvable;
  report["lambda_min"] = sol.lambda_min;
  report["toeplitz_norm"] = tf.norm;
  if (sol.solvable) {
    ProblemSpace ps = factor_gram(tf, cfg.rank_tol);
    IsometryRep ir = build_isometry(ps, cfg.rank_tol);
    const auto [m, m_prime] = defect_numbers(ir);
    report["r"] = ir.rank();
    report["tau"] = ir.tau();
    report["defect_numbers"] = {m, m_prime};
    report["determinate"] = is_determinate(ir);
  }
  OutputTarget out(cfg.output);
  out.stream() << report.dump(2) << '\n';
  return sol.solvable ? 0 : 2;
}

int cmd_solve(const RunConfig& cfg) {
  if (auto oz = detect_order_zero(cfg.input))
    return cmd_solve_order_zero(*oz, cfg);
  if (cfg.output.empty())
    throw std::invalid_argument("solve: --output is required");
  Pipeline pl = build_pipeline(cfg);
  const int m = pl.ir.defect();
  CMatrix phi_u;
  if (cfg.phi_spec == "zero") {
    if (m > 0)
      throw std::invalid_argument(
          "solve: the parameter must be unitary; use --phi unitary or a "
          "unitary file");
    phi_u = CMatrix(0, 0);
  } else {
    const SchurParameter phi = make_parameter(cfg, m);
    if (!phi.is_constant())
      throw std::invalid_argument("solve: the parameter must be constant");
    phi_u = phi(0.0);
  }
  const AtomicMeasure mu = canonical_solution(pl.ir, phi_u);
  save_measure(mu, cfg.output);
  json report = residual_report(verify_solution(mu, pl.ms));
  report["atoms"] = mu.atoms.size();
  report["determinate"] = is_determinate(pl.ir);
  std::cout << report.dump(2) << '\n';
  return 0;
}

int cmd_evaluate(const RunConfig& cfg) {
  if (detect_order_zero(cfg.input))
    throw std::invalid_argument(
        "evaluate: the parameterization requires d >= 1");
  if (cfg.taylor && cfg.output.empty())
    throw std::invalid_argument("evaluate: --taylor requires --output");
  Pipeline pl = build_pipeline(cfg);
  const SchurParameter phi = make_parameter(cfg, pl.ir.defect());
  const int n = cfg.samples > 0 ? cfg.samples
                                : default_taylor_samples(pl.ms.d);

  std::vector<HerglotzSample> ring(static_cast<std::size_t>(n));
  detail::parallel_for(static_cast<std::size_t>(n), cfg.threads,
                       [&](std::size_t l) {
                         const Complex z = std::polar(
                             cfg.radius, 2.0 * std::numbers::pi *
                                             static_cast<double>(l) / n);
                         ring[l] = evaluate_M(pl.ir, phi, z);
                       });

  {
    OutputTarget out(cfg.output);
    std::ostream& os = out.stream();
    const int p = pl.ms.p;
    os << "zeta_re,zeta_im";
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j)
        os << ",M[" << i << "][" << j << "].re,M[" << i << "][" << j
           << "].im";
    os << '\n';
    for (const HerglotzSample& s : ring) {
      os << format17(s.zeta.real()) << ',' << format17(s.zeta.imag());
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
          os << ',' << format17(s.M(i, j).real()) << ','
             << format17(s.M(i, j).imag());
      os << '\n';
    }
  }

  if (cfg.taylor) {
    const std::vector<CMatrix> recovered =
        taylor_moments(pl.ir, phi, pl.ms.d, cfg.radius, n);
    std::vector<double> residuals;
    residuals.reserve(recovered.size());
    for (int k = 0; k <= pl.ms.d; ++k)
      residuals.push_back(detail::op_norm(
          recovered[static_cast<std::size_t>(k)] -
          pl.ms.S[static_cast<std::size_t>(k)]));
    json report = residual_report(residuals);
    report["radius"] = cfg.radius;
    report["samples"] = n;
    std::cout << report.dump(2) << '\n';
  }
  return 0;
}

int cmd_recover(const RunConfig& cfg) {
  if (detect_order_zero(cfg.input))
    throw std::invalid_argument(
        "recover: the parameterization requires d >= 1");
  Pipeline pl = build_pipeline(cfg);
  const SchurParameter phi = make_parameter(cfg, pl.ir.defect());
  const DistributionSamples ds = recover_distribution(
      pl.ir, phi, uniform_grid(cfg.grid), cfg.poisson_r, cfg.threads);
  OutputTarget out(cfg.output);
  save_distribution_csv(ds, out.stream());
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const MomentSequence ms = load_moments(cfg.input);
  const AtomicMeasure mu = load_measure(cfg.measure_path);
  json report = residual_report(verify_solution(mu, ms));
  OutputTarget out(cfg.output);
  out.stream() << report.dump(2) << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Truncated matrix trigonometric moment problems: solvability, "
               "determinacy, parameterization of all solutions, and "
               "solution-measure recovery"};
  app.require_subcommand(1);

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("input", cfg.input, "moments JSON file")->required();
    sub->add_option("--psd-tol", cfg.psd_tol,
                    "relative positivity tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--rank-tol", cfg.rank_tol, "relative rank tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_option("--output,-o", cfg.output, "output file (default stdout)");
  };
  auto add_phi = [&cfg](CLI::App* sub) {
    sub->add_option("--phi", cfg.phi_spec,
                    "parameter: zero, unitary or file:PATH");
    sub->add_option("--seed", cfg.seed, "seed for generated parameters");
  };
  auto add_threads = [&cfg](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "worker threads for grids")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* check = app.add_subcommand(
      "check", "solvability, rank, defect numbers, determinacy");
  add_common(check);

  CLI::App* solve = app.add_subcommand(
      "solve", "write the atomic solution of a unitary parameter");
  add_common(solve);
  add_phi(solve);
  solve->get_option("--phi")->default_str("unitary");

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "sample the solution transform M on a ring");
  add_common(evaluate);
  add_phi(evaluate);
  add_threads(evaluate);
  evaluate->add_option("--radius", cfg.radius, "ring radius in (0,1)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  evaluate->add_option("--samples", cfg.samples,
                       "ring sample count (power of two)");
  evaluate->add_flag("--taylor", cfg.taylor,
                     "also report moments recovered from the ring");

  CLI::App* recover = app.add_subcommand(
      "recover", "recover the distribution function on an angle grid");
  add_common(recover);
  add_phi(recover);
  add_threads(recover);
  recover->add_option("--poisson-r", cfg.poisson_r,
                      "Poisson radius in (0,1)")
      ->check(CLI::Range(1e-9, 1.0 - 1e-9));
  recover->add_option("--grid", cfg.grid, "number of grid cells over [0,2pi]")
      ->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand(
      "verify", "residuals of a measure against prescribed moments");
  add_common(verify);
  verify->add_option("--measure", cfg.measure_path, "measure JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  // --phi unitary is the solve default; CLI11 default_str only affects help.
  if (solve->parsed() && !solve->get_option("--phi")->count())
    cfg.phi_spec = "unitary";

  try {
    if (check->parsed()) return cmd_check(cfg);
    if (solve->parsed()) return cmd_solve(cfg);
    if (evaluate->parsed()) return cmd_evaluate(cfg);
    if (recover->parsed()) return cmd_recover(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    return 1;
  } catch (const not_solvable_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("trigmom");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace trigmom
