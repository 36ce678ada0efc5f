// svstmx: minimax risk of matrix denoising by singular-value soft
// thresholding. Subcommands tabulate the asymptotic minimax MSE and
// threshold curves, evaluate the finite-n minimax by Monte Carlo, and run
// the denoiser simulations that validate the formulas end to end.
//
// All output is deterministic: a fixed seed yields byte-identical bytes,
// rows are emitted in input order, floats carry 12 significant digits.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "svstmx/amse.hpp"
#include "svstmx/finite_n.hpp"
#include "svstmx/sim.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

class JsonObj {
 public:
  JsonObj& num(const char* k, double v) { return raw(k, fmt(v)); }
  JsonObj& integer(const char* k, long long v) {
    return raw(k, std::to_string(v));
  }
  JsonObj& str(const char* k, const std::string& v) {
    return raw(k, "\"" + v + "\"");
  }
  JsonObj& raw(const char* k, const std::string& v) {
    if (!body_.empty()) body_ += ",";
    body_ += "\"";
    body_ += k;
    body_ += "\":";
    body_ += v;
    return *this;
  }
  std::string finish() const { return "{" + body_ + "}"; }

 private:
  std::string body_;
};

std::string json_array(const std::vector<std::string>& items) {
  std::string out = "[";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += ",";
    out += items[i];
  }
  return out + "]";
}

struct CsvDoc {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string finish() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i > 0) out += ",";
      out += header[i];
    }
    out += "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i > 0) out += ",";
        out += fmt(row[i]);
      }
      out += "\n";
    }
    return out;
  }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + out_path);
  f << text;
}

svstmx::MatrixClass class_from(const std::string& name, double beta) {
  if (name == "sym") return svstmx::MatrixClass::sym();
  return svstmx::MatrixClass::mat(beta);
}

std::vector<double> parse_grid(const std::string& spec) {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
      !(step > 0.0) || stop < start) {
    throw CLI::ValidationError("--grid", "expected START:STOP:STEP with STEP > 0");
  }
  std::vector<double> grid;
  const double span = stop - start;
  const long count = static_cast<long>(std::floor(span / step + 1e-9));
  for (long i = 0; i <= count; ++i) {
    grid.push_back(start + step * static_cast<double>(i));
  }
  if (!grid.empty() && stop - grid.back() > 1e-9 * std::max(1.0, stop)) {
    grid.push_back(stop);
  }
  return grid;
}

struct CommonFlags {
  std::string format = "json";
  std::string out_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", out_path, "Write output to FILE (default stdout)");
  }
};

// ---- amse ---------------------------------------------------------------

int run_amse(double rho, double beta, const std::string& cls_name,
             const CommonFlags& io) {
  const auto cls = class_from(cls_name, beta);
  const svstmx::AmsePoint pt = svstmx::minimax_amse(cls, rho);
  const double lower = svstmx::global_lower_bound(rho, cls);
  const double rbound = svstmx::amse_ratio_bound(cls.beta);
  if (io.format == "csv") {
    CsvDoc doc;
    doc.header = {"rho", "gamma", "lambda_star", "amse", "tuning_scale",
                  "lower_bound"};
    doc.rows.push_back(
        {pt.rho, pt.gamma, pt.lambda_star, pt.amse, pt.tuning_scale, lower});
    emit(doc.finish(), io.out_path);
    return 0;
  }
  JsonObj inputs;
  inputs.num("rho", rho).num("beta", cls.beta).str("class", cls.name());
  JsonObj results;
  results.num("rho", pt.rho)
      .num("gamma", pt.gamma)
      .num("lambda_star", pt.lambda_star)
      .num("amse", pt.amse)
      .num("tuning_scale", pt.tuning_scale)
      .num("lower_bound", lower)
      .num("ratio_bound", rbound);
  if (cls.kind == svstmx::MatrixKind::Mat) {
    // critical sampling rate for nuclear-norm recovery (equals the AMSE)
    results.num("delta_star", pt.amse);
  }
  JsonObj doc;
  doc.str("command", "amse")
      .str("tool_version", kToolVersion)
      .raw("inputs", inputs.finish())
      .raw("results", results.finish());
  emit(doc.finish() + "\n", io.out_path);
  return 0;
}

// ---- curve --------------------------------------------------------------

int run_curve(double beta, const std::string& cls_name,
              const std::string& grid_spec, const CommonFlags& io) {
  const auto cls = class_from(cls_name, beta);
  std::vector<double> grid;
  std::string desc;
  if (grid_spec.empty()) {
    grid = svstmx::default_rho_grid();
    desc = "default:0-1-step-0.01-plus-geometric-refinement";
  } else {
    grid = parse_grid(grid_spec);
    desc = grid_spec;
  }
  const svstmx::CurveTable table = svstmx::tabulate_curve(cls, grid, desc);
  if (io.format == "csv") {
    CsvDoc doc;
    doc.header = {"rho", "gamma", "lambda_star", "amse", "tuning_scale",
                  "lower_bound"};
    for (const auto& r : table.rows) {
      doc.rows.push_back({r.rho, r.gamma, r.lambda_star, r.amse,
                          r.tuning_scale, r.lower_bound});
    }
    emit(doc.finish(), io.out_path);
    return 0;
  }
  std::vector<std::string> rows;
  rows.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    JsonObj row;
    row.num("rho", r.rho)
        .num("gamma", r.gamma)
        .num("lambda_star", r.lambda_star)
        .num("amse", r.amse)
        .num("tuning_scale", r.tuning_scale)
        .num("lower_bound", r.lower_bound);
    rows.push_back(row.finish());
  }
  JsonObj inputs;
  inputs.str("class", cls.name()).num("beta", cls.beta).str("grid", desc);
  JsonObj doc;
  doc.str("command", "curve")
      .str("tool_version", kToolVersion)
      .raw("inputs", inputs.finish())
      .raw("rows", json_array(rows));
  emit(doc.finish() + "\n", io.out_path);
  return 0;
}

// ---- parametric ---------------------------------------------------------

int run_parametric(const std::string& cls_name, int theta_count,
                   const CommonFlags& io) {
  const auto cls = class_from(cls_name, 1.0);
  std::vector<double> thetas;
  thetas.reserve(static_cast<std::size_t>(theta_count));
  constexpr double kHalfPi = 1.57079632679489661923;
  for (int j = 1; j <= theta_count; ++j) {
    thetas.push_back(kHalfPi * static_cast<double>(j) /
                     static_cast<double>(theta_count + 1));
  }
  const auto pts = svstmx::parametric_curve(cls, thetas);
  std::vector<std::string> rows;
  CsvDoc csv;
  csv.header = {"theta", "rho", "amse", "direct_gap"};
  for (const auto& p : pts) {
    const double direct = svstmx::minimax_amse(cls, p.rho).amse;
    const double gap = std::abs(direct - p.amse);
    if (io.format == "csv") {
      csv.rows.push_back({p.theta, p.rho, p.amse, gap});
    } else {
      JsonObj row;
      row.num("theta", p.theta).num("rho", p.rho).num("amse", p.amse).num(
          "direct_gap", gap);
      rows.push_back(row.finish());
    }
  }
  if (io.format == "csv") {
    emit(csv.finish(), io.out_path);
    return 0;
  }
  JsonObj inputs;
  inputs.str("class", cls.name()).integer("theta_count", theta_count);
  JsonObj doc;
  doc.str("command", "parametric")
      .str("tool_version", kToolVersion)
      .raw("inputs", inputs.finish())
      .raw("rows", json_array(rows));
  emit(doc.finish() + "\n", io.out_path);
  return 0;
}

// ---- finite-n -----------------------------------------------------------

int run_finite_n(int r, int m, int n, const std::string& cls_name,
                 int trials, std::uint64_t seed, const CommonFlags& io) {
  const svstmx::FiniteProblem prob{
      r, m, n,
      class_from(cls_name, static_cast<double>(m) / n)};
  const auto res = svstmx::finite_n_minimax(prob, trials, seed);
  if (io.format == "csv") {
    CsvDoc doc;
    doc.header = {"lambda_star_n", "mse", "mse_std_error",
                  "data_scale_lambda"};
    doc.rows.push_back(
        {res.lambda_star_n, res.mse, res.mse_std_error, res.data_scale_lambda});
    emit(doc.finish(), io.out_path);
    return 0;
  }
  JsonObj inputs;
  inputs.integer("r", r)
      .integer("m", m)
      .integer("n", n)
      .str("class", prob.cls.name())
      .integer("trials", trials)
      .integer("seed", static_cast<long long>(seed));
  JsonObj results;
  results.num("lambda_star_n", res.lambda_star_n)
      .num("mse", res.mse)
      .num("mse_std_error", res.mse_std_error)
      .num("data_scale_lambda", res.data_scale_lambda);
  JsonObj doc;
  doc.str("command", "finite-n")
      .str("tool_version", kToolVersion)
      .raw("inputs", inputs.finish())
      .raw("results", results.finish());
  emit(doc.finish() + "\n", io.out_path);
  return 0;
}

// ---- simulate -----------------------------------------------------------

int run_simulate(int r, int m, int n, const std::string& cls_name,
                 double mu, std::optional<double> lambda, int trials,
                 std::uint64_t seed, const CommonFlags& io) {
  const svstmx::FiniteProblem prob{
      r, m, n,
      class_from(cls_name, static_cast<double>(m) / n)};
  prob.validate();
  std::string policy = "explicit";
  double lam;
  if (lambda.has_value()) {
    lam = *lambda;
  } else {
    // minimax tuning: data-scale lambda = sqrt(1 - r/n) * Lambda*(r/m)
    const double rho = static_cast<double>(r) / m;
    lam = std::sqrt(1.0 - static_cast<double>(r) / n) *
          svstmx::minimax_threshold(prob.cls, rho);
    policy = "minimax";
  }
  const svstmx::SimConfig cfg{prob, mu, lam, trials, seed};
  const svstmx::SimStats st = svstmx::monte_carlo_risk(cfg);
  if (io.format == "csv") {
    CsvDoc doc;
    doc.header = {"lambda", "risk_mean", "risk_std_error", "trials"};
    doc.rows.push_back(
        {lam, st.mean, st.std_error, static_cast<double>(st.trials)});
    emit(doc.finish(), io.out_path);
    return 0;
  }
  JsonObj inputs;
  inputs.integer("r", r)
      .integer("m", m)
      .integer("n", n)
      .str("class", prob.cls.name())
      .num("mu", mu)
      .str("lambda_policy", policy)
      .integer("trials", trials)
      .integer("seed", static_cast<long long>(seed));
  JsonObj results;
  results.num("lambda", lam)
      .num("risk_mean", st.mean)
      .num("risk_std_error", st.std_error)
      .integer("trials", st.trials);
  JsonObj doc;
  doc.str("command", "simulate")
      .str("tool_version", kToolVersion)
      .raw("inputs", inputs.finish())
      .raw("results", results.finish());
  emit(doc.finish() + "\n", io.out_path);
  return 0;
}

// ---- sure-check ---------------------------------------------------------

int run_sure_check(int r, int m, int n, const std::string& cls_name,
                   double mu, double lambda, int trials,
                   std::uint64_t seed, const CommonFlags& io) {
  const svstmx::FiniteProblem prob{
      r, m, n,
      class_from(cls_name, static_cast<double>(m) / n)};
  const svstmx::SimConfig cfg{prob, mu, lambda, trials, seed};
  const auto res = svstmx::sure_vs_empirical(cfg);
  if (io.format == "csv") {
    CsvDoc doc;
    doc.header = {"sure_mean", "sure_std_error", "risk_mean",
                  "risk_std_error", "discrepancy_z", "resampled"};
    doc.rows.push_back({res.sure_mean.mean, res.sure_mean.std_error,
                        res.risk_mean.mean, res.risk_mean.std_error,
                        res.discrepancy_z,
                        static_cast<double>(res.resampled)});
    emit(doc.finish(), io.out_path);
    return 0;
  }
  JsonObj inputs;
  inputs.integer("r", r)
      .integer("m", m)
      .integer("n", n)
      .str("class", prob.cls.name())
      .num("mu", mu)
      .num("lambda", lambda)
      .integer("trials", trials)
      .integer("seed", static_cast<long long>(seed));
  JsonObj results;
  results.num("sure_mean", res.sure_mean.mean)
      .num("sure_std_error", res.sure_mean.std_error)
      .num("risk_mean", res.risk_mean.mean)
      .num("risk_std_error", res.risk_mean.std_error)
      .num("discrepancy_z", res.discrepancy_z)
      .integer("resampled", res.resampled);
  JsonObj doc;
  doc.str("command", "sure-check")
      .str("tool_version", kToolVersion)
      .raw("inputs", inputs.finish())
      .raw("results", results.finish());
  emit(doc.finish() + "\n", io.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimax MSE and optimal tuning for singular-value soft "
               "thresholding"};
  app.require_subcommand(1);

  // amse
  auto* amse = app.add_subcommand("amse", "One minimax AMSE point");
  double rho = 0.0;
  double beta = 1.0;
  std::string cls_name = "mat";
  CommonFlags amse_io;
  amse->add_option("--rho", rho, "Rank fraction")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  amse->add_option("--beta", beta, "Aspect ratio m/n")
      ->check(CLI::Range(1e-12, 1.0))
      ->capture_default_str();
  amse->add_option("--class", cls_name, "Matrix class")
      ->check(CLI::IsMember({"mat", "sym"}))
      ->capture_default_str();
  amse_io.attach(amse);

  // curve
  auto* curve = app.add_subcommand("curve", "Minimax AMSE / threshold curve");
  double c_beta = 1.0;
  std::string c_cls = "mat";
  std::string c_grid;
  CommonFlags curve_io;
  curve->add_option("--beta", c_beta, "Aspect ratio m/n")
      ->check(CLI::Range(1e-12, 1.0))
      ->capture_default_str();
  curve->add_option("--class", c_cls, "Matrix class")
      ->check(CLI::IsMember({"mat", "sym"}))
      ->capture_default_str();
  curve->add_option("--grid", c_grid, "rho grid START:STOP:STEP");
  curve_io.attach(curve);

  // parametric
  auto* param = app.add_subcommand("parametric",
                                   "Square-case parametric minimax curve");
  std::string p_cls = "mat";
  int theta_count = 100;
  CommonFlags param_io;
  param->add_option("--class", p_cls, "Matrix class")
      ->check(CLI::IsMember({"mat", "sym"}))
      ->capture_default_str();
  param->add_option("--theta-count", theta_count, "Interior theta count")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  param_io.attach(param);

  // finite-n
  auto* fin = app.add_subcommand("finite-n", "Finite-n minimax by Monte Carlo");
  int f_r = 1;
  int f_m = 1;
  int f_n = 1;
  std::string f_cls = "mat";
  int f_trials = 1000;
  std::uint64_t f_seed = 1;
  CommonFlags fin_io;
  fin->add_option("--r", f_r, "Rank bound")->required()->check(CLI::PositiveNumber);
  fin->add_option("--m", f_m, "Rows")->required()->check(CLI::PositiveNumber);
  fin->add_option("--n", f_n, "Columns")->required()->check(CLI::PositiveNumber);
  fin->add_option("--class", f_cls, "Matrix class")
      ->check(CLI::IsMember({"mat", "sym"}))
      ->capture_default_str();
  fin->add_option("--trials", f_trials, "Monte Carlo trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fin->add_option("--seed", f_seed, "RNG seed")->capture_default_str();
  fin_io.attach(fin);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Monte Carlo risk of the denoiser");
  int s_r = 1;
  int s_m = 1;
  int s_n = 1;
  std::string s_cls = "mat";
  double s_mu = 100.0;
  std::optional<double> s_lambda;
  int s_trials = 1000;
  std::uint64_t s_seed = 1;
  CommonFlags sim_io;
  sim->add_option("--r", s_r, "Rank bound")->required()->check(CLI::PositiveNumber);
  sim->add_option("--m", s_m, "Rows")->required()->check(CLI::PositiveNumber);
  sim->add_option("--n", s_n, "Columns")->required()->check(CLI::PositiveNumber);
  sim->add_option("--class", s_cls, "Matrix class")
      ->check(CLI::IsMember({"mat", "sym"}))
      ->capture_default_str();
  sim->add_option("--mu", s_mu, "Signal strength")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sim->add_option("--lambda", s_lambda,
                  "Explicit threshold (default: minimax tuning)")
      ->check(CLI::NonNegativeNumber);
  sim->add_option("--trials", s_trials, "Monte Carlo trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sim->add_option("--seed", s_seed, "RNG seed")->capture_default_str();
  sim_io.attach(sim);

  // sure-check
  auto* sure = app.add_subcommand("sure-check",
                                  "SURE vs. empirical risk, paired trials");
  int u_r = 1;
  int u_m = 1;
  int u_n = 1;
  std::string u_cls = "mat";
  double u_mu = 10.0;
  double u_lambda = 0.0;
  int u_trials = 2000;
  std::uint64_t u_seed = 1;
  CommonFlags sure_io;
  sure->add_option("--r", u_r, "Rank bound")->required()->check(CLI::PositiveNumber);
  sure->add_option("--m", u_m, "Rows")->required()->check(CLI::PositiveNumber);
  sure->add_option("--n", u_n, "Columns")->required()->check(CLI::PositiveNumber);
  sure->add_option("--class", u_cls, "Matrix class")
      ->check(CLI::IsMember({"mat", "sym"}))
      ->capture_default_str();
  sure->add_option("--mu", u_mu, "Signal strength")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sure->add_option("--lambda", u_lambda, "Threshold")
      ->required()
      ->check(CLI::NonNegativeNumber);
  sure->add_option("--trials", u_trials, "Monte Carlo trials")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sure->add_option("--seed", u_seed, "RNG seed")->capture_default_str();
  sure_io.attach(sure);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (amse->parsed()) return run_amse(rho, beta, cls_name, amse_io);
    if (curve->parsed()) return run_curve(c_beta, c_cls, c_grid, curve_io);
    if (param->parsed()) return run_parametric(p_cls, theta_count, param_io);
    if (fin->parsed()) {
      return run_finite_n(f_r, f_m, f_n, f_cls, f_trials, f_seed, fin_io);
    }
    if (sim->parsed()) {
      return run_simulate(s_r, s_m, s_n, s_cls, s_mu, s_lambda, s_trials,
                          s_seed, sim_io);
    }
    if (sure->parsed()) {
      return run_sure_check(u_r, u_m, u_n, u_cls, u_mu, u_lambda, u_trials,
                            u_seed, sure_io);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
