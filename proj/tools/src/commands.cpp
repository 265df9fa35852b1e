#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>

#include "fdw/errors.hpp"
#include "fdw/experiments.hpp"
#include "fdw/funcspace.hpp"
#include "fdw/propagator.hpp"
#include "fdw/spectral.hpp"
#include "fdw/trajectory_io.hpp"
#include "json.hpp"

namespace fdw::cli {

namespace {

using nlohmann::ordered_json;

struct Kind {
  const char* name;
  const char* summary;
  const char* statement;
};

const Kind kKinds[] = {
    {"propagate", "exact linear pair flow at selected times",
     "Evaluates the exact linear flow of u_tt + u_t + (-Delta)^{sigma/2} u = 0, u = S~(t)u0 + S(t)u1,\n"
     "at the requested times and records the norm table.  Verdict: the energy\n"
     "1/2 ||u_t||^2 + 1/2 ||(-Delta)^{sigma/4} u||^2 is non-increasing."},
    {"solve", "semilinear run with blow-up classification",
     "Integrates the semilinear problem u_tt + u_t + (-Delta)^{sigma/2} u = N(u) with the exponential\n"
     "midpoint rule on the mild (Duhamel) formulation and classifies the run as global_decay,\n"
     "blowup or undecided.  Verdict: the run did not diverge numerically."},
    {"decay", "decay-rate fits against the closed-form exponents",
     "Linear flow: ||u(t)||_p decays like (1+t)^{-(n/sigma)(1-1/p)}.\n"
     "Small-data global solutions: ||u(t)||_2 ~ <t>^{(n/sigma)(1/2-1/r)}, the homogeneous H^s norm\n"
     "gains -s/sigma and the |x|^alpha-weighted norm gains +alpha/sigma.\n"
     "Verdict: every fitted log-log slope is within tolerance of its predicted exponent."},
    {"diffusion", "approach to the mass times the fractional heat kernel",
     "The damped solution approaches M G_sigma(t), G_sigma the unit-mass kernel of e^{-t|xi|^sigma}\n"
     "and M = int (u0 + u1) dx (plus the space-time integral of N(u) for nonlinear runs):\n"
     "t^{(n/sigma)(1-1/p)} ||u(t) - M G_sigma(t)||_p -> 0.\n"
     "Verdict: the scaled error is non-increasing for t >= 10 and halves over the time list."},
    {"kernel-check", "pointwise bound of the low-frequency kernel",
     "The low-frequency part of the kernel of S(t) satisfies |K(t,x)| <= C t <x>^{-n-sigma} for t <= 1\n"
     "and |K(t,x)| <= C t^{-n/sigma} <t^{-1/sigma} x>^{-n-sigma} for t >= 1; for even sigma the\n"
     "exponent n+sigma may be any positive j.  Verdict: the sup-ratio against the envelope varies\n"
     "by at most a factor 4 over each branch's time list."},
    {"critexp-scan", "blow-up versus global decay across the exponent rho",
     "For N = |u|^rho and small positive data, blow-up occurs below and global decay above the\n"
     "Fujita-type exponent 1 + sigma/n (1 + 2/n for sigma = 2); with |x|^alpha-weighted data global\n"
     "existence holds for rho >= 1 + 2 sigma/(2 alpha + n) when alpha < n/2.\n"
     "Verdict: the scan is monotone and its blowup/global_decay bracket contains 1 + sigma/n."},
    {"smoothing-check", "smoothing estimate for S(t) against Besov data norms",
     "||D^{s1} S(t) g||_2 <= C <t>^{-(s1-n/2)/sigma + (s2-n/gamma)/sigma} ||g|| in the homogeneous\n"
     "Besov space B^{s2}_{gamma,2}, for s1 >= s2 >= 0 and gamma in [1,2].\n"
     "Verdict: on each corpus function the envelope ratio varies by at most a factor 8."},
    {"norms", "one norm of a field read from CSV",
     "Evaluates a single norm of a field stored as x1[,x2[,x3]],value rows: lp, sobolev,\n"
     "sobolev_inhom, weighted, weighted_japanese, besov, besov_inhom, besov_diff, x0 or y0.\n"
     "Prints the value on standard output."},
};

const Kind* find_kind(const std::string& name) {
  for (const auto& k : kKinds) {
    if (name == k.name) return &k;
  }
  return nullptr;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path);
  os << text;
  if (!os) throw InvalidInput("cannot write " + path.string());
}

class Run {
 public:
  Run(const ExperimentConfig& cfg, bool force) : cfg_(cfg), dir_(output_dir(cfg)) {
    if (std::filesystem::exists(dir_)) {
      if (!force) throw ConfigError("output directory " + dir_.string() + " exists; pass --force to overwrite");
      std::filesystem::remove_all(dir_);
    }
    std::filesystem::create_directories(dir_);
    report_.experiment = "fdw-lab " + cfg.kind;
    auto resolved = cfg;
    resolved.output.dir = dir_.string();
    resolved_yaml_ = to_yaml(resolved);
    write_text(dir_ / "config.yaml", resolved_yaml_);
    files_.push_back("config.yaml");
  }

  const std::filesystem::path& dir() const { return dir_; }
  Report& report() { return report_; }

  void file(const std::string& name, const std::string& text) {
    write_text(dir_ / name, text);
    files_.push_back(name);
  }

  void outcome(const std::string& key, ordered_json value) { outcome_[key] = std::move(value); }

  void gnuplot(const std::string& csv, const std::string& title, const std::vector<std::string>& columns,
               bool logscale) {
    if (!cfg_.output.gnuplot) return;
    std::ostringstream gp;
    gp << "set datafile separator ','\nset key autotitle columnhead\nset title '" << title << "'\n";
    if (logscale) gp << "set logscale xy\n";
    gp << "plot ";
    for (std::size_t i = 0; i < columns.size(); ++i) {
      gp << (i ? ", " : "") << "'" << csv << "' using 1:'" << columns[i] << "' with lines";
    }
    gp << "\npause -1\n";
    file(csv.substr(0, csv.rfind('.')) + ".gp", gp.str());
  }

  int finish(std::ostream& out) {
    report_.write(dir_);
    files_.push_back("report.csv");
    files_.push_back("report.txt");
    ordered_json m;
    m["tool"] = "fdw-lab";
    m["version"] = FDW_VERSION;
    m["timestamp"] = utc_timestamp();
    m["experiment"] = cfg_.kind;
    m["config"] = resolved_yaml_;
    m["config_file"] = "config.yaml";
    m["rerun"] = "fdw-lab " + cfg_.kind + " --config " + (dir_ / "config.yaml").string() + " --force";
    m["data"] = cfg_.make_data().describe();
    m["outcome"] = outcome_;
    m["verdict"] = report_.all_pass() ? "pass" : "fail";
    m["files"] = files_;
    write_text(dir_ / "manifest.json", m.dump(2) + "\n");
    for (const auto& line : report_.lines) out << line << '\n';
    for (const auto& v : report_.verdicts) {
      out << (v.pass ? "pass " : "FAIL ") << v.check << ": measured " << format_double(v.measured) << ", predicted "
          << format_double(v.predicted) << '\n';
    }
    out << "artifacts: " << dir_.string() << '\n';
    return report_.all_pass() ? kExitOk : kExitFailedVerdict;
  }

 private:
  const ExperimentConfig& cfg_;
  std::filesystem::path dir_;
  std::string resolved_yaml_;
  Report report_;
  std::vector<std::string> files_;
  ordered_json outcome_ = ordered_json::object();
};

std::vector<double> times_or(const ExperimentConfig& c, const std::string& fallback) {
  return parse_range(c.params.times.empty() ? fallback : c.params.times);
}

int run_propagate(const ExperimentConfig& c, bool force, std::ostream& out) {
  Run run(c, force);
  const auto grid = c.make_grid();
  const auto data = c.make_data().sample(grid);
  auto scfg = c.make_solver();
  std::vector<NormRow> rows;
  std::optional<PairState> last;
  for (double t : times_or(c, "0:" + format_double(c.solver.t_end) + ":1")) {
    auto state = apply_pair_propagator(t, data, c.solver.sigma);
    rows.push_back(norm_row(t, state, scfg));
    last = std::move(state);
  }
  run.file("trajectory.csv", trajectory_csv(rows));
  run.file("field_final.csv", field_csv(last->u));
  run.gnuplot("trajectory.csv", "linear pair flow", {"l2", "linf", "energy"}, false);
  double worst = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) worst = std::max(worst, rows[i].energy / rows[i - 1].energy - 1.0);
  run.report().verdicts.push_back({"energy non-increasing (max relative increase)", worst, 0.0, 1e-8, worst <= 1e-8, ""});
  return run.finish(out);
}

int run_solve(const ExperimentConfig& c, bool force, std::ostream& out) {
  Run run(c, force);
  const auto grid = c.make_grid();
  const auto data = c.make_data().sample(grid);
  const auto scfg = c.make_solver();
  check_bandwidth(data, scfg);
  const auto record = solve(data, scfg);
  run.file("trajectory.csv", trajectory_csv(record.norms));
  if (!record.snapshots.empty()) run.file("field_final.csv", field_csv(record.snapshots.back().state.u));
  run.gnuplot("trajectory.csv", "semilinear run", {"l2", "linf"}, false);
  const auto cls = detect_blowup(record);
  run.outcome("outcome", to_string(record.outcome.kind));
  run.outcome("time", record.outcome.time);
  run.outcome("classification", to_string(cls));
  run.report().lines.push_back("outcome: " + to_string(record.outcome.kind) + " at t = " +
                               format_double(record.outcome.time));
  run.report().lines.push_back("classification: " + to_string(cls));
  const bool finite = record.outcome.kind != Outcome::Kind::diverged_numerically;
  run.report().verdicts.push_back({"run stayed finite", finite ? 1.0 : 0.0, 1.0, 0.0, finite, to_string(cls)});
  return run.finish(out);
}

int run_decay(const ExperimentConfig& c, bool force, std::ostream& out) {
  Run run(c, force);
  const auto grid = c.make_grid();
  const int n = grid.dim();
  const auto data = c.make_data().sample(grid);
  const auto scfg = c.make_solver();
  check_bandwidth(data, scfg);
  const auto record = solve(data, scfg);
  run.file("trajectory.csv", trajectory_csv(record.norms));
  run.gnuplot("trajectory.csv", "decay", {"l2", "linf", "hs", "weighted_alpha"}, true);
  if (record.outcome.kind != Outcome::Kind::completed) {
    throw ConfigError("run ended early (" + to_string(record.outcome.kind) + " at t = " +
                      format_double(record.outcome.time) + "); decay fits need a completed run");
  }
  const Window w{c.params.t_min.value_or(std::max(5.0, c.solver.t_end / 10.0)), c.params.t_max.value_or(c.solver.t_end)};
  const double sigma = c.solver.sigma;
  std::vector<std::pair<DecayNorm, double>> targets;
  std::vector<double> tolerances;
  if (scfg.nonlinearity.is_zero()) {
    const bool inf = std::isinf(c.params.p);
    targets.push_back({inf ? DecayNorm::linf : DecayNorm::l2, predicted_lp_rate(n, sigma, c.params.p)});
    tolerances.push_back(c.params.tolerance.value_or(inf ? 0.10 : 0.05));
  } else {
    const double r = c.params.r;
    targets.push_back({DecayNorm::l2, predicted_global_l2_rate(n, sigma, r)});
    targets.push_back({DecayNorm::hs, predicted_global_hs_rate(n, sigma, c.solver.hs_order, r)});
    targets.push_back({DecayNorm::weighted, predicted_global_weighted_rate(n, sigma, c.solver.weight_alpha, r)});
    tolerances = {c.params.tolerance.value_or(0.07), c.params.tolerance.value_or(0.10), c.params.tolerance.value_or(0.10)};
  }
  ordered_json fits = ordered_json::array();
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto fit = fit_decay(record, targets[i].first, w, targets[i].second, tolerances[i]);
    run.report().verdicts.push_back({to_string(fit.norm_kind) + " slope", fit.fitted_slope, fit.predicted_slope,
                                     fit.tolerance, fit.pass,
                                     "stderr " + format_double(fit.stderr_slope) + ", " +
                                         std::to_string(fit.samples) + " samples"});
    fits.push_back({{"norm", to_string(fit.norm_kind)}, {"slope", fit.fitted_slope}, {"predicted", fit.predicted_slope}});
  }
  run.report().lines.push_back("window [" + format_double(w.t_min) + ", " + format_double(w.t_max) +
                               "], slopes of log(norm) against log(1+t)");
  run.outcome("fits", fits);
  return run.finish(out);
}

int run_diffusion(const ExperimentConfig& c, bool force, std::ostream& out) {
  Run run(c, force);
  const auto grid = c.make_grid();
  const auto data = c.make_data().sample(grid);
  auto scfg = c.make_solver();
  DiffusionReport rep;
  if (scfg.nonlinearity.is_zero()) {
    rep = diffusion_phenomenon(data, c.solver.sigma, c.params.p, times_or(c, "10:" + format_double(c.solver.t_end) + ":10"));
  } else {
    if (scfg.snapshot_stride == 0) scfg.snapshot_stride = std::max(1, static_cast<int>(std::lround(10.0 / scfg.dt)));
    check_bandwidth(data, scfg);
    const auto record = solve(data, scfg);
    run.file("trajectory.csv", trajectory_csv(record.norms));
    rep = diffusion_phenomenon(data, record, c.params.p);
  }
  std::ostringstream csv;
  csv << "t,scaled_error\n";
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    csv << format_double(rep.times[i]) << ',' << format_double(rep.scaled_error[i]) << '\n';
  }
  run.file("diffusion.csv", csv.str());
  run.gnuplot("diffusion.csv", "scaled distance to M G(t)", {"scaled_error"}, true);
  run.report().lines.push_back("M = " + format_double(rep.mass));
  for (const auto& w : rep.warnings) run.report().lines.push_back("warning: " + w);
  const double ratio = rep.scaled_error.empty() ? NAN : rep.scaled_error.back() / rep.scaled_error.front();
  run.report().verdicts.push_back({"scaled error decreasing, e(last)/e(first)", ratio, 0.5, 0.0, rep.decreasing,
                                   rep.warnings.empty() ? "" : "wrap-around warning"});
  run.outcome("mass", rep.mass);
  return run.finish(out);
}

int run_kernel(const ExperimentConfig& c, bool force, std::ostream& out) {
  Run run(c, force);
  const auto grid = c.make_grid();
  std::vector<std::pair<std::string, std::vector<double>>> branches;
  if (c.params.times.empty()) {
    branches = {{"t<=1", {0.125, 0.25, 0.5, 1.0}}, {"t>=1", {1, 2, 4, 8, 16, 32, 64}}};
  } else {
    branches = {{"custom", parse_range(c.params.times)}};
  }
  std::ostringstream csv;
  csv << "branch,t,ratio,x_star\n";
  for (const auto& [name, times] : branches) {
    const auto table = kernel_bound_check(c.solver.sigma, times, grid, c.params.j);
    for (const auto& r : table.rows) {
      csv << name << ',' << format_double(r.t) << ',' << format_double(r.ratio) << ',' << format_double(r.x_star) << '\n';
    }
    run.report().verdicts.push_back({"stability factor " + name, table.stability, 4.0, 0.0, table.pass,
                                     "weight exponent " + format_double(table.weight_exponent)});
  }
  run.file("kernel.csv", csv.str());
  return run.finish(out);
}

int run_scan(const ExperimentConfig& c, bool force, std::ostream& out) {
  Run run(c, force);
  const auto grid = c.make_grid();
  auto base = c.make_solver();
  const auto rho = parse_range(c.params.rho);
  const auto result = critical_exponent_scan(grid, c.solver.sigma, rho, c.make_data(), base, c.jobs);
  std::ostringstream csv;
  csv << "rho,classification,end_time\n";
  for (std::size_t i = 0; i < rho.size(); ++i) {
    csv << format_double(rho[i]) << ',' << to_string(result.classes[i]) << ',' << format_double(result.end_time[i]) << '\n';
  }
  run.file("scan.csv", csv.str());
  const double pred = result.predicted_threshold;
  run.report().lines.push_back("predicted boundary 1 + sigma/n = " + format_double(pred));
  run.report().lines.push_back("weighted sufficient exponent for alpha = " + format_double(c.params.alpha) + ": " +
                               format_double(global_existence_exponent(grid.dim(), c.solver.sigma, c.params.alpha)));
  run.report().verdicts.push_back({"monotone classification", result.monotone ? 1.0 : 0.0, 1.0, 0.0, result.monotone, ""});
  if (result.estimated_threshold) {
    const auto [lo, hi] = *result.estimated_threshold;
    const bool inside = lo <= pred && pred <= hi;
    run.report().verdicts.push_back({"bracket lower end", lo, pred, 0.0, inside, "bracket [" + format_double(lo) + ", " + format_double(hi) + "]"});
    run.report().verdicts.push_back({"bracket upper end", hi, pred, 0.0, inside, ""});
    run.outcome("bracket", {lo, hi});
  } else {
    run.report().verdicts.push_back({"bracket found", 0.0, pred, 0.0, false, "inconclusive: no blowup/global_decay sign change"});
    run.outcome("bracket", nullptr);
  }
  return run.finish(out);
}

int run_smoothing(const ExperimentConfig& c, bool force, std::ostream& out) {
  Run run(c, force);
  const auto grid = c.make_grid();
  std::vector<double> times;
  if (c.params.times.empty()) {
    for (int k = 0; k <= 20; ++k) times.push_back(std::pow(100.0, k / 20.0));
  } else {
    times = parse_range(c.params.times);
  }
  const auto table = smoothing_estimate_check(c.solver.sigma, c.params.s1, c.params.s2, c.params.gamma,
                                              standard_corpus(), grid, times);
  std::ostringstream csv;
  csv << "function,t,ratio\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.ratio.size(); ++i) {
      csv << row.function << ',' << format_double(times[i]) << ',' << format_double(row.ratio[i]) << '\n';
    }
    run.report().verdicts.push_back({row.function + " stability", row.stability, 8.0, 0.0, row.pass, row.note});
  }
  run.file("smoothing.csv", csv.str());
  run.report().lines.push_back("envelope exponent " + format_double(table.predicted_rate));
  return run.finish(out);
}

int run_norms(const ExperimentConfig& c, std::ostream& out) {
  RealField f = [&] {
    try {
      return read_field_csv(c.params.input);
    } catch (const InvalidInput& e) {
      throw ConfigError(e.what());
    }
  }();
  const auto& P = c.params;
  const std::string& k = P.norm;
  double v = 0.0;
  if (k == "lp") v = lp_norm(f, P.p);
  else if (k == "sobolev") v = sobolev_norm(f, P.s, true, P.p);
  else if (k == "sobolev_inhom") v = sobolev_norm(f, P.s, false, P.p);
  else if (k == "weighted") v = weighted_norm(f, P.alpha, Weight::plain, P.p);
  else if (k == "weighted_japanese") v = weighted_norm(f, P.alpha, Weight::japanese, P.p);
  else if (k == "besov") v = besov_norm_lp(f, P.s, P.p, P.q, true).value;
  else if (k == "besov_inhom") v = besov_norm_lp(f, P.s, P.p, P.q, false).value;
  else if (k == "besov_diff") v = besov_norm_difference(f, P.s, P.p, P.q, P.s < 1.0 ? 1 : 2);
  else if (k == "x0") v = x0_norm(f, P.s, P.alpha);
  else if (k == "y0") v = y0_norm(f, P.s, P.alpha, P.gamma, c.solver.sigma);
  else throw ConfigError("params.norm '" + k + "' is unknown");
  out << format_double(v) << '\n';
  return kExitOk;
}

}  // namespace

std::string summary(const std::string& kind) {
  const auto* k = find_kind(kind);
  if (!k) throw ConfigError("unknown experiment '" + kind + "'");
  return k->summary;
}

std::string statement(const std::string& kind) {
  const auto* k = find_kind(kind);
  if (!k) throw ConfigError("unknown experiment '" + kind + "'");
  return k->statement;
}

std::filesystem::path output_dir(const ExperimentConfig& config) {
  if (!config.output.dir.empty()) return config.output.dir;
  const char* root = std::getenv("FDW_LAB_OUTPUT_ROOT");
  return std::filesystem::path(root && *root ? root : "fdw-out") / config.kind;
}

int run_experiment(const ExperimentConfig& c, bool force, std::ostream& out, std::ostream&) {
  c.validate();
  try {
    if (c.kind == "propagate") return run_propagate(c, force, out);
    if (c.kind == "solve") return run_solve(c, force, out);
    if (c.kind == "decay") return run_decay(c, force, out);
    if (c.kind == "diffusion") return run_diffusion(c, force, out);
    if (c.kind == "kernel-check") return run_kernel(c, force, out);
    if (c.kind == "critexp-scan") return run_scan(c, force, out);
    if (c.kind == "smoothing-check") return run_smoothing(c, force, out);
    if (c.kind == "norms") return run_norms(c, out);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unknown experiment '" + c.kind + "'");
}

}  // namespace fdw::cli
