#include "app.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "CLI11.hpp"
#include "commands.hpp"
#include "fdw/errors.hpp"

namespace fdw::cli {

namespace {

struct Overrides {
  std::string config;
  std::string out;
  bool force = false;
  std::optional<int> jobs;
  bool gnuplot = false;
  std::optional<unsigned> seed;

  std::optional<int> n;
  std::optional<int> points;
  std::optional<double> half_width;

  std::optional<std::string> profile;
  std::optional<double> amp;
  std::optional<double> amp0;
  std::optional<double> amp1;

  std::optional<double> sigma;
  std::optional<double> dt;
  std::optional<double> t_end;
  std::optional<std::string> nonlinearity;
  std::optional<std::string> rho;
  std::optional<int> sign;
  std::optional<double> threshold;
  std::optional<int> stride;

  std::optional<std::string> p;
  std::optional<double> q;
  std::optional<double> s;
  std::optional<double> alpha;
  std::optional<double> gamma;
  std::optional<double> r;
  std::optional<double> s1;
  std::optional<double> s2;
  std::optional<double> j;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<double> tolerance;
  std::optional<std::string> times;
  std::optional<std::string> norm;
  std::optional<std::string> input;
};

double parse_number(const std::string& flag, const std::string& text) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(flag + ": '" + text + "' is not a number");
}

void add_flags(CLI::App& sub, Overrides& o) {
  sub.add_option("--config", o.config, "YAML configuration file")->check(CLI::ExistingFile);
  sub.add_option("--out", o.out, "output directory");
  sub.add_flag("--force", o.force, "overwrite an existing output directory");
  sub.add_option("--jobs", o.jobs, "concurrent runs inside scans");
  sub.add_flag("--emit-gnuplot", o.gnuplot, "write a companion gnuplot script");
  sub.add_option("--seed", o.seed, "seed for random corpus perturbations");

  sub.add_option("--n", o.n, "spatial dimension");
  sub.add_option("--N", o.points, "points per axis");
  sub.add_option("--L", o.half_width, "box half-width");

  sub.add_option("--profile", o.profile, "corpus profile of the data");
  sub.add_option("--amp", o.amp, "amplitude of both u0 and u1");
  sub.add_option("--amp0", o.amp0, "amplitude of u0");
  sub.add_option("--amp1", o.amp1, "amplitude of u1");

  sub.add_option("--sigma", o.sigma, "fractional order");
  sub.add_option("--dt", o.dt, "time step");
  sub.add_option("--t-end", o.t_end, "final time");
  sub.add_option("--nonlinearity", o.nonlinearity, "none, absolute or signed");
  sub.add_option("--rho", o.rho, "nonlinearity exponent (range for critexp-scan)");
  sub.add_option("--sign", o.sign, "sign of the signed nonlinearity");
  sub.add_option("--threshold", o.threshold, "blow-up threshold");
  sub.add_option("--stride", o.stride, "snapshot stride in steps");

  sub.add_option("--p", o.p, "Lebesgue exponent (inf allowed)");
  sub.add_option("--q", o.q, "Besov summation exponent");
  sub.add_option("--s", o.s, "smoothness order");
  sub.add_option("--alpha", o.alpha, "weight exponent");
  sub.add_option("--gamma", o.gamma, "data integrability exponent");
  sub.add_option("--r", o.r, "X-norm exponent");
  sub.add_option("--s1", o.s1, "smoothing order");
  sub.add_option("--s2", o.s2, "data Besov order");
  sub.add_option("--j", o.j, "kernel envelope exponent");
  sub.add_option("--t-min", o.t_min, "fit window start");
  sub.add_option("--t-max", o.t_max, "fit window end");
  sub.add_option("--tolerance", o.tolerance, "slope tolerance");
  sub.add_option("--times", o.times, "time range start:end:step or list");
  sub.add_option("--norm", o.norm, "norm for the norms command");
  sub.add_option("--input", o.input, "field CSV for the norms command");
}

template <class T, class U>
void set(const std::optional<T>& v, U& target) {
  if (v) target = *v;
}

ExperimentConfig resolve(const std::string& kind, const Overrides& o) {
  ExperimentConfig c = o.config.empty() ? default_config(kind) : load_config(o.config);
  if (c.kind != kind) {
    throw ConfigError(o.config + ": experiment is '" + c.kind + "' but the subcommand is '" + kind + "'");
  }
  if (!o.out.empty()) c.output.dir = o.out;
  if (o.gnuplot) c.output.gnuplot = true;
  set(o.seed, c.output.seed);
  set(o.jobs, c.jobs);
  set(o.n, c.grid.dim);
  set(o.points, c.grid.points);
  set(o.half_width, c.grid.half_width);
  set(o.profile, c.data.profile);
  if (o.amp) c.data.u0_amplitude = c.data.u1_amplitude = *o.amp;
  set(o.amp0, c.data.u0_amplitude);
  set(o.amp1, c.data.u1_amplitude);
  set(o.sigma, c.solver.sigma);
  set(o.dt, c.solver.dt);
  set(o.t_end, c.solver.t_end);
  set(o.nonlinearity, c.solver.nonlinearity);
  if (o.rho) {
    if (kind == "critexp-scan") c.params.rho = *o.rho;
    else c.solver.rho = parse_number("--rho", *o.rho);
  }
  set(o.sign, c.solver.sign);
  set(o.threshold, c.solver.blowup_threshold);
  set(o.stride, c.solver.snapshot_stride);
  if (o.p) c.params.p = parse_number("--p", *o.p);
  set(o.q, c.params.q);
  set(o.s, c.params.s);
  set(o.alpha, c.params.alpha);
  set(o.gamma, c.params.gamma);
  set(o.r, c.params.r);
  set(o.s1, c.params.s1);
  set(o.s2, c.params.s2);
  if (o.j) c.params.j = *o.j;
  if (o.t_min) c.params.t_min = *o.t_min;
  if (o.t_max) c.params.t_max = *o.t_max;
  if (o.tolerance) c.params.tolerance = *o.tolerance;
  set(o.times, c.params.times);
  set(o.norm, c.params.norm);
  set(o.input, c.params.input);
  c.validate();
  return c;
}

}  // namespace

int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional damped-wave spectral lab", "fdw-lab"};
  app.set_version_flag("--version", FDW_VERSION);
  app.require_subcommand(1);
  Overrides o;
  for (const auto& kind : experiment_kinds()) add_flags(*app.add_subcommand(kind, summary(kind)), o);
  app.add_subcommand("list", "list the experiment kinds");
  std::string name;
  app.add_subcommand("describe", "print the statement an experiment checks")
      ->add_option("name", name, "experiment kind")
      ->required();

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalidConfig;
  }

  auto* sub = app.get_subcommands().front();
  try {
    if (sub->get_name() == "list") {
      for (const auto& kind : experiment_kinds()) out << kind << "  " << summary(kind) << '\n';
      return kExitOk;
    }
    if (sub->get_name() == "describe") {
      const auto text = statement(name);
      out << name << ": " << summary(name) << "\n\n" << text << '\n';
      return kExitOk;
    }
    const auto config = resolve(sub->get_name(), o);
    return run_experiment(config, o.force, out, err);
  } catch (const ConfigError& e) {
    err << "fdw-lab: " << e.what() << '\n';
  } catch (const InvalidInput& e) {
    err << "fdw-lab: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "fdw-lab: " << e.what() << '\n';
  }
  return kExitInvalidConfig;
}

}  // namespace fdw::cli
