#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "fdw/corpus.hpp"
#include "fdw/errors.hpp"
#include "fdw/trajectory_io.hpp"

namespace fdw::cli {

const std::vector<std::string>& experiment_kinds() {
  static const std::vector<std::string> kinds = {"propagate",      "solve", "decay",           "diffusion",
                                                 "kernel-check",   "critexp-scan", "smoothing-check", "norms"};
  return kinds;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, const std::string& what) const {
    const auto m = node.Mark();
    std::ostringstream os;
    os << source_;
    if (!m.is_null()) os << ':' << (m.line + 1) << ':' << (m.column + 1);
    os << ": " << what;
    throw ConfigError(os.str());
  }

  void require_map(const YAML::Node& node, const std::string& name) const {
    if (!node.IsMap()) fail(node, "'" + name + "' must be a mapping");
  }

  void allow_only(const YAML::Node& node, const std::string& section, const std::set<std::string>& keys) const {
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!keys.count(key)) {
        fail(kv.first, "unknown key '" + key + "'" + (section.empty() ? "" : " in section '" + section + "'"));
      }
    }
  }

  template <class T>
  void read(const YAML::Node& map, const char* key, T& out) const {
    const auto node = map[key];
    if (!node) return;
    try {
      out = node.as<T>();
    } catch (const YAML::Exception&) {
      fail(node, std::string("bad value for '") + key + "'");
    }
  }

  template <class T>
  void read(const YAML::Node& map, const char* key, std::optional<T>& out) const {
    const auto node = map[key];
    if (!node) return;
    if (node.IsNull()) {
      out.reset();
      return;
    }
    T v{};
    read(map, key, v);
    out = v;
  }

  void read_double(const YAML::Node& map, const char* key, double& out) const {
    const auto node = map[key];
    if (!node) return;
    if (!node.IsScalar()) fail(node, std::string("'") + key + "' must be a number");
    const auto text = node.Scalar();
    if (text == "inf" || text == ".inf" || text == "infinity") {
      out = INFINITY;
      return;
    }
    read(map, key, out);
  }

 private:
  std::string source_;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? ".inf" : "-.inf";
  return format_double(v);
}

void check(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << source << ':' << (e.mark.line + 1) << ':' << (e.mark.column + 1) << ": " << e.msg;
    throw ConfigError(os.str());
  }
  const Reader r(source);
  if (!root || root.IsNull()) throw ConfigError(source + ": empty configuration");
  r.require_map(root, "top level");
  r.allow_only(root, "", {"experiment", "jobs", "grid", "data", "solver", "params", "output"});

  ExperimentConfig c;
  r.read(root, "experiment", c.kind);
  if (!c.kind.empty()) {
    const auto& kinds = experiment_kinds();
    if (std::find(kinds.begin(), kinds.end(), c.kind) == kinds.end()) {
      r.fail(root["experiment"], "experiment '" + c.kind + "' is unknown");
    }
    c = default_config(c.kind);
  }
  r.read(root, "jobs", c.jobs);

  if (const auto g = root["grid"]) {
    r.require_map(g, "grid");
    r.allow_only(g, "grid", {"dim", "points", "half_width"});
    r.read(g, "dim", c.grid.dim);
    r.read(g, "points", c.grid.points);
    r.read_double(g, "half_width", c.grid.half_width);
  }
  if (const auto d = root["data"]) {
    r.require_map(d, "data");
    r.allow_only(d, "data", {"profile", "params", "u0_amplitude", "u1_amplitude"});
    r.read(d, "profile", c.data.profile);
    if (const auto p = d["params"]) {
      r.require_map(p, "data.params");
      for (const auto& kv : p) {
        double v = 0.0;
        try {
          v = kv.second.as<double>();
        } catch (const YAML::Exception&) {
          r.fail(kv.second, "bad value for profile parameter '" + kv.first.as<std::string>() + "'");
        }
        c.data.params[kv.first.as<std::string>()] = v;
      }
    }
    r.read_double(d, "u0_amplitude", c.data.u0_amplitude);
    r.read_double(d, "u1_amplitude", c.data.u1_amplitude);
  }
  if (const auto s = root["solver"]) {
    r.require_map(s, "solver");
    r.allow_only(s, "solver",
                 {"sigma", "dt", "t_end", "nonlinearity", "rho", "sign", "blowup_threshold", "dealias",
                  "snapshot_stride", "hs_order", "weight_alpha"});
    r.read_double(s, "sigma", c.solver.sigma);
    r.read_double(s, "dt", c.solver.dt);
    r.read_double(s, "t_end", c.solver.t_end);
    r.read(s, "nonlinearity", c.solver.nonlinearity);
    r.read_double(s, "rho", c.solver.rho);
    r.read(s, "sign", c.solver.sign);
    r.read_double(s, "blowup_threshold", c.solver.blowup_threshold);
    r.read_double(s, "dealias", c.solver.dealias);
    r.read(s, "snapshot_stride", c.solver.snapshot_stride);
    r.read_double(s, "hs_order", c.solver.hs_order);
    r.read_double(s, "weight_alpha", c.solver.weight_alpha);
  }
  if (const auto p = root["params"]) {
    r.require_map(p, "params");
    r.allow_only(p, "params",
                 {"p", "q", "s", "alpha", "gamma", "r", "s1", "s2", "j", "t_min", "t_max", "tolerance", "times",
                  "rho", "norm", "input"});
    r.read_double(p, "p", c.params.p);
    r.read_double(p, "q", c.params.q);
    r.read_double(p, "s", c.params.s);
    r.read_double(p, "alpha", c.params.alpha);
    r.read_double(p, "gamma", c.params.gamma);
    r.read_double(p, "r", c.params.r);
    r.read_double(p, "s1", c.params.s1);
    r.read_double(p, "s2", c.params.s2);
    r.read(p, "j", c.params.j);
    r.read(p, "t_min", c.params.t_min);
    r.read(p, "t_max", c.params.t_max);
    r.read(p, "tolerance", c.params.tolerance);
    r.read(p, "times", c.params.times);
    r.read(p, "rho", c.params.rho);
    r.read(p, "norm", c.params.norm);
    r.read(p, "input", c.params.input);
  }
  if (const auto o = root["output"]) {
    r.require_map(o, "output");
    r.allow_only(o, "output", {"dir", "seed", "gnuplot"});
    r.read(o, "dir", c.output.dir);
    r.read(o, "seed", c.output.seed);
    r.read(o, "gnuplot", c.output.gnuplot);
  }

  // Range checks point at the offending key when it appears in the file.
  for (const char* section : {"top", "grid", "data", "solver", "params", "output"}) {
    const bool top = section == std::string("top");
    const YAML::Node node = top ? root : root[section];
    try {
      c.validate_section(section);
    } catch (const ConfigError& e) {
      const std::string msg = e.what();
      const std::string key = msg.substr(0, msg.find_first_of(" :"));
      const std::string where = top ? "" : std::string(section) + ": ";
      if (node && node.IsMap() && node[key]) r.fail(node[key], where + msg);
      if (node && !top) r.fail(node, where + msg);
      throw ConfigError(source + ": " + where + msg);
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError(path + ": cannot open configuration file");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str(), path);
}

std::string to_yaml(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "experiment: " << quote(c.kind) << '\n';
  os << "jobs: " << c.jobs << '\n';
  os << "grid:\n"
     << "  dim: " << c.grid.dim << '\n'
     << "  points: " << c.grid.points << '\n'
     << "  half_width: " << num(c.grid.half_width) << '\n';
  os << "data:\n"
     << "  profile: " << quote(c.data.profile) << '\n';
  if (c.data.params.empty()) {
    os << "  params: {}\n";
  } else {
    os << "  params:\n";
    for (const auto& [k, v] : c.data.params) os << "    " << quote(k) << ": " << num(v) << '\n';
  }
  os << "  u0_amplitude: " << num(c.data.u0_amplitude) << '\n'
     << "  u1_amplitude: " << num(c.data.u1_amplitude) << '\n';
  const auto& s = c.solver;
  os << "solver:\n"
     << "  sigma: " << num(s.sigma) << '\n'
     << "  dt: " << num(s.dt) << '\n'
     << "  t_end: " << num(s.t_end) << '\n'
     << "  nonlinearity: " << quote(s.nonlinearity) << '\n'
     << "  rho: " << num(s.rho) << '\n'
     << "  sign: " << s.sign << '\n'
     << "  blowup_threshold: " << num(s.blowup_threshold) << '\n'
     << "  dealias: " << num(s.dealias) << '\n'
     << "  snapshot_stride: " << s.snapshot_stride << '\n'
     << "  hs_order: " << num(s.hs_order) << '\n'
     << "  weight_alpha: " << num(s.weight_alpha) << '\n';
  const auto& p = c.params;
  auto opt = [](const std::optional<double>& v) { return v ? num(*v) : std::string("null"); };
  os << "params:\n"
     << "  p: " << num(p.p) << '\n'
     << "  q: " << num(p.q) << '\n'
     << "  s: " << num(p.s) << '\n'
     << "  alpha: " << num(p.alpha) << '\n'
     << "  gamma: " << num(p.gamma) << '\n'
     << "  r: " << num(p.r) << '\n'
     << "  s1: " << num(p.s1) << '\n'
     << "  s2: " << num(p.s2) << '\n'
     << "  j: " << opt(p.j) << '\n'
     << "  t_min: " << opt(p.t_min) << '\n'
     << "  t_max: " << opt(p.t_max) << '\n'
     << "  tolerance: " << opt(p.tolerance) << '\n'
     << "  times: " << quote(p.times) << '\n'
     << "  rho: " << quote(p.rho) << '\n'
     << "  norm: " << quote(p.norm) << '\n'
     << "  input: " << quote(p.input) << '\n';
  os << "output:\n"
     << "  dir: " << quote(c.output.dir) << '\n'
     << "  seed: " << c.output.seed << '\n'
     << "  gnuplot: " << (c.output.gnuplot ? "true" : "false") << '\n';
  return os.str();
}

ExperimentConfig default_config(const std::string& kind) {
  ExperimentConfig c;
  c.kind = kind;
  if (kind == "propagate") {
    c.solver.t_end = 10.0;
    c.params.times = "0:10:1";
  } else if (kind == "solve") {
    c.data.u1_amplitude = 0.0;
  } else if (kind == "decay" || kind == "diffusion" || kind == "smoothing-check") {
    c.grid = {1, 4096, 400.0};
    c.data.u1_amplitude = 1.0;
    c.solver.dt = 0.25;
    c.solver.t_end = 200.0;
    if (kind == "diffusion") c.params.times = "10:200:10";
  } else if (kind == "kernel-check") {
    c.grid = {1, 16384, 4096.0};
    c.solver.sigma = 1.0;
  } else if (kind == "critexp-scan") {
    c.grid = {1, 2048, 256.0};
    c.data.params["width"] = 3.0;
    c.data.u0_amplitude = 0.1;
    c.data.u1_amplitude = 0.1;
    c.solver.t_end = 200.0;
  }
  return c;
}

void ExperimentConfig::validate() const {
  for (const char* section : {"top", "grid", "data", "solver", "params", "output"}) {
    try {
      validate_section(section);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string(section == std::string("top") ? "" : std::string(section) + ": ") + e.what());
    }
  }
}

void ExperimentConfig::validate_section(const std::string& section) const {
  try {
    validate_section_unchecked(section);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

void ExperimentConfig::validate_section_unchecked(const std::string& section) const {
  if (section == "top") {
    const auto& kinds = experiment_kinds();
    check(std::find(kinds.begin(), kinds.end(), kind) != kinds.end(), "experiment '" + kind + "' is unknown");
    check(jobs >= 1, "jobs must be at least 1");
  } else if (section == "grid") {
    if (kind == "norms") return;
    try {
      (void)make_grid();
    } catch (const InvalidInput& e) {
      throw ConfigError(e.what());
    }
  } else if (section == "data") {
    check(std::isfinite(data.u0_amplitude), "u0_amplitude must be finite");
    check(std::isfinite(data.u1_amplitude), "u1_amplitude must be finite");
    (void)make_data();
  } else if (section == "solver") {
    check(solver.nonlinearity == "none" || solver.nonlinearity == "absolute" || solver.nonlinearity == "signed",
          "nonlinearity must be none, absolute or signed");
    check(solver.sign == 1 || solver.sign == -1, "sign must be +1 or -1");
    check(solver.nonlinearity == "none" || solver.rho > 1.0, "rho must exceed 1");
    (void)make_solver();
  } else if (section == "params") {
    check(params.p >= 1.0, "p must lie in [1, inf]");
    check(params.q >= 1.0, "q must lie in [1, inf]");
    check(params.s >= 0.0, "s must be nonnegative");
    check(params.alpha >= 0.0, "alpha must be nonnegative");
    check(params.gamma >= 1.0 && params.gamma <= 2.0, "gamma must lie in [1, 2]");
    check(params.r >= 1.0 && params.r <= 2.0, "r must lie in [1, 2]");
    check(params.s2 >= 0.0, "s2 must be nonnegative");
    check(params.s1 >= params.s2, "s1 must be at least s2");
    check(!params.j || *params.j > 0.0, "j must be positive");
    check(!params.tolerance || *params.tolerance > 0.0, "tolerance must be positive");
    if (params.t_min && params.t_max) check(*params.t_min < *params.t_max, "t_min must be below t_max");
    if (!params.times.empty()) {
      try {
        for (double t : parse_range(params.times)) check(t >= 0.0, "times must be nonnegative");
      } catch (const InvalidInput& e) {
        throw ConfigError(std::string("times: ") + e.what());
      }
    }
    if (kind == "critexp-scan") {
      try {
        for (double rho : parse_range(params.rho)) check(rho > 1.0, "rho values must exceed 1");
      } catch (const InvalidInput& e) {
        throw ConfigError(std::string("rho: ") + e.what());
      }
    }
    if (kind == "decay") check(params.p == 2.0 || std::isinf(params.p), "p must be 2 or inf for decay fits");
    if (kind == "norms") check(!params.input.empty(), "input must name a field CSV");
  }
}

Grid ExperimentConfig::make_grid() const { return Grid(grid.dim, grid.points, grid.half_width); }

SolverConfig ExperimentConfig::make_solver() const {
  SolverConfig s;
  s.sigma = solver.sigma;
  s.dt = solver.dt;
  s.t_end = solver.t_end;
  if (solver.nonlinearity == "absolute") s.nonlinearity = Nonlinearity(NonlinearityKind::absolute, solver.rho, solver.sign);
  if (solver.nonlinearity == "signed") s.nonlinearity = Nonlinearity(NonlinearityKind::signed_power, solver.rho, solver.sign);
  s.blowup_threshold = solver.blowup_threshold;
  s.dealias = solver.dealias;
  s.snapshot_stride = solver.snapshot_stride;
  s.hs_order = solver.hs_order;
  s.weight_alpha = solver.weight_alpha;
  s.x_norm_r = params.r;
  s.validate();
  return s;
}

DataSpec ExperimentConfig::make_data() const {
  DataSpec d;
  const auto& corpus = standard_corpus();
  auto it = std::find_if(corpus.begin(), corpus.end(), [&](const CorpusEntry& e) { return e.name == data.profile; });
  if (it != corpus.end()) {
    d.profile = *it;
  } else {
    auto fam = std::find_if(corpus.begin(), corpus.end(), [&](const CorpusEntry& e) { return e.family == data.profile; });
    if (fam == corpus.end()) throw ConfigError("profile '" + data.profile + "' is not a corpus name or family");
    d.profile = *fam;
  }
  for (const auto& [k, v] : data.params) {
    if (!d.profile.params.count(k)) {
      throw ConfigError("params: profile '" + d.profile.family + "' has no parameter '" + k + "'");
    }
    d.profile.params[k] = v;
  }
  d.u0_amplitude = data.u0_amplitude;
  d.u1_amplitude = data.u1_amplitude;
  return d;
}

}  // namespace fdw::cli
