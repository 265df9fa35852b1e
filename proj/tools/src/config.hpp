#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fdw/experiments.hpp"
#include "fdw/grid.hpp"
#include "fdw/solver.hpp"

namespace fdw::cli {

/// The eight experiment kinds, in listing order.
const std::vector<std::string>& experiment_kinds();

struct GridSection {
  int dim = 1;
  int points = 1024;
  double half_width = 64.0;
};

struct DataSection {
  std::string profile = "gaussian";  ///< corpus entry name or family
  std::map<std::string, double> params;  ///< overrides of the profile parameters
  double u0_amplitude = 1.0;
  double u1_amplitude = 0.0;
};

struct SolverSection {
  double sigma = 2.0;
  double dt = 0.05;
  double t_end = 10.0;
  std::string nonlinearity = "none";  ///< none | absolute | signed
  double rho = 2.0;
  int sign = 1;
  double blowup_threshold = 1e6;
  double dealias = 2.0 / 3.0;
  int snapshot_stride = 0;
  double hs_order = 1.0;
  double weight_alpha = 1.0;
};

struct ParamSection {
  double p = 2.0;
  double q = 2.0;
  double s = 0.5;
  double alpha = 0.0;
  double gamma = 1.0;
  double r = 1.0;
  double s1 = 1.0;
  double s2 = 0.0;
  std::optional<double> j;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<double> tolerance;
  std::string times;      ///< range or list; empty selects the experiment default
  std::string rho = "2:5:0.5";
  std::string norm = "lp";
  std::string input;
};

struct OutputSection {
  std::string dir;  ///< empty: $FDW_LAB_OUTPUT_ROOT/<kind> or ./fdw-out/<kind>
  unsigned seed = 0;
  bool gnuplot = false;
};

struct ExperimentConfig {
  std::string kind;
  GridSection grid;
  DataSection data;
  SolverSection solver;
  ParamSection params;
  OutputSection output;
  int jobs = 1;

  /// Throws ConfigError when a value is outside its admissible range.
  void validate() const;
  /// One of "top", "grid", "data", "solver", "params", "output".  Messages
  /// start with the offending key.
  void validate_section(const std::string& section) const;

  Grid make_grid() const;
  void validate_section_unchecked(const std::string& section) const;
  SolverConfig make_solver() const;
  DataSpec make_data() const;
};

/// Parses YAML text.  Unknown keys and bad values raise ConfigError with a
/// "source:line:column:" prefix.
ExperimentConfig parse_config(const std::string& text, const std::string& source);
ExperimentConfig load_config(const std::string& path);

/// Resolved configuration as YAML; parse_config(to_yaml(c)) reproduces c.
std::string to_yaml(const ExperimentConfig& config);

/// Experiment defaults that differ from the section defaults.
ExperimentConfig default_config(const std::string& kind);

}  // namespace fdw::cli
