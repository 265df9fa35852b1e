#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fdw/corpus.hpp"
#include "fdw/solver.hpp"

namespace fdw {

// ---- closed-form rate table ----

/// -(n/sigma)(1 - 1/p): L^p decay of the linear flow.  p = inf allowed.
double predicted_lp_rate(int n, double sigma, double p);
/// -(s1 - n/2)/sigma + (s2 - n/gamma)/sigma: D^{s1} S(t) g against the Besov norm of g.
double predicted_smoothing_rate(int n, double sigma, double s1, double s2, double gamma);
/// Small-data global rates for the L^2, homogeneous H^s and |x|^alpha-weighted norms.
double predicted_global_l2_rate(int n, double sigma, double r);
double predicted_global_hs_rate(int n, double sigma, double s, double r);
double predicted_global_weighted_rate(int n, double sigma, double alpha, double r);
/// Sufficient exponent for small-data global existence with weight alpha.
double global_existence_exponent(int n, double sigma, double alpha);
/// 1 + sigma/n, the Fujita-type boundary for integrable data.
double fujita_exponent(int n, double sigma);

// ---- initial data ----

struct DataSpec {
  CorpusEntry profile{"gaussian", "gaussian", {{"width", 1.0}}};
  double u0_amplitude = 1.0;
  double u1_amplitude = 0.0;

  PairState sample(const Grid& grid) const;
  std::string describe() const;
};

// ---- decay fits ----

enum class DecayNorm { l2, linf, hs, weighted };
std::string to_string(DecayNorm k);

struct Window {
  double t_min;
  double t_max;
};

struct DecayFit {
  DecayNorm norm_kind;
  Window window;
  std::size_t samples;
  double fitted_slope;
  double stderr_slope;
  double predicted_slope;
  double tolerance;
  bool pass;
};

/// Least-squares slope of log(norm) against log(1+t) on up to `target_samples`
/// log-spaced rows inside the window.  Throws DomainError on t_min < 5 or
/// fewer than eight usable samples.
DecayFit fit_decay(const TrajectoryRecord& record, DecayNorm kind, Window window, double predicted_slope,
                   double tolerance, std::size_t target_samples = 48);

// ---- diffusion phenomenon ----

struct DiffusionReport {
  std::vector<double> times;
  std::vector<double> scaled_error;  ///< t^{(n/sigma)(1-1/p)} ||u(t) - M G(t)||_p
  double mass = 0.0;
  bool decreasing = false;
  std::vector<std::string> warnings;
};

/// Linear flow: u = S~(t)u0 + S(t)u1 evaluated exactly, M = int (u0 + u1).
/// The kernel G is centred at the origin, moved by `kernel_shift` lattice
/// steps in the lattice_shift convention for translated data.
DiffusionReport diffusion_phenomenon(const PairState& data, double sigma, double p, const std::vector<double>& times,
                                     const std::array<int, 3>& kernel_shift = {0, 0, 0});
/// Semilinear run: snapshots supply u(t); M adds the trapezoidal double integral of N(u).
DiffusionReport diffusion_phenomenon(const PairState& data, const TrajectoryRecord& record, double p,
                                     const std::array<int, 3>& kernel_shift = {0, 0, 0});

// ---- kernel bounds ----

struct KernelRow {
  double t;
  double ratio;   ///< sup_x |K(t,x)| / w(t,x)
  double x_star;  ///< where the supremum is attained
};

struct KernelBoundTable {
  double sigma;
  double weight_exponent;  ///< n + sigma, or j for the even-sigma variant
  std::vector<KernelRow> rows;
  double stability = 0.0;  ///< max ratio / min ratio
  bool pass = false;
};

/// Ratio of the low-frequency kernel to its pointwise envelope, t^{1}<x>^{-e}
/// for t <= 1 and t^{-n/sigma}<t^{-1/sigma}x>^{-e} for t >= 1 with e = n + sigma
/// unless `weight_exponent` is given.  Verdict: stability <= 4.
KernelBoundTable kernel_bound_check(double sigma, const std::vector<double>& times, const Grid& grid,
                                    std::optional<double> weight_exponent = std::nullopt);

// ---- smoothing estimate ----

struct SmoothingRow {
  std::string function;
  double besov_norm;
  std::vector<double> ratio;  ///< one per time
  double stability;
  bool pass;
  std::string note;
};

struct SmoothingTable {
  double s1, s2, gamma, sigma;
  double predicted_rate;
  std::vector<double> times;
  std::vector<SmoothingRow> rows;
  bool pass = false;
};

/// r(t) = ||D^{s1} S(t) g||_2 / (<t>^{rate} ||g||_{B^{s2}_{gamma,2} hom}) on each
/// corpus function.  Verdict per function: max/min <= 8.
SmoothingTable smoothing_estimate_check(double sigma, double s1, double s2, double gamma,
                                        const std::vector<CorpusEntry>& corpus, const Grid& grid,
                                        const std::vector<double>& times);

// ---- Gagliardo-Nirenberg sampling ----

struct BesovIndex {
  double s, p, q;
};

struct GnTuple {
  BesovIndex lhs, first, second;
  double theta;

  /// Scaling relation s0 - n/p0 = theta (s1 - n/p1) + (1 - theta)(s2 - n/p2).
  bool admissible(int n) const;
};

struct GnRow {
  GnTuple tuple;
  double empirical_c;      ///< max LHS/RHS over the corpus
  std::size_t samples;     ///< transformed corpus members checked
  std::size_t violations;  ///< LHS > C (1 + slack) RHS
};

/// Calibrates C on the corpus, then checks it on lattice translates,
/// amplitude rescalings and dyadic dilations of every member.
std::vector<GnRow> gn_inequality_sample(const std::vector<CorpusEntry>& corpus, const Grid& grid,
                                        const std::vector<GnTuple>& tuples, unsigned seed, double slack = 0.01);

// ---- critical exponent scan ----

struct ScanResult {
  std::vector<double> rho;
  std::vector<Classification> classes;
  std::vector<double> end_time;
  std::optional<std::pair<double, double>> estimated_threshold;
  double predicted_threshold;
  bool inconclusive = false;
  bool monotone = true;
};

/// Classifies N = +|u|^rho runs over rho_grid.  Runs fan out over `jobs` threads;
/// cells are keyed by their index so the result does not depend on scheduling.
ScanResult critical_exponent_scan(const Grid& grid, double sigma, const std::vector<double>& rho_grid,
                                  const DataSpec& data, const SolverConfig& base, int jobs = 1);

// ---- reports ----

struct Verdict {
  std::string check;
  double measured;
  double predicted;
  double tolerance;
  bool pass;
  std::string note;
};

struct Report {
  std::string experiment;
  std::vector<Verdict> verdicts;
  std::vector<std::string> lines;  ///< free-form summary for report.txt

  bool all_pass() const;
  /// Writes report.csv and report.txt into `dir`.
  void write(const std::filesystem::path& dir) const;
};

/// "start:end:step" inclusive of end within 1e-9 of a step.
std::vector<double> parse_range(const std::string& text);

}  // namespace fdw
