#pragma once

#include <span>
#include <string>
#include <vector>

#include "fdw/field.hpp"
#include "fdw/funcspace.hpp"
#include "fdw/propagator.hpp"

namespace fdw {

enum class NonlinearityKind {
  none,          ///< N = 0
  absolute,      ///< N(u) = sign |u|^rho
  signed_power,  ///< N(u) = sign |u|^{rho-1} u
};

/// Power nonlinearity with N(0) = 0 and the local Lipschitz bound
/// |N(a) - N(b)| <= C (|a| + |b|)^{rho-1} |a - b|.
class Nonlinearity {
 public:
  Nonlinearity() = default;
  Nonlinearity(NonlinearityKind kind, double rho, int focusing_sign = +1);

  static Nonlinearity zero() { return {}; }

  NonlinearityKind kind() const { return kind_; }
  double rho() const { return rho_; }
  int focusing_sign() const { return sign_; }
  bool is_zero() const { return kind_ == NonlinearityKind::none; }

  double operator()(double z) const;
  void apply(std::span<const double> in, std::span<double> out) const;

 private:
  NonlinearityKind kind_ = NonlinearityKind::none;
  double rho_ = 2.0;
  int sign_ = +1;
};

struct SolverConfig {
  double sigma = 2.0;
  Nonlinearity nonlinearity;
  double dt = 0.05;
  double t_end = 10.0;
  double blowup_threshold = 1e6;  ///< on ||u||_inf
  double dealias = 2.0 / 3.0;     ///< fraction of the band edge kept in N(u)
  int snapshot_stride = 0;        ///< 0: no snapshots
  double hs_order = 1.0;          ///< s of the recorded homogeneous Sobolev column
  double weight_alpha = 1.0;      ///< alpha of the recorded || |x|^alpha u ||_2 column
  double x_norm_r = 1.0;          ///< r of the X-norm used by the Picard iteration

  /// Throws ConfigError on an invalid combination.
  void validate() const;
};

/// Throws ConfigError when data carry more than `tolerance` of their L^2
/// mass above the dealiasing cutoff.
void check_bandwidth(const PairState& data, const SolverConfig& cfg, double tolerance = 1e-8);

struct NormRow {
  double t;
  double l2;
  double linf;
  double hs;
  double weighted_alpha;
  double energy;
};

struct Outcome {
  enum class Kind { completed, blowup, diverged_numerically };
  Kind kind = Kind::completed;
  double time = 0.0;  ///< blow-up or divergence time; t_end when completed
};

std::string to_string(Outcome::Kind kind);

struct TimedState {
  double t;
  PairState state;
};

struct TrajectoryRecord {
  SolverConfig config;
  std::vector<double> times;
  std::vector<NormRow> norms;
  std::vector<TimedState> snapshots;
  Outcome outcome;
};

/// Energy 1/2 ||u_t||^2 + 1/2 ||(-Delta)^{sigma/4} u||^2 of a pair.
double linear_energy(const PairState& state, double sigma);

/// One exponential-midpoint step of length cfg.dt.  Non-finite output is
/// returned as is and left for the caller to classify.
PairState step(const PairState& state, const SolverConfig& cfg);

/// Reusable stepper with precomputed symbol tables for one grid and config.
class ExponentialMidpoint {
 public:
  ExponentialMidpoint(const Grid& grid, const SolverConfig& cfg);

  /// Advance the spectral pair (u_hat, ut_hat) and the real u by one step.
  void advance(SpectralField& u_hat, SpectralField& ut_hat, RealField& u) const;

  const SolverConfig& config() const { return cfg_; }

 private:
  SpectralField nonlinear_spectrum(const RealField& u) const;

  Grid grid_;
  SolverConfig cfg_;
  PairPropagator half_;
  PairPropagator full_;
  std::vector<double> quarter_s_;
  std::vector<double> half_s_;
  std::vector<double> half_dt_s_;
};

/// March from t = 0 until t_end, blow-up or divergence.  Deterministic.
TrajectoryRecord solve(const PairState& data, const SolverConfig& cfg);

enum class Classification { global_decay, blowup, undecided };
std::string to_string(Classification c);

/// blowup: threshold crossed with three consecutive increasing L^inf samples;
/// global_decay: reached t_end with L^2 non-increasing on [t_end/10, t_end];
/// undecided otherwise.
Classification detect_blowup(const TrajectoryRecord& record);

/// The norm row of one state with the columns configured in cfg.
NormRow norm_row(double t, const PairState& state, const SolverConfig& cfg);

/// The norm columns of a record as X-norm samples.
std::vector<TimeSample> x_samples(const TrajectoryRecord& record);

struct PicardResult {
  std::vector<TrajectoryRecord> iterates;
  std::vector<double> distances;            ///< ||u^{k+1} - u^k||_{X(T)}
  std::vector<double> contraction_factors;  ///< distances[k] / distances[k-1]
  bool non_contraction = false;             ///< factor >= 1 three times in a row
};

/// Fixed-point iteration u^{k+1} = Phi(u^k) of the integral equation on [0, T].
/// The Duhamel integral uses composite midpoint quadrature on a half-step
/// grid of spacing max(1, snapshot_stride) * dt / 2.
PicardResult picard_iterate(const PairState& data, double T, const SolverConfig& cfg, int max_iter);

}  // namespace fdw
