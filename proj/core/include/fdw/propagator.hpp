#pragma once

#include <vector>

#include "fdw/field.hpp"

namespace fdw {

/// Argument of the damped-wave symbol: theta = 1/4 - |xi|^sigma and time t.
struct SymbolPoint {
  double theta;
  double t;
};

/// |theta t^2| below which the power series is used instead of sinh/sin.
inline constexpr double kSeriesSwitch = 1e-2;

/// A(z) = sinh(sqrt z)/sqrt z, continued through z = 0 to sin(sqrt -z)/sqrt -z.
double entire_a(double z);
/// B(z) = cosh(sqrt z), continued to cos(sqrt -z).
double entire_b(double z);
/// Series forms of A and B, usable for any z but accurate only for small |z|.
double entire_a_series(double z);
double entire_b_series(double z);
/// Closed forms of A and B; lose accuracy near z = 0.
double entire_a_closed(double z);
double entire_b_closed(double z);

/// L(t) = sinh(t sqrt theta)/sqrt theta, analytically continued across theta = 0.
double l_sigma(double theta, double t);
double l_sigma(SymbolPoint p);
/// dL/dt = cosh(t sqrt theta), continued likewise.
double dt_l_sigma(double theta, double t);
double dt_l_sigma(SymbolPoint p);

/// e^{-t/2}-weighted symbols of the four linear operators at one frequency.
struct DampedSymbols {
  double s;            ///< S(t):        e^{-t/2} L
  double s_tilde;      ///< S~(t):       e^{-t/2} (L' + L/2)
  double dt_s;         ///< dS/dt:       e^{-t/2} (L' - L/2)
  double dt_s_tilde;   ///< dS~/dt:      -|xi|^sigma e^{-t/2} L
};

/// Overflow-free evaluation of the weighted symbols for |xi| = xi_abs.
DampedSymbols damped_symbols(double xi_abs, double t, double sigma);

/// Precomputed symbol tables of the linear pair flow E(t) on one grid.
/// Immutable after construction; safe to share between threads.
class PairPropagator {
 public:
  PairPropagator(const Grid& grid, double sigma, double t);

  const Grid& grid() const { return grid_; }
  double sigma() const { return sigma_; }
  double time() const { return t_; }

  const std::vector<double>& s() const { return s_; }
  const std::vector<double>& s_tilde() const { return s_tilde_; }
  const std::vector<double>& dt_s() const { return dt_s_; }
  const std::vector<double>& dt_s_tilde() const { return dt_s_tilde_; }

  /// (u0_hat, u1_hat) -> (u_hat(t), ut_hat(t)), in place.
  void apply(SpectralField& u_hat, SpectralField& ut_hat) const;

 private:
  Grid grid_;
  double sigma_;
  double t_;
  std::vector<double> s_, s_tilde_, dt_s_, dt_s_tilde_;
};

/// S(t) g, the solution with data (0, g).
RealField apply_S(double t, const RealField& g, double sigma);
/// S~(t) f = (d/dt + 1) S(t) f, the solution with data (f, 0).
RealField apply_S_tilde(double t, const RealField& f, double sigma);
/// dS(t)/dt g.
RealField apply_dt_S(double t, const RealField& g, double sigma);

/// (u0, u1) -> (u(t), du/dt(t)) along the linear damped fractional wave flow.
PairState apply_pair_propagator(double t, const PairState& state, double sigma);

/// Unit-mass kernel with Fourier symbol e^{-t |xi|^sigma}.  Requires t > 0.
RealField heat_kernel(double t, double sigma, const Grid& grid);
/// e^{-t (-Delta)^{sigma/2}} g.
RealField apply_heat(double t, const RealField& g, double sigma);

/// Real-space kernel of the low-frequency part of S(t): inverse transform of
/// e^{-t/2} L(t, xi) psi_hat(2^{2/sigma} xi).  Throws ConfigError when the
/// lattice puts fewer than eight frequency steps inside the cutoff radius.
RealField low_freq_kernel(double t, double sigma, const Grid& grid);

/// Radius of the low-frequency cutoff support, 2^{-2/sigma}.
double low_freq_cutoff_radius(double sigma);

}  // namespace fdw
