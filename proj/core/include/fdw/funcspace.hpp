#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "fdw/field.hpp"
#include "fdw/partition.hpp"

namespace fdw {

/// Value of a Littlewood-Paley norm together with the shells it summed.
struct BesovResult {
  double value = 0.0;
  int j_lo = 0;  ///< coarsest shell included
  int j_hi = 0;  ///< finest shell included
  /// L^2 fraction of the field carried by the finest resolved shell; a
  /// large value means the ell^q sum was truncated while still significant.
  double top_shell_fraction = 0.0;
};

/// Littlewood-Paley Besov norm.  Inhomogeneous: ||psi * f||_p plus the
/// ell^q sum over j >= 0.  Homogeneous: the mean is removed and shells run
/// down to the box frequency.  Requires s >= 0, p, q in [1, inf].
BesovResult besov_norm_lp(const RealField& f, double s, double p, double q, bool homogeneous);
BesovResult besov_norm_lp(const RealField& f, double s, double p, double q, bool homogeneous,
                          const DyadicPartition& partition);

/// Homogeneous Besov norm from m-th order symmetric differences over dyadic
/// radii rho = h 2^i <= 2L and lattice shifts |y| <= rho.  m in {1, 2}, 0 < s < m.
double besov_norm_difference(const RealField& f, double s, double p, double q, int m);

/// ||(-Delta)^{s/2} f||_p (homogeneous) or ||(1 - Delta)^{s/2} f||_p.
double sobolev_norm(const RealField& f, double s, bool homogeneous, double p = 2.0);

enum class Weight { plain, japanese };

/// ||w(x)^alpha f||_p with w = |x| (0^0 := 1) or <x>.
double weighted_norm(const RealField& f, double alpha, Weight weight, double p = 2.0);

/// max(1, 2n/(n + sigma)).
double q_sigma(int n, double sigma);

/// ||f||_2 + ||f||_{H^s hom} + || |x|^alpha f ||_2.
double x0_norm(const RealField& f, double s, double alpha);

/// || |x|^alpha f ||_{q_sigma} + ||f||_gamma + (s > 0 ? ||f||_{B^s_{q_sigma,2} hom} : ||f||_{q_sigma}).
double y0_norm(const RealField& f, double s, double alpha, double gamma, double sigma);

enum class NormKind { lp, sobolev_hom, sobolev_inhom, weighted_l2, besov_hom, besov_inhom, x0, y0 };

/// A norm with its parameters, validated at construction.
class NormSpec {
 public:
  struct Params {
    double p = 2.0;
    double s = 0.0;
    double q = 2.0;
    double alpha = 0.0;
    double gamma = 1.0;
    double sigma = 2.0;
    double r = 1.0;
  };

  NormSpec(NormKind kind, Params params);

  NormKind kind() const { return kind_; }
  const Params& params() const { return params_; }
  double evaluate(const RealField& f) const;

 private:
  NormKind kind_;
  Params params_;
};

/// Dilation <t>^{n/(r sigma)} u(<t>^{1/sigma} x) by band-limited
/// interpolation; samples whose image leaves the box are set to zero.
RealField dilate(const RealField& u, double t, double sigma, double r);

/// One time sample of the norms entering the solution norm X(T).
struct TimeSample {
  double t;
  double l2;
  double hs;        ///< ||u||_{H^s hom}
  double weighted;  ///< || |x|^alpha u ||_2
};

/// <t>^{mu(2,r)} [ l2 + <t>^{s/sigma} hs + <t>^{-alpha/sigma} weighted ],
/// mu(2,r) = (n/sigma)(1/r - 1/2): the dilated X_0 norm written without resampling.
double x_weighted_norm(const TimeSample& sample, int n, double sigma, double s, double alpha, double r);

/// Running supremum of x_weighted_norm over a trajectory.  Throws DomainError when empty.
double x_norm_accumulate(std::span<const TimeSample> trajectory, int n, double sigma, double s, double alpha,
                         double r);

/// Same, from stored snapshots (norms evaluated here).
struct Snapshot {
  double t;
  RealField u;
};
double x_norm_accumulate(std::span<const Snapshot> trajectory, double sigma, double s, double alpha, double r);

/// Japanese bracket <x> = sqrt(1 + x^2).
inline double japanese(double x) { return std::sqrt(1.0 + x * x); }

}  // namespace fdw
