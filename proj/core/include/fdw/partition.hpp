#pragma once

#include <vector>

#include "fdw/grid.hpp"

namespace fdw {

/// Smooth transition: 0 for r <= 0, 1 for r >= 1, C-infinity in between.
double smooth_step(double r);

/// Low-frequency cutoff: 1 on |xi| <= 1/2, 0 on |xi| >= 1.
double psi_hat(double xi_abs);

/// Annulus profile psi_hat(xi/2) - psi_hat(xi), supported in [1/2, 2].
double phi_hat(double xi_abs);

/// Littlewood-Paley partition restricted to the shells a grid can resolve.
///
/// Inhomogeneous shells are j = 0..j_max; homogeneous shells are
/// j = j_min..j_max, with j_min the coarsest shell that still covers the
/// lowest nonzero lattice frequency and j_max the finest shell that touches
/// the lattice at all.
class DyadicPartition {
 public:
  explicit DyadicPartition(const Grid& grid);

  const Grid& grid() const { return grid_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }

  /// phi_hat(2^{-j} |xi|) at every lattice frequency, FFT order.
  std::vector<double> shell_symbol(int j) const;
  /// psi_hat(|xi|) at every lattice frequency.
  std::vector<double> low_symbol() const;

  /// max over lattice of |psi_hat + sum_{j=0}^{j_max} phi_j - 1|.
  double inhomogeneous_residual() const;
  /// max over nonzero lattice frequencies of |sum_{j_min}^{j_max} phi_j - 1|.
  double homogeneous_residual() const;

 private:
  Grid grid_;
  int j_min_;
  int j_max_;
};

/// build_partition(grid) in the module vocabulary.
inline DyadicPartition build_partition(const Grid& grid) { return DyadicPartition(grid); }

}  // namespace fdw
