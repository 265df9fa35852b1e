#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace fdw {

/// Periodic uniform grid on the box [-L, L)^dim.
///
/// Samples sit at x_j = -L + j h, h = 2L/N.  The frequency lattice is
/// xi_k = (pi/L) k with k in [-N/2, N/2); spectral arrays are stored in FFT
/// order on every axis (k = 0, 1, ..., N/2-1, -N/2, ..., -1) and flattened
/// row-major with axis 0 slowest.
class Grid {
 public:
  Grid(int dim, int points_per_axis, double half_width);

  int dim() const { return dim_; }
  int points_per_axis() const { return n_; }
  double half_width() const { return half_width_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return size_; }

  /// h^dim, the quadrature weight of one sample.
  double cell_volume() const { return cell_volume_; }
  /// pi/L, the lattice spacing in frequency.
  double frequency_step() const;
  /// pi/h, the largest resolved frequency magnitude per axis.
  double band_edge() const;

  double coordinate(int i) const { return -half_width_ + i * spacing_; }
  /// Integer wavenumber k of FFT-ordered index i.
  int wavenumber(int i) const { return i < n_ / 2 ? i : i - n_; }
  /// FFT-ordered index of wavenumber k (taken modulo N).
  int index_of_wavenumber(int k) const;

  std::array<int, 3> unravel(std::size_t flat) const;
  std::size_t ravel(const std::array<int, 3>& idx) const;

  /// Flat index of the frequency -k for the frequency at flat index i.
  std::size_t mirror_index(std::size_t flat) const;

  std::array<double, 3> position(std::size_t flat) const;
  std::array<double, 3> frequency(std::size_t flat) const;

  /// |x| at every sample, row-major.
  std::vector<double> position_magnitudes() const;
  /// |xi| at every lattice frequency, FFT order.
  std::vector<double> frequency_magnitudes() const;

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim_ == b.dim_ && a.n_ == b.n_ && a.half_width_ == b.half_width_;
  }

 private:
  int dim_;
  int n_;
  double half_width_;
  double spacing_;
  double cell_volume_;
  std::size_t size_;
};

}  // namespace fdw
