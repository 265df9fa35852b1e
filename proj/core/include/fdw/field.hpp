#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fdw/grid.hpp"

namespace fdw {

using Complex = std::complex<double>;

/// Real samples of a function on a grid, row-major.
class RealField {
 public:
  explicit RealField(Grid grid);
  RealField(Grid grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  /// True iff every sample is finite.
  bool is_finite() const;

  RealField& operator+=(const RealField& other);
  RealField& operator-=(const RealField& other);
  RealField& operator*=(double c);

  template <class F>
  static RealField sample(const Grid& grid, F&& f) {
    RealField out(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) out.values_[i] = f(grid.position(i));
    return out;
  }

 private:
  Grid grid_;
  std::vector<double> values_;
};

RealField operator+(RealField a, const RealField& b);
RealField operator-(RealField a, const RealField& b);
RealField operator*(double c, RealField a);

/// Continuum-normalized Fourier coefficients F[f](xi_k) on the frequency lattice.
class SpectralField {
 public:
  explicit SpectralField(Grid grid);
  SpectralField(Grid grid, std::vector<Complex> coefficients);

  const Grid& grid() const { return grid_; }
  std::span<const Complex> coefficients() const { return coeffs_; }
  std::span<Complex> coefficients() { return coeffs_; }
  Complex operator[](std::size_t i) const { return coeffs_[i]; }
  Complex& operator[](std::size_t i) { return coeffs_[i]; }
  std::size_t size() const { return coeffs_.size(); }

  /// Coefficient at integer wavenumber vector k.
  Complex at_wavenumber(const std::array<int, 3>& k) const;
  Complex& at_wavenumber(const std::array<int, 3>& k);

  /// max_k |F(-k) - conj F(k)| / max_k |F(k)|; zero for an exactly real field.
  double hermitian_defect() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator*=(double c);

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

/// The pair (u, du/dt) on one grid.
struct PairState {
  RealField u;
  RealField ut;

  PairState(RealField u_in, RealField ut_in);
  static PairState zero(const Grid& grid) { return {RealField(grid), RealField(grid)}; }
  const Grid& grid() const { return u.grid(); }
};

}  // namespace fdw
