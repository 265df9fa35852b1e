#include "fdw/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fdw/errors.hpp"

namespace fdw {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int dim, int points_per_axis, double half_width)
    : dim_(dim), n_(points_per_axis), half_width_(half_width) {
  if (dim < 1 || dim > 3) {
    throw InvalidInput("grid dimension must be 1, 2 or 3, got " + std::to_string(dim));
  }
  if (!is_power_of_two(points_per_axis) || points_per_axis < 16) {
    throw InvalidInput("points per axis must be a power of two >= 16, got " +
                       std::to_string(points_per_axis));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw InvalidInput("grid half width must be positive and finite");
  }
  spacing_ = 2.0 * half_width_ / n_;
  cell_volume_ = std::pow(spacing_, dim_);
  size_ = 1;
  for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(n_);
}

double Grid::frequency_step() const { return std::numbers::pi / half_width_; }

double Grid::band_edge() const { return std::numbers::pi / spacing_; }

int Grid::index_of_wavenumber(int k) const {
  int m = k % n_;
  if (m < 0) m += n_;
  return m;
}

std::array<int, 3> Grid::unravel(std::size_t flat) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(n_));
    flat /= static_cast<std::size_t>(n_);
  }
  return idx;
}

std::size_t Grid::ravel(const std::array<int, 3>& idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim_; ++a) {
    flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(idx[a]);
  }
  return flat;
}

std::size_t Grid::mirror_index(std::size_t flat) const {
  auto idx = unravel(flat);
  for (int a = 0; a < dim_; ++a) idx[a] = index_of_wavenumber(-wavenumber(idx[a]));
  return ravel(idx);
}

std::array<double, 3> Grid::position(std::size_t flat) const {
  const auto idx = unravel(flat);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) x[a] = coordinate(idx[a]);
  return x;
}

std::array<double, 3> Grid::frequency(std::size_t flat) const {
  const auto idx = unravel(flat);
  const double dk = frequency_step();
  std::array<double, 3> xi{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) xi[a] = dk * wavenumber(idx[a]);
  return xi;
}

std::vector<double> Grid::position_magnitudes() const {
  std::vector<double> r(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    const auto x = position(i);
    r[i] = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  }
  return r;
}

std::vector<double> Grid::frequency_magnitudes() const {
  std::vector<double> r(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    const auto xi = frequency(i);
    r[i] = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  }
  return r;
}

}  // namespace fdw
