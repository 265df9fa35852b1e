#include "fdw/partition.hpp"

#include <algorithm>
#include <cmath>

namespace fdw {

double smooth_step(double r) {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / r);
  const double b = std::exp(-1.0 / (1.0 - r));
  return a / (a + b);
}

double psi_hat(double xi_abs) { return 1.0 - smooth_step(2.0 * (xi_abs - 0.5)); }

double phi_hat(double xi_abs) { return psi_hat(0.5 * xi_abs) - psi_hat(xi_abs); }

DyadicPartition::DyadicPartition(const Grid& grid) : grid_(grid) {
  const double xi_max = std::sqrt(static_cast<double>(grid.dim())) * grid.band_edge();
  const double xi_lo = grid.frequency_step();
  j_max_ = static_cast<int>(std::ceil(std::log2(xi_max)));
  j_min_ = static_cast<int>(std::floor(std::log2(xi_lo)));
}

std::vector<double> DyadicPartition::shell_symbol(int j) const {
  auto table = grid_.frequency_magnitudes();
  const double scale = std::ldexp(1.0, -j);
  for (auto& r : table) r = phi_hat(scale * r);
  return table;
}

std::vector<double> DyadicPartition::low_symbol() const {
  auto table = grid_.frequency_magnitudes();
  for (auto& r : table) r = psi_hat(r);
  return table;
}

double DyadicPartition::inhomogeneous_residual() const {
  const auto radius = grid_.frequency_magnitudes();
  double worst = 0.0;
  for (double r : radius) {
    double sum = psi_hat(r);
    for (int j = 0; j <= j_max_; ++j) sum += phi_hat(std::ldexp(r, -j));
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

double DyadicPartition::homogeneous_residual() const {
  const auto radius = grid_.frequency_magnitudes();
  double worst = 0.0;
  for (double r : radius) {
    if (r == 0.0) continue;
    double sum = 0.0;
    for (int j = j_min_; j <= j_max_; ++j) sum += phi_hat(std::ldexp(r, -j));
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

}  // namespace fdw
