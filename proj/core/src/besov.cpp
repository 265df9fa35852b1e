#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fdw/errors.hpp"
#include "fdw/funcspace.hpp"
#include "fdw/spectral.hpp"

namespace fdw {

namespace {

double ell_q_accumulate(double acc, double term, double q) {
  return std::isinf(q) ? std::max(acc, term) : acc + std::pow(term, q);
}

double ell_q_finish(double acc, double q) { return std::isinf(q) ? acc : std::pow(acc, 1.0 / q); }

RealField filtered(const SpectralField& c, const std::vector<double>& symbol) {
  return inverse_transform(apply_symbol_table(c, symbol), std::numeric_limits<double>::infinity());
}

}  // namespace

BesovResult besov_norm_lp(const RealField& f, double s, double p, double q, bool homogeneous) {
  return besov_norm_lp(f, s, p, q, homogeneous, DyadicPartition(f.grid()));
}

BesovResult besov_norm_lp(const RealField& f, double s, double p, double q, bool homogeneous,
                          const DyadicPartition& partition) {
  if (!(s >= 0.0)) throw DomainError("Besov norm requires s >= 0");
  if (!(p >= 1.0) || !(q >= 1.0)) throw DomainError("Besov norm requires p, q in [1, inf]");
  if (!(partition.grid() == f.grid())) throw InvalidInput("partition built for a different grid");

  auto c = forward_transform(f);
  if (homogeneous) c[0] = Complex{0.0, 0.0};  // modulo constants on the periodic box
  const double total_l2 = std::sqrt(spectral_l2_squared(c));

  BesovResult result;
  result.j_lo = homogeneous ? partition.j_min() : 0;
  result.j_hi = partition.j_max();
  double acc = 0.0;
  double top_l2 = 0.0;
  for (int j = result.j_lo; j <= result.j_hi; ++j) {
    const auto block = filtered(c, partition.shell_symbol(j));
    acc = ell_q_accumulate(acc, std::pow(2.0, s * j) * lp_norm(block, p), q);
    if (j == result.j_hi) top_l2 = lp_norm(block, 2.0);
  }
  result.value = ell_q_finish(acc, q);
  if (!homogeneous) result.value += lp_norm(filtered(c, partition.low_symbol()), p);
  result.top_shell_fraction = total_l2 > 0.0 ? top_l2 / total_l2 : 0.0;
  return result;
}

double besov_norm_difference(const RealField& f, double s, double p, double q, int m) {
  if (m != 1 && m != 2) throw DomainError("difference order must be 1 or 2");
  if (!(s > 0.0 && s < m)) throw DomainError("difference Besov norm requires 0 < s < m");
  if (!(p >= 1.0) || !(q >= 1.0)) throw DomainError("difference Besov norm requires p, q in [1, inf]");

  const Grid& grid = f.grid();
  const int n = grid.dim();
  const int N = grid.points_per_axis();
  const double h = grid.spacing();

  struct ShiftNorm {
    double radius;
    double norm;
  };
  std::vector<ShiftNorm> table;
  std::size_t count = 1;
  for (int a = 0; a < n; ++a) count *= static_cast<std::size_t>(N);
  table.reserve(count);
  std::vector<double> diff(f.size());
  const auto v = f.values();
  for (std::size_t flat = 0; flat < count; ++flat) {
    // Enumerate shifts k in [-N/2, N/2)^n.
    auto idx = grid.unravel(flat);
    std::array<int, 3> k{0, 0, 0};
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) {
      k[a] = grid.wavenumber(idx[a]);
      r2 += static_cast<double>(k[a]) * k[a];
    }
    if (r2 == 0.0) continue;
    for (std::size_t i = 0; i < f.size(); ++i) {
      auto pos = grid.unravel(i);
      auto plus = pos;
      auto minus = pos;
      for (int a = 0; a < n; ++a) {
        plus[a] = grid.index_of_wavenumber(pos[a] + k[a]);
        minus[a] = grid.index_of_wavenumber(pos[a] - k[a]);
      }
      const double fp = v[grid.ravel(plus)];
      diff[i] = m == 1 ? fp - v[i] : fp - 2.0 * v[i] + v[grid.ravel(minus)];
    }
    table.push_back({h * std::sqrt(r2), lp_norm(diff, grid.cell_volume(), p)});
  }
  std::sort(table.begin(), table.end(), [](const ShiftNorm& a, const ShiftNorm& b) { return a.radius < b.radius; });

  const double rho_max = 2.0 * grid.half_width();
  double acc = 0.0;
  double running = 0.0;
  std::size_t cursor = 0;
  for (double rho = h; rho <= rho_max * (1.0 + 1e-12); rho *= 2.0) {
    while (cursor < table.size() && table[cursor].radius <= rho * (1.0 + 1e-12)) {
      running = std::max(running, table[cursor].norm);
      ++cursor;
    }
    const double term = std::pow(rho, -s) * running;
    acc = std::isinf(q) ? std::max(acc, term) : acc + std::pow(term, q) * std::numbers::ln2;
  }
  return ell_q_finish(acc, q);
}

}  // namespace fdw
