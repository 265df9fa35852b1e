#include "fdw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fdw/errors.hpp"
#include "fft.hpp"

namespace fdw {

namespace {

// Sample x_j = -L + jh contributes the phase e^{i pi k} = (-1)^k per axis.
double parity_sign(const Grid& grid, std::size_t flat) {
  const auto idx = grid.unravel(flat);
  int parity = 0;
  for (int a = 0; a < grid.dim(); ++a) parity += idx[a];
  return (parity & 1) ? -1.0 : 1.0;
}

std::string describe_frequency(const Grid& grid, std::size_t flat) {
  const auto xi = grid.frequency(flat);
  std::ostringstream os;
  os << "xi = (";
  for (int a = 0; a < grid.dim(); ++a) os << (a ? ", " : "") << xi[a];
  os << ")";
  return os.str();
}

}  // namespace

SpectralField forward_transform(const RealField& f) {
  const Grid& grid = f.grid();
  std::vector<Complex> buf(grid.size());
  const auto v = f.values();
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = Complex(v[i], 0.0);
  detail::fft_inplace(grid, buf, detail::FftDirection::forward);
  const double w = grid.cell_volume();
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= w * parity_sign(grid, i);
  return SpectralField(grid, std::move(buf));
}

RealField inverse_transform(const SpectralField& coefficients, double tolerance) {
  const double defect = coefficients.hermitian_defect();
  if (defect > tolerance) {
    std::ostringstream os;
    os << "spectrum is not Hermitian symmetric (relative defect " << defect << ")";
    throw InvalidInput(os.str());
  }
  const Grid& grid = coefficients.grid();
  std::vector<Complex> buf(coefficients.coefficients().begin(), coefficients.coefficients().end());
  const double w = 1.0 / std::pow(2.0 * grid.half_width(), grid.dim());
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= w * parity_sign(grid, i);
  detail::fft_inplace(grid, buf, detail::FftDirection::backward);
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
  return RealField(grid, std::move(out));
}

SpectralField apply_multiplier(const SpectralField& coefficients, const Multiplier& m) {
  const Grid& grid = coefficients.grid();
  SpectralField out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex mi = m(grid.frequency(i));
    if (!std::isfinite(mi.real()) || !std::isfinite(mi.imag())) {
      throw EvaluationError("multiplier is not finite at " + describe_frequency(grid, i));
    }
    out[i] = coefficients[i] * mi;
  }
  return out;
}

SpectralField apply_radial_multiplier(const SpectralField& coefficients, const RadialMultiplier& m) {
  const Grid& grid = coefficients.grid();
  const auto radius = grid.frequency_magnitudes();
  SpectralField out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double mi = m(radius[i]);
    if (!std::isfinite(mi)) throw EvaluationError("multiplier is not finite at " + describe_frequency(grid, i));
    out[i] = coefficients[i] * mi;
  }
  return out;
}

SpectralField apply_symbol_table(const SpectralField& coefficients, std::span<const double> table) {
  SpectralField out = coefficients;
  apply_symbol_table_inplace(out, table);
  return out;
}

void apply_symbol_table_inplace(SpectralField& coefficients, std::span<const double> table) {
  if (table.size() != coefficients.size()) throw InvalidInput("symbol table size does not match grid");
  auto c = coefficients.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= table[i];
}

std::vector<double> radial_symbol_table(const Grid& grid, const RadialMultiplier& m) {
  auto table = grid.frequency_magnitudes();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double v = m(table[i]);
    if (!std::isfinite(v)) throw EvaluationError("multiplier is not finite at " + describe_frequency(grid, i));
    table[i] = v;
  }
  return table;
}

RealField fractional_derivative(const RealField& f, double s, bool homogeneous) {
  if (!(s >= 0.0)) throw DomainError("fractional derivative order must be nonnegative");
  if (s == 0.0) return f;
  const auto symbol = radial_symbol_table(f.grid(), [&](double r) {
    return homogeneous ? std::pow(r, s) : std::pow(1.0 + r * r, 0.5 * s);
  });
  auto coeffs = forward_transform(f);
  apply_symbol_table_inplace(coeffs, symbol);
  return inverse_transform(coeffs, std::numeric_limits<double>::infinity());
}

void truncate_spectrum(SpectralField& coefficients, double fraction) {
  const Grid& grid = coefficients.grid();
  const double cutoff = fraction * grid.band_edge();
  auto c = coefficients.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto xi = grid.frequency(i);
    for (int a = 0; a < grid.dim(); ++a) {
      if (std::abs(xi[a]) > cutoff) {
        c[i] = Complex{0.0, 0.0};
        break;
      }
    }
  }
}

double integrate(const RealField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum * f.grid().cell_volume();
}

double lp_norm(std::span<const double> values, double cell_volume, double p) {
  if (!(p >= 1.0)) throw DomainError("L^p norm requires p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) {
      if (std::isnan(v)) return std::numeric_limits<double>::quiet_NaN();
      m = std::max(m, std::abs(v));
    }
    return m;
  }
  double sum = 0.0;
  if (p == 2.0) {
    for (double v : values) sum += v * v;
    return std::sqrt(sum * cell_volume);
  }
  if (p == 1.0) {
    for (double v : values) sum += std::abs(v);
    return sum * cell_volume;
  }
  for (double v : values) sum += std::pow(std::abs(v), p);
  return std::pow(sum * cell_volume, 1.0 / p);
}

double lp_norm(const RealField& f, double p) { return lp_norm(f.values(), f.grid().cell_volume(), p); }

double spectral_l2_squared(const SpectralField& coefficients) {
  const Grid& grid = coefficients.grid();
  double sum = 0.0;
  for (const auto& c : coefficients.coefficients()) sum += std::norm(c);
  return sum / std::pow(2.0 * grid.half_width(), grid.dim());
}

RealField lattice_shift(const RealField& f, const std::array<int, 3>& shift) {
  const Grid& grid = f.grid();
  RealField out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    auto idx = grid.unravel(i);
    for (int a = 0; a < grid.dim(); ++a) idx[a] = grid.index_of_wavenumber(idx[a] + shift[a]);
    out[i] = f[grid.ravel(idx)];
  }
  return out;
}

}  // namespace fdw
