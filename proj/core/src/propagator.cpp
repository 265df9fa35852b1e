#include "fdw/propagator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fdw/errors.hpp"
#include "fdw/partition.hpp"
#include "fdw/spectral.hpp"

namespace fdw {

namespace {

constexpr double kSeriesTermFloor = 1e-18;

double frequency_power(double xi_abs, double sigma) { return xi_abs == 0.0 ? 0.0 : std::pow(xi_abs, sigma); }

RealField inverse_real(const SpectralField& c) {
  return inverse_transform(c, std::numeric_limits<double>::infinity());
}

}  // namespace

double entire_a_series(double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 200; ++k) {
    term *= z / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    sum += term;
    if (std::abs(term) < kSeriesTermFloor * std::abs(sum)) break;
  }
  return sum;
}

double entire_b_series(double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 200; ++k) {
    term *= z / ((2.0 * k + 1.0) * (2.0 * k + 2.0));
    sum += term;
    if (std::abs(term) < kSeriesTermFloor * std::abs(sum)) break;
  }
  return sum;
}

double entire_a_closed(double z) {
  if (z > 0.0) {
    const double r = std::sqrt(z);
    return std::sinh(r) / r;
  }
  if (z < 0.0) {
    const double r = std::sqrt(-z);
    return std::sin(r) / r;
  }
  return 1.0;
}

double entire_b_closed(double z) {
  if (z > 0.0) return std::cosh(std::sqrt(z));
  if (z < 0.0) return std::cos(std::sqrt(-z));
  return 1.0;
}

double entire_a(double z) { return std::abs(z) <= kSeriesSwitch ? entire_a_series(z) : entire_a_closed(z); }

double entire_b(double z) { return std::abs(z) <= kSeriesSwitch ? entire_b_series(z) : entire_b_closed(z); }

double l_sigma(double theta, double t) { return t * entire_a(theta * t * t); }
double l_sigma(SymbolPoint p) { return l_sigma(p.theta, p.t); }
double dt_l_sigma(double theta, double t) { return entire_b(theta * t * t); }
double dt_l_sigma(SymbolPoint p) { return dt_l_sigma(p.theta, p.t); }

DampedSymbols damped_symbols(double xi_abs, double t, double sigma) {
  const double a = frequency_power(xi_abs, sigma);
  const double theta = 0.25 - a;
  const double z = theta * t * t;
  double el = 0.0;   // e^{-t/2} L
  double elp = 0.0;  // e^{-t/2} L'
  if (std::abs(z) <= kSeriesSwitch) {
    const double damp = std::exp(-0.5 * t);
    el = damp * t * entire_a_series(z);
    elp = damp * entire_b_series(z);
  } else if (theta > 0.0) {
    // e^{-t/2} sinh(tr)/r = e^{-t(1/2 - r)} (1 - e^{-2tr}) / (2r), with 1/2 - r = a/(1/2 + r).
    const double r = std::sqrt(theta);
    const double slow = std::exp(-t * a / (0.5 + r));
    const double gap = -std::expm1(-2.0 * t * r);
    el = slow * gap / (2.0 * r);
    elp = slow * (2.0 - gap) * 0.5;
  } else {
    const double r = std::sqrt(-theta);
    const double damp = std::exp(-0.5 * t);
    el = damp * std::sin(t * r) / r;
    elp = damp * std::cos(t * r);
  }
  return {el, elp + 0.5 * el, elp - 0.5 * el, -a * el};
}

PairPropagator::PairPropagator(const Grid& grid, double sigma, double t) : grid_(grid), sigma_(sigma), t_(t) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (!(t >= 0.0)) throw DomainError("propagation time must be nonnegative");
  const auto radius = grid.frequency_magnitudes();
  s_.resize(radius.size());
  s_tilde_.resize(radius.size());
  dt_s_.resize(radius.size());
  dt_s_tilde_.resize(radius.size());
  for (std::size_t i = 0; i < radius.size(); ++i) {
    const auto sym = damped_symbols(radius[i], t, sigma);
    s_[i] = sym.s;
    s_tilde_[i] = sym.s_tilde;
    dt_s_[i] = sym.dt_s;
    dt_s_tilde_[i] = sym.dt_s_tilde;
  }
}

void PairPropagator::apply(SpectralField& u_hat, SpectralField& ut_hat) const {
  auto u = u_hat.coefficients();
  auto v = ut_hat.coefficients();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Complex u0 = u[i];
    const Complex u1 = v[i];
    u[i] = s_tilde_[i] * u0 + s_[i] * u1;
    v[i] = dt_s_tilde_[i] * u0 + dt_s_[i] * u1;
  }
}

namespace {

template <class Pick>
RealField apply_single(double t, const RealField& f, double sigma, Pick pick) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  if (!(t >= 0.0)) throw DomainError("propagation time must be nonnegative");
  const auto table = radial_symbol_table(f.grid(), [&](double r) { return pick(damped_symbols(r, t, sigma)); });
  auto c = forward_transform(f);
  apply_symbol_table_inplace(c, table);
  return inverse_real(c);
}

}  // namespace

RealField apply_S(double t, const RealField& g, double sigma) {
  return apply_single(t, g, sigma, [](const DampedSymbols& d) { return d.s; });
}

RealField apply_S_tilde(double t, const RealField& f, double sigma) {
  return apply_single(t, f, sigma, [](const DampedSymbols& d) { return d.s_tilde; });
}

RealField apply_dt_S(double t, const RealField& g, double sigma) {
  return apply_single(t, g, sigma, [](const DampedSymbols& d) { return d.dt_s; });
}

PairState apply_pair_propagator(double t, const PairState& state, double sigma) {
  const PairPropagator prop(state.grid(), sigma, t);
  auto u_hat = forward_transform(state.u);
  auto ut_hat = forward_transform(state.ut);
  prop.apply(u_hat, ut_hat);
  return {inverse_real(u_hat), inverse_real(ut_hat)};
}

RealField heat_kernel(double t, double sigma, const Grid& grid) {
  if (!(t > 0.0)) throw DomainError("heat kernel requires t > 0, got " + std::to_string(t));
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  const auto radius = grid.frequency_magnitudes();
  SpectralField c(grid);
  for (std::size_t i = 0; i < radius.size(); ++i) c[i] = std::exp(-t * frequency_power(radius[i], sigma));
  return inverse_real(c);
}

RealField apply_heat(double t, const RealField& g, double sigma) {
  if (!(t >= 0.0)) throw DomainError("heat flow requires t >= 0");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  const auto table = radial_symbol_table(g.grid(), [&](double r) { return std::exp(-t * frequency_power(r, sigma)); });
  auto c = forward_transform(g);
  apply_symbol_table_inplace(c, table);
  return inverse_real(c);
}

double low_freq_cutoff_radius(double sigma) { return std::pow(2.0, -2.0 / sigma); }

RealField low_freq_kernel(double t, double sigma, const Grid& grid) {
  if (!(t > 0.0)) throw DomainError("low-frequency kernel requires t > 0");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  const double radius_cut = low_freq_cutoff_radius(sigma);
  if (radius_cut < 8.0 * grid.frequency_step()) {
    throw ConfigError("grid frequency step " + std::to_string(grid.frequency_step()) +
                      " does not resolve the low-frequency cutoff radius " + std::to_string(radius_cut) +
                      "; increase the half width");
  }
  const double dilation = std::pow(2.0, 2.0 / sigma);
  const auto radius = grid.frequency_magnitudes();
  SpectralField c(grid);
  for (std::size_t i = 0; i < radius.size(); ++i) {
    const double cut = psi_hat(dilation * radius[i]);
    if (cut != 0.0) c[i] = cut * damped_symbols(radius[i], t, sigma).s;
  }
  return inverse_real(c);
}

}  // namespace fdw
