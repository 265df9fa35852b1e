#include "fdw/solver.hpp"

#include <cmath>
#include <limits>

#include "fdw/errors.hpp"
#include "fdw/spectral.hpp"
#include "solver_detail.hpp"

namespace fdw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Nonlinearity::Nonlinearity(NonlinearityKind kind, double rho, int focusing_sign)
    : kind_(kind), rho_(rho), sign_(focusing_sign) {
  if (kind != NonlinearityKind::none && !(rho > 1.0)) throw DomainError("nonlinearity exponent rho must exceed 1");
  if (focusing_sign != 1 && focusing_sign != -1) throw DomainError("nonlinearity sign must be +1 or -1");
}

double Nonlinearity::operator()(double z) const {
  const double a = std::abs(z);
  switch (kind_) {
    case NonlinearityKind::none: return 0.0;
    case NonlinearityKind::absolute: return sign_ * (rho_ == 2.0 ? a * a : std::pow(a, rho_));
    case NonlinearityKind::signed_power: return sign_ * (rho_ == 2.0 ? a * z : std::pow(a, rho_ - 1.0) * z);
  }
  return 0.0;
}

void Nonlinearity::apply(std::span<const double> in, std::span<double> out) const {
  if (in.size() != out.size()) throw InvalidInput("nonlinearity input and output sizes differ");
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = (*this)(in[i]);
}

void SolverConfig::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be positive");
  if (!(dt > 0.0 && dt < 1.0)) throw ConfigError("dt must lie in (0, 1)");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be positive and finite");
  const double steps = std::round(t_end / dt);
  if (std::abs(steps * dt - t_end) > 1e-9 * t_end) throw ConfigError("t_end must be an integer multiple of dt");
  if (!(blowup_threshold > 0.0)) throw ConfigError("blowup_threshold must be positive");
  if (!(dealias > 0.0 && dealias <= 1.0)) throw ConfigError("dealias must lie in (0, 1]");
  if (snapshot_stride < 0) throw ConfigError("snapshot_stride must be nonnegative");
  if (!(hs_order >= 0.0)) throw ConfigError("hs_order must be nonnegative");
  if (!(weight_alpha >= 0.0)) throw ConfigError("weight_alpha must be nonnegative");
  if (!(x_norm_r >= 1.0 && x_norm_r <= 2.0)) throw ConfigError("x_norm_r must lie in [1, 2]");
}

void check_bandwidth(const PairState& data, const SolverConfig& cfg, double tolerance) {
  for (const RealField* f : {&data.u, &data.ut}) {
    const auto c = forward_transform(*f);
    const double total = spectral_l2_squared(c);
    if (total == 0.0) continue;
    auto kept = c;
    truncate_spectrum(kept, cfg.dealias);
    const double lost = 1.0 - spectral_l2_squared(kept) / total;
    if (lost > tolerance) {
      throw ConfigError("initial data carry a fraction " + std::to_string(lost) +
                        " of their L^2 mass above the dealiasing cutoff; refine the grid");
    }
  }
}

std::string to_string(Outcome::Kind kind) {
  switch (kind) {
    case Outcome::Kind::completed: return "completed";
    case Outcome::Kind::blowup: return "blowup";
    case Outcome::Kind::diverged_numerically: return "diverged_numerically";
  }
  return "unknown";
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::global_decay: return "global_decay";
    case Classification::blowup: return "blowup";
    case Classification::undecided: return "undecided";
  }
  return "unknown";
}

double linear_energy(const PairState& state, double sigma) {
  const auto u_hat = forward_transform(state.u);
  const auto ut_hat = forward_transform(state.ut);
  const auto radius = state.grid().frequency_magnitudes();
  double potential = 0.0;
  for (std::size_t i = 0; i < u_hat.size(); ++i) potential += std::pow(radius[i], sigma) * std::norm(u_hat[i]);
  potential /= std::pow(2.0 * state.grid().half_width(), state.grid().dim());
  return 0.5 * (spectral_l2_squared(ut_hat) + potential);
}

namespace detail {

NormProbe::NormProbe(const Grid& grid, double sigma, double s, double alpha) : grid_(grid) {
  const auto xi = grid.frequency_magnitudes();
  const auto x = grid.position_magnitudes();
  hs_.resize(xi.size());
  energy_.resize(xi.size());
  weight_.resize(x.size());
  for (std::size_t i = 0; i < xi.size(); ++i) {
    hs_[i] = s == 0.0 ? 1.0 : std::pow(xi[i], 2.0 * s);
    energy_[i] = std::pow(xi[i], sigma);
  }
  for (std::size_t i = 0; i < x.size(); ++i) weight_[i] = alpha == 0.0 ? 1.0 : std::pow(x[i], 2.0 * alpha);
  parseval_ = 1.0 / std::pow(2.0 * grid.half_width(), grid.dim());
}

NormRow NormProbe::row(double t, const SpectralField& u_hat, const SpectralField& ut_hat, const RealField& u) const {
  NormRow r{t, 0.0, 0.0, 0.0, 0.0, 0.0};
  double hs = 0.0;
  double kinetic = 0.0;
  double potential = 0.0;
  for (std::size_t i = 0; i < u_hat.size(); ++i) {
    const double a = std::norm(u_hat[i]);
    hs += hs_[i] * a;
    potential += energy_[i] * a;
    kinetic += std::norm(ut_hat[i]);
  }
  double l2 = 0.0;
  double weighted = 0.0;
  double linf = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double v = u[i];
    l2 += v * v;
    weighted += weight_[i] * v * v;
    linf = std::isnan(v) || std::isnan(linf) ? std::numeric_limits<double>::quiet_NaN() : std::max(linf, std::abs(v));
  }
  const double cell = grid_.cell_volume();
  r.l2 = std::sqrt(l2 * cell);
  r.linf = linf;
  r.hs = std::sqrt(hs * parseval_);
  r.weighted_alpha = std::sqrt(weighted * cell);
  r.energy = 0.5 * (kinetic + potential) * parseval_;
  return r;
}

TimeSample NormProbe::sample(double t, const SpectralField& u_hat, const RealField& u) const {
  double hs = 0.0;
  for (std::size_t i = 0; i < u_hat.size(); ++i) hs += hs_[i] * std::norm(u_hat[i]);
  double l2 = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    l2 += u[i] * u[i];
    weighted += weight_[i] * u[i] * u[i];
  }
  const double cell = grid_.cell_volume();
  return {t, std::sqrt(l2 * cell), std::sqrt(hs * parseval_), std::sqrt(weighted * cell)};
}

}  // namespace detail

ExponentialMidpoint::ExponentialMidpoint(const Grid& grid, const SolverConfig& cfg)
    : grid_(grid),
      cfg_(cfg),
      half_(grid, cfg.sigma, 0.5 * cfg.dt),
      full_(grid, cfg.sigma, cfg.dt),
      quarter_s_(PairPropagator(grid, cfg.sigma, 0.25 * cfg.dt).s()),
      half_s_(half_.s()),
      half_dt_s_(half_.dt_s()) {
  cfg_.validate();
}

SpectralField ExponentialMidpoint::nonlinear_spectrum(const RealField& u) const {
  RealField nu(grid_);
  cfg_.nonlinearity.apply(u.values(), nu.values());
  auto c = forward_transform(nu);
  truncate_spectrum(c, cfg_.dealias);
  return c;
}

void ExponentialMidpoint::advance(SpectralField& u_hat, SpectralField& ut_hat, RealField& u) const {
  if (cfg_.nonlinearity.is_zero()) {
    full_.apply(u_hat, ut_hat);
    u = inverse_transform(u_hat, kInf);
    return;
  }
  const double dt = cfg_.dt;
  const auto n0 = nonlinear_spectrum(u);

  // Predictor at the half step.
  SpectralField mid(grid_);
  const auto& st = half_.s_tilde();
  const auto& s = half_.s();
  for (std::size_t i = 0; i < mid.size(); ++i) {
    mid[i] = st[i] * u_hat[i] + s[i] * ut_hat[i] + 0.5 * dt * quarter_s_[i] * n0[i];
  }
  const auto n_mid = nonlinear_spectrum(inverse_transform(mid, kInf));

  full_.apply(u_hat, ut_hat);
  for (std::size_t i = 0; i < u_hat.size(); ++i) {
    u_hat[i] += dt * half_s_[i] * n_mid[i];
    ut_hat[i] += dt * half_dt_s_[i] * n_mid[i];
  }
  u = inverse_transform(u_hat, kInf);
}

PairState step(const PairState& state, const SolverConfig& cfg) {
  const ExponentialMidpoint stepper(state.grid(), cfg);
  auto u_hat = forward_transform(state.u);
  auto ut_hat = forward_transform(state.ut);
  RealField u = state.u;
  stepper.advance(u_hat, ut_hat, u);
  return {std::move(u), inverse_transform(ut_hat, kInf)};
}

TrajectoryRecord solve(const PairState& data, const SolverConfig& cfg) {
  cfg.validate();
  const Grid& grid = data.grid();
  const ExponentialMidpoint stepper(grid, cfg);
  const detail::NormProbe probe(grid, cfg.sigma, cfg.hs_order, cfg.weight_alpha);

  TrajectoryRecord record;
  record.config = cfg;
  auto u_hat = forward_transform(data.u);
  auto ut_hat = forward_transform(data.ut);
  RealField u = data.u;

  auto snapshot = [&](double t) { record.snapshots.push_back({t, PairState(u, inverse_transform(ut_hat, kInf))}); };
  const long steps = std::lround(cfg.t_end / cfg.dt);
  record.times.push_back(0.0);
  record.norms.push_back(probe.row(0.0, u_hat, ut_hat, u));
  if (cfg.snapshot_stride > 0) snapshot(0.0);

  for (long k = 1; k <= steps; ++k) {
    const double t = k == steps ? cfg.t_end : static_cast<double>(k) * cfg.dt;
    stepper.advance(u_hat, ut_hat, u);
    const auto row = probe.row(t, u_hat, ut_hat, u);
    if (!u.is_finite() || !std::isfinite(row.energy)) {
      record.outcome = {Outcome::Kind::diverged_numerically, t};
      return record;
    }
    record.times.push_back(t);
    record.norms.push_back(row);
    if (cfg.snapshot_stride > 0 && k % cfg.snapshot_stride == 0) snapshot(t);

    const auto& n = record.norms;
    const std::size_t m = n.size();
    if (row.linf >= cfg.blowup_threshold && m >= 3 && n[m - 3].linf < n[m - 2].linf && n[m - 2].linf < n[m - 1].linf) {
      record.outcome = {Outcome::Kind::blowup, t};
      return record;
    }
  }
  record.outcome = {Outcome::Kind::completed, cfg.t_end};
  return record;
}

Classification detect_blowup(const TrajectoryRecord& record) {
  switch (record.outcome.kind) {
    case Outcome::Kind::blowup: return Classification::blowup;
    case Outcome::Kind::diverged_numerically: return Classification::undecided;
    case Outcome::Kind::completed: break;
  }
  const double t_from = record.config.t_end / 10.0;
  const NormRow* prev = nullptr;
  for (const auto& row : record.norms) {
    if (row.t < t_from) continue;
    if (prev != nullptr && row.l2 > prev->l2 * (1.0 + 1e-12)) return Classification::undecided;
    prev = &row;
  }
  return Classification::global_decay;
}

NormRow norm_row(double t, const PairState& state, const SolverConfig& cfg) {
  const detail::NormProbe probe(state.grid(), cfg.sigma, cfg.hs_order, cfg.weight_alpha);
  return probe.row(t, forward_transform(state.u), forward_transform(state.ut), state.u);
}

std::vector<TimeSample> x_samples(const TrajectoryRecord& record) {
  std::vector<TimeSample> out;
  out.reserve(record.norms.size());
  for (const auto& row : record.norms) out.push_back({row.t, row.l2, row.hs, row.weighted_alpha});
  return out;
}

}  // namespace fdw
