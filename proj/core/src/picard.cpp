#include <cmath>
#include <limits>

#include "fdw/errors.hpp"
#include "fdw/solver.hpp"
#include "fdw/spectral.hpp"
#include "solver_detail.hpp"

namespace fdw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Iterate {
  std::vector<SpectralField> w_hat;  // Duhamel part at every half-grid point
  std::vector<SpectralField> wt_hat;  // its time derivative, nodes only
};

}  // namespace

PicardResult picard_iterate(const PairState& data, double T, const SolverConfig& cfg, int max_iter) {
  cfg.validate();
  if (!(T > 0.0)) throw ConfigError("Picard horizon T must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
  const Grid& grid = data.grid();
  const double node_step = cfg.dt * std::max(1, cfg.snapshot_stride);
  const long M = std::lround(T / node_step);
  if (M < 1 || std::abs(M * node_step - T) > 1e-9 * T) {
    throw ConfigError("Picard horizon must be a positive multiple of the node spacing");
  }
  const double half = 0.5 * node_step;
  const std::size_t points = static_cast<std::size_t>(2 * M + 1);

  // Lag ell * half uses the propagator at that time, which also gives the linear part.
  std::vector<PairPropagator> lag;
  lag.reserve(points);
  for (std::size_t l = 0; l < points; ++l) lag.emplace_back(grid, cfg.sigma, static_cast<double>(l) * half);

  const auto u0_hat = forward_transform(data.u);
  const auto u1_hat = forward_transform(data.ut);
  std::vector<SpectralField> lin_hat, lint_hat;
  std::vector<RealField> lin;
  for (std::size_t i = 0; i < points; ++i) {
    auto a = u0_hat;
    auto b = u1_hat;
    lag[i].apply(a, b);
    lin.push_back(inverse_transform(a, kInf));
    lin_hat.push_back(std::move(a));
    lint_hat.push_back(std::move(b));
  }

  const detail::NormProbe probe(grid, cfg.sigma, cfg.hs_order, cfg.weight_alpha);
  auto record_of = [&](const Iterate& it, bool keep_snapshots) {
    TrajectoryRecord rec;
    rec.config = cfg;
    rec.config.t_end = T;
    for (std::size_t i = 0; i < points; i += 2) {
      const double t = static_cast<double>(i) * half;
      auto uh = lin_hat[i];
      uh += it.w_hat[i];
      auto uth = lint_hat[i];
      uth += it.wt_hat[i];
      const auto u = inverse_transform(uh, kInf);
      rec.times.push_back(t);
      rec.norms.push_back(probe.row(t, uh, uth, u));
      if (keep_snapshots) rec.snapshots.push_back({t, PairState(u, inverse_transform(uth, kInf))});
      if (!u.is_finite()) {
        rec.outcome = {Outcome::Kind::diverged_numerically, t};
        return rec;
      }
    }
    rec.outcome = {Outcome::Kind::completed, T};
    return rec;
  };

  Iterate current{std::vector<SpectralField>(points, SpectralField(grid)),
                  std::vector<SpectralField>(points, SpectralField(grid))};
  PicardResult result;
  const int n = grid.dim();
  int streak = 0;
  for (int k = 0; k < max_iter; ++k) {
    std::vector<SpectralField> source;
    source.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
      auto uh = lin_hat[i];
      uh += current.w_hat[i];
      RealField u = inverse_transform(uh, kInf);
      RealField nu(grid);
      cfg.nonlinearity.apply(u.values(), nu.values());
      auto c = forward_transform(nu);
      truncate_spectrum(c, cfg.dealias);
      source.push_back(std::move(c));
    }

    Iterate next{std::vector<SpectralField>(points, SpectralField(grid)),
                 std::vector<SpectralField>(points, SpectralField(grid))};
    auto accumulate = [&](SpectralField& out, const std::vector<double>& table, double weight, const SpectralField& src) {
      for (std::size_t q = 0; q < out.size(); ++q) out[q] += weight * table[q] * src[q];
    };
    for (std::size_t i = 1; i < points; ++i) {
      const std::size_t m = i / 2;
      if (i % 2 == 0) {
        // Node: composite midpoint rule on [0, t_m] with sources at the midpoints.
        for (std::size_t j = 0; j < m; ++j) {
          const std::size_t src = 2 * j + 1;
          accumulate(next.w_hat[i], lag[i - src].s(), node_step, source[src]);
          accumulate(next.wt_hat[i], lag[i - src].dt_s(), node_step, source[src]);
        }
      } else {
        // Midpoint: trapezoid on [0, half], then midpoint cells centred on the nodes.
        accumulate(next.w_hat[i], lag[i].s(), 0.5 * half, source[0]);
        accumulate(next.w_hat[i], lag[i - 1].s(), 0.5 * half, source[1]);
        for (std::size_t j = 1; j <= m; ++j) accumulate(next.w_hat[i], lag[i - 2 * j].s(), node_step, source[2 * j]);
      }
    }

    std::vector<TimeSample> diff;
    diff.reserve(points);
    for (std::size_t i = 0; i < points; ++i) {
      auto d = next.w_hat[i];
      auto minus = current.w_hat[i];
      minus *= -1.0;
      d += minus;
      diff.push_back(probe.sample(static_cast<double>(i) * half, d, inverse_transform(d, kInf)));
    }
    const double dist = x_norm_accumulate(diff, n, cfg.sigma, cfg.hs_order, cfg.weight_alpha, cfg.x_norm_r);
    result.iterates.push_back(record_of(current, false));
    result.distances.push_back(dist);
    if (k > 0) {
      const double prev = result.distances[k - 1];
      const double factor = prev == 0.0 ? 0.0 : dist / prev;
      result.contraction_factors.push_back(factor);
      streak = factor >= 1.0 ? streak + 1 : 0;
      if (streak >= 3) result.non_contraction = true;
    }
    current = std::move(next);
    if (!std::isfinite(dist)) {
      result.non_contraction = true;
      break;
    }
  }
  result.iterates.push_back(record_of(current, true));
  return result;
}

}  // namespace fdw
