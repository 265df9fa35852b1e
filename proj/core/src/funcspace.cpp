#include "fdw/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fdw/errors.hpp"
#include "fdw/spectral.hpp"

namespace fdw {

namespace {

void require_exponent(double p, const char* name) {
  if (!(p >= 1.0)) throw DomainError(std::string(name) + " must lie in [1, inf]");
}

}  // namespace

double sobolev_norm(const RealField& f, double s, bool homogeneous, double p) {
  if (!(s >= 0.0)) throw DomainError("Sobolev order must be nonnegative");
  require_exponent(p, "p");
  if (s == 0.0) return lp_norm(f, p);
  if (p == 2.0) {
    // Parseval avoids the inverse transform.
    const Grid& grid = f.grid();
    const auto c = forward_transform(f);
    const auto radius = grid.frequency_magnitudes();
    double sum = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      const double w = homogeneous ? std::pow(radius[i], 2.0 * s) : std::pow(1.0 + radius[i] * radius[i], s);
      sum += w * std::norm(c[i]);
    }
    return std::sqrt(sum / std::pow(2.0 * grid.half_width(), grid.dim()));
  }
  return lp_norm(fractional_derivative(f, s, homogeneous), p);
}

double weighted_norm(const RealField& f, double alpha, Weight weight, double p) {
  if (!(alpha >= 0.0)) throw DomainError("weight exponent must be nonnegative");
  require_exponent(p, "p");
  if (alpha == 0.0) return lp_norm(f, p);
  const auto radius = f.grid().position_magnitudes();
  std::vector<double> w(f.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double base = weight == Weight::plain ? radius[i] : japanese(radius[i]);
    w[i] = std::pow(base, alpha) * f[i];
  }
  return lp_norm(w, f.grid().cell_volume(), p);
}

double q_sigma(int n, double sigma) {
  if (n < 1) throw DomainError("dimension must be positive");
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  return std::max(1.0, 2.0 * n / (n + sigma));
}

double x0_norm(const RealField& f, double s, double alpha) {
  if (!(s >= 0.0) || !(alpha >= 0.0)) throw DomainError("X0 norm requires s >= 0 and alpha >= 0");
  return lp_norm(f, 2.0) + sobolev_norm(f, s, true) + weighted_norm(f, alpha, Weight::plain);
}

double y0_norm(const RealField& f, double s, double alpha, double gamma, double sigma) {
  if (!(s >= 0.0) || !(alpha >= 0.0)) throw DomainError("Y0 norm requires s >= 0 and alpha >= 0");
  if (!(gamma >= 1.0 && gamma <= 2.0)) throw DomainError("Y0 norm requires gamma in [1, 2]");
  const double q = q_sigma(f.grid().dim(), sigma);
  const double third = s > 0.0 ? besov_norm_lp(f, s, q, 2.0, true).value : lp_norm(f, q);
  return weighted_norm(f, alpha, Weight::plain, q) + lp_norm(f, gamma) + third;
}

NormSpec::NormSpec(NormKind kind, Params params) : kind_(kind), params_(params) {
  const auto& P = params_;
  auto in_range = [](double v) { return v >= 1.0; };
  switch (kind) {
    case NormKind::lp:
      if (!in_range(P.p)) throw DomainError("L^p norm requires p in [1, inf]");
      break;
    case NormKind::sobolev_hom:
    case NormKind::sobolev_inhom:
      if (!in_range(P.p) || !(P.s >= 0.0)) throw DomainError("Sobolev norm requires p in [1, inf] and s >= 0");
      break;
    case NormKind::weighted_l2:
      if (!(P.alpha >= 0.0)) throw DomainError("weighted norm requires alpha >= 0");
      break;
    case NormKind::besov_hom:
    case NormKind::besov_inhom:
      if (!in_range(P.p) || !in_range(P.q) || !(P.s >= 0.0)) {
        throw DomainError("Besov norm requires p, q in [1, inf] and s >= 0");
      }
      break;
    case NormKind::x0:
      if (!(P.s >= 0.0) || !(P.alpha >= 0.0)) throw DomainError("X0 norm requires s >= 0 and alpha >= 0");
      break;
    case NormKind::y0:
      if (!(P.s >= 0.0) || !(P.alpha >= 0.0)) throw DomainError("Y0 norm requires s >= 0 and alpha >= 0");
      if (!(P.gamma >= 1.0 && P.gamma <= 2.0)) throw DomainError("Y0 norm requires gamma in [1, 2]");
      if (!(P.sigma > 0.0)) throw DomainError("Y0 norm requires sigma > 0");
      break;
  }
}

double NormSpec::evaluate(const RealField& f) const {
  const auto& P = params_;
  switch (kind_) {
    case NormKind::lp: return lp_norm(f, P.p);
    case NormKind::sobolev_hom: return sobolev_norm(f, P.s, true, P.p);
    case NormKind::sobolev_inhom: return sobolev_norm(f, P.s, false, P.p);
    case NormKind::weighted_l2: return weighted_norm(f, P.alpha, Weight::japanese);
    case NormKind::besov_hom: return besov_norm_lp(f, P.s, P.p, P.q, true).value;
    case NormKind::besov_inhom: return besov_norm_lp(f, P.s, P.p, P.q, false).value;
    case NormKind::x0: return x0_norm(f, P.s, P.alpha);
    case NormKind::y0: return y0_norm(f, P.s, P.alpha, P.gamma, P.sigma);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

RealField dilate(const RealField& u, double t, double sigma, double r) {
  if (!(sigma > 0.0) || !(r > 0.0)) throw DomainError("dilation requires sigma > 0 and r > 0");
  const Grid& grid = u.grid();
  const int n = grid.dim();
  const double bracket = japanese(t);
  const double scale = std::pow(bracket, 1.0 / sigma);
  const double amplitude = std::pow(bracket, n / (r * sigma));
  if (scale == 1.0) return amplitude * u;

  const int N = grid.points_per_axis();
  const double L = grid.half_width();
  // e^{i xi_k y_j} for y_j = scale * x_j; identical on every axis.
  std::vector<Complex> basis(static_cast<std::size_t>(N) * N);
  std::vector<char> inside(N);
  for (int j = 0; j < N; ++j) {
    const double y = scale * grid.coordinate(j);
    inside[j] = (y >= -L && y < L) ? 1 : 0;
    for (int k = 0; k < N; ++k) {
      const double xi = grid.frequency_step() * grid.wavenumber(k);
      basis[static_cast<std::size_t>(j) * N + k] = std::polar(1.0, xi * y);
    }
  }

  auto work = forward_transform(u);
  std::vector<Complex> data(work.coefficients().begin(), work.coefficients().end());
  std::vector<Complex> line(N);
  std::size_t stride = 1;
  for (int a = n - 1; a >= 0; --a) {
    const std::size_t block = stride * N;
    for (std::size_t base = 0; base < data.size(); base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (int j = 0; j < N; ++j) {
          Complex acc{0.0, 0.0};
          const Complex* row = &basis[static_cast<std::size_t>(j) * N];
          for (int k = 0; k < N; ++k) acc += row[k] * data[base + off + k * stride];
          line[j] = acc;
        }
        for (int j = 0; j < N; ++j) data[base + off + j * stride] = line[j];
      }
    }
    stride *= N;
  }

  RealField out(grid);
  const double norm = amplitude / std::pow(2.0 * L, n);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto idx = grid.unravel(i);
    bool keep = true;
    for (int a = 0; a < n; ++a) keep = keep && inside[idx[a]];
    out[i] = keep ? norm * data[i].real() : 0.0;
  }
  return out;
}

double x_weighted_norm(const TimeSample& sample, int n, double sigma, double s, double alpha, double r) {
  const double bracket = japanese(sample.t);
  const double mu = (n / sigma) * (1.0 / r - 0.5);
  return std::pow(bracket, mu) * (sample.l2 + std::pow(bracket, s / sigma) * sample.hs +
                                  std::pow(bracket, -alpha / sigma) * sample.weighted);
}

double x_norm_accumulate(std::span<const TimeSample> trajectory, int n, double sigma, double s, double alpha,
                         double r) {
  if (trajectory.empty()) throw DomainError("X-norm of an empty trajectory");
  double sup = 0.0;
  for (const auto& sample : trajectory) sup = std::max(sup, x_weighted_norm(sample, n, sigma, s, alpha, r));
  return sup;
}

double x_norm_accumulate(std::span<const Snapshot> trajectory, double sigma, double s, double alpha, double r) {
  if (trajectory.empty()) throw DomainError("X-norm of an empty trajectory");
  std::vector<TimeSample> samples;
  samples.reserve(trajectory.size());
  for (const auto& snap : trajectory) {
    samples.push_back({snap.t, lp_norm(snap.u, 2.0), sobolev_norm(snap.u, s, true),
                       weighted_norm(snap.u, alpha, Weight::plain)});
  }
  return x_norm_accumulate(samples, trajectory.front().u.grid().dim(), sigma, s, alpha, r);
}

}  // namespace fdw
