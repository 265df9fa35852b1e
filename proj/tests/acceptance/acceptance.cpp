// Acceptance suite: one pass/fail line per criterion, sub-checks indented
// below it.  `fdw_acceptance --criterion K` runs a single criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fdw/corpus.hpp"
#include "fdw/experiments.hpp"
#include "fdw/funcspace.hpp"
#include "fdw/partition.hpp"
#include "fdw/propagator.hpp"
#include "fdw/solver.hpp"
#include "fdw/spectral.hpp"

using namespace fdw;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Check {
  std::string what;
  double measured;
  std::string bound;
  bool pass;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<void(std::vector<Check>&)> body;
};

void at_most(std::vector<Check>& out, std::string what, double v, double bound) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "<= %.3g", bound);
  out.push_back({std::move(what), v, buf, v <= bound});
}

void within(std::vector<Check>& out, std::string what, double v, double lo, double hi) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "in [%.4g, %.4g]", lo, hi);
  out.push_back({std::move(what), v, buf, v >= lo && v <= hi});
}

void holds(std::vector<Check>& out, std::string what, bool ok) {
  out.push_back({std::move(what), ok ? 1.0 : 0.0, "true", ok});
}

double rel_diff(const RealField& a, const RealField& b) {
  auto d = a;
  d -= b;
  const double scale = lp_norm(b, 2.0);
  return scale > 0.0 ? lp_norm(d, 2.0) / scale : lp_norm(d, 2.0);
}

std::vector<double> log_times(double a, double b, int intervals) {
  std::vector<double> t;
  for (int k = 0; k <= intervals; ++k) t.push_back(a * std::pow(b / a, static_cast<double>(k) / intervals));
  return t;
}

PairState gaussian_pair(const Grid& g, double a0, double a1, double width = 1.0) {
  DataSpec d;
  d.profile.params["width"] = width;
  d.u0_amplitude = a0;
  d.u1_amplitude = a1;
  return d.sample(g);
}

// ---- 1 ----

void spectral_exactness(std::vector<Check>& out) {
  for (const Grid& g : {Grid(1, 1024, 32.0), Grid(2, 128, 16.0)}) {
    const std::string tag = "n=" + std::to_string(g.dim()) + " ";
    double roundtrip = 0.0, parseval = 0.0;
    for (const auto& e : standard_corpus()) {
      const auto f = e.sample(g);
      const auto F = forward_transform(f);
      auto back = inverse_transform(F);
      back -= f;
      roundtrip = std::max(roundtrip, lp_norm(back, kInf) / lp_norm(f, kInf));
      const double l2sq = std::pow(lp_norm(f, 2.0), 2);
      parseval = std::max(parseval, std::abs(spectral_l2_squared(F) - l2sq) / l2sq);
    }
    at_most(out, tag + "roundtrip max relative error over corpus", roundtrip, 1e-10);
    at_most(out, tag + "Parseval max relative defect over corpus", parseval, 1e-10);

    double eigen = 0.0;
    const double step = g.frequency_step();
    for (double s : {0.5, 1.0, 1.5, 2.0}) {
      for (bool hom : {true, false}) {
        const std::array<int, 3> k{7, g.dim() > 1 ? -3 : 0, 0};
        double xi2 = 0.0;
        for (int a = 0; a < g.dim(); ++a) xi2 += std::pow(k[a] * step, 2);
        const auto f = RealField::sample(g, [&](const std::array<double, 3>& x) {
          double phase = 0.0;
          for (int a = 0; a < g.dim(); ++a) phase += k[a] * step * x[a];
          return std::cos(phase);
        });
        const double lambda = hom ? std::pow(xi2, s / 2) : std::pow(1.0 + xi2, s / 2);
        auto d = fractional_derivative(f, s, hom);
        d -= lambda * f;
        eigen = std::max(eigen, lp_norm(d, kInf) / lambda);
      }
    }
    at_most(out, tag + "plane-wave eigenfunction identity, relative", eigen, 1e-10);
  }
}

// ---- 2 ----

void propagator_identities(std::vector<Check>& out) {
  const Grid g(1, 512, 32.0);
  const auto data = gaussian_pair(g, 1.0, 0.7);
  for (double sigma : {1.0, 2.0, 3.0}) {
    const std::string tag = "sigma=" + std::to_string(static_cast<int>(sigma)) + " ";
    bool exact = true;
    for (double xi : g.frequency_magnitudes()) {
      const auto d = damped_symbols(xi, 0.0, sigma);
      exact = exact && d.s == 0.0 && d.s_tilde == 1.0;
    }
    holds(out, tag + "symbols S(0) = 0 and S~(0) = 1 bitwise at every frequency", exact);
    at_most(out, tag + "S(0) g sup", lp_norm(apply_S(0.0, data.ut, sigma), kInf), 0.0);
    at_most(out, tag + "S~(0) f - f relative", rel_diff(apply_S_tilde(0.0, data.u, sigma), data.u), 1e-15);

    double comp = 0.0;
    for (double t : {0.1, 1.0, 10.0}) {
      for (double s : {0.1, 1.0, 10.0}) {
        const auto direct = apply_pair_propagator(t + s, data, sigma);
        const auto composed = apply_pair_propagator(t, apply_pair_propagator(s, data, sigma), sigma);
        comp = std::max({comp, rel_diff(composed.u, direct.u), rel_diff(composed.ut, direct.ut)});
      }
    }
    at_most(out, tag + "E(t+s) = E(t)E(s) max relative error", comp, 1e-9);

    double mode0 = 0.0, mass = 0.0;
    const double m0 = integrate(data.u) + integrate(data.ut);
    for (double t : {0.1, 0.5, 1.0, 3.0, 10.0, 40.0}) {
      const auto d = damped_symbols(0.0, t, sigma);
      mode0 = std::max({mode0, std::abs(d.s - (1.0 - std::exp(-t))), std::abs(d.s_tilde - 1.0)});
      const auto e = apply_pair_propagator(t, data, sigma);
      mass = std::max(mass, std::abs(integrate(e.u) + integrate(e.ut) - m0) / std::abs(m0));
    }
    at_most(out, tag + "zero mode S = 1 - e^{-t}, S~ = 1", mode0, 1e-10);
    at_most(out, tag + "int (u + u_t) conserved, relative", mass, 1e-10);
  }
}

// ---- 3 ----

void residual_and_energy(std::vector<Check>& out) {
  for (int n : {1, 2}) {
    const Grid g = n == 1 ? Grid(1, 512, 32.0) : Grid(2, 128, 16.0);
    const auto data = gaussian_pair(g, 1.0, 0.5);
    for (double sigma : {1.0, 2.0, 3.0}) {
      const std::string tag = "n=" + std::to_string(n) + " sigma=" + std::to_string(static_cast<int>(sigma)) + " ";
      const double delta = 1e-3;
      double residual = 0.0;
      for (double t : {0.5, 1.0, 5.0}) {
        const auto now = apply_pair_propagator(t, data, sigma);
        auto ut_at = [&](double k) { return apply_pair_propagator(t + k * delta, data, sigma).ut; };
        auto r = 8.0 * (ut_at(1) - ut_at(-1));
        r -= ut_at(2) - ut_at(-2);
        r *= 1.0 / (12.0 * delta);
        r += now.ut;
        r += fractional_derivative(now.u, sigma, true);
        residual = std::max(residual, lp_norm(r, 2.0) / lp_norm(now.u, 2.0));
      }
      at_most(out, tag + "residual ||u_tt + u_t + (-Delta)^{sigma/2} u|| / ||u||", residual, 1e-6);

      double worst = -kInf;
      double prev = linear_energy(data, sigma);
      for (int k = 1; k <= 80; ++k) {
        const double e = linear_energy(apply_pair_propagator(0.25 * k, data, sigma), sigma);
        worst = std::max(worst, (e - prev) / prev);
        prev = e;
      }
      at_most(out, tag + "energy max relative increase per 0.25 step", worst, 1e-8);
    }
  }
}

// ---- 4 ----

void linear_decay(std::vector<Check>& out) {
  {
    const Grid g(1, 4096, 400.0);
    SolverConfig c;
    c.dt = 0.25;
    c.t_end = 200.0;
    const auto rec = solve(gaussian_pair(g, 1.0, 1.0), c);
    const auto l2 = fit_decay(rec, DecayNorm::l2, {20, 200}, predicted_lp_rate(1, 2, 2), 0.05);
    const auto li = fit_decay(rec, DecayNorm::linf, {20, 200}, predicted_lp_rate(1, 2, kInf), 0.10);
    within(out, "n=1 L2 slope on [20, 200]", l2.fitted_slope, -0.30, -0.20);
    within(out, "n=1 Linf slope on [20, 200]", li.fitted_slope, -0.60, -0.40);
  }
  {
    const Grid g(2, 512, 200.0);
    SolverConfig c;
    c.dt = 0.5;
    c.t_end = 200.0;
    const auto rec = solve(gaussian_pair(g, 1.0, 1.0, 2.0), c);
    const auto l2 = fit_decay(rec, DecayNorm::l2, {20, 200}, predicted_lp_rate(2, 2, 2), 0.10);
    within(out, "n=2 L2 slope on [20, 200], 512^2 grid", l2.fitted_slope, -0.60, -0.40);
  }
}

// ---- 5 ----

void smoothing(std::vector<Check>& out) {
  const Grid g(1, 4096, 400.0);
  const auto tab = smoothing_estimate_check(2.0, 1.0, 0.0, 1.0, standard_corpus(), g, log_times(1.0, 100.0, 20));
  within(out, "envelope exponent", tab.predicted_rate, -0.75, -0.75);
  for (const auto& row : tab.rows) at_most(out, row.function + " max/min of r(t), t in [1, 100]", row.stability, 8.0);
}

// ---- 6 ----

void diffusion(std::vector<Check>& out) {
  const Grid g(1, 4096, 400.0);
  std::vector<double> times;
  for (int t = 10; t <= 200; t += 10) times.push_back(t);
  const auto rep = diffusion_phenomenon(gaussian_pair(g, 1.0, 1.0), 2.0, 2.0, times);
  double worst = -kInf;
  for (std::size_t i = 1; i < rep.scaled_error.size(); ++i) {
    worst = std::max(worst, rep.scaled_error[i] - rep.scaled_error[i - 1]);
  }
  at_most(out, "max increment of e(t) over t = 10, 20, ..., 200", worst, 0.0);
  at_most(out, "e(200) / e(20)", rep.scaled_error.back() / rep.scaled_error[1], 0.5);
  holds(out, "no wrap-around warning", rep.warnings.empty());
}

// ---- 7 ----

void kernel_bounds(std::vector<Check>& out) {
  const std::vector<double> late{1, 2, 4, 8, 16, 32, 64};
  const std::vector<double> early{0.125, 0.25, 0.5, 1.0};
  struct Case {
    double sigma;
    std::optional<double> j;
    Grid grid;
  };
  for (const auto& c : {Case{1.0, {}, Grid(1, 16384, 4096.0)}, Case{1.5, {}, Grid(1, 16384, 4096.0)},
                        Case{2.0, 6.0, Grid(1, 4096, 1024.0)}}) {
    char tag[64];
    std::snprintf(tag, sizeof tag, "sigma=%g%s ", c.sigma, c.j ? " j=6" : "");
    at_most(out, std::string(tag) + "stability over t in {1/8..1}", kernel_bound_check(c.sigma, early, c.grid, c.j).stability, 4.0);
    at_most(out, std::string(tag) + "stability over t in {1..64}", kernel_bound_check(c.sigma, late, c.grid, c.j).stability, 4.0);
  }
}

// ---- 8 ----

void besov_machinery(std::vector<Check>& out) {
  for (const Grid& g : {Grid(1, 1024, 32.0), Grid(1, 4096, 400.0), Grid(2, 128, 16.0)}) {
    const DyadicPartition P(g);
    const std::string tag = "N=" + std::to_string(g.points_per_axis()) + " n=" + std::to_string(g.dim()) + " ";
    at_most(out, tag + "inhomogeneous partition residual", P.inhomogeneous_residual(), 1e-10);
    at_most(out, tag + "homogeneous partition residual", P.homogeneous_residual(), 1e-10);
  }
  const Grid coarse(1, 1024, 32.0), fine(1, 2048, 32.0);
  double lo = kInf, hi = 0.0, drift = 0.0;
  for (const auto& e : standard_corpus()) {
    auto ratio = [&](const Grid& g) {
      const auto f = e.sample(g);
      return besov_norm_lp(f, 0.5, 2.0, 2.0, true).value / besov_norm_difference(f, 0.5, 2.0, 2.0, 1);
    };
    const double a = ratio(coarse), b = ratio(fine);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
    drift = std::max(drift, std::abs(b / a - 1.0));
  }
  at_most(out, "LP / difference norm spread max/min over corpus, (1/2,2,2)", hi / lo, 32.0);
  at_most(out, "relative change of the ratio under grid doubling", drift, 0.25);
}

// ---- 9 ----

void solver_order(std::vector<Check>& out) {
  const Grid g(1, 512, 32.0);
  {
    SolverConfig c;
    c.t_end = 2.0;
    c.nonlinearity = Nonlinearity(NonlinearityKind::absolute, 3.0);
    const auto data = gaussian_pair(g, 0.5, 0.0);
    auto final_u = [&](double dt) {
      c.dt = dt;
      c.snapshot_stride = static_cast<int>(std::lround(c.t_end / dt));
      return solve(data, c).snapshots.back().state.u;
    };
    const auto ref = final_u(0.1 / 16);
    double prev = 0.0;
    for (double dt : {0.1, 0.05, 0.025}) {
      auto u = final_u(dt);
      u -= ref;
      const double err = lp_norm(u, 2.0);
      if (prev > 0.0) within(out, "self-convergence order at dt = " + std::to_string(dt), std::log2(prev / err), 1.7, 2.3);
      prev = err;
    }
  }
  {
    SolverConfig c;
    c.dt = 0.05;
    c.t_end = 10.0;
    c.snapshot_stride = 20;
    const auto data = gaussian_pair(g, 1.0, 0.5);
    const auto rec = solve(data, c);
    double err = 0.0;
    for (const auto& s : rec.snapshots) {
      const auto exact = apply_pair_propagator(s.t, data, 2.0);
      err = std::max({err, rel_diff(s.state.u, exact.u), rel_diff(s.state.ut, exact.ut)});
    }
    at_most(out, "N = 0 solve against the exact propagator, relative", err, 1e-10);
  }
}

// ---- 10 ----

void picard(std::vector<Check>& out) {
  const Grid g(1, 512, 32.0);
  SolverConfig c;
  c.dt = 0.005;
  c.t_end = 0.5;
  c.snapshot_stride = 2;
  c.nonlinearity = Nonlinearity(NonlinearityKind::absolute, 3.0);
  std::vector<double> first_factor;
  for (double eps : {1e-3, 5e-4}) {
    const auto data = gaussian_pair(g, eps, eps);
    const auto pr = picard_iterate(data, 0.5, c, 6);
    char tag[32];
    std::snprintf(tag, sizeof tag, "eps=%g ", eps);
    double worst = pr.contraction_factors.empty() ? kInf : 0.0;
    for (double f : pr.contraction_factors) worst = std::max(worst, f);
    at_most(out, std::string(tag) + "max contraction factor, all iterations", worst, 0.5);
    holds(out, std::string(tag) + "no non-contraction flag", !pr.non_contraction);
    first_factor.push_back(pr.contraction_factors.empty() ? NAN : pr.contraction_factors.front());

    const auto rec = solve(data, c);
    const auto& last = pr.iterates.back();
    double err = 0.0;
    for (std::size_t i = 0; i < last.snapshots.size() && i < rec.snapshots.size(); ++i) {
      err = std::max(err, rel_diff(last.snapshots[i].state.u, rec.snapshots[i].state.u));
    }
    holds(out, std::string(tag) + "snapshot counts agree", last.snapshots.size() == rec.snapshots.size());
    at_most(out, std::string(tag) + "Picard limit against solve(), relative", err, 1e-6);
  }
  const double predicted = std::pow(0.5, 3.0 - 1.0);
  within(out, "factor ratio / (eps ratio)^{rho-1}", first_factor[1] / first_factor[0] / predicted, 0.7, 1.3);
}

// ---- 11 ----

void global_rates(std::vector<Check>& out) {
  const Grid g(1, 4096, 400.0);
  SolverConfig c;
  c.dt = 0.1;
  c.t_end = 200.0;
  c.weight_alpha = 1.0;
  c.nonlinearity = Nonlinearity(NonlinearityKind::absolute, 4.0);
  const auto rec = solve(gaussian_pair(g, 1e-2, 1e-2), c);
  holds(out, "run completed to t = 200", rec.outcome.kind == Outcome::Kind::completed && rec.outcome.time == 200.0);
  const auto xs = x_samples(rec);
  std::vector<TimeSample> half(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(xs.size() / 2 + 1));
  const double x_all = x_norm_accumulate(xs, 1, 2.0, 1.0, 1.0, 1.0);
  const double x_half = x_norm_accumulate(half, 1, 2.0, 1.0, 1.0, 1.0);
  holds(out, "X-norm finite", std::isfinite(x_all));
  at_most(out, "X(200) / X(100)", x_all / x_half, 1.10);
  const auto l2 = fit_decay(rec, DecayNorm::l2, {20, 200}, predicted_global_l2_rate(1, 2, 1), 0.07);
  const auto w = fit_decay(rec, DecayNorm::weighted, {20, 200}, predicted_global_weighted_rate(1, 2, 1, 1), 0.10);
  within(out, "L2 slope on [20, 200]", l2.fitted_slope, -0.32, -0.18);
  within(out, "|x| u slope on [20, 200]", w.fitted_slope, 0.15, 0.35);
}

// ---- 12 ----

void blowup_side(std::vector<Check>& out) {
  {
    const Grid g(1, 1024, 64.0);
    SolverConfig c;
    c.dt = 0.01;
    c.t_end = 50.0;
    c.nonlinearity = Nonlinearity(NonlinearityKind::absolute, 2.0);
    const auto rec = solve(gaussian_pair(g, 1.0, 0.0), c);
    holds(out, "amplitude-1 run classified blowup", detect_blowup(rec) == Classification::blowup);
    at_most(out, "blow-up time", rec.outcome.time, 50.0);
  }
  {
    const Grid g(1, 2048, 256.0);
    DataSpec d;
    d.profile.params["width"] = 3.0;
    d.u0_amplitude = 0.1;
    d.u1_amplitude = 0.1;
    SolverConfig c;
    c.dt = 0.05;
    c.t_end = 200.0;
    const auto r = critical_exponent_scan(g, 2.0, {2.0, 2.5, 3.0, 3.5, 4.0, 5.0}, d, c);
    holds(out, "scan monotone", r.monotone);
    holds(out, "scan bracket found", r.estimated_threshold.has_value());
    if (r.estimated_threshold) {
      within(out, "bracket lower end", r.estimated_threshold->first, 2.5, 4.0);
      within(out, "bracket upper end", r.estimated_threshold->second, 2.5, 4.0);
    }
  }
}

// ---- 13 ----

void gagliardo_nirenberg(std::vector<Check>& out) {
  const Grid g(1, 16384, 512.0);
  const std::vector<GnTuple> tuples = {
      {{0.25, 2, 2}, {1, 2, 2}, {0, 2, 2}, 0.25},
      {{0.5, 2, 2}, {1, 2, 2}, {0, 2, 2}, 0.5},
      {{0, 4, 2}, {0.5, 2, 2}, {0, 2, 2}, 0.5},
      {{0.25, 4, 2}, {1, 2, 2}, {0, 2, 2}, 0.5},
      {{0, kInf, 2}, {1, 2, 2}, {0, 2, 2}, 0.5},
  };
  for (const auto& t : tuples) holds(out, "tuple admissible", t.admissible(1));
  const auto rows = gn_inequality_sample(standard_corpus(), g, tuples, 7);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    char tag[96];
    std::snprintf(tag, sizeof tag, "tuple %zu (C = %.4g, %zu samples) violations", i + 1, rows[i].empirical_c,
                  rows[i].samples);
    at_most(out, tag, static_cast<double>(rows[i].violations), 0.0);
  }
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "spectral exactness", 5, spectral_exactness},
      {2, "propagator identities", 10, propagator_identities},
      {3, "linear residual and energy", 60, residual_and_energy},
      {4, "linear decay rates", 180, linear_decay},
      {5, "smoothing estimate", 60, smoothing},
      {6, "diffusion phenomenon", 60, diffusion},
      {7, "kernel bounds", 120, kernel_bounds},
      {8, "Besov machinery", 120, besov_machinery},
      {9, "solver order", 120, solver_order},
      {10, "Picard contraction", 120, picard},
      {11, "global existence and rates", 180, global_rates},
      {12, "blow-up side", 300, blowup_side},
      {13, "Gagliardo-Nirenberg sampling", 30, gagliardo_nirenberg},
  };
  return all;
}

bool run(const Criterion& c) {
  std::vector<Check> checks;
  const auto t0 = std::chrono::steady_clock::now();
  std::string error;
  try {
    c.body(checks);
  } catch (const std::exception& e) {
    error = e.what();
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool pass = error.empty() && elapsed <= c.budget_seconds;
  for (const auto& k : checks) pass = pass && k.pass;
  std::printf("criterion %2d %s  %s  (%.1f s of %.0f s)\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(), elapsed,
              c.budget_seconds);
  for (const auto& k : checks) {
    std::printf("    %s %s: %.6g %s\n", k.pass ? "ok  " : "FAIL", k.what.c_str(), k.measured, k.bound.c_str());
  }
  if (!error.empty()) std::printf("    FAIL exception: %s\n", error.c_str());
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: fdw_acceptance [--criterion K]...\n");
      return 2;
    }
  }
  bool all_pass = true;
  int ran = 0;
  for (const auto& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    all_pass = run(c) && all_pass;
    ++ran;
  }
  if (ran == 0) {
    std::fprintf(stderr, "no such criterion\n");
    return 2;
  }
  return all_pass ? 0 : 1;
}
