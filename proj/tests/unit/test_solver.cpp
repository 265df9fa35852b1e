#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "fdw/errors.hpp"
#include "fdw/propagator.hpp"
#include "fdw/solver.hpp"
#include "fdw/spectral.hpp"
#include "fdw/trajectory_io.hpp"

using namespace fdw;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RealField gaussian(const Grid& g, double amp = 1.0, double width = 1.0) {
  return RealField::sample(g, [&](const std::array<double, 3>& x) {
    return amp * std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / (width * width));
  });
}

double rel_l2(const RealField& a, const RealField& b) {
  auto d = a;
  d -= b;
  return lp_norm(d, 2.0) / lp_norm(b, 2.0);
}

SolverConfig config(double rho, NonlinearityKind kind = NonlinearityKind::absolute) {
  SolverConfig c;
  c.nonlinearity = Nonlinearity(kind, rho);
  return c;
}

}  // namespace

TEST_CASE("nonlinearity values, N(0) = 0 and the local Lipschitz bound") {
  const Nonlinearity a(NonlinearityKind::absolute, 2.5);
  const Nonlinearity s(NonlinearityKind::signed_power, 3.0, -1);
  CHECK(a(0.0) == 0.0);
  CHECK(s(0.0) == 0.0);
  CHECK(a(-2.0) == doctest::Approx(std::pow(2.0, 2.5)));
  CHECK(s(-2.0) == doctest::Approx(8.0));
  CHECK(s(2.0) == doctest::Approx(-8.0));
  CHECK(Nonlinearity::zero().is_zero());
  CHECK_THROWS_AS(Nonlinearity(NonlinearityKind::absolute, 1.0), DomainError);
  CHECK_THROWS_AS(Nonlinearity(NonlinearityKind::absolute, 2.0, 0), DomainError);

  std::mt19937 rng(4);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (const auto& N : {a, s, Nonlinearity(NonlinearityKind::absolute, 1.3)}) {
    const double rho = N.rho();
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const double x = d(rng), y = d(rng);
      if (x == y) continue;
      worst = std::max(worst, std::abs(N(x) - N(y)) / (std::pow(std::abs(x) + std::abs(y), rho - 1.0) * std::abs(x - y)));
    }
    CHECK(worst <= rho);
  }
  const std::vector<double> in{-1.0, 0.0, 2.0};
  std::vector<double> out(3);
  a.apply(in, out);
  CHECK(out[2] == doctest::Approx(std::pow(2.0, 2.5)));
}

TEST_CASE("config validation") {
  SolverConfig c;
  CHECK_NOTHROW(c.validate());
  c.dt = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.dt = 0.03;
  c.t_end = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SolverConfig{};
  c.sigma = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = SolverConfig{};
  c.dealias = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("bandwidth check rejects rough data") {
  const Grid g(1, 256, 8.0);
  const PairState smooth(gaussian(g), RealField(g));
  CHECK_NOTHROW(check_bandwidth(smooth, SolverConfig{}));
  std::mt19937 rng(1);
  std::normal_distribution<double> d;
  RealField rough(g);
  for (auto& v : rough.values()) v = d(rng);
  CHECK_THROWS_AS(check_bandwidth(PairState(rough, RealField(g)), SolverConfig{}), ConfigError);
}

TEST_CASE("N = 0: one step and a full run equal the exact propagator") {
  const Grid g(1, 256, 16.0);
  const PairState data(gaussian(g), gaussian(g, 0.5, 2.0));
  SolverConfig c;
  c.dt = 0.1;
  c.t_end = 5.0;
  c.snapshot_stride = 10;
  const auto one = step(data, c);
  const auto exact = apply_pair_propagator(0.1, data, 2.0);
  CHECK(rel_l2(one.u, exact.u) < 1e-13);
  CHECK(rel_l2(one.ut, exact.ut) < 1e-13);
  const auto rec = solve(data, c);
  REQUIRE(rec.snapshots.size() == 6);
  for (const auto& s : rec.snapshots) CHECK(rel_l2(s.state.u, apply_pair_propagator(s.t, data, 2.0).u) < 1e-10);
  CHECK(rec.outcome.kind == Outcome::Kind::completed);
  CHECK(rec.outcome.time == doctest::Approx(5.0));
  for (std::size_t i = 1; i < rec.times.size(); ++i) CHECK(rec.times[i] > rec.times[i - 1]);
}

TEST_CASE("linear runs classify as global decay") {
  const Grid g(1, 512, 32.0);
  SolverConfig c;
  c.t_end = 60.0;
  CHECK(detect_blowup(solve(PairState(gaussian(g), gaussian(g, 0.5, 2.0)), c)) == Classification::global_decay);
}

TEST_CASE("zero data stay zero") {
  const Grid g(1, 64, 4.0);
  auto c = config(3.0);
  c.t_end = 1.0;
  const auto rec = solve(PairState::zero(g), c);
  CHECK(rec.outcome.kind == Outcome::Kind::completed);
  for (const auto& row : rec.norms) CHECK(row.linf == 0.0);
}

TEST_CASE("second-order self-convergence") {
  const Grid g(1, 256, 16.0);
  auto c = config(3.0);
  c.t_end = 1.0;
  const PairState data(gaussian(g, 0.8), RealField(g));
  auto final_u = [&](double dt) {
    c.dt = dt;
    c.snapshot_stride = static_cast<int>(std::lround(c.t_end / dt));
    return solve(data, c).snapshots.back().state.u;
  };
  const auto ref = final_u(0.1 / 16);
  auto e1 = final_u(0.1), e2 = final_u(0.05);
  e1 -= ref;
  e2 -= ref;
  const double order = std::log2(lp_norm(e1, 2.0) / lp_norm(e2, 2.0));
  CHECK(order >= 1.7);
  CHECK(order <= 2.3);
}

TEST_CASE("grid refinement leaves the L2 history unchanged") {
  auto c = config(3.0, NonlinearityKind::signed_power);
  c.dt = 0.05;
  c.t_end = 2.0;
  auto run = [&](int N) {
    const Grid g(1, N, 16.0);
    return solve(PairState(gaussian(g, 0.7), RealField(g)), c);
  };
  const auto a = run(256), b = run(512);
  REQUIRE(a.norms.size() == b.norms.size());
  for (std::size_t i = 0; i < a.norms.size(); ++i) CHECK(std::abs(a.norms[i].l2 - b.norms[i].l2) < 1e-6 * a.norms[i].l2);
}

TEST_CASE("positive data under N = +|u|^rho stay nonnegative") {
  const Grid g(1, 512, 32.0);
  auto c = config(2.0);
  c.dt = 0.05;
  c.t_end = 3.0;
  c.snapshot_stride = 10;
  const auto rec = solve(PairState(gaussian(g, 0.5), gaussian(g, 0.5)), c);
  for (const auto& s : rec.snapshots) {
    const double peak = lp_norm(s.state.u, kInf);
    for (double v : s.state.u.values()) CHECK(v >= -1e-8 * peak);
  }
}

TEST_CASE("runs are deterministic") {
  const Grid g(1, 256, 16.0);
  auto c = config(2.0);
  c.t_end = 2.0;
  const PairState data(gaussian(g), RealField(g));
  const auto a = solve(data, c), b = solve(data, c);
  CHECK(trajectory_csv(a.norms) == trajectory_csv(b.norms));
}

TEST_CASE("blow-up classification") {
  const Grid g(1, 1024, 64.0);
  auto c = config(2.0);
  c.dt = 0.01;
  c.t_end = 50.0;
  const auto rec = solve(PairState(gaussian(g), RealField(g)), c);
  CHECK(rec.outcome.kind == Outcome::Kind::blowup);
  CHECK(rec.outcome.time < 50.0);
  CHECK(rec.norms.back().linf >= c.blowup_threshold);
  CHECK(detect_blowup(rec) == Classification::blowup);

  c.t_end = 3.0;
  CHECK(detect_blowup(solve(PairState(gaussian(g), RealField(g)), c)) == Classification::undecided);

  c.t_end = 50.0;
  c.blowup_threshold = kInf;
  const auto wild = solve(PairState(gaussian(g), RealField(g)), c);
  CHECK(wild.outcome.kind == Outcome::Kind::diverged_numerically);
}

TEST_CASE("norm rows follow the configured columns") {
  const Grid g(1, 512, 20.0);
  const PairState s(gaussian(g), gaussian(g, 2.0));
  SolverConfig c;
  c.hs_order = 1.0;
  c.weight_alpha = 1.0;
  const auto row = norm_row(1.5, s, c);
  CHECK(row.t == 1.5);
  CHECK(row.l2 == doctest::Approx(lp_norm(s.u, 2.0)));
  CHECK(row.linf == doctest::Approx(1.0));
  CHECK(row.hs == doctest::Approx(sobolev_norm(s.u, 1.0, true)));
  CHECK(row.weighted_alpha == doctest::Approx(weighted_norm(s.u, 1.0, Weight::plain)));
  CHECK(row.energy == doctest::Approx(linear_energy(s, 2.0)));
}

TEST_CASE("Picard iteration") {
  const Grid g(1, 256, 16.0);
  SolverConfig lin;
  lin.dt = 0.01;
  lin.t_end = 0.5;
  lin.snapshot_stride = 5;
  const PairState data(gaussian(g, 1e-3), gaussian(g, 1e-3));
  const auto zero = picard_iterate(data, 0.5, lin, 3);
  for (double d : zero.distances) CHECK(d == 0.0);
  for (double f : zero.contraction_factors) CHECK(f == 0.0);

  auto c = lin;
  c.nonlinearity = Nonlinearity(NonlinearityKind::absolute, 3.0);
  const auto pr = picard_iterate(data, 0.5, c, 5);
  CHECK_FALSE(pr.non_contraction);
  REQUIRE(!pr.contraction_factors.empty());
  for (double f : pr.contraction_factors) CHECK(f < 0.5);
  const auto rec = solve(data, c);
  const auto& last = pr.iterates.back();
  REQUIRE(last.snapshots.size() == rec.snapshots.size());
  for (std::size_t i = 0; i < rec.snapshots.size(); ++i) {
    CHECK(last.snapshots[i].t == doctest::Approx(rec.snapshots[i].t));
    CHECK(rel_l2(last.snapshots[i].state.u, rec.snapshots[i].state.u) < 1e-6);
  }
}

TEST_CASE("trajectory and field CSV roundtrip") {
  const auto dir = std::filesystem::temp_directory_path() / "fdw_solver_csv";
  std::filesystem::create_directories(dir);
  std::vector<NormRow> rows{{0.0, 1.0, 2.0, 3.0, 4.0, 5.0}, {0.1, 0.1 + 0.2, 1e-300, kInf, 7.0, 1.0 / 3.0}};
  write_trajectory_csv(rows, dir / "t.csv");
  const auto back = read_trajectory_csv(dir / "t.csv");
  REQUIRE(back.size() == 2);
  CHECK(back[1].l2 == rows[1].l2);
  CHECK(back[1].linf == rows[1].linf);
  CHECK(back[1].energy == rows[1].energy);
  CHECK(trajectory_csv(rows).rfind(std::string(kTrajectoryHeader) + "\n", 0) == 0);

  for (const Grid& g : {Grid(1, 32, 2.0), Grid(2, 16, 3.0)}) {
    const auto f = gaussian(g);
    write_field_csv(f, dir / "f.csv");
    const auto h = read_field_csv(dir / "f.csv");
    CHECK(h.grid() == g);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(h[i] == f[i]);
  }
  std::filesystem::remove_all(dir);
}
