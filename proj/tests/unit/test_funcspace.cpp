#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "fdw/corpus.hpp"
#include "fdw/errors.hpp"
#include "fdw/funcspace.hpp"
#include "fdw/partition.hpp"
#include "fdw/spectral.hpp"

using namespace fdw;
using std::numbers::pi;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RealField gaussian(const Grid& g, double width = 1.0) {
  return RealField::sample(g, [&](const std::array<double, 3>& x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) / (width * width));
  });
}

RealField cosine(const Grid& g, double xi) {
  return RealField::sample(g, [&](const std::array<double, 3>& x) { return std::cos(xi * x[0]); });
}

}  // namespace

TEST_CASE("partition profiles: values and supports") {
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5));
  CHECK(psi_hat(0.0) == 1.0);
  CHECK(psi_hat(0.5) == 1.0);
  for (double xi : {1.0, 1.3, 7.0}) CHECK(psi_hat(xi) == 0.0);
  for (double xi = 0.0; xi < 5.0; xi += 0.01) {
    if (xi < 0.5 || xi > 2.0) CHECK(phi_hat(xi) == 0.0);
    CHECK(phi_hat(xi) >= 0.0);
    CHECK(phi_hat(xi) <= 1.0);
  }
}

TEST_CASE("telescoping sums of shells") {
  for (int J : {2, 5, 9}) {
    for (double xi : {1e-3, 0.07, 0.5, 1.0, 3.3, 40.0}) {
      double sum = 0.0;
      for (int j = -J; j <= J; ++j) sum += phi_hat(std::ldexp(xi, -j));
      CHECK(sum == doctest::Approx(psi_hat(std::ldexp(xi, -J - 1)) - psi_hat(std::ldexp(xi, J))).epsilon(1e-12));
    }
  }
}

TEST_CASE("partition of unity on the lattice") {
  for (const Grid& g : {Grid(1, 64, 2.0), Grid(1, 2048, 300.0), Grid(2, 64, 8.0), Grid(3, 16, 3.0)}) {
    const DyadicPartition P(g);
    CHECK(P.j_min() <= 0);
    CHECK(P.j_max() >= 0);
    CHECK(P.inhomogeneous_residual() <= 1e-10);
    CHECK(P.homogeneous_residual() <= 1e-10);
  }
}

TEST_CASE("single-shell functions") {
  const Grid g(1, 1024, 32.0 * pi);
  const int j0 = 3;
  const auto f = cosine(g, std::ldexp(1.0, j0));
  for (double s : {0.0, 0.5, 1.5}) {
    for (double p : {1.0, 2.0, kInf}) {
      const double v = besov_norm_lp(f, s, p, 2.0, true).value;
      const double ref = std::pow(2.0, s * j0) * lp_norm(f, p);
      CHECK(v <= 3.0 * ref);
      CHECK(v >= ref / 3.0);
    }
  }
  // a frequency where phi_j = 1 reproduces the L^2 norm
  CHECK(besov_norm_lp(f, 0.0, 2.0, 2.0, true).value == doctest::Approx(lp_norm(f, 2.0)).epsilon(0.05));
}

TEST_CASE("block almost-orthogonality: half to full L2 mass") {
  const Grid g(1, 1024, 40.0);
  const DyadicPartition P(g);
  for (const auto& e : standard_corpus()) {
    auto F = forward_transform(e.sample(g));
    F[0] = Complex(0.0, 0.0);
    const double total = spectral_l2_squared(F);
    double blocks = 0.0;
    for (int j = P.j_min(); j <= P.j_max(); ++j) blocks += spectral_l2_squared(apply_symbol_table(F, P.shell_symbol(j)));
    CHECK(blocks <= total * (1.0 + 1e-12));
    CHECK(blocks >= 0.5 * total * (1.0 - 1e-12));
  }
}

TEST_CASE("inhomogeneous norm against L^p plus the homogeneous part") {
  const Grid g(1, 2048, 64.0);
  for (const auto& e : standard_corpus()) {
    const auto f = e.sample(g);
    for (double s : {0.5, 1.0}) {
      const double inhom = besov_norm_lp(f, s, 2.0, 2.0, false).value;
      const double split = lp_norm(f, 2.0) + besov_norm_lp(f, s, 2.0, 2.0, true).value;
      CHECK(inhom / split >= 1.0 / 8.0);
      CHECK(inhom / split <= 8.0);
    }
  }
}

TEST_CASE("LP norm is nondecreasing in s for spectra above |xi| = 1") {
  const Grid g(1, 512, 16.0 * pi);
  auto f = cosine(g, 3.0);
  f += cosine(g, 10.0);
  double prev = 0.0;
  for (double s = 0.0; s <= 2.0; s += 0.25) {
    const double v = besov_norm_lp(f, s, 2.0, 2.0, true).value;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("LP norm domain checks and truncation metadata") {
  const Grid g(1, 256, 8.0);
  const auto f = gaussian(g);
  CHECK_THROWS_AS(besov_norm_lp(f, -0.1, 2, 2, true), DomainError);
  CHECK_THROWS_AS(besov_norm_lp(f, 0.5, 0.5, 2, true), DomainError);
  CHECK_THROWS_AS(besov_norm_lp(f, 0.5, 2, 2, true, DyadicPartition(Grid(1, 128, 8.0))), InvalidInput);
  const auto r = besov_norm_lp(f, 0.5, 2, 2, true);
  CHECK(r.j_lo < 0);
  CHECK(r.j_hi > 0);
  CHECK(r.top_shell_fraction < 1e-6);
}

TEST_CASE("difference norm: constants, domain and dilation scaling") {
  const Grid g(1, 1024, 32.0);
  RealField c(g, std::vector<double>(g.size(), 4.0));
  CHECK(besov_norm_difference(c, 0.5, 2, 2, 1) == 0.0);
  CHECK_THROWS_AS(besov_norm_difference(c, 1.0, 2, 2, 1), DomainError);
  CHECK_THROWS_AS(besov_norm_difference(c, 0.5, 2, 2, 3), DomainError);

  const Grid fine(1, 4096, 64.0);
  for (double p : {1.0, 2.0}) {
    for (int m : {1, 2}) {
      const double s = 0.5;
      const double wide = besov_norm_difference(gaussian(fine, 2.0), s, p, 2, m);
      const double narrow = besov_norm_difference(gaussian(fine, 1.0), s, p, 2, m);
      CHECK(narrow / wide == doctest::Approx(std::pow(2.0, s - 1.0 / p)).epsilon(0.10));
    }
  }
}

TEST_CASE("difference and LP norms are equivalent with grid-stable constants") {
  const Grid coarse(1, 1024, 32.0), fine(1, 2048, 32.0);
  double lo = kInf, hi = 0.0;
  for (const auto& e : standard_corpus()) {
    const double a = besov_norm_lp(e.sample(coarse), 0.5, 2, 2, true).value / besov_norm_difference(e.sample(coarse), 0.5, 2, 2, 1);
    const double b = besov_norm_lp(e.sample(fine), 0.5, 2, 2, true).value / besov_norm_difference(e.sample(fine), 0.5, 2, 2, 1);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
    CHECK(std::abs(b / a - 1.0) < 0.25);
  }
  CHECK(hi / lo <= 32.0);
}

TEST_CASE("Sobolev and weighted norms") {
  const Grid g(1, 1024, 20.0);
  const auto f = gaussian(g);
  CHECK(sobolev_norm(f, 0.0, true) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-14));
  // int |f'|^2 = int 4x^2 exp(-2x^2) dx = sqrt(pi/2)
  CHECK(std::pow(sobolev_norm(f, 1.0, true), 2) == doctest::Approx(std::sqrt(pi / 2.0)).epsilon(1e-10));
  // ||(1 - Delta)^{1/2} f||^2 = ||f||^2 + ||f'||^2
  CHECK(std::pow(sobolev_norm(f, 1.0, false), 2) == doctest::Approx(std::sqrt(pi / 2.0) + std::sqrt(pi / 2.0)).epsilon(1e-10));
  CHECK(weighted_norm(f, 0.0, Weight::japanese) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-14));
  CHECK(weighted_norm(f, 0.0, Weight::plain) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-14));
  // int x^2 exp(-2x^2) dx = sqrt(pi) / (2 * 2^{3/2})
  CHECK(std::pow(weighted_norm(f, 1.0, Weight::plain), 2) == doctest::Approx(std::sqrt(pi) / (4.0 * std::sqrt(2.0))).epsilon(1e-10));
  CHECK(std::pow(weighted_norm(f, 1.0, Weight::japanese), 2) ==
        doctest::Approx(std::sqrt(pi / 2.0) + std::sqrt(pi) / (4.0 * std::sqrt(2.0))).epsilon(1e-10));
  CHECK_THROWS_AS(sobolev_norm(f, -1.0, true), DomainError);
  CHECK_THROWS_AS(weighted_norm(f, -1.0, Weight::plain), DomainError);
}

TEST_CASE("X0 and Y0 norms") {
  CHECK(q_sigma(3, 2.0) == doctest::Approx(1.2));
  CHECK(q_sigma(1, 2.0) == 1.0);
  CHECK(q_sigma(2, 1.0) == doctest::Approx(4.0 / 3.0));
  const Grid g(1, 512, 16.0);
  const auto f = gaussian(g);
  CHECK(x0_norm(f, 0.0, 0.0) == doctest::Approx(3.0 * lp_norm(f, 2.0)));
  CHECK(y0_norm(f, 0.0, 0.0, 1.0, 2.0) == doctest::Approx(3.0 * lp_norm(f, 1.0)));
  const double x = x0_norm(f, 1.0, 1.0);
  CHECK(x >= lp_norm(f, 2.0));
  CHECK(x >= sobolev_norm(f, 1.0, true));
  CHECK(x >= weighted_norm(f, 1.0, Weight::plain));
  CHECK(x0_norm(-2.5 * f, 1.0, 1.0) == doctest::Approx(2.5 * x));
  CHECK(y0_norm(f, 0.5, 1.0, 1.5, 2.0) > 0.0);
  CHECK_THROWS_AS(y0_norm(f, 0.5, 1.0, 2.5, 2.0), DomainError);
  CHECK_THROWS_AS(NormSpec(NormKind::y0, {.gamma = 0.5}), DomainError);
  CHECK_THROWS_AS(NormSpec(NormKind::lp, {.p = 0.5}), DomainError);
  CHECK(NormSpec(NormKind::x0, {.s = 1.0, .alpha = 1.0}).evaluate(f) == doctest::Approx(x));
}

TEST_CASE("dilation and the X-norm weights") {
  const Grid g(1, 256, 16.0);
  const auto f = gaussian(g);
  const auto same = dilate(f, 0.0, 2.0, 1.0);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(same[i] == doctest::Approx(f[i]));
  const double t = 3.0, b = std::sqrt(1.0 + t * t);
  const auto d = dilate(f, t, 2.0, 1.0);
  const auto expect = RealField::sample(g, [&](const std::array<double, 3>& x) {
    const double y = std::sqrt(b) * x[0];
    return std::pow(b, 0.5) * std::exp(-y * y);
  });
  auto diff = d;
  diff -= expect;
  CHECK(lp_norm(diff, kInf) < 1e-10);

  CHECK(x_weighted_norm({0.0, 1.0, 2.0, 3.0}, 1, 2.0, 1.0, 1.0, 1.0) == doctest::Approx(6.0));
  // an hs-only sample grows like <T>^{mu + s/sigma}
  const double s = 1.0, sigma = 2.0, r = 1.0, mu = (1.0 / sigma) * (1.0 / r - 0.5);
  const double a = x_weighted_norm({1e6, 0.0, 1.0, 0.0}, 1, sigma, s, 1.0, r);
  const double c = x_weighted_norm({1e7, 0.0, 1.0, 0.0}, 1, sigma, s, 1.0, r);
  CHECK(std::log10(c / a) == doctest::Approx(mu + s / sigma).epsilon(1e-4));
  std::vector<TimeSample> none;
  CHECK_THROWS_AS(x_norm_accumulate(none, 1, 2.0, 1.0, 1.0, 1.0), DomainError);
  std::vector<Snapshot> snaps{{0.0, f}, {1.0, 0.5 * f}};
  CHECK(x_norm_accumulate(snaps, 2.0, 1.0, 1.0, 1.0) == doctest::Approx(x0_norm(f, 1.0, 1.0)));
}

TEST_CASE("corpus manifest roundtrip is bit exact") {
  const auto& corpus = standard_corpus();
  CHECK(corpus.size() == 10);
  const auto back = corpus_from_manifest(corpus_manifest(corpus));
  REQUIRE(back.size() == corpus.size());
  const Grid g(2, 32, 6.0);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(back[i].name == corpus[i].name);
    CHECK(back[i].params == corpus[i].params);
    const auto a = corpus[i].sample(g), b = back[i].sample(g);
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k] == b[k]);
  }
  CHECK_THROWS_AS(corpus_from_manifest("{\"format\": \"other\"}"), InvalidInput);
}
