#include "fdw/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <tuple>

#include "fdw/errors.hpp"
#include "fdw/funcspace.hpp"
#include "fdw/propagator.hpp"
#include "fdw/spectral.hpp"
#include "fdw/trajectory_io.hpp"

namespace fdw {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace

double predicted_lp_rate(int n, double sigma, double p) {
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return -(n / sigma) * (1.0 - inv_p);
}

double predicted_smoothing_rate(int n, double sigma, double s1, double s2, double gamma) {
  return -(s1 - n / 2.0) / sigma + (s2 - n / gamma) / sigma;
}

double predicted_global_l2_rate(int n, double sigma, double r) { return (n / sigma) * (0.5 - 1.0 / r); }

double predicted_global_hs_rate(int n, double sigma, double s, double r) {
  return -s / sigma + predicted_global_l2_rate(n, sigma, r);
}

double predicted_global_weighted_rate(int n, double sigma, double alpha, double r) {
  return alpha / sigma + predicted_global_l2_rate(n, sigma, r);
}

double global_existence_exponent(int n, double sigma, double alpha) {
  return alpha < n / 2.0 ? 1.0 + 2.0 * sigma / (2.0 * alpha + n) : 1.0 + sigma / n;
}

double fujita_exponent(int n, double sigma) { return 1.0 + sigma / n; }

PairState DataSpec::sample(const Grid& grid) const {
  const auto base = profile.sample(grid);
  return {u0_amplitude * base, u1_amplitude * base};
}

std::string DataSpec::describe() const {
  std::ostringstream os;
  os << "u0 = " << format_double(u0_amplitude) << " * " << profile.family << "(";
  bool first = true;
  for (const auto& [k, v] : profile.params) {
    os << (first ? "" : ", ") << k << "=" << format_double(v);
    first = false;
  }
  os << "), u1 = " << format_double(u1_amplitude) << " * same profile";
  return os.str();
}

std::string to_string(DecayNorm k) {
  switch (k) {
    case DecayNorm::l2: return "l2";
    case DecayNorm::linf: return "linf";
    case DecayNorm::hs: return "hs";
    case DecayNorm::weighted: return "weighted_alpha";
  }
  return "unknown";
}

namespace {

double column(const NormRow& row, DecayNorm kind) {
  switch (kind) {
    case DecayNorm::l2: return row.l2;
    case DecayNorm::linf: return row.linf;
    case DecayNorm::hs: return row.hs;
    case DecayNorm::weighted: return row.weighted_alpha;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

bool boundary_contaminated(const RealField& u) {
  const Grid& g = u.grid();
  const double peak = lp_norm(u, kInfinity);
  double edge = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto idx = g.unravel(i);
    bool on_edge = false;
    for (int a = 0; a < g.dim(); ++a) on_edge = on_edge || idx[a] == 0;
    if (on_edge) edge = std::max(edge, std::abs(u[i]));
  }
  return edge > 1e-8 * peak;
}

}  // namespace

DecayFit fit_decay(const TrajectoryRecord& record, DecayNorm kind, Window window, double predicted_slope,
                   double tolerance, std::size_t target_samples) {
  if (!(window.t_min >= 5.0)) throw DomainError("decay fit window must start at t >= 5");
  if (!(window.t_max > window.t_min)) throw DomainError("decay fit window is empty");
  const auto& rows = record.norms;
  std::vector<std::size_t> picked;
  const std::size_t K = std::max<std::size_t>(target_samples, 2);
  for (std::size_t k = 0; k < K; ++k) {
    const double target = window.t_min * std::pow(window.t_max / window.t_min, static_cast<double>(k) / (K - 1));
    auto it = std::lower_bound(rows.begin(), rows.end(), target, [](const NormRow& r, double t) { return r.t < t; });
    std::size_t best = rows.size();
    for (auto cand : {it, it == rows.begin() ? it : it - 1}) {
      if (cand == rows.end()) continue;
      if (cand->t < window.t_min - 1e-12 || cand->t > window.t_max + 1e-12) continue;
      const auto idx = static_cast<std::size_t>(cand - rows.begin());
      if (best == rows.size() || std::abs(rows[idx].t - target) < std::abs(rows[best].t - target)) best = idx;
    }
    if (best < rows.size() && (picked.empty() || picked.back() != best)) picked.push_back(best);
  }
  std::vector<double> xs, ys;
  for (auto idx : picked) {
    const double v = column(rows[idx], kind);
    if (!(v > 0.0) || !std::isfinite(v)) continue;
    xs.push_back(std::log1p(rows[idx].t));
    ys.push_back(std::log(v));
  }
  if (xs.size() < 8) throw DomainError("decay fit needs at least 8 samples in the window");

  const double m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (my + slope * (xs[i] - mx));
    ssr += e * e;
  }
  DecayFit fit{kind, window, xs.size(), slope, std::sqrt(ssr / (m - 2.0) / sxx), predicted_slope, tolerance, false};
  fit.pass = std::abs(slope - predicted_slope) <= tolerance;
  return fit;
}

namespace {

DiffusionReport finish_diffusion(DiffusionReport rep) {
  const double* first = nullptr;
  const double* prev = nullptr;
  bool monotone = true;
  for (std::size_t i = 0; i < rep.times.size(); ++i) {
    if (rep.times[i] < 10.0) continue;
    const double* e = &rep.scaled_error[i];
    if (first == nullptr) first = e;
    if (prev != nullptr && *e > *prev) monotone = false;
    prev = e;
  }
  rep.decreasing = first != nullptr && prev != first && monotone && *prev < 0.5 * *first;
  return rep;
}

double scaled_error(const RealField& u, double mass, double t, double sigma, double p,
                    const std::array<int, 3>& kernel_shift) {
  const Grid& g = u.grid();
  auto diff = u;
  diff -= mass * lattice_shift(heat_kernel(t, sigma, g), kernel_shift);
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return std::pow(t, (g.dim() / sigma) * (1.0 - inv_p)) * lp_norm(diff, p);
}

}  // namespace

DiffusionReport diffusion_phenomenon(const PairState& data, double sigma, double p, const std::vector<double>& times,
                                     const std::array<int, 3>& kernel_shift) {
  DiffusionReport rep;
  rep.mass = integrate(data.u) + integrate(data.ut);
  bool warned = false;
  for (double t : times) {
    if (!(t > 0.0)) throw DomainError("diffusion times must be positive");
    const auto u = apply_pair_propagator(t, data, sigma).u;
    if (!warned && boundary_contaminated(u)) {
      rep.warnings.push_back("wrap-around contamination at t = " + format_double(t));
      warned = true;
    }
    rep.times.push_back(t);
    rep.scaled_error.push_back(scaled_error(u, rep.mass, t, sigma, p, kernel_shift));
  }
  return finish_diffusion(std::move(rep));
}

DiffusionReport diffusion_phenomenon(const PairState& data, const TrajectoryRecord& record, double p,
                                     const std::array<int, 3>& kernel_shift) {
  if (record.snapshots.size() < 2) throw DomainError("diffusion check needs at least two snapshots");
  const double sigma = record.config.sigma;
  const auto& N = record.config.nonlinearity;
  DiffusionReport rep;
  rep.mass = integrate(data.u) + integrate(data.ut);
  auto source_mass = [&](const RealField& u) {
    RealField nu(u.grid());
    N.apply(u.values(), nu.values());
    return integrate(nu);
  };
  double prev_t = record.snapshots.front().t;
  double prev_m = source_mass(record.snapshots.front().state.u);
  for (std::size_t k = 1; k < record.snapshots.size(); ++k) {
    const auto& snap = record.snapshots[k];
    const double m = source_mass(snap.state.u);
    rep.mass += 0.5 * (snap.t - prev_t) * (m + prev_m);
    prev_t = snap.t;
    prev_m = m;
  }
  bool warned = false;
  for (const auto& snap : record.snapshots) {
    if (!(snap.t > 0.0)) continue;
    if (!warned && boundary_contaminated(snap.state.u)) {
      rep.warnings.push_back("wrap-around contamination at t = " + format_double(snap.t));
      warned = true;
    }
    rep.times.push_back(snap.t);
    rep.scaled_error.push_back(scaled_error(snap.state.u, rep.mass, snap.t, sigma, p, kernel_shift));
  }
  return finish_diffusion(std::move(rep));
}

KernelBoundTable kernel_bound_check(double sigma, const std::vector<double>& times, const Grid& grid,
                                    std::optional<double> weight_exponent) {
  const int n = grid.dim();
  KernelBoundTable table;
  table.sigma = sigma;
  table.weight_exponent = weight_exponent.value_or(n + sigma);
  const double e = table.weight_exponent;
  const auto x = grid.position_magnitudes();
  const double h = grid.spacing();
  for (double t : times) {
    if (!(t > 0.0)) throw DomainError("kernel check times must be positive");
    const auto K = low_freq_kernel(t, sigma, grid);
    const double scale = std::pow(t, 1.0 / sigma);
    const bool exclude_origin = h > scale / 8.0;
    KernelRow row{t, 0.0, 0.0};
    for (std::size_t i = 0; i < K.size(); ++i) {
      if (exclude_origin && x[i] < h) continue;
      const double w = t <= 1.0 ? t * std::pow(japanese(x[i]), -e)
                                : std::pow(t, -n / sigma) * std::pow(japanese(x[i] / scale), -e);
      const double r = std::abs(K[i]) / w;
      if (r > row.ratio) {
        row.ratio = r;
        row.x_star = x[i];
      }
    }
    table.rows.push_back(row);
  }
  if (!table.rows.empty()) {
    double lo = kInfinity, hi = 0.0;
    for (const auto& r : table.rows) {
      lo = std::min(lo, r.ratio);
      hi = std::max(hi, r.ratio);
    }
    table.stability = lo > 0.0 ? hi / lo : kInfinity;
    table.pass = table.stability <= 4.0;
  }
  return table;
}

SmoothingTable smoothing_estimate_check(double sigma, double s1, double s2, double gamma,
                                        const std::vector<CorpusEntry>& corpus, const Grid& grid,
                                        const std::vector<double>& times) {
  if (!(s1 >= s2 && s2 >= 0.0)) throw DomainError("smoothing check requires s1 >= s2 >= 0");
  if (!(gamma >= 1.0 && gamma <= 2.0)) throw DomainError("smoothing check requires gamma in [1, 2]");
  const int n = grid.dim();
  SmoothingTable table{s1, s2, gamma, sigma, predicted_smoothing_rate(n, sigma, s1, s2, gamma), times, {}, true};
  const DyadicPartition partition(grid);
  for (const auto& entry : corpus) {
    const auto g = entry.sample(grid);
    SmoothingRow row{entry.name, besov_norm_lp(g, s2, gamma, 2.0, true, partition).value, {}, 0.0, true, ""};
    if (!std::isfinite(row.besov_norm) || row.besov_norm == 0.0) {
      row.note = "skipped: Besov norm not finite and positive";
      table.rows.push_back(row);
      continue;
    }
    double lo = kInfinity, hi = 0.0;
    for (double t : times) {
      const double num = sobolev_norm(apply_S(t, g, sigma), s1, true);
      const double r = num / (std::pow(japanese(t), table.predicted_rate) * row.besov_norm);
      row.ratio.push_back(r);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    row.stability = lo > 0.0 ? hi / lo : kInfinity;
    row.pass = row.stability <= 8.0;
    table.pass = table.pass && row.pass;
    table.rows.push_back(row);
  }
  return table;
}

bool GnTuple::admissible(int n) const {
  const double left = lhs.s - n / lhs.p;
  const double right = theta * (first.s - n / first.p) + (1.0 - theta) * (second.s - n / second.p);
  return theta >= 0.0 && theta <= 1.0 && std::abs(left - right) < 1e-12 &&
         lhs.s <= theta * first.s + (1.0 - theta) * second.s + 1e-12;
}

std::vector<GnRow> gn_inequality_sample(const std::vector<CorpusEntry>& corpus, const Grid& grid,
                                        const std::vector<GnTuple>& tuples, unsigned seed, double slack) {
  const DyadicPartition partition(grid);
  std::map<std::tuple<const RealField*, double, double, double>, double> cache;
  auto norm = [&](const RealField& f, const BesovIndex& b) {
    const auto key = std::make_tuple(&f, b.s, b.p, b.q);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, besov_norm_lp(f, b.s, b.p, b.q, true, partition).value).first;
    return it->second;
  };
  auto ratio = [&](const RealField& f, const GnTuple& tp) {
    const double rhs = std::pow(norm(f, tp.first), tp.theta) * std::pow(norm(f, tp.second), 1.0 - tp.theta);
    return norm(f, tp.lhs) / rhs;
  };

  std::vector<RealField> base;
  std::vector<RealField> transformed;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> shift(-grid.points_per_axis() / 8, grid.points_per_axis() / 8);
  std::uniform_real_distribution<double> log_amp(std::log(0.1), std::log(10.0));
  for (const auto& entry : corpus) {
    base.push_back(entry.sample(grid));
    std::array<int, 3> k{0, 0, 0};
    for (int a = 0; a < grid.dim(); ++a) k[a] = shift(rng);
    transformed.push_back(lattice_shift(base.back(), k));
    transformed.push_back(std::exp(log_amp(rng)) * base.back());
    for (double lambda : {2.0, 0.5}) {
      transformed.push_back(RealField::sample(grid, [&](std::array<double, 3> x) {
        for (auto& c : x) c *= lambda;
        return entry.evaluate(x, grid.dim());
      }));
    }
  }

  std::vector<GnRow> out;
  for (const auto& tp : tuples) {
    if (!tp.admissible(grid.dim())) throw DomainError("Gagliardo-Nirenberg tuple violates the scaling relation");
    GnRow row{tp, 0.0, 0, 0};
    for (const auto& f : base) row.empirical_c = std::max(row.empirical_c, ratio(f, tp));
    for (const auto& f : transformed) {
      ++row.samples;
      if (ratio(f, tp) > row.empirical_c * (1.0 + slack)) ++row.violations;
    }
    out.push_back(row);
  }
  return out;
}

bool Report::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void Report::write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  std::ofstream csv(dir / "report.csv");
  csv << "check,measured,predicted,tolerance,pass,note\n";
  for (const auto& v : verdicts) {
    csv << csv_quote(v.check) << ',' << format_double(v.measured) << ',' << format_double(v.predicted) << ','
        << format_double(v.tolerance) << ',' << (v.pass ? "pass" : "fail") << ',' << csv_quote(v.note) << '\n';
  }
  std::ofstream txt(dir / "report.txt");
  txt << experiment << "\n\n";
  for (const auto& line : lines) txt << line << '\n';
  if (!lines.empty()) txt << '\n';
  for (const auto& v : verdicts) {
    txt << (v.pass ? "PASS " : "FAIL ") << v.check << ": measured " << format_double(v.measured) << ", predicted "
        << format_double(v.predicted) << ", tolerance " << format_double(v.tolerance);
    if (!v.note.empty()) txt << " (" << v.note << ")";
    txt << '\n';
  }
  txt << "\noverall: " << (all_pass() ? "pass" : "fail") << '\n';
  if (!csv || !txt) throw InvalidInput("cannot write report into " + dir.string());
}

std::vector<double> parse_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw InvalidInput("bad number '" + s + "' in range '" + text + "'");
    }
    if (used != s.size()) throw InvalidInput("bad number '" + s + "' in range '" + text + "'");
    return v;
  };
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() == 1) {
    std::vector<double> out;
    std::stringstream list(text);
    for (std::string item; std::getline(list, item, ',');) out.push_back(number(item));
    if (out.empty()) throw InvalidInput("empty range");
    return out;
  }
  if (parts.size() != 3) throw InvalidInput("range must be start:end:step, got '" + text + "'");
  const double a = number(parts[0]), b = number(parts[1]), step = number(parts[2]);
  if (!(step > 0.0) || !(b >= a)) throw InvalidInput("range needs step > 0 and end >= start: '" + text + "'");
  std::vector<double> out;
  const long count = static_cast<long>(std::floor((b - a) / step + 1e-9));
  if (count > 100000) throw InvalidInput("range has too many points: '" + text + "'");
  for (long k = 0; k <= count; ++k) out.push_back(a + static_cast<double>(k) * step);
  return out;
}

}  // namespace fdw
