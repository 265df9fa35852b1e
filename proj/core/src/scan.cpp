#include <atomic>
#include <thread>

#include "fdw/errors.hpp"
#include "fdw/experiments.hpp"

namespace fdw {

ScanResult critical_exponent_scan(const Grid& grid, double sigma, const std::vector<double>& rho_grid,
                                  const DataSpec& data_spec, const SolverConfig& base, int jobs) {
  if (rho_grid.empty()) throw ConfigError("exponent scan needs at least one rho");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  ScanResult result;
  result.rho = rho_grid;
  result.classes.assign(rho_grid.size(), Classification::undecided);
  result.end_time.assign(rho_grid.size(), 0.0);
  result.predicted_threshold = fujita_exponent(grid.dim(), sigma);

  const auto data = data_spec.sample(grid);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rho_grid.size(); i = next++) {
      SolverConfig cfg = base;
      cfg.sigma = sigma;
      cfg.nonlinearity = Nonlinearity(NonlinearityKind::absolute, rho_grid[i], +1);
      const auto record = solve(data, cfg);
      result.classes[i] = detect_blowup(record);
      result.end_time[i] = record.outcome.time;
    }
  };
  const int workers = std::min<int>(jobs, static_cast<int>(rho_grid.size()));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::optional<std::size_t> last_blowup, first_global;
  for (std::size_t i = 0; i < rho_grid.size(); ++i) {
    if (result.classes[i] == Classification::blowup) last_blowup = i;
    if (result.classes[i] == Classification::global_decay && !first_global) first_global = i;
  }
  if (last_blowup && first_global && *first_global < *last_blowup) result.monotone = false;
  if (last_blowup && first_global && *last_blowup < *first_global) {
    result.estimated_threshold = std::pair{rho_grid[*last_blowup], rho_grid[*first_global]};
  }
  result.inconclusive = !result.estimated_threshold.has_value();
  return result;
}

}  // namespace fdw
