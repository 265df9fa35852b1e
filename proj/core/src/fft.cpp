#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace fdw::detail {

namespace {

// fftw's planner is not re-entrant; execution through new-array calls is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class PlanCache {
 public:
  ~PlanCache() {
    std::lock_guard lock(planner_mutex());
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int dim, int n, FftDirection dir) {
    const auto key = std::make_tuple(dim, n, dir);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
    std::vector<std::complex<double>> scratch(total);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int shape[3] = {n, n, n};
    fftw_plan plan;
    {
      std::lock_guard lock(planner_mutex());
      plan = fftw_plan_dft(dim, shape, buf, buf, dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::map<std::tuple<int, int, FftDirection>, fftw_plan> plans_;
};

}  // namespace

void fft_inplace(const Grid& grid, std::span<std::complex<double>> data, FftDirection dir) {
  thread_local PlanCache cache;
  fftw_plan plan = cache.get(grid.dim(), grid.points_per_axis(), dir);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace fdw::detail
