#pragma once

#include <vector>

#include "fdw/solver.hpp"

namespace fdw::detail {

/// Tables for the norm columns of a trajectory row.
class NormProbe {
 public:
  NormProbe(const Grid& grid, double sigma, double s, double alpha);

  NormRow row(double t, const SpectralField& u_hat, const SpectralField& ut_hat, const RealField& u) const;
  TimeSample sample(double t, const SpectralField& u_hat, const RealField& u) const;

 private:
  Grid grid_;
  std::vector<double> hs_;
  std::vector<double> energy_;
  std::vector<double> weight_;
  double parseval_ = 1.0;
};

}  // namespace fdw::detail
