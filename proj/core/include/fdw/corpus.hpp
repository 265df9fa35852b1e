#pragma once

#include <map>
#include <string>
#include <vector>

#include "fdw/field.hpp"

namespace fdw {

/// One analytic test function: a named family with closed-form parameters.
///
/// Families (x1 the first coordinate, r = |x|):
///   gaussian          exp(-r^2 / width^2)
///   shifted_gaussian  exp(-|x - shift e1|^2 / width^2)
///   bump              exp(1 - 1/(1 - (r/radius)^2)) for r < radius, else 0
///   cos_packet        exp(-r^2 / width^2) cos(wavenumber x1)
///   sin_packet        exp(-r^2 / width^2) sin(wavenumber x1)
///   sech              1 / cosh(r / width)
///   rational          (1 + (r/width)^2)^(-power)
///   gaussian_pair     exp(-|x + shift e1|^2) - ratio exp(-|x - shift e1|^2 / 2)
///   soft_singular     (r^2 + core^2)^(-exponent/2) exp(-r^2 / width^2)
struct CorpusEntry {
  std::string name;
  std::string family;
  std::map<std::string, double> params;

  double evaluate(const std::array<double, 3>& x, int dim) const;
  RealField sample(const Grid& grid) const;
};

/// The fixed ten-function corpus used by the norm and smoothing checks.
const std::vector<CorpusEntry>& standard_corpus();

/// JSON manifest of a corpus; doubles are written in round-trip precision.
std::string corpus_manifest(const std::vector<CorpusEntry>& corpus);
std::vector<CorpusEntry> corpus_from_manifest(const std::string& json);

}  // namespace fdw
