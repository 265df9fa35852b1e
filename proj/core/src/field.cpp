#include <algorithm>
#include <cmath>

#include "fdw/errors.hpp"
#include "fdw/field.hpp"

namespace fdw {

RealField::RealField(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}

RealField::RealField(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidInput("field length " + std::to_string(values_.size()) + " does not match grid size " +
                       std::to_string(grid_.size()));
  }
}

bool RealField::is_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

RealField& RealField::operator+=(const RealField& other) {
  if (!(grid_ == other.grid_)) throw InvalidInput("field grids differ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

RealField& RealField::operator-=(const RealField& other) {
  if (!(grid_ == other.grid_)) throw InvalidInput("field grids differ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

RealField& RealField::operator*=(double c) {
  for (auto& v : values_) v *= c;
  return *this;
}

RealField operator+(RealField a, const RealField& b) { return a += b; }
RealField operator-(RealField a, const RealField& b) { return a -= b; }
RealField operator*(double c, RealField a) { return a *= c; }

SpectralField::SpectralField(Grid grid) : grid_(grid), coeffs_(grid.size(), Complex{0.0, 0.0}) {}

SpectralField::SpectralField(Grid grid, std::vector<Complex> coefficients)
    : grid_(grid), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != grid_.size()) throw InvalidInput("coefficient count does not match grid size");
}

Complex SpectralField::at_wavenumber(const std::array<int, 3>& k) const {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = 0; a < grid_.dim(); ++a) idx[a] = grid_.index_of_wavenumber(k[a]);
  return coeffs_[grid_.ravel(idx)];
}

Complex& SpectralField::at_wavenumber(const std::array<int, 3>& k) {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = 0; a < grid_.dim(); ++a) idx[a] = grid_.index_of_wavenumber(k[a]);
  return coeffs_[grid_.ravel(idx)];
}

double SpectralField::hermitian_defect() const {
  double scale = 0.0;
  double defect = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    scale = std::max(scale, std::abs(coeffs_[i]));
    defect = std::max(defect, std::abs(coeffs_[grid_.mirror_index(i)] - std::conj(coeffs_[i])));
  }
  return scale > 0.0 ? defect / scale : defect;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw InvalidInput("spectral field grids differ");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double c) {
  for (auto& v : coeffs_) v *= c;
  return *this;
}

PairState::PairState(RealField u_in, RealField ut_in) : u(std::move(u_in)), ut(std::move(ut_in)) {
  if (!(u.grid() == ut.grid())) throw InvalidInput("pair state components live on different grids");
}

}  // namespace fdw
