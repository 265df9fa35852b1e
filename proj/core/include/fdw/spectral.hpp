#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "fdw/field.hpp"

namespace fdw {

using Frequency = std::array<double, 3>;
using Multiplier = std::function<Complex(const Frequency&)>;
using RadialMultiplier = std::function<double(double)>;

/// Trapezoidal approximation of F[f](xi) = int f(x) e^{-i xi.x} dx on the lattice.
SpectralField forward_transform(const RealField& f);

/// Inverse of forward_transform.  Throws InvalidInput when the coefficients
/// are not Hermitian to within `tolerance` relative to their maximum.
RealField inverse_transform(const SpectralField& coefficients, double tolerance = 1e-10);

/// Coefficientwise product with m(xi).  Throws EvaluationError naming the
/// lattice frequency if m is not finite there.
SpectralField apply_multiplier(const SpectralField& coefficients, const Multiplier& m);

/// Same as apply_multiplier for a real radial symbol m(|xi|).
SpectralField apply_radial_multiplier(const SpectralField& coefficients, const RadialMultiplier& m);

/// Multiply by a precomputed real symbol table (FFT order, one entry per frequency).
SpectralField apply_symbol_table(const SpectralField& coefficients, std::span<const double> table);
void apply_symbol_table_inplace(SpectralField& coefficients, std::span<const double> table);

/// Evaluate m(|xi|) at every lattice frequency.
std::vector<double> radial_symbol_table(const Grid& grid, const RadialMultiplier& m);

/// (-Delta)^{s/2} f when homogeneous, (1 - Delta)^{s/2} f otherwise.  0^0 := 1.
RealField fractional_derivative(const RealField& f, double s, bool homogeneous);

/// Zero every coefficient with some |xi_a| above fraction * band_edge.
void truncate_spectrum(SpectralField& coefficients, double fraction);

/// h^n-weighted sum of the samples.
double integrate(const RealField& f);

/// Discrete L^p norm; p = infinity gives max |f|.  NaN samples propagate.
double lp_norm(const RealField& f, double p);
double lp_norm(std::span<const double> values, double cell_volume, double p);

/// (2 pi)^{-n} (pi/L)^n sum |F|^2, the Parseval side of ||f||_2^2.
double spectral_l2_squared(const SpectralField& coefficients);

/// Periodic cyclic shift by an integer lattice vector: (tau f)(x) = f(x + shift h).
RealField lattice_shift(const RealField& f, const std::array<int, 3>& shift);

}  // namespace fdw
