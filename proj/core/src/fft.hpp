#pragma once

#include <complex>
#include <span>

#include "fdw/grid.hpp"

namespace fdw::detail {

enum class FftDirection { forward, backward };

/// Unnormalized in-place complex DFT over the grid shape.
///   forward:  X_k = sum_j x_j e^{-2 pi i jk/N}
///   backward: x_j = sum_k X_k e^{+2 pi i jk/N}
/// Plans are cached per thread; planning itself is serialized.
void fft_inplace(const Grid& grid, std::span<std::complex<double>> data, FftDirection dir);

}  // namespace fdw::detail
