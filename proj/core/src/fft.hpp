#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace whid::detail {

/// Forward DFT of a real sequence, bins 0..n/2:
/// X[k] = sum_n x[n] e^{-j 2 pi k n / N}.
std::vector<std::complex<double>> rfft(std::span<const double> x);

/// Inverse of rfft, normalized by 1/n. `n` selects between the even and odd
/// lengths that share a spectrum size and must satisfy n/2 + 1 == spectrum
/// length.
std::vector<double> irfft(std::span<const std::complex<double>> spectrum, std::size_t n);

}  // namespace whid::detail
