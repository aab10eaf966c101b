#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "whid/rng.hpp"
#include "whid/signal.hpp"
#include "whid/transfer_function.hpp"

namespace whid {

/// Zero-mean Gaussian signal meant to be played periodically: `periods`
/// repetitions of one length-`period` realization, standard deviation
/// `sigma`.
Signal generate_periodic_gaussian(std::size_t period, std::size_t periods, double sigma, Rng& rng,
                                  double sample_rate = 1.0);

/// Nonparametric frequency response estimate on the period grid.
struct FrfEstimate {
    /// Bin k corresponds to frequency k / period, k = 0 .. period/2.
    std::vector<double> frequencies;
    std::vector<std::complex<double>> response;
    /// Per-bin sample variance of the cross-period ratios; zero when only
    /// one period is available.
    std::vector<double> variance;
    /// False where the input spectrum is too small to divide by.
    std::vector<bool> valid;
    std::size_t period = 0;
    std::size_t periods_used = 0;
};

/// Estimates Y(k)/U(k) per excited bin by averaging period DFTs of u and y.
/// `discard_periods` leading periods are dropped to let transients settle.
/// The signals must hold the same whole number of periods.
FrfEstimate estimate_frf(const Signal& u, const Signal& y, std::size_t period,
                         std::size_t discard_periods = 1);

/// Rational fit of an FRF by weighted linear least squares with
/// Sanathanan-Koerner reweighting.
struct RationalFitOptions {
    int max_iterations = 20;
    /// Relative coefficient change threshold for convergence.
    double tolerance = 1e-8;
    /// Per-bin weights; variance-based weighting is applied when empty and
    /// the estimate carries nonzero variances.
    std::vector<double> weights;
};

struct RationalFit {
    TransferFunction tf;
    int iterations = 0;
    bool converged = false;
    /// Unstable poles reflected into the unit disc after fitting.
    int reflected_poles = 0;
    /// Mean squared response error over the fitted bins.
    double residual = 0.0;
};

/// Fits a numerator/denominator pair of the given orders to the estimate.
RationalFit fit_rational(const FrfEstimate& frf, int num_order, int den_order,
                         const RationalFitOptions& options = {});

}  // namespace whid
