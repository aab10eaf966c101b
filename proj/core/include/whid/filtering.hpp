#pragma once

#include <complex>
#include <span>
#include <vector>

#include "whid/signal.hpp"
#include "whid/transfer_function.hpp"

namespace whid {

/// Rational frequency response at normalized frequencies f in [0, 0.5]
/// (cycles per sample): H(e^{j 2 pi f}) evaluated as num/den at
/// zeta = e^{-j 2 pi f}. Throws SingularResponseError when the denominator
/// vanishes at an evaluation point.
std::vector<std::complex<double>> freq_response(const TransferFunction& tf,
                                                std::span<const double> normalized_freqs);

std::complex<double> freq_response_at(const TransferFunction& tf, double normalized_freq);

/// Exact periodic steady-state response to one period of a periodic input:
/// the period's DFT is multiplied bin-wise by the frequency response and
/// inverse transformed. Requires a stable filter (InstabilityError otherwise)
/// and at least 2 samples per period.
Signal filter_periodic(const TransferFunction& tf, const Signal& period);

/// Direct-form difference equation from zero initial conditions. The
/// time-domain oracle for filter_periodic: filtering enough repeated periods
/// converges to the periodic steady state.
Signal filter_transient(const TransferFunction& tf, const Signal& input);

}  // namespace whid
