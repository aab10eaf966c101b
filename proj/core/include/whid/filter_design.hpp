#pragma once

#include "whid/transfer_function.hpp"

namespace whid {

/// Chebyshev type 1 low-pass design in pole-zero-gain form.
///
/// Analog prototype mapped through the bilinear transform with the cutoff
/// prewarped, so |H| at `cutoff` equals the ripple level exactly. `cutoff`
/// is the passband edge in cycles per sample, 0 < cutoff < 0.5; order is the
/// digital order, 1..20. Throws DesignError on out-of-range parameters.
PoleZeroGain cheby1_design_zpk(int order, double passband_ripple_db, double cutoff);

/// Chebyshev type 2 low-pass design in pole-zero-gain form. `cutoff` is the
/// stopband edge; beyond it the magnitude stays at or below -atten dB.
PoleZeroGain cheby2_design_zpk(int order, double stopband_atten_db, double cutoff);

TransferFunction cheby1_design(int order, double passband_ripple_db, double cutoff);

TransferFunction cheby2_design(int order, double stopband_atten_db, double cutoff);

}  // namespace whid
