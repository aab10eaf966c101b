#pragma once

#include <cmath>
#include <complex>

namespace whid::detail {

/// Deterministic ordering used for all root lists: magnitude, then angle,
/// then real part as a final tie breaker.
inline bool root_less(const std::complex<double>& a, const std::complex<double>& b) {
    const double ma = std::abs(a);
    const double mb = std::abs(b);
    if (ma != mb) {
        return ma < mb;
    }
    const double aa = std::arg(a);
    const double ab = std::arg(b);
    if (aa != ab) {
        return aa < ab;
    }
    return a.real() < b.real();
}

}  // namespace whid::detail
