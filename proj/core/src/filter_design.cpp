#include "whid/filter_design.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "whid/errors.hpp"

namespace whid {

namespace {

using cplx = std::complex<double>;

void check_common(int order, double db, double cutoff) {
    if (order < 1 || order > 20) {
        throw DesignError("filter order must be between 1 and 20");
    }
    if (!(db > 0.0) || !std::isfinite(db)) {
        throw DesignError("ripple/attenuation must be positive decibels");
    }
    if (!(cutoff > 0.0) || !(cutoff < 0.5)) {
        throw DesignError("cutoff must lie strictly between 0 and 0.5 cycles per sample");
    }
}

struct AnalogPrototype {
    std::vector<cplx> zeros;
    std::vector<cplx> poles;
    double gain = 1.0;
};

/// Type 1 prototype: equiripple passband, poles on an ellipse, no finite
/// zeros, unit passband edge.
AnalogPrototype cheby1_prototype(int n, double ripple_db) {
    AnalogPrototype proto;
    const double eps = std::sqrt(std::pow(10.0, 0.1 * ripple_db) - 1.0);
    const double mu = std::asinh(1.0 / eps) / n;
    cplx prod(1.0, 0.0);
    for (int m = -n + 1; m <= n - 1; m += 2) {
        const double theta = std::numbers::pi * m / (2.0 * n);
        const cplx p = -std::sinh(cplx(mu, theta));
        proto.poles.push_back(p);
        prod *= -p;
    }
    proto.gain = prod.real();
    if (n % 2 == 0) {
        proto.gain /= std::sqrt(1.0 + eps * eps);
    }
    return proto;
}

/// Type 2 prototype: equiripple stopband with zeros on the imaginary axis,
/// unit stopband edge.
AnalogPrototype cheby2_prototype(int n, double atten_db) {
    AnalogPrototype proto;
    const double de = 1.0 / std::sqrt(std::pow(10.0, 0.1 * atten_db) - 1.0);
    const double mu = std::asinh(1.0 / de) / n;
    for (int m = -n + 1; m <= n - 1; m += 2) {
        if (m == 0) {
            continue;  // odd order: the would-be zero sits at infinity
        }
        const double s = std::sin(std::numbers::pi * m / (2.0 * n));
        proto.zeros.push_back(cplx(0.0, 1.0 / s));
    }
    for (int m = -n + 1; m <= n - 1; m += 2) {
        const double angle = std::numbers::pi * m / (2.0 * n);
        const cplx u = -std::exp(cplx(0.0, angle));
        const cplx scaled(std::sinh(mu) * u.real(), std::cosh(mu) * u.imag());
        proto.poles.push_back(1.0 / scaled);
    }
    cplx num_prod(1.0, 0.0);
    for (const cplx& p : proto.poles) {
        num_prod *= -p;
    }
    cplx den_prod(1.0, 0.0);
    for (const cplx& z : proto.zeros) {
        den_prod *= -z;
    }
    proto.gain = (num_prod / den_prod).real();
    return proto;
}

/// Scales the unit-edge prototype to the prewarped analog cutoff, then maps
/// it through the bilinear transform. Prewarping makes the digital magnitude
/// hit the design level exactly at `cutoff`.
PoleZeroGain discretize(AnalogPrototype proto, double cutoff) {
    const double warped = 4.0 * std::tan(std::numbers::pi * cutoff);
    for (cplx& z : proto.zeros) {
        z *= warped;
    }
    for (cplx& p : proto.poles) {
        p *= warped;
    }
    const int relative_degree = static_cast<int>(proto.poles.size() - proto.zeros.size());
    proto.gain *= std::pow(warped, relative_degree);

    // Bilinear transform at twice the unit sample rate: s -> (4 + s)/(4 - s).
    const double fs2 = 4.0;
    PoleZeroGain out;
    cplx num_prod(1.0, 0.0);
    cplx den_prod(1.0, 0.0);
    for (const cplx& z : proto.zeros) {
        out.zeros.push_back((fs2 + z) / (fs2 - z));
        num_prod *= fs2 - z;
    }
    for (const cplx& p : proto.poles) {
        out.poles.push_back((fs2 + p) / (fs2 - p));
        den_prod *= fs2 - p;
    }
    // Zeros of the analog prototype at infinity land at the Nyquist point.
    for (int i = 0; i < relative_degree; ++i) {
        out.zeros.push_back(cplx(-1.0, 0.0));
    }
    out.gain = proto.gain * (num_prod / den_prod).real();
    return out;
}

}  // namespace

PoleZeroGain cheby1_design_zpk(int order, double passband_ripple_db, double cutoff) {
    check_common(order, passband_ripple_db, cutoff);
    return discretize(cheby1_prototype(order, passband_ripple_db), cutoff);
}

PoleZeroGain cheby2_design_zpk(int order, double stopband_atten_db, double cutoff) {
    check_common(order, stopband_atten_db, cutoff);
    return discretize(cheby2_prototype(order, stopband_atten_db), cutoff);
}

TransferFunction cheby1_design(int order, double passband_ripple_db, double cutoff) {
    return tf_from_zpk(cheby1_design_zpk(order, passband_ripple_db, cutoff));
}

TransferFunction cheby2_design(int order, double stopband_atten_db, double cutoff) {
    return tf_from_zpk(cheby2_design_zpk(order, stopband_atten_db, cutoff));
}

}  // namespace whid
