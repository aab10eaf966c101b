#include "whid/filtering.hpp"

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "fft.hpp"
#include "whid/errors.hpp"

namespace whid {

namespace {

std::complex<double> evaluate_at(const std::vector<double>& coeffs,
                                 const std::complex<double>& zeta) {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * zeta + *it;
    }
    return acc;
}

std::complex<double> response_at(const TransferFunction& tf, double normalized_freq) {
    const double angle = -2.0 * std::numbers::pi * normalized_freq;
    const std::complex<double> zeta(std::cos(angle), std::sin(angle));
    const std::complex<double> den = evaluate_at(tf.den(), zeta);
    if (std::abs(den) == 0.0) {
        throw SingularResponseError("frequency response has a pole at the evaluation point");
    }
    return evaluate_at(tf.num(), zeta) / den;
}

}  // namespace

std::vector<std::complex<double>> freq_response(const TransferFunction& tf,
                                                std::span<const double> normalized_freqs) {
    std::vector<std::complex<double>> out;
    out.reserve(normalized_freqs.size());
    for (double f : normalized_freqs) {
        if (!std::isfinite(f)) {
            throw DegenerateError("frequency must be finite");
        }
        out.push_back(response_at(tf, f));
    }
    return out;
}

std::complex<double> freq_response_at(const TransferFunction& tf, double normalized_freq) {
    if (!std::isfinite(normalized_freq)) {
        throw DegenerateError("frequency must be finite");
    }
    return response_at(tf, normalized_freq);
}

Signal filter_periodic(const TransferFunction& tf, const Signal& period) {
    validate(period);
    if (period.size() < 2) {
        throw DegenerateError("periodic filtering needs at least 2 samples per period");
    }
    if (tf.is_static_gain()) {
        Signal out = period;
        const double g = tf.num()[0];
        for (double& v : out.samples) {
            v *= g;
        }
        return out;
    }
    if (!tf.is_stable()) {
        throw InstabilityError("periodic steady state requires a stable filter");
    }
    const std::size_t n = period.size();
    auto spectrum = detail::rfft(period.samples);
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const double f = static_cast<double>(k) / static_cast<double>(n);
        spectrum[k] *= response_at(tf, f);
    }
    Signal out;
    out.sample_rate = period.sample_rate;
    out.samples = detail::irfft(spectrum, n);
    return out;
}

Signal filter_transient(const TransferFunction& tf, const Signal& input) {
    validate(input);
    const std::vector<double>& b = tf.num();
    const std::vector<double>& a = tf.den();
    const std::size_t n = input.size();
    Signal out;
    out.sample_rate = input.sample_rate;
    out.samples.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < b.size() && j <= i; ++j) {
            acc += b[j] * input.samples[i - j];
        }
        for (std::size_t j = 1; j < a.size() && j <= i; ++j) {
            acc -= a[j] * out.samples[i - j];
        }
        out.samples[i] = acc;
    }
    return out;
}

}  // namespace whid
