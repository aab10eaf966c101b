#include "whid/signal.hpp"

#include <cmath>
#include <cstddef>

#include "whid/errors.hpp"

namespace whid {

void validate(const Signal& s) {
    if (s.samples.empty()) {
        throw DegenerateError("signal is empty");
    }
    if (!(s.sample_rate > 0.0) || !std::isfinite(s.sample_rate)) {
        throw DegenerateError("signal sample rate must be positive and finite");
    }
    for (double v : s.samples) {
        if (!std::isfinite(v)) {
            throw DegenerateError("signal contains a non-finite sample");
        }
    }
}

double mean(const Signal& s) {
    validate(s);
    double acc = 0.0;
    for (double v : s.samples) {
        acc += v;
    }
    return acc / static_cast<double>(s.size());
}

double variance(const Signal& s) {
    const double m = mean(s);
    double acc = 0.0;
    for (double v : s.samples) {
        const double d = v - m;
        acc += d * d;
    }
    return acc / static_cast<double>(s.size());
}

double rms(const Signal& s) {
    validate(s);
    double acc = 0.0;
    for (double v : s.samples) {
        acc += v * v;
    }
    return std::sqrt(acc / static_cast<double>(s.size()));
}

double rms_difference(const Signal& a, const Signal& b) {
    validate(a);
    validate(b);
    if (a.size() != b.size()) {
        throw DegenerateError("rms_difference needs signals of equal length");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.samples[i] - b.samples[i];
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

}  // namespace whid
