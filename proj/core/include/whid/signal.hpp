#pragma once

#include <cstddef>
#include <vector>

namespace whid {

/// One period of a sampled real-valued signal.
struct Signal {
    std::vector<double> samples;
    double sample_rate = 1.0;

    std::size_t size() const { return samples.size(); }
};

/// Throws DegenerateError if the signal is empty or contains non-finite samples.
void validate(const Signal& s);

double mean(const Signal& s);

/// Population variance (1/N normalization).
double variance(const Signal& s);

/// Root mean square of the samples.
double rms(const Signal& s);

/// RMS of the elementwise difference; signals must have equal length.
double rms_difference(const Signal& a, const Signal& b);

}  // namespace whid
