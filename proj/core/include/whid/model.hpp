#pragma once

#include <cstdint>
#include <vector>

#include "whid/rng.hpp"
#include "whid/signal.hpp"
#include "whid/transfer_function.hpp"

namespace whid {

/// Memoryless polynomial map f(x) = sum_j weights[j] * x^degrees[j].
struct StaticNonlinearity {
    std::vector<int> degrees;
    std::vector<double> weights;

    static StaticNonlinearity identity() { return {{1}, {1.0}}; }
};

/// Throws DegenerateError unless degrees are distinct, >= 1, and match the
/// weight count, with all weights finite.
void validate(const StaticNonlinearity& nl);

double evaluate(const StaticNonlinearity& nl, double x);

/// Pointwise application; output has the length and sample rate of x.
Signal evaluate_nonlinearity(const StaticNonlinearity& nl, const Signal& x);

/// Linear block, static nonlinearity, linear block in series.
struct WienerHammersteinModel {
    TransferFunction front;
    StaticNonlinearity nonlinearity;
    TransferFunction back;
};

/// Periodic steady-state output for one input period:
/// back applied to f(front applied to u). Exact per period because a static
/// map sends a periodic signal to a periodic signal of the same period.
Signal simulate_wh(const WienerHammersteinModel& model, const Signal& u_period);

/// Parameters of the random system family used by the Monte Carlo study:
/// a Chebyshev type 1 front block and a Chebyshev type 2 back block of equal
/// order with independently drawn cutoffs, around a cubic nonlinearity.
/// Order 0 is the degenerate family whose blocks are unit pass-throughs.
struct SystemRecipe {
    int block_order = 5;
    double cheby1_ripple_db = 3.0;
    double cheby2_atten_db = 50.0;
    double cutoff_lo = 0.025;  // fraction of the sample rate
    double cutoff_hi = 0.125;
    double nl_linear_coeff = 3.0;
    double nl_coeff_lo = -0.25;
    double nl_coeff_hi = 0.25;
    std::uint64_t rng_seed = 0;
};

void validate(const SystemRecipe& recipe);

/// A drawn system together with the exact factored form of its blocks.
struct GeneratedSystem {
    WienerHammersteinModel model;
    PoleZeroGain front_zpk;
    PoleZeroGain back_zpk;
    double cutoff_front = 0.0;
    double cutoff_back = 0.0;
};

/// Draws one system from the recipe family. Randomness is consumed in a
/// fixed, documented order: front cutoff, back cutoff, quadratic weight,
/// cubic weight; one uniform01() each. This order is part of the interface.
GeneratedSystem random_wh_system_detailed(const SystemRecipe& recipe, Rng& rng);

WienerHammersteinModel random_wh_system(const SystemRecipe& recipe, Rng& rng);

/// Convenience overload seeding the stream from recipe.rng_seed.
WienerHammersteinModel random_wh_system(const SystemRecipe& recipe);

}  // namespace whid
