#include "whid/model.hpp"

#include <cmath>
#include <unordered_set>

#include "whid/errors.hpp"
#include "whid/filter_design.hpp"
#include "whid/filtering.hpp"

namespace whid {

namespace {

double int_pow(double x, int n) {
    double acc = 1.0;
    double base = x;
    while (n > 0) {
        if (n & 1) {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    return acc;
}

}  // namespace

void validate(const StaticNonlinearity& nl) {
    if (nl.degrees.empty() || nl.degrees.size() != nl.weights.size()) {
        throw DegenerateError("nonlinearity needs matching, nonempty degrees and weights");
    }
    std::unordered_set<int> seen;
    for (int d : nl.degrees) {
        if (d < 1) {
            throw DegenerateError("nonlinearity degrees must be >= 1");
        }
        if (!seen.insert(d).second) {
            throw DegenerateError("nonlinearity degrees must be distinct");
        }
    }
    for (double w : nl.weights) {
        if (!std::isfinite(w)) {
            throw DegenerateError("nonlinearity weights must be finite");
        }
    }
}

double evaluate(const StaticNonlinearity& nl, double x) {
    double acc = 0.0;
    for (std::size_t j = 0; j < nl.degrees.size(); ++j) {
        acc += nl.weights[j] * int_pow(x, nl.degrees[j]);
    }
    return acc;
}

Signal evaluate_nonlinearity(const StaticNonlinearity& nl, const Signal& x) {
    validate(nl);
    validate(x);
    Signal out;
    out.sample_rate = x.sample_rate;
    out.samples.reserve(x.size());
    for (double v : x.samples) {
        out.samples.push_back(evaluate(nl, v));
    }
    return out;
}

Signal simulate_wh(const WienerHammersteinModel& model, const Signal& u_period) {
    const Signal x = filter_periodic(model.front, u_period);
    const Signal r = evaluate_nonlinearity(model.nonlinearity, x);
    return filter_periodic(model.back, r);
}

void validate(const SystemRecipe& recipe) {
    if (recipe.block_order < 0 || recipe.block_order > 20) {
        throw DegenerateError("block order must be between 0 and 20");
    }
    if (!(recipe.cheby1_ripple_db > 0.0) || !(recipe.cheby2_atten_db > 0.0)) {
        throw DegenerateError("ripple and attenuation must be positive");
    }
    if (!(recipe.cutoff_lo > 0.0) || !(recipe.cutoff_lo <= recipe.cutoff_hi) ||
        !(recipe.cutoff_hi < 0.5)) {
        throw DegenerateError("cutoff range must satisfy 0 < lo <= hi < 0.5");
    }
    if (!std::isfinite(recipe.nl_linear_coeff) || !(recipe.nl_coeff_lo <= recipe.nl_coeff_hi) ||
        !std::isfinite(recipe.nl_coeff_lo) || !std::isfinite(recipe.nl_coeff_hi)) {
        throw DegenerateError("nonlinearity coefficient range is invalid");
    }
}

GeneratedSystem random_wh_system_detailed(const SystemRecipe& recipe, Rng& rng) {
    validate(recipe);
    GeneratedSystem out;
    out.cutoff_front = rng.uniform(recipe.cutoff_lo, recipe.cutoff_hi);
    out.cutoff_back = rng.uniform(recipe.cutoff_lo, recipe.cutoff_hi);
    const double w2 = rng.uniform(recipe.nl_coeff_lo, recipe.nl_coeff_hi);
    const double w3 = rng.uniform(recipe.nl_coeff_lo, recipe.nl_coeff_hi);

    if (recipe.block_order == 0) {
        // Degenerate recipe: both blocks collapse to unit pass-throughs with
        // no poles or zeros to allocate.
        out.front_zpk = PoleZeroGain{};
        out.back_zpk = PoleZeroGain{};
    } else {
        out.front_zpk =
            cheby1_design_zpk(recipe.block_order, recipe.cheby1_ripple_db, out.cutoff_front);
        out.back_zpk =
            cheby2_design_zpk(recipe.block_order, recipe.cheby2_atten_db, out.cutoff_back);
    }
    out.model.front = tf_from_zpk(out.front_zpk);
    out.model.back = tf_from_zpk(out.back_zpk);
    out.model.nonlinearity = StaticNonlinearity{{1, 2, 3}, {recipe.nl_linear_coeff, w2, w3}};
    return out;
}

WienerHammersteinModel random_wh_system(const SystemRecipe& recipe, Rng& rng) {
    return random_wh_system_detailed(recipe, rng).model;
}

WienerHammersteinModel random_wh_system(const SystemRecipe& recipe) {
    Rng rng(recipe.rng_seed);
    return random_wh_system_detailed(recipe, rng).model;
}

}  // namespace whid
