#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "whid/allocation.hpp"
#include "whid/bla.hpp"
#include "whid/errors.hpp"
#include "whid/filtering.hpp"
#include "whid/model.hpp"
#include "whid/signal.hpp"

using namespace whid;
using cd = std::complex<double>;

namespace {

const std::vector<int> kCubic{1, 2, 3};

PoleZeroGain sample_zpk() {
    PoleZeroGain zpk;
    zpk.poles = {{0.5, 0.0}, {0.3, 0.4}, {0.3, -0.4}};
    zpk.zeros = {{-0.2, 0.0}};
    zpk.gain = 2.0;
    return zpk;
}

}  // namespace

TEST_CASE("AllocationVector string form") {
    AllocationVector alloc{{1, 0, 1, 1}};
    CHECK(alloc.to_string() == "1011");
    CHECK(AllocationVector::from_string("1011") == alloc);
    CHECK(AllocationVector::from_string("").size() == 0);
    CHECK_THROWS_AS(AllocationVector::from_string("10x1"), ConfigError);

    SUBCASE("lexicographic order") {
        CHECK(AllocationVector{{0, 1}} < AllocationVector{{1, 0}});
        CHECK(AllocationVector{{0, 0}} < AllocationVector{{0, 1}});
        CHECK_FALSE(AllocationVector{{1, 0}} < AllocationVector{{1, 0}});
    }
}

TEST_CASE("group_conjugates partitions and orders groups deterministically") {
    const PoleZeroGroups groups = group_conjugates(sample_zpk());

    CHECK(groups.group_count() == 3);
    REQUIRE(groups.pole_groups.size() == 2);
    REQUIRE(groups.zero_groups.size() == 1);
    CHECK(groups.source_gain == doctest::Approx(2.0));

    // equal magnitudes 0.5; the real root has the smaller angle
    CHECK_FALSE(groups.pole_groups[0].is_pair());
    CHECK(groups.pole_groups[0].representative().real() == doctest::Approx(0.5));
    CHECK(groups.pole_groups[1].is_pair());
    CHECK(groups.pole_groups[1].representative().imag() == doctest::Approx(0.4));
    CHECK_FALSE(groups.zero_groups[0].is_pair());

    SUBCASE("ungrouped flattens back to the same root multiset") {
        const PoleZeroGain flat = ungrouped(groups);
        CHECK(flat.poles.size() == 3);
        CHECK(flat.zeros.size() == 1);
        CHECK(flat.gain == doctest::Approx(2.0));
    }
    SUBCASE("unpaired complex root is rejected") {
        PoleZeroGain bad;
        bad.poles = {{0.3, 0.4}};
        CHECK_THROWS_AS(group_conjugates(bad), ConjugacyError);
    }
}

TEST_CASE("build_split materializes both blocks with unit gain") {
    const PoleZeroGroups groups = group_conjugates(sample_zpk());

    // bit order: [pole 0.5, pole pair, zero -0.2]
    const auto [front, back] = build_split(groups, AllocationVector{{1, 0, 0}});
    REQUIRE(front.den().size() == 2);
    CHECK(front.num() == std::vector<double>{1.0});
    CHECK(front.den()[1] == doctest::Approx(-0.5));

    // back: pair of poles and the zero
    REQUIRE(back.den().size() == 3);
    CHECK(back.den()[1] == doctest::Approx(-0.6));
    CHECK(back.den()[2] == doctest::Approx(0.25));
    REQUIRE(back.num().size() == 2);
    CHECK(back.num()[0] == doctest::Approx(1.0));
    CHECK(back.num()[1] == doctest::Approx(0.2));

    SUBCASE("length mismatch throws") {
        CHECK_THROWS_AS(build_split(groups, AllocationVector{{1, 0}}), DegenerateError);
    }
    SUBCASE("empty side degenerates to the identity") {
        const auto [f2, b2] = build_split(groups, AllocationVector{{0, 0, 0}});
        CHECK(f2.is_identity());
        CHECK_FALSE(b2.is_identity());
    }
}

TEST_CASE("estimate_nonlinearity recovers the true weights on noise-free data") {
    WienerHammersteinModel model;
    model.front = TransferFunction({1.0, 0.5}, {1.0, -0.6});
    model.back = TransferFunction({1.0}, {1.0, 0.3});
    model.nonlinearity = StaticNonlinearity{kCubic, {3.0, 0.1, -0.2}};

    Rng rng(17);
    const Signal u = generate_periodic_gaussian(256, 1, 1.0, rng);
    const Signal y = simulate_wh(model, u);

    const FitResult fit = estimate_nonlinearity(model.front, model.back, u, y, kCubic);
    REQUIRE(fit.weights.size() == 3);
    CHECK(fit.weights[0] == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(fit.weights[1] == doctest::Approx(0.1).epsilon(1e-8));
    CHECK(fit.weights[2] == doctest::Approx(-0.2).epsilon(1e-8));
    CHECK(fit.mse < 1e-16 * variance(y));
    CHECK(fit.condition_estimate >= 1.0);

    SUBCASE("a front gain rescale is absorbed by the weights") {
        const TransferFunction scaled_front({2.0, 1.0}, {1.0, -0.6});
        const FitResult scaled = estimate_nonlinearity(scaled_front, model.back, u, y, kCubic);
        CHECK(scaled.weights[0] == doctest::Approx(3.0 / 2.0).epsilon(1e-8));
        CHECK(scaled.weights[1] == doctest::Approx(0.1 / 4.0).epsilon(1e-8));
        CHECK(scaled.weights[2] == doctest::Approx(-0.2 / 8.0).epsilon(1e-8));
        CHECK(scaled.mse < 1e-16 * variance(y));
    }
}

TEST_CASE("allocation_cost agrees with the full fit") {
    WienerHammersteinModel model;
    model.front = TransferFunction({1.0}, {1.0, -0.6});
    model.back = TransferFunction({1.0}, {1.0, 0.3});
    model.nonlinearity = StaticNonlinearity{kCubic, {3.0, 0.2, -0.1}};
    Rng rng(29);
    const Signal u = generate_periodic_gaussian(128, 1, 1.0, rng);
    const Signal y = simulate_wh(model, u);

    PoleZeroGain zpk;
    zpk.poles = {{0.6, 0.0}, {-0.3, 0.0}};
    const PoleZeroGroups groups = group_conjugates(zpk);

    // group order by magnitude: [-0.3, 0.6]; the true split is "01"
    const AllocationVector truth{{0, 1}};
    const double cost = allocation_cost(groups, truth, u, y, kCubic);
    const FitResult fit = fit_allocation(groups, truth, u, y, kCubic);
    CHECK(cost == doctest::Approx(fit.mse).epsilon(1e-12));
    CHECK(cost < 1e-14 * variance(y));

    SUBCASE("the wrong split costs orders of magnitude more") {
        const double wrong = allocation_cost(groups, AllocationVector{{1, 0}}, u, y, kCubic);
        CHECK(wrong > 1e6 * cost);
    }
}

TEST_CASE("evaluator rejects invalid problems") {
    Rng rng(3);
    const Signal u = generate_periodic_gaussian(64, 1, 1.0, rng);
    const Signal y = u;

    SUBCASE("unstable pole group") {
        PoleZeroGain zpk;
        zpk.poles = {{1.2, 0.0}};
        const PoleZeroGroups groups = group_conjugates(zpk);
        CHECK_THROWS_AS(allocation_cost(groups, AllocationVector{{0}}, u, y, kCubic),
                        InstabilityError);
    }
    SUBCASE("length mismatch") {
        Signal longer = u;
        longer.samples.push_back(0.0);
        CHECK_THROWS_AS(allocation_cost(PoleZeroGroups{}, AllocationVector{}, u, longer, kCubic),
                        DegenerateError);
    }
    SUBCASE("bad degrees") {
        const std::vector<int> twice{2, 2};
        CHECK_THROWS_AS(allocation_cost(PoleZeroGroups{}, AllocationVector{}, u, y, twice),
                        DegenerateError);
    }
}

TEST_CASE("rank-deficient fits fall back to the minimum-norm solution") {
    // a zero input makes every regressor column vanish
    Signal u;
    u.samples.assign(64, 0.0);
    Signal y;
    y.samples.assign(64, 1.0);
    const FitResult fit = fit_allocation(PoleZeroGroups{}, AllocationVector{}, u, y, kCubic);
    CHECK(std::isinf(fit.condition_estimate));
    CHECK(fit.mse == doctest::Approx(1.0));
    for (const double w : fit.weights) {
        CHECK(w == doctest::Approx(0.0));
    }
}
