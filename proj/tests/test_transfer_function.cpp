#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "whid/errors.hpp"
#include "whid/transfer_function.hpp"

using namespace whid;
using cd = std::complex<double>;

namespace {

bool contains_root(const std::vector<cd>& roots, cd target, double tol = 1e-9) {
    return std::any_of(roots.begin(), roots.end(),
                       [&](const cd& r) { return std::abs(r - target) < tol; });
}

}  // namespace

TEST_CASE("TransferFunction construction normalizes and trims") {
    SUBCASE("den[0] normalized to 1") {
        const TransferFunction tf({2.0, 4.0}, {2.0, 1.0});
        CHECK(tf.num() == std::vector<double>{1.0, 2.0});
        CHECK(tf.den() == std::vector<double>{1.0, 0.5});
    }
    SUBCASE("trailing zeros trimmed") {
        const TransferFunction tf({1.0, 0.0, 0.0}, {1.0, 0.5, 0.0});
        CHECK(tf.num_order() == 0);
        CHECK(tf.den_order() == 1);
    }
    SUBCASE("invalid input throws") {
        CHECK_THROWS_AS(TransferFunction({}, {1.0}), DegenerateError);
        CHECK_THROWS_AS(TransferFunction({1.0}, {}), DegenerateError);
        CHECK_THROWS_AS(TransferFunction({1.0}, {0.0, 1.0}), DegenerateError);
    }
    SUBCASE("identity") {
        CHECK(TransferFunction().is_identity());
        CHECK(TransferFunction({1.0, 0.0}, {1.0}).is_identity());
        CHECK_FALSE(TransferFunction({2.0}, {1.0}).is_identity());
        CHECK(TransferFunction({2.0}, {1.0}).is_static_gain());
    }
}

TEST_CASE("polynomial_roots solves hand-checked cases") {
    SUBCASE("quadratic (x-2)(x-3)") {
        const auto roots = polynomial_roots({6.0, -5.0, 1.0});
        REQUIRE(roots.size() == 2);
        CHECK(contains_root(roots, {2.0, 0.0}));
        CHECK(contains_root(roots, {3.0, 0.0}));
    }
    SUBCASE("x^2 + 1") {
        const auto roots = polynomial_roots({1.0, 0.0, 1.0});
        REQUIRE(roots.size() == 2);
        CHECK(contains_root(roots, {0.0, 1.0}));
        CHECK(contains_root(roots, {0.0, -1.0}));
    }
    SUBCASE("cubic (x-1)(x-2)(x-3)") {
        const auto roots = polynomial_roots({-6.0, 11.0, -6.0, 1.0});
        REQUIRE(roots.size() == 3);
        CHECK(contains_root(roots, {1.0, 0.0}, 1e-8));
        CHECK(contains_root(roots, {2.0, 0.0}, 1e-8));
        CHECK(contains_root(roots, {3.0, 0.0}, 1e-8));
    }
    SUBCASE("origin roots deflated exactly") {
        // -x^2 + x^3 = x^2 (x - 1)
        const auto roots = polynomial_roots({0.0, 0.0, -1.0, 1.0});
        REQUIRE(roots.size() == 3);
        CHECK(std::count_if(roots.begin(), roots.end(),
                            [](const cd& r) { return r == cd(0.0, 0.0); }) == 2);
        CHECK(contains_root(roots, {1.0, 0.0}));
    }
    SUBCASE("constant has no roots") {
        CHECK(polynomial_roots({5.0}).empty());
    }
    SUBCASE("leading zero coefficients trimmed") {
        const auto roots = polynomial_roots({-2.0, 1.0, 0.0});
        REQUIRE(roots.size() == 1);
        CHECK(contains_root(roots, {2.0, 0.0}));
    }
}

TEST_CASE("tf_from_zpk expands factors into real coefficients") {
    PoleZeroGain zpk;
    zpk.zeros = {{0.5, 0.0}};
    zpk.poles = {{0.25, 0.5}, {0.25, -0.5}};
    zpk.gain = 2.0;
    const TransferFunction tf = tf_from_zpk(zpk);

    // 2 (1 - 0.5 x) / ((1 - (0.25 + 0.5j) x)(1 - (0.25 - 0.5j) x))
    REQUIRE(tf.num().size() == 2);
    CHECK(tf.num()[0] == doctest::Approx(2.0));
    CHECK(tf.num()[1] == doctest::Approx(-1.0));
    REQUIRE(tf.den().size() == 3);
    CHECK(tf.den()[0] == doctest::Approx(1.0));
    CHECK(tf.den()[1] == doctest::Approx(-0.5));
    CHECK(tf.den()[2] == doctest::Approx(0.3125));

    SUBCASE("unmatched complex root throws") {
        zpk.poles = {{0.25, 0.5}};
        CHECK_THROWS_AS(tf_from_zpk(zpk), ConjugacyError);
    }
}

TEST_CASE("zpk_from_tf inverts tf_from_zpk") {
    const TransferFunction tf({2.0, -1.0}, {1.0, -0.5, 0.3125});
    const PoleZeroGain zpk = zpk_from_tf(tf);

    CHECK(zpk.gain == doctest::Approx(2.0));
    REQUIRE(zpk.zeros.size() == 1);
    CHECK(contains_root(zpk.zeros, {0.5, 0.0}));
    REQUIRE(zpk.poles.size() == 2);
    CHECK(contains_root(zpk.poles, {0.25, 0.5}));
    CHECK(contains_root(zpk.poles, {0.25, -0.5}));
    // matched pairs come back as exact conjugates
    CHECK(zpk.poles[0] == std::conj(zpk.poles[1]));

    SUBCASE("round trip through expansion") {
        const TransferFunction back = tf_from_zpk(zpk);
        REQUIRE(back.num().size() == tf.num().size());
        REQUIRE(back.den().size() == tf.den().size());
        for (std::size_t i = 0; i < tf.num().size(); ++i) {
            CHECK(back.num()[i] == doctest::Approx(tf.num()[i]).epsilon(1e-12));
        }
        for (std::size_t i = 0; i < tf.den().size(); ++i) {
            CHECK(back.den()[i] == doctest::Approx(tf.den()[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("zpk_from_tf rejects systems without the factored form") {
    SUBCASE("zero numerator") {
        CHECK_THROWS_AS(zpk_from_tf(TransferFunction({0.0}, {1.0, -0.5})), DegenerateError);
    }
    SUBCASE("pure delay") {
        CHECK_THROWS_AS(zpk_from_tf(TransferFunction({0.0, 1.0}, {1.0, -0.5})),
                        DegenerateError);
    }
}

TEST_CASE("multiply forms the series connection") {
    const TransferFunction a({1.0, 1.0}, {1.0});
    const TransferFunction b({1.0, -1.0}, {1.0});
    const TransferFunction c = multiply(a, b);
    CHECK(c.num() == std::vector<double>{1.0, 0.0, -1.0});
    CHECK(c.den() == std::vector<double>{1.0});

    SUBCASE("identity is neutral") {
        const TransferFunction h({1.0, 0.3}, {1.0, -0.4});
        CHECK(multiply(h, TransferFunction()) == h);
        CHECK(multiply(TransferFunction(), h) == h);
    }
}

TEST_CASE("pair_conjugates partitions roots") {
    SUBCASE("pair plus real") {
        const auto part = pair_conjugates({{1.0, 2.0}, {1.0, -2.0}, {3.0, 0.0}});
        REQUIRE(part.pair_representatives.size() == 1);
        CHECK(part.pair_representatives[0].real() == doctest::Approx(1.0));
        CHECK(part.pair_representatives[0].imag() == doctest::Approx(2.0));
        CHECK(part.pair_representatives[0].imag() > 0.0);
        REQUIRE(part.reals.size() == 1);
        CHECK(part.reals[0] == doctest::Approx(3.0));
    }
    SUBCASE("slightly asymmetric pair is symmetrized") {
        const auto part = pair_conjugates({{1.0, 2.0 + 1e-10}, {1.0, -2.0}});
        REQUIRE(part.pair_representatives.size() == 1);
        CHECK(part.pair_representatives[0].imag() == doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("tiny imaginary part counts as real") {
        const auto part = pair_conjugates({{1.0, 1e-12}});
        CHECK(part.pair_representatives.empty());
        REQUIRE(part.reals.size() == 1);
        CHECK(part.reals[0] == doctest::Approx(1.0));
    }
    SUBCASE("unmatched complex root throws") {
        CHECK_THROWS_AS(pair_conjugates({{1.0, 2.0}, {3.0, 0.0}}), ConjugacyError);
    }
}

TEST_CASE("stability from the largest pole magnitude") {
    CHECK(TransferFunction({1.0}, {1.0, -0.9}).max_pole_magnitude() ==
          doctest::Approx(0.9));
    CHECK(TransferFunction({1.0}, {1.0, -0.9}).is_stable());
    CHECK_FALSE(TransferFunction({1.0}, {1.0, -1.1}).is_stable());
    // static gains have no poles at all
    CHECK(TransferFunction({2.0}, {1.0}).is_stable());

    SUBCASE("hint from tf_from_zpk matches rooted value") {
        PoleZeroGain zpk;
        zpk.poles = {{0.3, 0.6}, {0.3, -0.6}};
        const TransferFunction tf = tf_from_zpk(zpk);
        const TransferFunction rebuilt(tf.num(), tf.den());
        CHECK(tf.max_pole_magnitude() ==
              doctest::Approx(rebuilt.max_pole_magnitude()).epsilon(1e-12));
    }
}
