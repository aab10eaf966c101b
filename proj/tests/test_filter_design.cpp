#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "whid/errors.hpp"
#include "whid/filter_design.hpp"
#include "whid/filtering.hpp"

using namespace whid;

namespace {

struct DesignCase {
    int order;
    double db;
    double cutoff;
    std::vector<double> num;
    std::vector<double> den;
};

// Coefficients frozen from an independent filter-design implementation.
const DesignCase kCheby1Cases[] = {
    {5,
     3.0,
     0.1,
     {0.00016686359383589398, 0.00083431796917947, 0.00166863593835894, 0.00166863593835894,
      0.00083431796917947, 0.00016686359383589398},
     {1.0, -4.174417217977848, 7.390281693349016, -6.893184086020134, 3.380049037200824,
      -0.6973897915491092}},
    {4,
     3.0,
     0.1,
     {0.0010513933473130974, 0.00420557338925239, 0.0063083600838785845, 0.00420557338925239,
      0.0010513933473130974},
     {1.0, -3.269166462789765, 4.340280246399758, -2.741910335724808, 0.6945586733507563}},
    {8,
     3.0,
     0.05,
     {2.699376829706747e-09, 2.1595014637653977e-08, 7.558255123178892e-08,
      1.5116510246357784e-07, 1.889563780794723e-07, 1.5116510246357784e-07,
      7.558255123178892e-08, 2.1595014637653977e-08, 2.699376829706747e-09},
     {1.0, -7.627892605771821, 25.645502645221665, -49.63065434102591, 60.46423384945026,
      -47.48195789265555, 23.470563024308753, -6.676664055563344, 0.8368703521565584}},
    {3,
     3.0,
     0.12,
     {0.011128953238126627, 0.03338685971437988, 0.03338685971437988, 0.011128953238126627},
     {1.0, -2.1783049417350098, 1.9066790753755467, -0.6393425077355238}},
};

const DesignCase kCheby2Cases[] = {
    {5,
     50.0,
     0.1,
     {0.0042735902367990585, -0.007033102235913521, 0.004432228012864708, 0.00443222801286471,
      -0.007033102235913519, 0.0042735902367990585},
     {1.0, -3.885495014933048, 6.140096753149042, -4.916243779991851, 1.990505770515028,
      -0.3255182967116696}},
    {1, 50.0, 0.2, {0.002292274100180651, 0.002292274100180651}, {1.0, -0.9954154517996388}},
    {6,
     50.0,
     0.08,
     {0.003975101577260778, -0.013062466739420079, 0.022719565848487035, -0.026294342139176564,
      0.022719565848487035, -0.01306246673942008, 0.003975101577260778},
     {1.0, -4.71078749112121, 9.361652143605902, -10.02619177266655, 6.0953033647126205,
      -1.9923459636553333, 0.2733397783580495}},
    {3,
     50.0,
     0.12,
     {0.0037816248861218004, -0.0011665807632179929, -0.0011665807632179929,
      0.0037816248861218004},
     {1.0, -2.6348978136041072, 2.3335655597678397, -0.6934376579179246}},
};

void check_matches(const TransferFunction& tf, const DesignCase& c) {
    REQUIRE(tf.num().size() == c.num.size());
    REQUIRE(tf.den().size() == c.den.size());
    for (std::size_t i = 0; i < c.num.size(); ++i) {
        CHECK(tf.num()[i] == doctest::Approx(c.num[i]).epsilon(1e-9));
    }
    for (std::size_t i = 0; i < c.den.size(); ++i) {
        CHECK(tf.den()[i] == doctest::Approx(c.den[i]).epsilon(1e-9));
    }
}

}  // namespace

TEST_CASE("cheby1_design matches the frozen oracle coefficients") {
    for (const DesignCase& c : kCheby1Cases) {
        CAPTURE(c.order);
        CAPTURE(c.cutoff);
        check_matches(cheby1_design(c.order, c.db, c.cutoff), c);
    }
}

TEST_CASE("cheby2_design matches the frozen oracle coefficients") {
    for (const DesignCase& c : kCheby2Cases) {
        CAPTURE(c.order);
        CAPTURE(c.cutoff);
        check_matches(cheby2_design(c.order, c.db, c.cutoff), c);
    }
}

TEST_CASE("designed filters are stable and fully factored") {
    for (const int order : {1, 2, 3, 5, 8}) {
        CAPTURE(order);
        const PoleZeroGain lp1 = cheby1_design_zpk(order, 3.0, 0.1);
        CHECK(static_cast<int>(lp1.poles.size()) == order);
        CHECK(static_cast<int>(lp1.zeros.size()) == order);
        for (const auto& p : lp1.poles) {
            CHECK(std::abs(p) < 1.0);
        }
        // type 1 digital zeros all sit at the Nyquist point
        for (const auto& z : lp1.zeros) {
            CHECK(std::abs(z - std::complex<double>(-1.0, 0.0)) < 1e-9);
        }

        const PoleZeroGain lp2 = cheby2_design_zpk(order, 50.0, 0.1);
        CHECK(static_cast<int>(lp2.poles.size()) == order);
        CHECK(static_cast<int>(lp2.zeros.size()) == order);
        for (const auto& p : lp2.poles) {
            CHECK(std::abs(p) < 1.0);
        }
    }
}

TEST_CASE("zpk and coefficient forms of a design agree") {
    const TransferFunction direct = cheby1_design(4, 3.0, 0.08);
    const TransferFunction expanded = tf_from_zpk(cheby1_design_zpk(4, 3.0, 0.08));
    REQUIRE(direct.num().size() == expanded.num().size());
    REQUIRE(direct.den().size() == expanded.den().size());
    for (std::size_t i = 0; i < direct.num().size(); ++i) {
        CHECK(direct.num()[i] == doctest::Approx(expanded.num()[i]).epsilon(1e-12));
    }
    for (std::size_t i = 0; i < direct.den().size(); ++i) {
        CHECK(direct.den()[i] == doctest::Approx(expanded.den()[i]).epsilon(1e-12));
    }
}

TEST_CASE("passband and stopband levels at the design edges") {
    SUBCASE("type 1 ripples between 0 and -3 dB in the passband") {
        const TransferFunction tf = cheby1_design(5, 3.0, 0.1);
        // odd order: unity gain at DC
        CHECK(std::abs(freq_response_at(tf, 0.0)) == doctest::Approx(1.0).epsilon(1e-9));
        const double edge_db = 20.0 * std::log10(std::abs(freq_response_at(tf, 0.1)));
        CHECK(edge_db == doctest::Approx(-3.0).epsilon(1e-6));
    }
    SUBCASE("type 2 reaches the attenuation floor at the cutoff") {
        const TransferFunction tf = cheby2_design(5, 50.0, 0.1);
        const double edge_db = 20.0 * std::log10(std::abs(freq_response_at(tf, 0.1)));
        CHECK(edge_db == doctest::Approx(-50.0).epsilon(1e-6));
    }
}

TEST_CASE("design parameter validation") {
    CHECK_THROWS_AS(cheby1_design(0, 3.0, 0.1), DesignError);
    CHECK_THROWS_AS(cheby1_design(21, 3.0, 0.1), DesignError);
    CHECK_THROWS_AS(cheby1_design(5, 0.0, 0.1), DesignError);
    CHECK_THROWS_AS(cheby1_design(5, -1.0, 0.1), DesignError);
    CHECK_THROWS_AS(cheby1_design(5, 3.0, 0.0), DesignError);
    CHECK_THROWS_AS(cheby1_design(5, 3.0, 0.5), DesignError);
    CHECK_THROWS_AS(cheby2_design(0, 50.0, 0.1), DesignError);
    CHECK_THROWS_AS(cheby2_design(5, 50.0, 0.6), DesignError);
}
