#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "leofa/antenna.hpp"

using namespace leofa;

TEST_SUITE("antenna") {

TEST_CASE("preset peak gains") {
    CHECK(gain_db(s1528_like_mask(), 0.0) == doctest::Approx(35.0));
    CHECK(gain_db(s1428_like_mask(), 0.0) == doctest::Approx(45.76));
}

TEST_CASE("back lobe sits at the floor") {
    CHECK(gain_db(s1528_like_mask(), 180.0) == doctest::Approx(-6.75));
    CHECK(gain_db(s1428_like_mask(), 180.0) == doctest::Approx(-10.0));
}

TEST_CASE("negative off-axis angle rejected") {
    CHECK_THROWS_AS(gain_db(s1528_like_mask(), -0.1), std::invalid_argument);
}

TEST_CASE("strict decrease across the main lobe") {
    for (const GainMask& m : {s1528_like_mask(), s1428_like_mask()}) {
        double prev = gain_db(m, 0.0);
        for (double phi = 0.01; phi <= m.half_beamwidth_deg; phi += 0.01) {
            const double g = gain_db(m, phi);
            CHECK(g < prev);
            prev = g;
        }
    }
}

TEST_CASE("envelope is non-increasing on a 0.01 degree grid") {
    for (const GainMask& m : {s1528_like_mask(), s1428_like_mask()}) {
        double prev = gain_db(m, 0.0);
        for (double phi = 0.01; phi <= 180.0; phi += 0.01) {
            const double g = gain_db(m, phi);
            CHECK(g <= prev + 1e-12);
            prev = g;
        }
    }
}

TEST_CASE("sharp near-boresight rolloff") {
    for (const GainMask& m : {s1528_like_mask(), s1428_like_mask()})
        CHECK(gain_db(m, 0.0) - gain_db(m, 5.0) >= 20.0);
}

TEST_CASE("floor never undercut") {
    for (const GainMask& m : {s1528_like_mask(), s1428_like_mask()})
        for (double phi = 0.0; phi <= 180.0; phi += 0.5)
            CHECK(gain_db(m, phi) >= m.sidelobe_floor_db);
}

TEST_CASE("multi-segment rolloff chains by continuity") {
    GainMask m = s1428_like_mask();
    m.rolloff = {{2.0, 20.0}, {10.0, 30.0}};
    m.validate();
    // Value just above the second start continues from the first segment.
    const double at_10 = gain_db(m, 10.0);
    const double expect = (m.peak_gain_db - 3.0 * (2.0 / m.half_beamwidth_deg) * (2.0 / m.half_beamwidth_deg)) -
                          20.0 * std::log10(10.0 / 2.0);
    CHECK(at_10 == doctest::Approx(expect));
    CHECK(gain_db(m, 20.0) == doctest::Approx(expect - 30.0 * std::log10(2.0)));
}

TEST_CASE("validate rejects malformed masks") {
    GainMask m = s1528_like_mask();
    m.rolloff = {{4.0, 25.0}, {3.0, 25.0}};  // non-increasing starts
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m = s1528_like_mask();
    m.rolloff[0].slope_db_per_decade = -1.0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m = s1528_like_mask();
    m.half_beamwidth_deg = 0.0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m = s1528_like_mask();
    m.sidelobe_floor_db = 99.0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}

}  // TEST_SUITE
