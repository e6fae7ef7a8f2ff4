#include <doctest.h>

#include <random>
#include <stdexcept>

#include "leofa/rf.hpp"

using namespace leofa;

namespace {

Ephemeris single_slot(const std::vector<Vec3>& sats) {
    Ephemeris eph;
    eph.num_slots = 1;
    eph.num_sats = static_cast<int>(sats.size());
    eph.positions = sats;
    return eph;
}

LinkAssignment assign_in_order(const std::vector<GatewayStation>& gws) {
    // Entry v serves satellite v, gateways in order, antennas in order.
    LinkAssignment a;
    int sat = 0;
    for (const auto& g : gws)
        for (int ant = 0; ant < g.n_antennas; ++ant) {
            a.entries.push_back({g.id, ant, sat, 90.0});
            a.vertex_of_sat[sat] = static_cast<int>(a.entries.size()) - 1;
            ++sat;
        }
    return a;
}

LinkBudgetConfig toy_budget() {
    LinkBudgetConfig b;
    b.carrier_wavelength_m = constants::speed_of_light / 20e9;
    b.subchannel_bandwidth_hz = 125e6;
    b.noise_temp_k = 398.0;
    b.tx_power_w = db_to_linear(12.0);
    b.itu_threshold_linear = db_to_linear(-12.2);
    return b;
}

// Two gateways, N_at antennas each, satellites spread a few degrees
// above each gateway.
struct ToyScene {
    std::vector<GatewayStation> gws;
    std::vector<Vec3> gw_pos;
    Ephemeris eph;
    LinkAssignment assignment;
};

ToyScene make_scene(int n_antennas, double gw_separation_deg, double sat_spread_deg) {
    ToyScene s;
    s.gws = {{0, 0.0, 0.0, 0.0, n_antennas}, {1, 0.0, gw_separation_deg, 0.0, n_antennas}};
    for (const auto& g : s.gws) s.gw_pos.push_back(gateway_ecef(g, GeodeticModel::Spherical));
    std::vector<Vec3> sats;
    for (int gi = 0; gi < 2; ++gi)
        for (int k = 0; k < n_antennas; ++k) {
            const double lon = s.gws[gi].longitude_deg + (k + 1) * sat_spread_deg;
            sats.push_back(geodetic_to_ecef(0.5 * k, lon, 550e3));
        }
    s.eph = single_slot(sats);
    s.assignment = assign_in_order(s.gws);
    return s;
}

}  // namespace

TEST_SUITE("rf") {

TEST_CASE("single link matches independent dB arithmetic") {
    const GainMask sat = s1528_like_mask();
    const GainMask gw = s1428_like_mask();
    const double lambda = constants::speed_of_light / 20e9;
    const double d = 550e3;

    const double got = single_link_interference_w(db_to_linear(12.0), 0.0, 0.0, d, sat, gw, lambda);

    // Oracle: pure dB bookkeeping.
    const double fspl_db = 20.0 * std::log10(4.0 * constants::pi * d / lambda);
    CHECK(fspl_db == doctest::Approx(173.28).epsilon(1e-3));
    const double expect_dbw = 12.0 + 35.0 + 45.76 - fspl_db;
    CHECK(linear_to_db(got) == doctest::Approx(expect_dbw).epsilon(1e-12));
}

TEST_CASE("inverse-square law: doubling distance costs 6.02 dB") {
    const GainMask sat = s1528_like_mask();
    const GainMask gw = s1428_like_mask();
    const double lambda = 0.015;
    const double i1 = single_link_interference_w(10.0, 1.0, 2.0, 600e3, sat, gw, lambda);
    const double i2 = single_link_interference_w(10.0, 1.0, 2.0, 1200e3, sat, gw, lambda);
    CHECK(i1 / i2 == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("sidelobe floor scales the product linearly") {
    GainMask lo = s1428_like_mask();
    GainMask hi = s1428_like_mask();
    hi.sidelobe_floor_db = lo.sidelobe_floor_db + 6.0;
    // 170 degrees is deep in the floor region for both.
    const double a = single_link_interference_w(10.0, 0.0, 170.0, 700e3, s1528_like_mask(), lo, 0.015);
    const double b = single_link_interference_w(10.0, 0.0, 170.0, 700e3, s1528_like_mask(), hi, 0.015);
    CHECK(b / a == doctest::Approx(db_to_linear(6.0)).epsilon(1e-12));
}

TEST_CASE("zero distance rejected") {
    CHECK_THROWS_AS(
        single_link_interference_w(10.0, 0.0, 0.0, 0.0, s1528_like_mask(), s1428_like_mask(), 0.015),
        std::invalid_argument);
}

TEST_CASE("noise power equals kappa T B") {
    const double n = noise_power_w(constants::boltzmann, 398.0, 62.5e6);
    CHECK(n == doctest::Approx(1.380649e-23 * 398.0 * 62.5e6).epsilon(1e-15));
    CHECK(n == doctest::Approx(3.434e-13).epsilon(1e-3));
    CHECK(noise_power_w(constants::boltzmann, 398.0, 125e6) == doctest::Approx(2.0 * n).epsilon(1e-15));
    CHECK(linear_to_db(i_over_n(n, n)) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("interferer set: lone satellite sees nobody") {
    const std::vector<GatewayStation> gws = {{0, 0.0, 0.0, 0.0, 1}};
    const Vec3 gp = gateway_ecef(gws[0], GeodeticModel::Spherical);
    const Ephemeris eph = single_slot({geodetic_to_ecef(0.0, 1.0, 550e3)});
    const SlotGeometry geo(assign_in_order(gws), eph, gws, {gp}, s1528_like_mask(),
                           s1428_like_mask(), toy_budget());
    CHECK(geo.interferer_set(0).empty());
}

TEST_CASE("interferer set honors the victim's horizon") {
    const std::vector<GatewayStation> gws = {{0, 0.0, 0.0, 0.0, 1}, {1, 0.0, 150.0, 0.0, 1}};
    std::vector<Vec3> gp = {gateway_ecef(gws[0], GeodeticModel::Spherical),
                            gateway_ecef(gws[1], GeodeticModel::Spherical)};
    // Satellite 0 above gateway 0; satellite 1 above gateway 1, far below
    // gateway 0's horizon (cross-check with the elevation oracle).
    const Ephemeris eph =
        single_slot({geodetic_to_ecef(0.0, 2.0, 550e3), geodetic_to_ecef(0.0, 149.0, 550e3)});
    REQUIRE(elevation_angle_deg(gp[0], eph.at(0, 1)) < 0.0);
    const SlotGeometry geo(assign_in_order(gws), eph, gws, gp, s1528_like_mask(),
                           s1428_like_mask(), toy_budget());
    CHECK(geo.interferer_set(0).empty());
    CHECK(geo.co_visible(1, 0) == false);

    // A nearby co-visible satellite is included.
    const Ephemeris eph2 =
        single_slot({geodetic_to_ecef(0.0, 2.0, 550e3), geodetic_to_ecef(1.0, 3.0, 550e3)});
    LinkAssignment a2 = assign_in_order({{0, 0.0, 0.0, 0.0, 2}});
    const std::vector<GatewayStation> gws2 = {{0, 0.0, 0.0, 0.0, 2}};
    const SlotGeometry geo2(a2, eph2, gws2, {gp[0]}, s1528_like_mask(), s1428_like_mask(),
                            toy_budget());
    CHECK(geo2.interferer_set(0) == std::vector<int>{1});
}

TEST_CASE("aggregate interference is additive and scales linearly") {
    // Dyadic powers make the partial sums exact.
    std::vector<double> parts = {0.5, 0.25, 0.125, 0.125, 0.0625, 1.0, 2.0};
    double total = 0.0;
    for (double p : parts) total += p;
    double first = 0.0, second = 0.0;
    for (size_t i = 0; i < 3; ++i) first += parts[i];
    for (size_t i = 3; i < parts.size(); ++i) second += parts[i];
    CHECK(first + second == total);

    double scaled = 0.0;
    for (double p : parts) scaled += 4.0 * p;
    CHECK(scaled == 4.0 * total);
}

TEST_CASE("equal interferers degrade aggregate I/N by 10 log10(N_at - 1)") {
    const double single = 7.25e-15;
    for (int n_at : {8, 25}) {
        double agg = 0.0;
        for (int i = 0; i < n_at - 1; ++i) agg += single;
        const double diff_db = linear_to_db(agg) - linear_to_db(single);
        CHECK(diff_db == doctest::Approx(10.0 * std::log10(n_at - 1.0)).epsilon(1e-12));
    }
    CHECK(10.0 * std::log10(7.0) == doctest::Approx(8.45).epsilon(1e-3));
    CHECK(10.0 * std::log10(24.0) == doctest::Approx(13.80).epsilon(1e-3));
}

TEST_CASE("a link exactly at the regulation boundary complies") {
    const double th = db_to_linear(-12.2);
    CHECK(!is_link_failure(th, th));
    CHECK(is_link_failure(std::nextafter(th, 1.0), th));
    CHECK(!is_link_failure(0.0, th));
}

TEST_CASE("count_link_failures equals a from-scratch re-evaluation") {
    const ToyScene s = make_scene(3, 3.0, 1.2);
    const LinkBudgetConfig budget = toy_budget();
    const GainMask sm = s1528_like_mask(), gm = s1428_like_mask();
    const SlotGeometry geo(s.assignment, s.eph, s.gws, s.gw_pos, sm, gm, budget);
    const std::vector<int> colors = {1, 2, 1, 1, 2, 1};

    // Oracle: recompute every pairwise term from raw positions.
    int expect = 0;
    const double noise = budget.noise_w();
    for (int v = 0; v < 6; ++v) {
        const Vec3 sat_v = s.eph.at(0, s.assignment.entries[v].sat_id);
        const Vec3 gw_v = s.gw_pos[s.assignment.entries[v].gateway_id];
        double agg = 0.0;
        for (int u = 0; u < 6; ++u) {
            if (u == v || colors[u] != colors[v]) continue;
            const Vec3 sat_u = s.eph.at(0, s.assignment.entries[u].sat_id);
            if (elevation_angle_deg(gw_v, sat_u) <= 0.0) continue;
            const Vec3 gw_u = s.gw_pos[s.assignment.entries[u].gateway_id];
            const double theta_tx = angle_between_deg(gw_u - sat_u, gw_v - sat_u);
            const double theta_rx = angle_between_deg(sat_v - gw_v, sat_u - gw_v);
            const double d = (gw_v - sat_u).norm();
            const double fspl = std::pow(4.0 * constants::pi * d / budget.carrier_wavelength_m, 2.0);
            agg += budget.tx_power_w * db_to_linear(gain_db(sm, theta_tx)) *
                   db_to_linear(gain_db(gm, theta_rx)) / fspl;
        }
        if (agg / noise > budget.itu_threshold_linear) ++expect;
    }
    CHECK(expect > 0);  // the scene is dense enough to matter
    CHECK(count_link_failures(geo, colors, budget.itu_threshold_linear) == expect);
}

TEST_CASE("count_link_failures rejects uncolored vertices") {
    const ToyScene s = make_scene(2, 3.0, 1.0);
    const SlotGeometry geo(s.assignment, s.eph, s.gws, s.gw_pos, s1528_like_mask(),
                           s1428_like_mask(), toy_budget());
    CHECK_THROWS_AS(count_link_failures(geo, {1, 0, 1, 2}, 0.06), std::invalid_argument);
}

TEST_CASE("cn sinr capacity closed forms") {
    const double B = 62.5e6;
    const double N = noise_power_w(constants::boltzmann, 398.0, B);

    SUBCASE("zero interference reduces SINR to C/N") {
        const LinkQuality q = cn_sinr_capacity(100.0 * N, 0.0, N, B);
        CHECK(q.sinr_linear == doctest::Approx(q.cn_linear).epsilon(1e-15));
        CHECK(q.capacity_bps == doctest::Approx(B * std::log2(101.0)).epsilon(1e-15));
    }
    SUBCASE("ITU-boundary interference") {
        const double ion = 0.0603;
        const LinkQuality q = cn_sinr_capacity(100.0 * N, ion * N, N, B);
        CHECK(q.sinr_linear == doctest::Approx(100.0 / 1.0603).epsilon(1e-12));
        CHECK(q.sinr_linear == doctest::Approx(94.31).epsilon(1e-4));
        CHECK(q.capacity_bps == doctest::Approx(B * std::log2(1.0 + 100.0 / 1.0603)).epsilon(1e-12));
        CHECK(q.capacity_bps == doctest::Approx(410.9e6).epsilon(1e-3));
    }
}

TEST_CASE("capacity degradation closed forms") {
    SUBCASE("no interference anywhere means zero system degradation") {
        std::vector<double> r = {100e6, 250e6}, rb = r;
        CHECK(system_capacity_degradation(r, rb) == doctest::Approx(0.0).scale(1.0));
    }
    SUBCASE("single link at the boundary with C/N = 20 dB") {
        const double cn = 100.0;
        const double sinr = cn / 1.0603;
        const double got = capacity_degradation(sinr, cn);
        const double expect = 1.0 - std::log2(1.0 + sinr) / std::log2(1.0 + cn);
        CHECK(got == doctest::Approx(expect).epsilon(1e-15));
        CHECK(got == doctest::Approx(0.01256).epsilon(2e-3));
    }
    SUBCASE("two-link system matches direct summation") {
        const double B = 62.5e6;
        std::vector<double> r = {B * std::log2(1.0 + 80.0), B * std::log2(1.0 + 60.0)};
        std::vector<double> rb = {B * std::log2(1.0 + 90.0), B * std::log2(1.0 + 70.0)};
        CHECK(system_capacity_degradation(r, rb) ==
              doctest::Approx(1.0 - (r[0] + r[1]) / (rb[0] + rb[1])).epsilon(1e-15));
    }
}

TEST_CASE("compliant-link degradation bound") {
    const double ith = 0.0603;
    SUBCASE("reference value at C/N = 20 dB") {
        const double bound = capacity_degradation_bound(100.0, ith);
        CHECK(bound == doctest::Approx(std::log(1.0603) / std::log(100.0)).epsilon(1e-15));
        CHECK(bound == doctest::Approx(0.012717).epsilon(1e-4));
        // The boundary-interference degradation satisfies it.
        CHECK(capacity_degradation(100.0 / 1.0603, 100.0) <= bound);
    }
    SUBCASE("zero interference is always within the bound") {
        CHECK(capacity_degradation(100.0, 100.0) == doctest::Approx(0.0).scale(1.0));
        CHECK(capacity_bound_holds(100.0, 0.0, ith));
    }
    SUBCASE("random compliant links satisfy bound and positive gap") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> cn_db(0.5, 60.0);
        std::uniform_real_distribution<double> frac(0.0, 1.0);
        for (int i = 0; i < 2000; ++i) {
            const double cn = db_to_linear(cn_db(rng));
            const double ion = frac(rng) * ith;
            const double sinr = cn / (1.0 + ion);
            if (sinr <= 1.0) continue;
            CHECK(capacity_bound_holds(cn, ion, ith));
            CHECK(capacity_bound_gap(sinr, cn) > 0.0);
        }
    }
    SUBCASE("violating preconditions is rejected") {
        CHECK_THROWS_AS(capacity_bound_holds(100.0, 0.1, ith), std::invalid_argument);
        CHECK_THROWS_AS(capacity_bound_holds(1.01, 0.05, ith), std::invalid_argument);
    }
}

}  // TEST_SUITE
