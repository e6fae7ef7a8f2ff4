#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"

using namespace leofa;

namespace {

Ephemeris single_slot(const std::vector<Vec3>& sats) {
    Ephemeris eph;
    eph.num_slots = 1;
    eph.num_sats = static_cast<int>(sats.size());
    eph.positions = sats;
    return eph;
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

}  // namespace

TEST_SUITE("igraph") {

TEST_CASE("adaptive threshold keeps the tolerable prefix") {
    // I/N {0.01, 0.02, 0.04, 0.5}, budget 0.0603, weak cutoff below all:
    // prefix {0.01, 0.02} fits, 0.04 would overflow.
    const AdaptiveThreshold th = adaptive_threshold(
        {{10, 0.01}, {11, 0.02}, {12, 0.04}, {13, 0.5}}, 1e-6, 0.0603);
    CHECK(th.strong == std::vector<int>{12, 13});
    CHECK(th.threshold == doctest::Approx(0.04));
}

TEST_CASE("adaptive threshold corner cases") {
    SUBCASE("nothing above the weak cutoff") {
        const AdaptiveThreshold th = adaptive_threshold({{1, 0.001}, {2, 0.002}}, 0.01, 0.06);
        CHECK(th.strong.empty());
        CHECK(std::isinf(th.threshold));
    }
    SUBCASE("single interferer above the full budget") {
        const AdaptiveThreshold th = adaptive_threshold({{7, 0.5}}, 1e-6, 0.0603);
        CHECK(th.strong == std::vector<int>{7});
        CHECK(th.threshold == doctest::Approx(0.5));
    }
    SUBCASE("everything fits") {
        const AdaptiveThreshold th = adaptive_threshold({{1, 0.01}, {2, 0.02}}, 1e-6, 0.0603);
        CHECK(th.strong.empty());
        CHECK(std::isinf(th.threshold));
    }
    SUBCASE("boundary ties split deterministically by id") {
        // Two equal values where only one fits: the smaller id stays.
        const AdaptiveThreshold th = adaptive_threshold({{9, 0.04}, {3, 0.04}}, 1e-6, 0.05);
        CHECK(th.strong == std::vector<int>{9});
    }
}

TEST_CASE("adaptive threshold matches the greedy oracle on random tables") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> logv(-5.0, 0.5);
    std::uniform_int_distribution<int> count(0, 30);
    const double weak = db_to_linear(-13.0), budget = db_to_linear(-12.2);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::pair<int, double>> table;
        const int n = count(rng);
        for (int i = 0; i < n; ++i) table.emplace_back(i, std::pow(10.0, logv(rng)));
        const AdaptiveThreshold th = adaptive_threshold(table, weak, budget);
        CHECK(th.strong == oracles::strong_set_oracle(table, weak, budget));

        // Soundness: the tolerated above-weak remainder fits the budget.
        double sum = 0.0;
        for (const auto& [id, v] : table) {
            if (v < weak) continue;
            bool excluded = false;
            for (int s : th.strong)
                if (s == id) excluded = true;
            if (!excluded) sum += v;
        }
        CHECK(sum <= budget + 1e-12);
    }
}

TEST_CASE("lowering the weak cutoff never removes an edge") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> logv(-4.0, 0.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<int, double>> table;
        for (int i = 0; i < 12; ++i) table.emplace_back(i, std::pow(10.0, logv(rng)));
        const auto hi = adaptive_threshold(table, db_to_linear(-13.0), 0.0603);
        const auto lo = adaptive_threshold(table, db_to_linear(-20.0), 0.0603);
        for (int s : hi.strong)
            CHECK(std::find(lo.strong.begin(), lo.strong.end(), s) != lo.strong.end());
    }
}

TEST_CASE("same-gateway satellites at close angles are joined by an edge") {
    const std::vector<GatewayStation> gws = {{0, 0.0, 0.0, 0.0, 2}};
    const Vec3 gp = gateway_ecef(gws[0], GeodeticModel::Spherical);
    const Ephemeris eph =
        single_slot({geodetic_to_ecef(0.0, 1.0, 550e3), geodetic_to_ecef(0.0, 1.8, 550e3)});
    LinkAssignment a;
    a.entries = {{0, 0, 0, 80.0}, {0, 1, 1, 70.0}};
    a.vertex_of_sat = {{0, 0}, {1, 1}};
    const LinkBudgetConfig budget = toy_budget();
    const SlotGeometry geo(a, eph, gws, {gp}, s1528_like_mask(), s1428_like_mask(), budget);

    // Oracle: the single-link evaluation shows I/N well above the budget.
    CHECK(linear_to_db(geo.single_link_i_over_n(1, 0)) > -12.2 + 5.0);

    GraphBuildParams params{db_to_linear(-13.0), budget.itu_threshold_linear};
    const InterferenceGraph g = build_graph(a, geo, params);
    CHECK(g.has_edge(0, 1));
    CHECK(g.edge_count == 1);
}

TEST_CASE("satellites serving opposite sides of the planet stay disconnected") {
    const std::vector<GatewayStation> gws = {{0, 0.0, 0.0, 0.0, 1}, {1, 0.0, 178.0, 0.0, 1}};
    std::vector<Vec3> gp = {gateway_ecef(gws[0], GeodeticModel::Spherical),
                            gateway_ecef(gws[1], GeodeticModel::Spherical)};
    const Ephemeris eph =
        single_slot({geodetic_to_ecef(0.0, 1.0, 550e3), geodetic_to_ecef(0.0, 177.0, 550e3)});
    LinkAssignment a;
    a.entries = {{0, 0, 0, 80.0}, {1, 0, 1, 80.0}};
    a.vertex_of_sat = {{0, 0}, {1, 1}};
    const LinkBudgetConfig budget = toy_budget();
    const SlotGeometry geo(a, eph, gws, gp, s1528_like_mask(), s1428_like_mask(), budget);
    GraphBuildParams params{db_to_linear(-13.0), budget.itu_threshold_linear};
    const InterferenceGraph g = build_graph(a, geo, params);
    CHECK(g.edge_count == 0);
    CHECK(g.degrees[0] == 0);
}

TEST_CASE("toy scene adjacency equals a brute-force rule application") {
    // 3 gateways x 2 antennas; brute-force re-implementation of the edge
    // rule from the pairwise I/N table.
    const std::vector<GatewayStation> gws = {
        {0, 0.0, 0.0, 0.0, 2}, {1, 1.5, 2.5, 0.0, 2}, {2, -2.0, 5.0, 0.0, 2}};
    std::vector<Vec3> gp;
    for (const auto& g : gws) gp.push_back(gateway_ecef(g, GeodeticModel::Spherical));
    std::vector<Vec3> sats;
    for (int i = 0; i < 6; ++i) sats.push_back(geodetic_to_ecef(0.4 * i - 1.0, 0.8 * i, 550e3));
    const Ephemeris eph = single_slot(sats);
    LinkAssignment a;
    for (int v = 0; v < 6; ++v) {
        a.entries.push_back({v / 2, v % 2, v, 60.0});
        a.vertex_of_sat[v] = v;
    }
    const LinkBudgetConfig budget = toy_budget();
    const SlotGeometry geo(a, eph, gws, gp, s1528_like_mask(), s1428_like_mask(), budget);
    const double weak = db_to_linear(-13.0);
    GraphBuildParams params{weak, budget.itu_threshold_linear};
    const InterferenceGraph g = build_graph(a, geo, params);

    // Oracle: directed strong sets via the prefix rule, then union.
    std::vector<std::vector<char>> expect(6, std::vector<char>(6, 0));
    for (int v = 0; v < 6; ++v) {
        std::vector<std::pair<int, double>> table;
        for (int u = 0; u < 6; ++u) {
            if (u == v) continue;
            if (elevation_angle_deg(gp[a.entries[v].gateway_id], sats[u]) <= 0.0) continue;
            table.emplace_back(u, geo.single_link_i_over_n(u, v));
        }
        for (int u : oracles::strong_set_oracle(table, weak, budget.itu_threshold_linear))
            expect[v][u] = expect[u][v] = 1;
    }
    for (int v = 0; v < 6; ++v)
        for (int u = v + 1; u < 6; ++u) CHECK(g.has_edge(u, v) == static_cast<bool>(expect[v][u]));
}

TEST_CASE("virtual vertices stay isolated") {
    const std::vector<GatewayStation> gws = {{0, 0.0, 0.0, 0.0, 3}};
    const Vec3 gp = gateway_ecef(gws[0], GeodeticModel::Spherical);
    const Ephemeris eph =
        single_slot({geodetic_to_ecef(0.0, 1.0, 550e3), geodetic_to_ecef(0.0, 2.0, 550e3)});
    LinkAssignment a;
    a.entries = {{0, 0, 0, 80.0}, {0, 1, 1, 75.0}, {0, 2, kVirtualSat, 0.0}};
    a.vertex_of_sat = {{0, 0}, {1, 1}};
    const LinkBudgetConfig budget = toy_budget();
    const SlotGeometry geo(a, eph, gws, {gp}, s1528_like_mask(), s1428_like_mask(), budget);
    GraphBuildParams params{db_to_linear(-13.0), budget.itu_threshold_linear};
    const InterferenceGraph g = build_graph(a, geo, params);
    CHECK(g.is_virtual(2));
    CHECK(g.degrees[2] == 0);
    CHECK(g.has_edge(0, 1));
}

TEST_CASE("conflict_count basics") {
    SUBCASE("proper coloring has zero conflicts") {
        const auto g = oracles::make_graph(3, {{0, 1}, {1, 2}});
        CHECK(conflict_count(g, {1, 2, 1}, 2) == 0);
    }
    SUBCASE("monochromatic K4 has six") {
        const auto g =
            oracles::make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
        CHECK(conflict_count(g, {1, 1, 1, 1}, 3) == 6);
    }
    SUBCASE("color zero rejected") {
        const auto g = oracles::make_graph(2, {{0, 1}});
        CHECK_THROWS_AS(conflict_count(g, {0, 1}, 2), std::invalid_argument);
        CHECK_THROWS_AS(conflict_count(g, {1, 3}, 2), std::invalid_argument);
    }
}

TEST_CASE("conflict_count matches the naive pair scan on random graphs") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> color(1, 3);
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = oracles::random_graph(10, 0.35, rng);
        std::vector<int> colors(10);
        for (auto& c : colors) c = color(rng);
        CHECK(conflict_count(g, colors, 3) == oracles::count_conflicts_naive(g, colors));
    }
}

TEST_CASE("clique partition mirrors the gateway blocks") {
    LinkAssignment a;
    for (int v = 0; v < 6; ++v) a.entries.push_back({v / 3, v % 3, v, 50.0});
    const CliquePartition p = clique_partition(a);
    REQUIRE(p.blocks.size() == 2);
    CHECK(p.blocks[0] == std::vector<int>{0, 1, 2});
    CHECK(p.blocks[1] == std::vector<int>{3, 4, 5});

    // Vacant antennas pad their block with the virtual entry.
    LinkAssignment b;
    b.entries = {{0, 0, 4, 50.0}, {0, 1, kVirtualSat, 0.0}, {1, 0, 9, 60.0}};
    const CliquePartition q = clique_partition(b);
    REQUIRE(q.blocks.size() == 2);
    CHECK(q.blocks[0].size() == 2);
    CHECK(q.block_of[1] == 0);

    // Blocks cover every vertex exactly once.
    std::vector<int> seen(6, 0);
    for (const auto& blk : p.blocks)
        for (int v : blk) ++seen[v];
    for (int s : seen) CHECK(s == 1);
}

TEST_CASE("subgraph density") {
    const auto k4 = oracles::make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(subgraph_density(k4, {0, 1, 2, 3}) == doctest::Approx(1.0));
    const auto empty4 = oracles::make_graph(4, {});
    CHECK(subgraph_density(empty4, {0, 1, 2, 3}) == doctest::Approx(0.0));
    const auto k4minus = oracles::make_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
    CHECK(subgraph_density(k4minus, {0, 1, 2, 3}) == doctest::Approx(10.0 / 12.0));
}

TEST_CASE("dimacs dump format") {
    const auto g = oracles::make_graph(3, {{0, 1}, {1, 2}});
    std::ostringstream os;
    write_dimacs(g, os);
    CHECK(os.str() == "p edge 3 2\n1 2\n2 3\n");
}

TEST_CASE("induced subgraph keeps internal edges only") {
    const auto g = oracles::make_graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    const InducedSubgraph sub = induced_subgraph(g, {0, 1, 4});
    CHECK(sub.graph.n == 3);
    CHECK(sub.graph.edge_count == 2);  // (0,1) and (0,4)
    CHECK(sub.graph.has_edge(0, 1));
    CHECK(sub.graph.has_edge(0, 2));
    CHECK(!sub.graph.has_edge(1, 2));
}

}  // TEST_SUITE
