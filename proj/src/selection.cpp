#include "leofa/selection.hpp"

#include <algorithm>
#include <cstdio>

namespace leofa {

LinkAssignment select_satellites(const Ephemeris& eph,
                                 const std::vector<GatewayStation>& gateways,
                                 const std::vector<Vec3>& gateway_pos,
                                 int slot,
                                 double elevation_threshold_deg) {
    LinkAssignment out;
    out.slot = slot;

    std::vector<int> order(gateways.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return gateways[a].id < gateways[b].id; });

    // Per-gateway candidate lists (elevation above threshold), sorted by
    // descending elevation with smaller sat_id breaking ties.
    struct Cand { double elev; int sat; };
    std::vector<std::vector<Cand>> cands(gateways.size());
    for (int gi : order) {
        auto& list = cands[gi];
        for (int sat = 0; sat < eph.num_sats; ++sat) {
            const double el = elevation_angle_deg(gateway_pos[gi], eph.at(slot, sat));
            if (el >= elevation_threshold_deg) list.push_back({el, sat});
        }
        std::sort(list.begin(), list.end(), [](const Cand& a, const Cand& b) {
            if (a.elev != b.elev) return a.elev > b.elev;
            return a.sat < b.sat;
        });
    }

    int max_antennas = 0;
    for (const auto& g : gateways) max_antennas = std::max(max_antennas, g.n_antennas);

    std::vector<char> taken(eph.num_sats, 0);
    std::vector<std::vector<LinkEntry>> per_gw(gateways.size());
    std::vector<size_t> cursor(gateways.size(), 0);

    for (int round = 0; round < max_antennas; ++round) {
        for (int gi : order) {
            if (round >= gateways[gi].n_antennas) continue;
            auto& list = cands[gi];
            size_t& cur = cursor[gi];
            while (cur < list.size() && taken[list[cur].sat]) ++cur;
            LinkEntry e;
            e.gateway_id = gateways[gi].id;
            e.antenna_index = round;
            if (cur < list.size()) {
                e.sat_id = list[cur].sat;
                e.elevation_deg = list[cur].elev;
                taken[list[cur].sat] = 1;
                ++cur;
            }
            per_gw[gi].push_back(e);
        }
    }

    for (int gi : order)
        for (const auto& e : per_gw[gi]) out.entries.push_back(e);
    for (size_t v = 0; v < out.entries.size(); ++v)
        if (!out.entries[v].is_virtual()) out.vertex_of_sat[out.entries[v].sat_id] = static_cast<int>(v);
    return out;
}

Continuity continuity_mask(const LinkAssignment& prev, const LinkAssignment& cur) {
    Continuity c;
    c.constrained.assign(cur.entries.size(), 0);

    std::unordered_map<int, int> prev_gw;  // sat -> gateway at t-1
    for (const auto& e : prev.entries)
        if (!e.is_virtual()) prev_gw[e.sat_id] = e.gateway_id;

    for (size_t v = 0; v < cur.entries.size(); ++v) {
        const auto& e = cur.entries[v];
        if (e.is_virtual()) continue;
        auto it = prev_gw.find(e.sat_id);
        if (it != prev_gw.end() && it->second == e.gateway_id) {
            c.constrained[v] = 1;
            c.constrained_sats.push_back(e.sat_id);
        }
    }
    std::sort(c.constrained_sats.begin(), c.constrained_sats.end());
    return c;
}

void append_assignment_csv(const LinkAssignment& a, std::string& out) {
    char buf[128];
    for (const auto& e : a.entries) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%d,%.6f\n", a.slot, e.gateway_id,
                      e.antenna_index, e.sat_id, e.is_virtual() ? 0.0 : e.elevation_deg);
        out += buf;
    }
}

}  // namespace leofa
