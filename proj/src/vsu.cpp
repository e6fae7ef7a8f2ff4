#include "leofa/vsu.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leofa {

int ReuseScheme::count_real(const InterferenceGraph& g) const {
    int n = 0;
    for (int v = 0; v < g.n; ++v)
        if (!g.is_virtual(v) && reuse[v] != 0) ++n;
    return n;
}

std::vector<std::vector<int>> feasible_color_sets(const InterferenceGraph& g,
                                                  const std::vector<int>& base, int C) {
    std::vector<std::vector<int>> sets(g.n);
    std::vector<char> blocked(C + 1);
    for (int v = 0; v < g.n; ++v) {
        std::fill(blocked.begin(), blocked.end(), 0);
        if (base[v] >= 1 && base[v] <= C) blocked[base[v]] = 1;
        for (int u : g.adj[v])
            if (base[u] >= 1 && base[u] <= C) blocked[base[u]] = 1;
        for (int c = 1; c <= C; ++c)
            if (!blocked[c]) sets[v].push_back(c);
    }
    return sets;
}

ReuseGraph build_reuse_graph(const InterferenceGraph& g) {
    ReuseGraph rg;
    rg.n_base = g.n;
    rg.graph.n = 2 * g.n;
    rg.graph.adj.assign(2 * g.n, {});
    rg.graph.sat_ids.assign(2 * g.n, kVirtualSat);
    for (int v = 0; v < g.n; ++v) {
        rg.graph.sat_ids[v] = g.sat_ids[v];
        rg.graph.sat_ids[g.n + v] = g.sat_ids[v];
    }
    auto add = [&](int a, int b) {
        rg.graph.adj[a].push_back(b);
        rg.graph.adj[b].push_back(a);
    };
    for (int v = 0; v < g.n; ++v) {
        add(v, g.n + v);  // (s, s^r)
        for (int u : g.adj[v])
            if (u > v) {
                add(u, v);                // original edge
                add(g.n + u, g.n + v);    // duplicated edge
                add(u, g.n + v);          // mirrors
                add(v, g.n + u);
            }
    }
    rg.graph.finalize();
    return rg;
}

ReuseScheme assign_vacant(const InterferenceGraph& g, const std::vector<int>& base, int C) {
    for (int v = 0; v < g.n; ++v)
        if (base[v] < 1 || base[v] > C)
            throw std::invalid_argument("assign_vacant: base coloring must be complete in {1..C}");

    const ReuseGraph rg = build_reuse_graph(g);
    const auto feasible = feasible_color_sets(g, base, C);

    std::vector<int> order;
    for (int v = 0; v < g.n; ++v)
        if (!g.is_virtual(v)) order.push_back(v);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const int da = rg.graph.degrees[rg.n_base + a];
        const int db = rg.graph.degrees[rg.n_base + b];
        if (da != db) return da > db;
        return a < b;
    });

    ReuseScheme scheme;
    scheme.reuse.assign(g.n, 0);
    for (int v : order) {
        for (int c : feasible[v]) {
            bool clash = false;
            for (int u : g.adj[v])
                if (scheme.reuse[u] == c) {
                    clash = true;
                    break;
                }
            if (!clash) {
                scheme.reuse[v] = c;
                break;
            }
        }
    }
    return scheme;
}

bool reuse_satisfies_constraints(const InterferenceGraph& g, const std::vector<int>& base,
                                 const ReuseScheme& reuse, int C) {
    for (int v = 0; v < g.n; ++v) {
        const int r = reuse.reuse[v];
        if (r < 0 || r > C) return false;
        if (r == 0) continue;
        if (r == base[v]) return false;
        for (int u : g.adj[v]) {
            if (r == base[u]) return false;
            if (r == reuse.reuse[u]) return false;
        }
    }
    return true;
}

double capacity_gain(const SlotGeometry& geo, const std::vector<int>& base,
                     const ReuseScheme& reuse, bool constant_psd) {
    const double noise_w = geo.noise_w();
    const double bandwidth = geo.budget().subchannel_bandwidth_hz;

    // Per-channel transmit power fraction for each link.
    auto tx_fraction = [&](int u) {
        if (reuse.reuse[u] == 0) return 1.0;
        return constant_psd ? 1.0 : 0.5;
    };
    auto occupies = [&](int u, int channel) {
        return base[u] == channel || reuse.reuse[u] == channel;
    };

    double sum_base = 0.0, sum_after = 0.0;
    for (int v = 0; v < geo.size(); ++v) {
        if (!geo.is_real(v)) continue;

        double i_base_w = 0.0;
        for (int u = 0; u < geo.size(); ++u)
            if (base[u] == base[v] && geo.co_visible(u, v)) i_base_w += geo.single_link_w(u, v);
        const double r_base =
            bandwidth * std::log2(1.0 + geo.carrier_power_w(v) / (i_base_w + noise_w));
        sum_base += r_base;

        if (reuse.reuse[v] == 0) {
            sum_after += r_base;
            continue;
        }
        // Reused link: both subchannels, interference from the base and
        // reuse occupancy of every other link at its per-channel power.
        double i_both_w = 0.0;
        for (int u = 0; u < geo.size(); ++u) {
            if (!geo.co_visible(u, v)) continue;
            int shared = 0;
            if (occupies(u, base[v])) ++shared;
            if (occupies(u, reuse.reuse[v])) ++shared;
            if (shared > 0) i_both_w += geo.single_link_w(u, v) * tx_fraction(u) * shared;
        }
        const double carrier = geo.carrier_power_w(v) * (constant_psd ? 2.0 : 1.0);
        const double sinr = carrier / (i_both_w + 2.0 * noise_w);
        sum_after += 2.0 * bandwidth * std::log2(1.0 + sinr);
    }
    if (sum_base <= 0.0) return 0.0;
    return sum_after / sum_base - 1.0;
}

}  // namespace leofa
