#include "leofa/igraph.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace leofa {

bool InterferenceGraph::has_edge(int u, int v) const {
    const auto& a = adj[u];
    return std::binary_search(a.begin(), a.end(), v);
}

void InterferenceGraph::finalize() {
    degrees.assign(n, 0);
    edge_count = 0;
    for (int v = 0; v < n; ++v) {
        auto& a = adj[v];
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        degrees[v] = static_cast<int>(a.size());
        edge_count += degrees[v];
    }
    edge_count /= 2;
}

AdaptiveThreshold adaptive_threshold(std::vector<std::pair<int, double>> interferers,
                                     double weak_threshold_linear,
                                     double itu_threshold_linear) {
    AdaptiveThreshold out;
    out.threshold = std::numeric_limits<double>::infinity();

    // Only interference at or above the weak cutoff participates.
    interferers.erase(std::remove_if(interferers.begin(), interferers.end(),
                                     [&](const auto& p) { return p.second < weak_threshold_linear; }),
                      interferers.end());
    std::sort(interferers.begin(), interferers.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first < b.first;
    });

    double sum = 0.0;
    size_t kept = 0;
    while (kept < interferers.size() && sum + interferers[kept].second <= itu_threshold_linear) {
        sum += interferers[kept].second;
        ++kept;
    }
    if (kept < interferers.size()) {
        out.threshold = interferers[kept].second;
        for (size_t i = kept; i < interferers.size(); ++i)
            out.strong.push_back(interferers[i].first);
    }
    return out;
}

InterferenceGraph build_graph(const LinkAssignment& assignment, const SlotGeometry& geo,
                              const GraphBuildParams& params) {
    InterferenceGraph g;
    g.n = geo.size();
    g.adj.assign(g.n, {});
    g.sat_ids.resize(g.n);
    for (int v = 0; v < g.n; ++v) g.sat_ids[v] = assignment.entries[v].sat_id;

    for (int v = 0; v < g.n; ++v) {
        if (!geo.is_real(v)) continue;
        std::vector<std::pair<int, double>> table;
        for (int u = 0; u < g.n; ++u) {
            if (!geo.co_visible(u, v)) continue;
            table.emplace_back(u, geo.single_link_i_over_n(u, v));
        }
        const AdaptiveThreshold th =
            adaptive_threshold(std::move(table), params.weak_threshold_linear,
                               params.itu_threshold_linear);
        for (int u : th.strong) {
            g.adj[v].push_back(u);  // symmetrization by union
            g.adj[u].push_back(v);
        }
    }
    g.finalize();
    return g;
}

std::int64_t conflict_count(const InterferenceGraph& g, const std::vector<int>& colors, int C) {
    for (int v = 0; v < g.n; ++v)
        if (colors[v] < 1 || colors[v] > C)
            throw std::invalid_argument("conflict_count: vertex with color outside {1..C}");
    return conflict_count_partial(g, colors);
}

std::int64_t conflict_count_partial(const InterferenceGraph& g, const std::vector<int>& colors) {
    std::int64_t conflicts = 0;
    for (int v = 0; v < g.n; ++v) {
        if (colors[v] == 0) continue;
        for (int u : g.adj[v])
            if (u > v && colors[u] == colors[v]) ++conflicts;
    }
    return conflicts;
}

CliquePartition clique_partition(const LinkAssignment& assignment) {
    CliquePartition p;
    p.block_of.resize(assignment.entries.size());
    int last_gw = std::numeric_limits<int>::min();
    for (size_t v = 0; v < assignment.entries.size(); ++v) {
        if (assignment.entries[v].gateway_id != last_gw) {
            last_gw = assignment.entries[v].gateway_id;
            p.blocks.emplace_back();
        }
        p.blocks.back().push_back(static_cast<int>(v));
        p.block_of[v] = static_cast<int>(p.blocks.size()) - 1;
    }
    return p;
}

double subgraph_density(const InterferenceGraph& g, const std::vector<int>& subset) {
    const size_t k = subset.size();
    if (k < 2) return 0.0;
    std::int64_t edges = 0;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j)
            if (g.has_edge(subset[i], subset[j])) ++edges;
    return 2.0 * static_cast<double>(edges) / (static_cast<double>(k) * (k - 1));
}

void write_dimacs(const InterferenceGraph& g, std::ostream& os) {
    os << "p edge " << g.n << " " << g.edge_count << "\n";
    for (int v = 0; v < g.n; ++v)
        for (int u : g.adj[v])
            if (u > v) os << (v + 1) << " " << (u + 1) << "\n";
}

InducedSubgraph induced_subgraph(const InterferenceGraph& g, const std::vector<int>& vertices) {
    InducedSubgraph out;
    out.to_parent = vertices;
    out.graph.n = static_cast<int>(vertices.size());
    out.graph.adj.assign(out.graph.n, {});
    out.graph.sat_ids.resize(out.graph.n);

    std::vector<int> to_sub(g.n, -1);
    for (size_t i = 0; i < vertices.size(); ++i) to_sub[vertices[i]] = static_cast<int>(i);
    for (size_t i = 0; i < vertices.size(); ++i) {
        out.graph.sat_ids[i] = g.sat_ids[vertices[i]];
        for (int u : g.adj[vertices[i]])
            if (to_sub[u] >= 0) out.graph.adj[i].push_back(to_sub[u]);
    }
    out.graph.finalize();
    return out;
}

}  // namespace leofa
