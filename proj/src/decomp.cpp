#include "leofa/decomp.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace leofa {

namespace {

int draw_index(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }
double draw_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double sq_dist(const Vec3& a, const Vec3& b) {
    const Vec3 d = a - b;
    return d.dot(d);
}

Decomposition components_from_labels(const std::vector<int>& label, int count) {
    Decomposition d;
    d.kind = DecompKind::CCD;
    d.subgraph_vertices.assign(count, {});
    for (size_t v = 0; v < label.size(); ++v) d.subgraph_vertices[label[v]].push_back(static_cast<int>(v));
    return d;
}

}  // namespace

Decomposition connected_components(const InterferenceGraph& g) {
    std::vector<int> label(g.n, -1);
    int count = 0;
    std::vector<int> stack;
    for (int start = 0; start < g.n; ++start) {
        if (label[start] >= 0) continue;
        label[start] = count;
        stack.push_back(start);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (int u : g.adj[v])
                if (label[u] < 0) {
                    label[u] = count;
                    stack.push_back(u);
                }
        }
        ++count;
    }
    return components_from_labels(label, count);
}

Decomposition connected_components_blockwise(const InterferenceGraph& g,
                                             const CliquePartition& partition) {
    // Union-find over vertices, with block membership acting as extra edges.
    std::vector<int> parent(g.n);
    for (int v = 0; v < g.n; ++v) parent[v] = v;
    std::function<int(int)> find = [&](int v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

    for (int v = 0; v < g.n; ++v)
        for (int u : g.adj[v])
            if (u > v) unite(u, v);
    for (const auto& block : partition.blocks)
        for (size_t i = 1; i < block.size(); ++i) unite(block[0], block[i]);

    std::vector<int> label(g.n, -1);
    int count = 0;
    for (int v = 0; v < g.n; ++v) {
        const int r = find(v);
        if (label[r] < 0) label[r] = count++;
    }
    std::vector<int> full(g.n);
    for (int v = 0; v < g.n; ++v) full[v] = label[find(v)];
    return components_from_labels(full, count);
}

KMeansResult gs_kmeans(const std::vector<Vec3>& points, int k, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("gs_kmeans: k must be >= 1");
    if (points.empty()) throw std::invalid_argument("gs_kmeans: no points");
    const int n = static_cast<int>(points.size());
    k = std::min(k, n);

    std::mt19937_64 rng(seed);
    KMeansResult res;
    res.centroids.reserve(k);

    // kmeans++ seeding
    res.centroids.push_back(points[draw_index(rng, n)]);
    std::vector<double> d2(n);
    while (static_cast<int>(res.centroids.size()) < k) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::max();
            for (const auto& c : res.centroids) best = std::min(best, sq_dist(points[i], c));
            d2[i] = best;
            total += best;
        }
        if (total <= 0.0) {
            res.centroids.push_back(points[draw_index(rng, n)]);
            continue;
        }
        double target = draw_unit(rng) * total;
        int pick = n - 1;
        for (int i = 0; i < n; ++i) {
            target -= d2[i];
            if (target <= 0.0) {
                pick = i;
                break;
            }
        }
        res.centroids.push_back(points[pick]);
    }

    res.cluster.assign(n, 0);
    constexpr double kTolM = 1e-6;
    for (int iter = 0; iter < 1000; ++iter) {
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double bd = sq_dist(points[i], res.centroids[0]);
            for (int c = 1; c < k; ++c) {
                const double d = sq_dist(points[i], res.centroids[c]);
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            res.cluster[i] = best;
        }
        std::vector<Vec3> sums(k);
        std::vector<int> counts(k, 0);
        for (int i = 0; i < n; ++i) {
            sums[res.cluster[i]] = sums[res.cluster[i]] + points[i];
            ++counts[res.cluster[i]];
        }
        // Re-seed empty clusters from the point farthest from its centroid.
        for (int c = 0; c < k; ++c) {
            if (counts[c] > 0) continue;
            int far = 0;
            double fd = -1.0;
            for (int i = 0; i < n; ++i) {
                const double d = sq_dist(points[i], res.centroids[res.cluster[i]]);
                if (d > fd) {
                    fd = d;
                    far = i;
                }
            }
            sums[c] = points[far];
            counts[c] = 1;
            res.cluster[far] = c;
        }
        double shift = 0.0;
        for (int c = 0; c < k; ++c) {
            const Vec3 nc = sums[c] * (1.0 / counts[c]);
            shift = std::max(shift, (nc - res.centroids[c]).norm());
            res.centroids[c] = nc;
        }
        if (shift < kTolM) break;
    }

    res.wcss = 0.0;
    for (int i = 0; i < n; ++i) res.wcss += sq_dist(points[i], res.centroids[res.cluster[i]]);
    return res;
}

Decomposition partition_by_clusters(const InterferenceGraph& g, const CliquePartition& partition,
                                    const std::vector<int>& gateway_cluster, int num_clusters) {
    if (gateway_cluster.size() != partition.blocks.size())
        throw std::invalid_argument("partition_by_clusters: one cluster index per gateway block");
    Decomposition d;
    d.kind = DecompKind::GSCD;
    d.subgraph_vertices.assign(num_clusters, {});
    std::vector<int> cluster_of(g.n, 0);
    for (size_t b = 0; b < partition.blocks.size(); ++b)
        for (int v : partition.blocks[b]) {
            cluster_of[v] = gateway_cluster[b];
            d.subgraph_vertices[gateway_cluster[b]].push_back(v);
        }
    for (auto& vs : d.subgraph_vertices) std::sort(vs.begin(), vs.end());
    for (int v = 0; v < g.n; ++v)
        for (int u : g.adj[v])
            if (u > v && cluster_of[u] != cluster_of[v]) d.cut_edges.emplace_back(v, u);
    return d;
}

std::vector<int> recolor_boundary_gg(const InterferenceGraph& g, std::vector<int> colors,
                                     const std::vector<std::pair<int, int>>& cut_edges, int C) {
    std::vector<int> endpoints;
    for (const auto& [u, v] : cut_edges) {
        endpoints.push_back(u);
        endpoints.push_back(v);
    }
    std::sort(endpoints.begin(), endpoints.end(), [&](int a, int b) {
        if (g.sat_ids[a] != g.sat_ids[b]) return g.sat_ids[a] < g.sat_ids[b];
        return a < b;
    });
    endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());
    for (int v : endpoints) colors[v] = least_used_color(v, g, colors, C);
    return colors;
}

std::vector<int> recolor_boundary_cts(const InterferenceGraph& g, const CliquePartition& partition,
                                      std::vector<int> colors, const CTSParams& params,
                                      const TCFAParams& tcfa, int patience) {
    TabuOptions opts;
    opts.n_neighbors = params.n_neighbors;
    opts.tabu_length = params.tabu_length;
    opts.max_iterations = std::numeric_limits<int>::max() / 2;
    opts.patience = patience;
    opts.p_s = tcfa.active() ? tcfa.switch_proportionality : 1.0;
    opts.epsilon = tcfa.epsilon;
    std::mt19937_64 rng(mix_seed(params.seed, 5, 0));
    return tabu_search_cliques(g, partition, std::move(colors), opts,
                               tcfa.active() ? tcfa.constrained : std::vector<std::uint8_t>{}, rng);
}

}  // namespace leofa
