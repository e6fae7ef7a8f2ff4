#pragma once

// Scale reduction for the per-slot coloring problem: connected-component
// decomposition (lossless) and gateway-clustering decomposition (drops
// inter-cluster edges, repaired afterwards by boundary recoloring).

#include "leofa/coloring.hpp"

namespace leofa {

enum class DecompKind { CCD, GSCD };

struct Decomposition {
    std::vector<std::vector<int>> subgraph_vertices;  // partition of V
    std::vector<std::pair<int, int>> cut_edges;       // D^p; empty for CCD
    DecompKind kind = DecompKind::CCD;
};

// Plain DFS connected components, singletons included.
Decomposition connected_components(const InterferenceGraph& g);

// Components coarsened so each gateway block stays whole; still edge
// lossless, and safe for the block-permutation search.
Decomposition connected_components_blockwise(const InterferenceGraph& g,
                                             const CliquePartition& partition);

struct KMeansResult {
    std::vector<int> cluster;  // per point
    std::vector<Vec3> centroids;
    double wcss = 0.0;
};

// Lloyd iterations with kmeans++ seeding; empty clusters are re-seeded
// from the farthest point. Converges when no centroid moves more than
// 1e-6 m.
KMeansResult gs_kmeans(const std::vector<Vec3>& points, int k, std::uint64_t seed);

// Subgraphs are unions of the gateway blocks of each cluster; edges
// between clusters land in cut_edges.
Decomposition partition_by_clusters(const InterferenceGraph& g, const CliquePartition& partition,
                                    const std::vector<int>& gateway_cluster, int num_clusters);

// Boundary repair after GSCD stitching. The GG flavor recolors cut-edge
// endpoints (ascending sat_id) with the least used color; the CTS flavor
// reruns the clique-swap tabu search until the conflict count stops
// improving for `patience` iterations. Neither can worsen the conflict
// count.
std::vector<int> recolor_boundary_gg(const InterferenceGraph& g, std::vector<int> colors,
                                     const std::vector<std::pair<int, int>>& cut_edges, int C);
std::vector<int> recolor_boundary_cts(const InterferenceGraph& g, const CliquePartition& partition,
                                      std::vector<int> colors, const CTSParams& params,
                                      const TCFAParams& tcfa, int patience = 20);

}  // namespace leofa
