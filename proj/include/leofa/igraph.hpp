#pragma once

// Per-slot interference graph: vertices are the slot's (gateway, antenna)
// entries (VIRTUAL entries isolated), edges come from the per-victim
// adaptive threshold rule. Also the gateway clique partition and
// structural statistics used by the coloring algorithms.

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "leofa/rf.hpp"

namespace leofa {

struct InterferenceGraph {
    int n = 0;
    std::vector<std::vector<int>> adj;  // sorted neighbor lists, no self loops
    std::vector<int> degrees;
    std::int64_t edge_count = 0;
    std::vector<int> sat_ids;  // -1 for VIRTUAL vertices

    bool is_virtual(int v) const { return sat_ids[v] < 0; }
    bool has_edge(int u, int v) const;
    void finalize();  // sorts/dedups adjacency, fills degrees and edge_count
};

// Gateway blocks in vertex order; block i holds the entries of the i-th
// gateway (real satellites plus VIRTUAL fillers).
struct CliquePartition {
    std::vector<std::vector<int>> blocks;
    std::vector<int> block_of;  // per vertex
};

// Adaptive threshold for one victim. Interferers at or above the weak
// threshold are sorted ascending by (I/N, id); the longest prefix whose
// sum stays within the ITU budget is tolerated, the rest become edges.
// threshold is the first excluded interferer's I/N (+inf if all fit).
struct AdaptiveThreshold {
    double threshold = 0.0;
    std::vector<int> strong;  // excluded interferer ids, ascending by (I/N, id)
};

AdaptiveThreshold adaptive_threshold(std::vector<std::pair<int, double>> interferers,
                                     double weak_threshold_linear,
                                     double itu_threshold_linear);

struct GraphBuildParams {
    double weak_threshold_linear = 0.05;  // I_th^Gamma
    double itu_threshold_linear = 0.0603; // I_th^R
};

// Potential interference is evaluated channel-agnostically over all
// co-visible working satellites; an undirected edge appears when either
// endpoint qualifies against the other's adaptive threshold.
InterferenceGraph build_graph(const LinkAssignment& assignment, const SlotGeometry& geo,
                              const GraphBuildParams& params);

// Unordered count of edges whose endpoints share a color. Throws if any
// vertex carries color 0 or a color > C.
std::int64_t conflict_count(const InterferenceGraph& g, const std::vector<int>& colors, int C);
// Relaxed variant for partial colorings (color 0 = uncolored, ignored).
std::int64_t conflict_count_partial(const InterferenceGraph& g, const std::vector<int>& colors);

CliquePartition clique_partition(const LinkAssignment& assignment);

// rho = 2 |E(subset)| / (k (k-1)); 0 for k < 2.
double subgraph_density(const InterferenceGraph& g, const std::vector<int>& subset);

// DIMACS-style dump: "p edge |V| |E|" header then 1-based "u v" lines.
void write_dimacs(const InterferenceGraph& g, std::ostream& os);

struct InducedSubgraph {
    InterferenceGraph graph;
    std::vector<int> to_parent;  // subvertex -> parent vertex
};
InducedSubgraph induced_subgraph(const InterferenceGraph& g, const std::vector<int>& vertices);

}  // namespace leofa
