#pragma once

// Vacant subchannel utilization: list coloring on a duplicated reuse
// graph grants compliant links a second subchannel without adding
// conflicts. Reuse colors must avoid the base and reuse colors of all
// graph neighbors and the link's own base color.

#include "leofa/igraph.hpp"

namespace leofa {

struct ReuseScheme {
    std::vector<int> reuse;  // per vertex, 0 = no reuse

    int count_real(const InterferenceGraph& g) const;  // f_3
};

// L_s = {1..C} minus the base colors of the closed neighborhood.
std::vector<std::vector<int>> feasible_color_sets(const InterferenceGraph& g,
                                                  const std::vector<int>& base, int C);

// G'(t): vertices [0,n) are the originals, [n,2n) their duplicates.
// Edges: the original graph, its copy among duplicates, the mirrored
// (u, s^r) pairs, and one (s, s^r) edge per vertex.
struct ReuseGraph {
    InterferenceGraph graph;
    int n_base = 0;
};
ReuseGraph build_reuse_graph(const InterferenceGraph& g);

// Greedy list coloring of the duplicates in descending reuse-graph
// degree; a vertex with no feasible color stays at 0. VIRTUAL entries
// never reuse. Throws if the base coloring is incomplete.
ReuseScheme assign_vacant(const InterferenceGraph& g, const std::vector<int>& base, int C);

// All three feasibility constraints, checked directly on the graph.
bool reuse_satisfies_constraints(const InterferenceGraph& g, const std::vector<int>& base,
                                 const ReuseScheme& reuse, int C);

// Capacity improvement ratio gamma_v. Reused links run over 2B (noise
// over 2B as well); with fixed total power the per-channel transmit
// power halves, the constant-PSD convention keeps it. Interference is
// re-aggregated over both receive subchannels against the base and
// reuse occupancy of every other link.
double capacity_gain(const SlotGeometry& geo, const std::vector<int>& base,
                     const ReuseScheme& reuse, bool constant_psd = false);

}  // namespace leofa
