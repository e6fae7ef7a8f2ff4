#pragma once

// Subchannel assignment algorithms: Random and Global baselines,
// Generalized Global (GG), Clique-Based Tabu Search (CTS) and their
// time-continuous variants. The time-continuous machinery inherits the
// previous colors of constrained vertices and only switches them with a
// probability proportional to the conflict reduction.
//
// Colorings are per-vertex ints in {0..C}; 0 means uncolored and never
// survives a top-level algorithm. Algorithms optimize the conflict count
// internally and rank final outputs with an injected scorer (the RF
// link-failure count in production, the conflict count in graph tests).

#include <functional>
#include <random>

#include "leofa/igraph.hpp"

namespace leofa {

using Ranker = std::function<double(const std::vector<int>&)>;
Ranker make_conflict_ranker(const InterferenceGraph& g);

struct GGParams {
    int n_restarts = 100;       // N_GG
    double perturb_sigma = 0.5; // stddev of the degree noise
    std::uint64_t seed = 0;
};

struct CTSParams {
    int n_initial = 2000;    // N_in
    int n_candidates = 500;  // N_ca
    int n_iterations = 250;  // N_it
    int n_neighbors = 10;    // N_n
    int tabu_length = 7;     // l_tabu
    std::uint64_t seed = 0;
};

struct TCFAParams {
    double switch_proportionality = 0.0;  // p_s
    double epsilon = 1e-9;
    std::vector<std::uint8_t> constrained;  // per vertex; empty = no constraints
    std::vector<int> previous_colors;       // per vertex, read where constrained

    bool active() const;
};

std::vector<int> random_coloring(const InterferenceGraph& g, int C, std::uint64_t seed);

// Classic largest-degree-first greedy; vertices whose greedy color
// exceeds C get a uniformly random color in {1..C}.
std::vector<int> global_coloring(const InterferenceGraph& g, int C, std::uint64_t seed);

enum class TieBreak { SmallestIndex, SeededRandom };
int least_used_color(int vertex, const InterferenceGraph& g, const std::vector<int>& colors,
                     int C, TieBreak tie = TieBreak::SmallestIndex,
                     std::mt19937_64* rng = nullptr);

// min{max(delta,0) * p_s / (k_c + eps), 1}
double switch_probability(std::int64_t delta_conflicts, int k_constrained, double p_s,
                          double epsilon);

std::vector<int> tcfa_gg(const InterferenceGraph& g, int C, const GGParams& params,
                         const TCFAParams& tcfa, const Ranker& ranker, int threads = 1);

std::vector<int> tcfa_cts(const InterferenceGraph& g, const CliquePartition& partition, int C,
                          const CTSParams& params, const TCFAParams& tcfa, const Ranker& ranker,
                          int threads = 1);

// Unconstrained wrappers.
std::vector<int> gg_coloring(const InterferenceGraph& g, int C, const GGParams& params,
                             const Ranker& ranker, int threads = 1);
std::vector<int> cts_coloring(const InterferenceGraph& g, const CliquePartition& partition,
                              int C, const CTSParams& params, const Ranker& ranker,
                              int threads = 1);

// One clique-swap tabu search run from a given complete coloring; used by
// CTS stage 2 and by the post-decomposition repair pass. patience < 0
// runs exactly max_iterations; otherwise the search stops after that many
// iterations without improving the best conflict count. Returns the best
// coloring seen.
struct TabuOptions {
    int n_neighbors = 10;
    int tabu_length = 7;
    int max_iterations = 250;
    int patience = -1;
    double p_s = 1.0;
    double epsilon = 1e-9;
    int attempt_factor = 100;  // proposal budget per iteration, x n_neighbors
};
std::vector<int> tabu_search_cliques(const InterferenceGraph& g, const CliquePartition& partition,
                                     std::vector<int> start, const TabuOptions& opts,
                                     const std::vector<std::uint8_t>& constrained,
                                     std::mt19937_64& rng);

// Deterministic per-pass seed derivation.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

}  // namespace leofa
