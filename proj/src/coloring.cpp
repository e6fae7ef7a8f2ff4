#include "leofa/coloring.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "leofa/parallel.hpp"

namespace leofa {

namespace {

// splitmix64 over the combined words; stable across platforms.
std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Cheap deterministic stream for the high-volume stage-1 fills, where
// constructing a mt19937_64 per solution would dominate the work.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t operator()() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

// Bounded draw and unit-interval draw with platform-independent behavior.
template <typename Rng>
int draw_index(Rng& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }
template <typename Rng>
double draw_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

template <typename Rng>
void fisher_yates(std::vector<int>& v, Rng& rng) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
        std::swap(v[i], v[draw_index(rng, i + 1)]);
}

void check_tcfa(const InterferenceGraph& g, int C, const TCFAParams& tcfa) {
    if (!tcfa.active()) return;
    if (static_cast<int>(tcfa.constrained.size()) != g.n ||
        static_cast<int>(tcfa.previous_colors.size()) != g.n)
        throw std::invalid_argument("tcfa: constrained/previous_colors size mismatch");
    for (int v = 0; v < g.n; ++v)
        if (tcfa.constrained[v] && (tcfa.previous_colors[v] < 1 || tcfa.previous_colors[v] > C))
            throw std::invalid_argument("tcfa: constrained vertex without a previous color");
}

int local_conflicts(const InterferenceGraph& g, const std::vector<int>& colors, int v, int c) {
    int n = 0;
    for (int u : g.adj[v])
        if (colors[u] == c) ++n;
    return n;
}

// Conflict change of swapping the colors of x and y (positive = fewer
// conflicts after the swap). Only edges at x and y can change.
std::int64_t swap_delta(const InterferenceGraph& g, const std::vector<int>& colors, int x, int y) {
    const int cx = colors[x];
    const int cy = colors[y];
    if (cx == cy) return 0;
    std::int64_t before = 0, after = 0;
    for (int u : g.adj[x]) {
        if (u == y) continue;
        if (colors[u] == cx) ++before;
        if (colors[u] == cy) ++after;
    }
    for (int u : g.adj[y]) {
        if (u == x) continue;
        if (colors[u] == cy) ++before;
        if (colors[u] == cx) ++after;
    }
    return before - after;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return splitmix(splitmix(seed ^ (stream * 0x100000001B3ull)) ^ index);
}

bool TCFAParams::active() const {
    for (std::uint8_t c : constrained)
        if (c) return true;
    return false;
}

Ranker make_conflict_ranker(const InterferenceGraph& g) {
    return [&g](const std::vector<int>& colors) {
        return static_cast<double>(conflict_count_partial(g, colors));
    };
}

std::vector<int> random_coloring(const InterferenceGraph& g, int C, std::uint64_t seed) {
    std::mt19937_64 rng(mix_seed(seed, 0, 0));
    std::vector<int> colors(g.n);
    for (int v = 0; v < g.n; ++v) colors[v] = 1 + draw_index(rng, C);
    return colors;
}

std::vector<int> global_coloring(const InterferenceGraph& g, int C, std::uint64_t seed) {
    std::vector<int> order(g.n);
    for (int v = 0; v < g.n; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (g.degrees[a] != g.degrees[b]) return g.degrees[a] > g.degrees[b];
        return a < b;
    });

    std::vector<int> colors(g.n, 0);
    std::vector<char> used;
    for (int v : order) {
        used.assign(g.n + 2, 0);
        for (int u : g.adj[v])
            if (colors[u] > 0) used[colors[u]] = 1;
        int c = 1;
        while (used[c]) ++c;
        colors[v] = c;  // may exceed C
    }
    std::mt19937_64 rng(mix_seed(seed, 4, 0));
    for (int v = 0; v < g.n; ++v)
        if (colors[v] > C) colors[v] = 1 + draw_index(rng, C);
    return colors;
}

int least_used_color(int vertex, const InterferenceGraph& g, const std::vector<int>& colors,
                     int C, TieBreak tie, std::mt19937_64* rng) {
    std::vector<int> hist(C + 1, 0);
    for (int u : g.adj[vertex]) {
        const int c = colors[u];
        if (c >= 1 && c <= C) ++hist[c];
    }
    int best = 1;
    for (int c = 2; c <= C; ++c)
        if (hist[c] < hist[best]) best = c;
    if (tie == TieBreak::SeededRandom && rng != nullptr) {
        std::vector<int> ties;
        for (int c = 1; c <= C; ++c)
            if (hist[c] == hist[best]) ties.push_back(c);
        best = ties[draw_index(*rng, static_cast<int>(ties.size()))];
    }
    return best;
}

double switch_probability(std::int64_t delta_conflicts, int k_constrained, double p_s,
                          double epsilon) {
    const double gain = static_cast<double>(std::max<std::int64_t>(delta_conflicts, 0));
    return std::min(gain * p_s / (k_constrained + epsilon), 1.0);
}

std::vector<int> tcfa_gg(const InterferenceGraph& g, int C, const GGParams& params,
                         const TCFAParams& tcfa, const Ranker& ranker, int threads) {
    if (C < 1) throw std::invalid_argument("tcfa_gg: C must be >= 1");
    if (params.n_restarts < 1) throw std::invalid_argument("tcfa_gg: n_restarts must be >= 1");
    check_tcfa(g, C, tcfa);
    const bool constrained_mode = tcfa.active();

    std::vector<int> free_vertices;
    for (int v = 0; v < g.n; ++v)
        if (!constrained_mode || !tcfa.constrained[v]) free_vertices.push_back(v);
    std::vector<int> fixed_vertices;
    if (constrained_mode)
        for (int v = 0; v < g.n; ++v)
            if (tcfa.constrained[v]) fixed_vertices.push_back(v);

    struct PassResult {
        double score = 0.0;
        std::vector<int> colors;
    };
    std::vector<PassResult> results(params.n_restarts);

    parallel_for(params.n_restarts, threads, [&](int pass) {
        std::mt19937_64 rng(mix_seed(params.seed, 1, pass));
        std::vector<int> colors(g.n, 0);
        for (int v : fixed_vertices) colors[v] = tcfa.previous_colors[v];

        std::vector<double> dp(g.n);
        std::normal_distribution<double> noise(0.0, params.perturb_sigma);
        for (int v = 0; v < g.n; ++v)
            dp[v] = g.degrees[v] + (params.perturb_sigma > 0.0 ? noise(rng) : 0.0);

        auto by_desc = [&](int a, int b) {
            if (dp[a] != dp[b]) return dp[a] > dp[b];
            return a < b;
        };
        auto by_asc = [&](int a, int b) {
            if (dp[a] != dp[b]) return dp[a] < dp[b];
            return a < b;
        };

        std::vector<int> desc = free_vertices;
        std::sort(desc.begin(), desc.end(), by_desc);

        // Stage 1: greedy conflict-free coloring where possible.
        std::vector<int> hist(C + 1, 0);
        for (int v : desc) {
            std::fill(hist.begin(), hist.end(), 0);
            for (int u : g.adj[v]) {
                const int c = colors[u];
                if (c >= 1 && c <= C) ++hist[c];
            }
            for (int c = 1; c <= C; ++c)
                if (hist[c] == 0) {
                    colors[v] = c;
                    break;
                }
        }
        // Stage 2: remaining vertices take a least used color.
        for (int v : desc)
            if (colors[v] == 0) colors[v] = least_used_color(v, g, colors, C);

        // Stage 3: ascending re-pass; constrained vertices switch only
        // with the conflict-reduction probability (one vertex per move).
        if (constrained_mode) {
            std::vector<int> fixed_asc = fixed_vertices;
            std::sort(fixed_asc.begin(), fixed_asc.end(), by_asc);
            for (int v : fixed_asc) {
                const int cand = least_used_color(v, g, colors, C);
                if (cand == colors[v]) continue;
                const std::int64_t delta =
                    local_conflicts(g, colors, v, colors[v]) - local_conflicts(g, colors, v, cand);
                const double p = switch_probability(delta, 1, tcfa.switch_proportionality, tcfa.epsilon);
                if (draw_unit(rng) < p) colors[v] = cand;
            }
        }
        std::vector<int> asc = free_vertices;
        std::sort(asc.begin(), asc.end(), by_asc);
        for (int v : asc) colors[v] = least_used_color(v, g, colors, C);

        results[pass] = {ranker(colors), std::move(colors)};
    });

    int best = 0;
    for (int i = 1; i < params.n_restarts; ++i)
        if (results[i].score < results[best].score) best = i;
    return std::move(results[best].colors);
}

std::vector<int> tabu_search_cliques(const InterferenceGraph& g, const CliquePartition& partition,
                                     std::vector<int> start, const TabuOptions& opts,
                                     const std::vector<std::uint8_t>& constrained,
                                     std::mt19937_64& rng) {
    std::vector<int> colors = std::move(start);
    std::vector<int> conf(g.n, 0);
    std::int64_t fcon = 0;
    for (int v = 0; v < g.n; ++v) {
        conf[v] = local_conflicts(g, colors, v, colors[v]);
        fcon += conf[v];
    }
    fcon /= 2;

    std::vector<int> best = colors;
    std::int64_t best_f = fcon;
    std::deque<std::vector<int>> tabu;
    int no_improve = 0;

    struct Neighbor {
        int x, y;
        std::int64_t fnew;
        std::vector<int> colors;
    };

    std::vector<int> conflicted;
    for (int it = 0; it < opts.max_iterations; ++it) {
        if (opts.patience >= 0 && no_improve >= opts.patience) break;

        conflicted.clear();
        for (int v = 0; v < g.n; ++v)
            if (conf[v] > 0) conflicted.push_back(v);
        if (conflicted.empty()) break;

        std::vector<Neighbor> pool;
        int attempts = 0;
        const int attempt_budget = opts.attempt_factor * opts.n_neighbors;
        while (static_cast<int>(pool.size()) < opts.n_neighbors && attempts < attempt_budget) {
            ++attempts;
            const int x = conflicted[draw_index(rng, static_cast<int>(conflicted.size()))];
            const auto& block = partition.blocks[partition.block_of[x]];
            if (block.size() < 2) continue;
            int y = block[draw_index(rng, static_cast<int>(block.size()))];
            if (y == x) continue;

            const std::int64_t delta = swap_delta(g, colors, x, y);
            const int kc = (constrained.empty() ? 0 : constrained[x] + constrained[y]);
            const double p = switch_probability(delta, kc, opts.p_s, opts.epsilon);
            if (p < 1.0 && draw_unit(rng) >= p) continue;

            Neighbor nb;
            nb.x = x;
            nb.y = y;
            nb.fnew = fcon - delta;
            nb.colors = colors;
            std::swap(nb.colors[x], nb.colors[y]);
            pool.push_back(std::move(nb));
        }
        if (pool.empty()) {
            ++no_improve;
            continue;
        }

        int choice = -1;
        for (size_t i = 0; i < pool.size(); ++i) {
            bool is_tabu = false;
            for (const auto& t : tabu)
                if (t == pool[i].colors) {
                    is_tabu = true;
                    break;
                }
            if (is_tabu) continue;
            if (choice < 0 || pool[i].fnew < pool[choice].fnew) choice = static_cast<int>(i);
        }
        if (choice < 0) {
            ++no_improve;
            continue;
        }

        // Apply the chosen swap with incremental conflict updates.
        const Neighbor& nb = pool[choice];
        const int cx = colors[nb.x];
        const int cy = colors[nb.y];
        for (int u : g.adj[nb.x]) {
            if (u == nb.y) continue;
            if (colors[u] == cx) --conf[u];
            if (colors[u] == cy) ++conf[u];
        }
        for (int u : g.adj[nb.y]) {
            if (u == nb.x) continue;
            if (colors[u] == cy) --conf[u];
            if (colors[u] == cx) ++conf[u];
        }
        colors = nb.colors;
        conf[nb.x] = local_conflicts(g, colors, nb.x, colors[nb.x]);
        conf[nb.y] = local_conflicts(g, colors, nb.y, colors[nb.y]);
        fcon = nb.fnew;

        tabu.push_front(colors);
        if (static_cast<int>(tabu.size()) > opts.tabu_length) tabu.pop_back();

        if (fcon < best_f) {
            best_f = fcon;
            best = colors;
            no_improve = 0;
        } else {
            ++no_improve;
        }
    }
    return best;
}

std::vector<int> tcfa_cts(const InterferenceGraph& g, const CliquePartition& partition, int C,
                          const CTSParams& params, const TCFAParams& tcfa, const Ranker& ranker,
                          int threads) {
    if (params.n_initial < 1 || params.n_candidates < 1 || params.n_candidates > params.n_initial)
        throw std::invalid_argument("tcfa_cts: need 1 <= n_candidates <= n_initial");
    for (const auto& block : partition.blocks)
        if (static_cast<int>(block.size()) != C)
            throw std::invalid_argument("tcfa_cts: gateway block size differs from C");
    check_tcfa(g, C, tcfa);
    const bool constrained_mode = tcfa.active();

    // Inherited colors must form a partial permutation inside each block;
    // a chained CTS run guarantees this.
    std::vector<int> inherited(g.n, 0);
    if (constrained_mode) {
        for (int v = 0; v < g.n; ++v)
            if (tcfa.constrained[v]) inherited[v] = tcfa.previous_colors[v];
        std::vector<char> used(C + 1);
        for (const auto& block : partition.blocks) {
            std::fill(used.begin(), used.end(), 0);
            for (int v : block)
                if (inherited[v] != 0) {
                    if (used[inherited[v]])
                        throw std::invalid_argument(
                            "tcfa_cts: duplicate inherited colors within a gateway block");
                    used[inherited[v]] = 1;
                }
        }
    }

    // Stage 1: random block-permutation solutions around the inherited
    // colors. Solutions are scored into a reused buffer and only the
    // selected candidates are regenerated from their per-index streams,
    // so the stage allocates nothing per solution.
    auto fill_initial = [&](int index, std::vector<int>& colors, std::vector<char>& used,
                            std::vector<int>& leftovers) {
        SplitMix64 rng{mix_seed(params.seed, 2, index)};
        colors = inherited;
        for (const auto& block : partition.blocks) {
            std::fill(used.begin(), used.end(), 0);
            for (int v : block)
                if (colors[v] != 0) used[colors[v]] = 1;
            leftovers.clear();
            for (int c = 1; c <= C; ++c)
                if (!used[c]) leftovers.push_back(c);
            fisher_yates(leftovers, rng);
            size_t next = 0;
            for (int v : block)
                if (colors[v] == 0) colors[v] = leftovers[next++];
        }
    };

    std::vector<std::int64_t> scores(params.n_initial);
    const int chunks = std::max(1, std::min(threads, params.n_initial));
    parallel_for(chunks, threads, [&](int chunk) {
        const int lo = static_cast<int>(static_cast<long long>(params.n_initial) * chunk / chunks);
        const int hi =
            static_cast<int>(static_cast<long long>(params.n_initial) * (chunk + 1) / chunks);
        std::vector<char> used(C + 1);
        std::vector<int> leftovers;
        std::vector<int> colors;
        for (int i = lo; i < hi; ++i) {
            fill_initial(i, colors, used, leftovers);
            scores[i] = conflict_count_partial(g, colors);
        }
    });

    std::vector<int> rank(params.n_initial);
    for (int i = 0; i < params.n_initial; ++i) rank[i] = i;
    std::sort(rank.begin(), rank.end(), [&](int a, int b) {
        if (scores[a] != scores[b]) return scores[a] < scores[b];
        return a < b;
    });

    // Stage 2: tabu search on the best candidates.
    struct Result {
        double score = 0.0;
        std::vector<int> colors;
    };
    std::vector<Result> results(params.n_candidates);
    TabuOptions opts;
    opts.n_neighbors = params.n_neighbors;
    opts.tabu_length = params.tabu_length;
    opts.max_iterations = params.n_iterations;
    opts.p_s = constrained_mode ? tcfa.switch_proportionality : 1.0;
    opts.epsilon = tcfa.epsilon;
    parallel_for(params.n_candidates, threads, [&](int j) {
        std::mt19937_64 rng(mix_seed(params.seed, 3, j));
        std::vector<int> start;
        std::vector<char> used(C + 1);
        std::vector<int> leftovers;
        fill_initial(rank[j], start, used, leftovers);
        std::vector<int> colors =
            tabu_search_cliques(g, partition, std::move(start), opts,
                                constrained_mode ? tcfa.constrained : std::vector<std::uint8_t>{},
                                rng);
        results[j] = {ranker(colors), std::move(colors)};
    });

    int best = 0;
    for (int j = 1; j < params.n_candidates; ++j)
        if (results[j].score < results[best].score) best = j;
    return std::move(results[best].colors);
}

std::vector<int> gg_coloring(const InterferenceGraph& g, int C, const GGParams& params,
                             const Ranker& ranker, int threads) {
    TCFAParams none;
    return tcfa_gg(g, C, params, none, ranker, threads);
}

std::vector<int> cts_coloring(const InterferenceGraph& g, const CliquePartition& partition, int C,
                              const CTSParams& params, const Ranker& ranker, int threads) {
    TCFAParams none;
    none.switch_proportionality = 1.0;
    return tcfa_cts(g, partition, C, params, none, ranker, threads);
}

}  // namespace leofa
