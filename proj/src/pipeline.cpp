#include "leofa/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "leofa/parallel.hpp"

namespace leofa {

using ordered_json = nlohmann::ordered_json;
using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

int auto_cluster_count(size_t gateways) {
    return std::max(1, static_cast<int>(std::llround(static_cast<double>(gateways) / 10.0)));
}

// Blocks of the parent partition restricted to a vertex subset; the
// decompositions used here never split a block.
CliquePartition induced_partition(const CliquePartition& parent, const std::vector<int>& to_parent,
                                  int sub_n) {
    std::vector<int> to_sub(parent.block_of.size(), -1);
    for (size_t i = 0; i < to_parent.size(); ++i) to_sub[to_parent[i]] = static_cast<int>(i);

    CliquePartition sub;
    sub.block_of.assign(sub_n, -1);
    for (const auto& block : parent.blocks) {
        std::vector<int> mapped;
        for (int v : block)
            if (to_sub[v] >= 0) mapped.push_back(to_sub[v]);
        if (mapped.empty()) continue;
        if (mapped.size() != block.size())
            throw std::logic_error("decomposition split a gateway block");
        for (int v : mapped) sub.block_of[v] = static_cast<int>(sub.blocks.size());
        sub.blocks.push_back(std::move(mapped));
    }
    return sub;
}

TCFAParams induced_tcfa(const TCFAParams& parent, const std::vector<int>& to_parent) {
    TCFAParams sub;
    sub.switch_proportionality = parent.switch_proportionality;
    sub.epsilon = parent.epsilon;
    if (parent.constrained.empty()) return sub;
    sub.constrained.resize(to_parent.size());
    sub.previous_colors.resize(to_parent.size());
    for (size_t i = 0; i < to_parent.size(); ++i) {
        sub.constrained[i] = parent.constrained[to_parent[i]];
        sub.previous_colors[i] = parent.previous_colors[to_parent[i]];
    }
    return sub;
}

std::vector<int> color_slot(const InterferenceGraph& graph, const CliquePartition& partition,
                            const SlotGeometry& geo, int C, const SimOptions& opt,
                            const TCFAParams& tcfa, const std::vector<int>& gateway_cluster,
                            std::uint64_t slot_seed) {
    const double itu = geo.budget().itu_threshold_linear;
    const Ranker full_ranker = [&](const std::vector<int>& colors) {
        return static_cast<double>(count_link_failures(geo, colors, itu));
    };

    if (opt.algo == Algo::Random) return random_coloring(graph, C, slot_seed);
    if (opt.algo == Algo::Global) return global_coloring(graph, C, slot_seed);

    GGParams gg = opt.gg;
    gg.seed = slot_seed;
    CTSParams cts = opt.cts;
    cts.seed = slot_seed;

    if (opt.decomp == DecompMode::None) {
        if (opt.algo == Algo::GG) return tcfa_gg(graph, C, gg, tcfa, full_ranker, opt.threads);
        return tcfa_cts(graph, partition, C, cts, tcfa, full_ranker, opt.threads);
    }

    Decomposition dec;
    if (opt.decomp == DecompMode::CCD) {
        dec = (opt.algo == Algo::CTS) ? connected_components_blockwise(graph, partition)
                                      : connected_components(graph);
    } else {
        const int k = 1 + *std::max_element(gateway_cluster.begin(), gateway_cluster.end());
        dec = partition_by_clusters(graph, partition, gateway_cluster, k);
    }

    std::vector<int> full_colors(graph.n, 0);
    const int n_sub = static_cast<int>(dec.subgraph_vertices.size());
    const auto t_subs = clock_type::now();
    parallel_for(n_sub, opt.threads, [&](int i) {
        const auto& vertices = dec.subgraph_vertices[i];
        if (vertices.empty()) return;
        const InducedSubgraph sub = induced_subgraph(graph, vertices);
        const TCFAParams sub_tcfa = induced_tcfa(tcfa, sub.to_parent);
        const Ranker sub_ranker = [&geo, &vertices, &sub, itu](const std::vector<int>& sub_colors) {
            std::vector<int> lifted(geo.size(), 0);
            for (size_t j = 0; j < sub.to_parent.size(); ++j)
                lifted[sub.to_parent[j]] = sub_colors[j];
            return static_cast<double>(count_link_failures_subset(geo, lifted, vertices, itu));
        };
        std::vector<int> sub_colors;
        if (opt.algo == Algo::GG) {
            GGParams sub_gg = gg;
            sub_gg.seed = mix_seed(gg.seed, 8, i);
            sub_colors = tcfa_gg(sub.graph, C, sub_gg, sub_tcfa, sub_ranker, 1);
        } else {
            const CliquePartition sub_part = induced_partition(partition, sub.to_parent, sub.graph.n);
            CTSParams sub_cts = cts;
            sub_cts.seed = mix_seed(cts.seed, 9, i);
            sub_colors = tcfa_cts(sub.graph, sub_part, C, sub_cts, sub_tcfa, sub_ranker, 1);
        }
        for (size_t j = 0; j < sub.to_parent.size(); ++j)
            full_colors[sub.to_parent[j]] = sub_colors[j];
    });
    if (std::getenv("LEOFA_DEBUG_TIMING"))
        std::fprintf(stderr, "subgraphs (%d): %.1f ms\n", n_sub, ms_since(t_subs));

    if (opt.decomp == DecompMode::GSCD) {
        const auto t_rec = clock_type::now();
        if (opt.algo == Algo::GG)
            full_colors = recolor_boundary_gg(graph, std::move(full_colors), dec.cut_edges, C);
        else
            full_colors = recolor_boundary_cts(graph, partition, std::move(full_colors), cts, tcfa);
        if (std::getenv("LEOFA_DEBUG_TIMING"))
            std::fprintf(stderr, "recolor: %.1f ms\n", ms_since(t_rec));
    }
    return full_colors;
}

}  // namespace

const char* algo_name(Algo a) {
    switch (a) {
        case Algo::Random: return "random";
        case Algo::Global: return "global";
        case Algo::GG: return "gg";
        case Algo::CTS: return "cts";
    }
    return "?";
}

const char* decomp_name(DecompMode d) {
    switch (d) {
        case DecompMode::None: return "none";
        case DecompMode::CCD: return "ccd";
        case DecompMode::GSCD: return "gscd";
    }
    return "?";
}

RunReport run_simulation(const ScenarioConfig& config, const SimOptions& options,
                         const Ephemeris* external_ephemeris) {
    ScenarioConfig cfg = config;
    if (options.subchannels_override) cfg.num_subchannels = *options.subchannels_override;
    if (options.nat_override)
        for (auto& g : cfg.gateways) g.n_antennas = *options.nat_override;
    cfg.validate();

    if (options.algo == Algo::CTS)
        for (const auto& g : cfg.gateways)
            if (g.n_antennas != cfg.num_subchannels)
                throw ConfigError("num_subchannels",
                                  "cts requires C == n_antennas for every gateway");
    if (options.decomp != DecompMode::None &&
        (options.algo == Algo::Random || options.algo == Algo::Global))
        throw ConfigError("decomp", "decomposition applies to the gg and cts algorithms");

    RunReport report;
    report.config = cfg;
    report.options = options;
    report.seed = options.seed_override ? *options.seed_override : cfg.rng_seed;

    Ephemeris eph_local;
    const Ephemeris* eph = external_ephemeris;
    if (eph == nullptr) {
        eph_local = propagate_constellation(cfg.shells, cfg.time_grid);
        eph = &eph_local;
    } else if (eph->num_slots < cfg.time_grid.num_slots) {
        throw ConfigError("time_grid.num_slots", "external ephemeris has fewer slots");
    }

    const GainMask sat_mask = cfg.sat_mask();
    const GainMask gs_mask = cfg.gs_mask();
    const LinkBudgetConfig budget = LinkBudgetConfig::from_scenario(cfg);
    GraphBuildParams gparams;
    gparams.weak_threshold_linear = db_to_linear(cfg.weak_threshold_db);
    gparams.itu_threshold_linear = budget.itu_threshold_linear;
    const int C = cfg.num_subchannels;

    // Gateway clustering is geometry-stable (rigid rotation), computed once.
    std::vector<int> gateway_cluster;
    if (options.decomp == DecompMode::GSCD) {
        std::vector<Vec3> pts;
        for (const auto& g : cfg.gateways) pts.push_back(gateway_ecef(g, cfg.geodetic_model));
        const int k = std::min<int>(options.clusters > 0 ? options.clusters
                                                         : auto_cluster_count(cfg.gateways.size()),
                                    static_cast<int>(cfg.gateways.size()));
        gateway_cluster = gs_kmeans(pts, k, mix_seed(report.seed, 7, 0)).cluster;
    }

    std::unordered_map<int, int> prev_color_by_sat;
    LinkAssignment prev_assignment;

    for (int slot = 0; slot < cfg.time_grid.num_slots; ++slot) {
        const auto t_slot0 = clock_type::now();
        SlotMetrics m;
        m.slot = slot;
        const double elapsed = cfg.time_grid.elapsed_at(slot);

        auto t0 = clock_type::now();
        std::vector<Vec3> gw_pos;
        for (const auto& g : cfg.gateways)
            gw_pos.push_back(gateway_position_at(g, cfg.geodetic_model, elapsed));
        LinkAssignment assignment =
            select_satellites(*eph, cfg.gateways, gw_pos, slot, cfg.elevation_threshold_deg);
        const Continuity cont = continuity_mask(prev_assignment, assignment);
        m.times.select_ms = ms_since(t0);

        t0 = clock_type::now();
        const SlotGeometry geo(assignment, *eph, cfg.gateways, gw_pos, sat_mask, gs_mask, budget);
        const InterferenceGraph graph = build_graph(assignment, geo, gparams);
        const CliquePartition partition = clique_partition(assignment);
        m.times.graph_ms = ms_since(t0);

        TCFAParams tcfa;
        tcfa.switch_proportionality = options.ps;
        if (options.tcfa && slot > 0) {
            tcfa.constrained.assign(graph.n, 0);
            tcfa.previous_colors.assign(graph.n, 0);
            for (int v = 0; v < graph.n; ++v) {
                if (!cont.constrained[v]) continue;
                const int sat = assignment.entries[v].sat_id;
                const auto it = prev_color_by_sat.find(sat);
                if (it == prev_color_by_sat.end())
                    throw std::logic_error("continuity without a previous color");
                tcfa.constrained[v] = 1;
                tcfa.previous_colors[v] = it->second;
            }
        }

        t0 = clock_type::now();
        const std::uint64_t slot_seed = mix_seed(report.seed, 10, slot);
        std::vector<int> colors =
            color_slot(graph, partition, geo, C, options, tcfa, gateway_cluster, slot_seed);
        m.times.color_ms = ms_since(t0);

        t0 = clock_type::now();
        ReuseScheme reuse;
        reuse.reuse.assign(graph.n, 0);
        if (options.vsu) {
            reuse = assign_vacant(graph, colors, C);
            m.reuse_count = reuse.count_real(graph);
            m.gamma_v = capacity_gain(geo, colors, reuse, cfg.vsu_constant_psd);
        }
        m.times.vsu_ms = ms_since(t0);

        // Metrics.
        m.working = assignment.real_count();
        m.lf_count = count_link_failures(geo, colors, budget.itu_threshold_linear);
        m.lf_rate = m.working > 0 ? static_cast<double>(m.lf_count) / m.working : 0.0;
        m.f_con = conflict_count(graph, colors, C);

        std::vector<double> r, r_bar;
        for (int v = 0; v < graph.n; ++v) {
            if (!geo.is_real(v)) continue;
            const double i_w = geo.aggregate_i_over_n(v, colors) * geo.noise_w();
            const LinkQuality q = cn_sinr_capacity(geo.carrier_power_w(v), i_w, geo.noise_w(),
                                                   budget.subchannel_bandwidth_hz);
            r.push_back(q.capacity_bps);
            r_bar.push_back(budget.subchannel_bandwidth_hz * std::log2(1.0 + q.cn_linear));
            const double ion = i_w / geo.noise_w();
            report.i_over_n_db.push_back(ion > 0.0 ? linear_to_db(ion) : -400.0);
        }
        m.delta_r_hat = system_capacity_degradation(r, r_bar);

        m.continuity_events = cont.count();
        for (int v = 0; v < graph.n; ++v) {
            if (!cont.constrained[v]) continue;
            const int sat = assignment.entries[v].sat_id;
            if (colors[v] != prev_color_by_sat.at(sat)) ++m.switch_events;
        }

        if (slot == std::clamp(options.geojson_slot, 0, cfg.time_grid.num_slots - 1)) {
            report.geojson_slot = slot;
            const double earth_angle = constants::sidereal_rate_rad_s * elapsed;
            for (int v = 0; v < graph.n; ++v) {
                double lat = 0.0, lon = 0.0;
                if (!assignment.entries[v].is_virtual()) {
                    const Vec3 ecef =
                        rotate_z(eph->at(slot, assignment.entries[v].sat_id), -earth_angle);
                    ecef_to_geodetic_spherical(ecef, lat, lon);
                }
                report.geojson_subpoints.emplace_back(lat, lon);
            }
        }

        prev_color_by_sat.clear();
        for (int v = 0; v < graph.n; ++v)
            if (!assignment.entries[v].is_virtual())
                prev_color_by_sat[assignment.entries[v].sat_id] = colors[v];
        prev_assignment = assignment;

        m.times.total_ms = ms_since(t_slot0);
        report.slots.push_back(m);
        report.assignments.push_back(std::move(assignment));
        report.colorings.push_back(std::move(colors));
        report.reuses.push_back(std::move(reuse.reuse));
    }

    // Aggregates.
    for (const auto& m : report.slots) {
        report.mean_lf_rate += m.lf_rate;
        report.max_lf_rate = std::max(report.max_lf_rate, m.lf_rate);
        report.mean_delta_r_hat += m.delta_r_hat;
        report.mean_gamma_v += m.gamma_v;
        report.total_switch_events += m.switch_events;
        report.total_continuity_events += m.continuity_events;
    }
    const double n_slots = static_cast<double>(report.slots.size());
    report.mean_lf_rate /= n_slots;
    report.mean_delta_r_hat /= n_slots;
    report.mean_gamma_v /= n_slots;
    report.fsr = frequency_switching_rate(report.assignments, report.colorings);
    return report;
}

double frequency_switching_rate(const std::vector<LinkAssignment>& assignments,
                                const std::vector<std::vector<int>>& colorings) {
    std::int64_t switched = 0, continuous = 0;
    for (size_t t = 1; t < assignments.size(); ++t) {
        std::unordered_map<int, std::pair<int, int>> prev;  // sat -> (gateway, color)
        for (size_t v = 0; v < assignments[t - 1].entries.size(); ++v) {
            const auto& e = assignments[t - 1].entries[v];
            if (!e.is_virtual()) prev[e.sat_id] = {e.gateway_id, colorings[t - 1][v]};
        }
        for (size_t v = 0; v < assignments[t].entries.size(); ++v) {
            const auto& e = assignments[t].entries[v];
            if (e.is_virtual()) continue;
            const auto it = prev.find(e.sat_id);
            if (it == prev.end() || it->second.first != e.gateway_id) continue;
            ++continuous;
            if (colorings[t][v] != it->second.second) ++switched;
        }
    }
    return continuous > 0 ? static_cast<double>(switched) / continuous : 0.0;
}

std::vector<std::pair<double, double>> i_over_n_ccdf(std::vector<double> db_values) {
    std::vector<std::pair<double, double>> table;
    if (db_values.empty()) return table;
    std::sort(db_values.begin(), db_values.end());
    const double n = static_cast<double>(db_values.size());
    size_t i = 0;
    while (i < db_values.size()) {
        size_t j = i;
        while (j < db_values.size() && db_values[j] == db_values[i]) ++j;
        table.emplace_back(db_values[i], static_cast<double>(db_values.size() - j) / n);
        i = j;
    }
    return table;
}

std::string report_json(const RunReport& report) {
    ordered_json root;
    root["config"] = ordered_json::parse(scenario_to_json(report.config));
    ordered_json opts;
    opts["algo"] = algo_name(report.options.algo);
    opts["tcfa"] = report.options.tcfa;
    opts["ps"] = report.options.ps;
    opts["decomp"] = decomp_name(report.options.decomp);
    opts["clusters"] = report.options.clusters;
    opts["vsu"] = report.options.vsu;
    opts["gg_restarts"] = report.options.gg.n_restarts;
    opts["gg_sigma"] = report.options.gg.perturb_sigma;
    opts["cts_initial"] = report.options.cts.n_initial;
    opts["cts_candidates"] = report.options.cts.n_candidates;
    opts["cts_iterations"] = report.options.cts.n_iterations;
    opts["cts_neighbors"] = report.options.cts.n_neighbors;
    opts["tabu_length"] = report.options.cts.tabu_length;
    root["options"] = opts;
    root["seed"] = report.seed;

    ordered_json agg;
    agg["fsr"] = report.fsr;
    agg["mean_lf_rate"] = report.mean_lf_rate;
    agg["max_lf_rate"] = report.max_lf_rate;
    agg["mean_delta_r_hat"] = report.mean_delta_r_hat;
    agg["mean_gamma_v"] = report.mean_gamma_v;
    agg["total_switch_events"] = report.total_switch_events;
    agg["total_continuity_events"] = report.total_continuity_events;
    root["aggregate"] = agg;

    root["slots"] = ordered_json::array();
    for (const auto& m : report.slots) {
        ordered_json s;
        s["slot"] = m.slot;
        s["working"] = m.working;
        s["lf_count"] = m.lf_count;
        s["lf_rate"] = m.lf_rate;
        s["f_con"] = m.f_con;
        s["delta_r_hat"] = m.delta_r_hat;
        s["gamma_v"] = m.gamma_v;
        s["reuse_count"] = m.reuse_count;
        s["switch_events"] = m.switch_events;
        s["continuity_events"] = m.continuity_events;
        root["slots"].push_back(s);
    }
    return root.dump(2) + "\n";
}

void write_report_files(const RunReport& report, const std::string& out_dir,
                        bool dump_assignments) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    {
        std::ofstream f(dir / "report.json", std::ios::binary);
        f << report_json(report);
    }
    {
        std::ofstream f(dir / "metrics.csv");
        f << "slot,working,lf_count,lf_rate,f_con,delta_r_hat,gamma_v,reuse_count,"
             "switch_events,continuity_events,t_select_ms,t_graph_ms,t_color_ms,t_vsu_ms,"
             "t_total_ms\n";
        char buf[512];
        for (const auto& m : report.slots) {
            std::snprintf(buf, sizeof(buf),
                          "%d,%d,%d,%.9g,%lld,%.9g,%.9g,%d,%d,%d,%.3f,%.3f,%.3f,%.3f,%.3f\n",
                          m.slot, m.working, m.lf_count, m.lf_rate,
                          static_cast<long long>(m.f_con), m.delta_r_hat, m.gamma_v, m.reuse_count,
                          m.switch_events, m.continuity_events, m.times.select_ms, m.times.graph_ms,
                          m.times.color_ms, m.times.vsu_ms, m.times.total_ms);
            f << buf;
        }
    }
    {
        std::ofstream f(dir / "allocation.csv");
        f << "slot,gateway,antenna,sat_id,color,reuse\n";
        for (size_t t = 0; t < report.assignments.size(); ++t) {
            const auto& a = report.assignments[t];
            for (size_t v = 0; v < a.entries.size(); ++v) {
                const auto& e = a.entries[v];
                f << a.slot << "," << e.gateway_id << "," << e.antenna_index << "," << e.sat_id
                  << "," << report.colorings[t][v] << "," << report.reuses[t][v] << "\n";
            }
        }
    }
    {
        std::ofstream f(dir / "ccdf.csv");
        f << "i_over_n_db,ccdf\n";
        char buf[96];
        for (const auto& [db, p] : i_over_n_ccdf(report.i_over_n_db)) {
            std::snprintf(buf, sizeof(buf), "%.6f,%.9g\n", db, p);
            f << buf;
        }
    }
    {
        // One slot of gateway points and colored feeder-link lines.
        const int slot = report.geojson_slot;
        ordered_json features = ordered_json::array();
        for (const auto& g : report.config.gateways) {
            ordered_json f;
            f["type"] = "Feature";
            f["geometry"] = {{"type", "Point"},
                             {"coordinates", {g.longitude_deg, g.latitude_deg}}};
            f["properties"] = {{"gateway", g.id}, {"n_antennas", g.n_antennas}};
            features.push_back(f);
        }
        const auto& a = report.assignments[slot];
        std::unordered_map<int, const GatewayStation*> gw_by_id;
        for (const auto& g : report.config.gateways) gw_by_id[g.id] = &g;
        for (size_t v = 0; v < a.entries.size(); ++v) {
            const auto& e = a.entries[v];
            if (e.is_virtual() || v >= report.geojson_subpoints.size()) continue;
            const auto [lat, lon] = report.geojson_subpoints[v];
            const GatewayStation* g = gw_by_id.at(e.gateway_id);
            ordered_json f;
            f["type"] = "Feature";
            f["geometry"] = {{"type", "LineString"},
                             {"coordinates",
                              {{g->longitude_deg, g->latitude_deg}, {lon, lat}}}};
            f["properties"] = {{"gateway", e.gateway_id},
                               {"antenna", e.antenna_index},
                               {"sat_id", e.sat_id},
                               {"color", report.colorings[slot][v]},
                               {"reuse", report.reuses[slot][v]},
                               {"slot", slot}};
            features.push_back(f);
        }
        ordered_json root;
        root["type"] = "FeatureCollection";
        root["features"] = features;
        std::ofstream f(dir / "allocation.geojson", std::ios::binary);
        f << root.dump(2) << "\n";
    }
    if (dump_assignments) {
        std::string text = "slot,gateway,antenna,sat_id,elevation_deg\n";
        for (const auto& a : report.assignments) append_assignment_csv(a, text);
        std::ofstream f(dir / "assignments.csv");
        f << text;
    }
}

}  // namespace leofa
