// Command-line front end: batch simulation, standalone propagation and
// per-slot interference-graph dumps.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "leofa/pipeline.hpp"

namespace {

leofa::Algo parse_algo(const std::string& name) {
    if (name == "random") return leofa::Algo::Random;
    if (name == "global") return leofa::Algo::Global;
    if (name == "gg") return leofa::Algo::GG;
    if (name == "cts") return leofa::Algo::CTS;
    throw leofa::ConfigError("--algo", "expected random|global|gg|cts");
}

leofa::DecompMode parse_decomp(const std::string& name) {
    if (name == "none") return leofa::DecompMode::None;
    if (name == "ccd") return leofa::DecompMode::CCD;
    if (name == "gscd") return leofa::DecompMode::GSCD;
    throw leofa::ConfigError("--decomp", "expected none|ccd|gscd");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feeder-link subchannel allocation simulator for mega LEO constellations"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Run the per-slot allocation pipeline");
    std::string config_path, out_dir, algo_name = "gg", decomp_name = "none";
    std::string ephemeris_path;
    leofa::SimOptions opt;
    opt.threads = static_cast<int>(std::thread::hardware_concurrency());
    if (opt.threads < 1) opt.threads = 1;
    int subchannels = 0, nat = 0;
    std::int64_t seed = -1;
    bool dump_assignments = false;
    sim->add_option("--config", config_path, "Scenario config (JSON)")->required();
    sim->add_option("--out", out_dir, "Output directory")->required();
    sim->add_option("--algo", algo_name, "random|global|gg|cts");
    sim->add_flag("--tcfa", opt.tcfa, "Time-continuous allocation (inherit colors)");
    sim->add_option("--ps", opt.ps, "Switch proportionality p_s");
    sim->add_option("--decomp", decomp_name, "none|ccd|gscd");
    sim->add_option("--clusters", opt.clusters, "GSCD cluster count (0 = auto)");
    sim->add_flag("--vsu", opt.vsu, "Vacant subchannel reuse");
    sim->add_option("--subchannels", subchannels, "Override subchannel count C");
    sim->add_option("--nat", nat, "Override antennas per gateway");
    sim->add_option("--seed", seed, "Override RNG seed");
    sim->add_option("--threads", opt.threads, "Worker threads");
    sim->add_option("--ephemeris", ephemeris_path, "Load ephemeris CSV instead of propagating");
    sim->add_option("--gg-restarts", opt.gg.n_restarts, "GG restart count");
    sim->add_option("--gg-sigma", opt.gg.perturb_sigma, "GG degree noise sigma");
    sim->add_option("--cts-initial", opt.cts.n_initial, "CTS initial solutions");
    sim->add_option("--cts-candidates", opt.cts.n_candidates, "CTS candidate count");
    sim->add_option("--cts-iterations", opt.cts.n_iterations, "Tabu iterations");
    sim->add_option("--cts-neighbors", opt.cts.n_neighbors, "Neighbors per tabu iteration");
    sim->add_option("--tabu-length", opt.cts.tabu_length, "Tabu list length");
    sim->add_option("--geojson-slot", opt.geojson_slot, "Slot exported to allocation.geojson");
    sim->add_flag("--dump-assignments", dump_assignments, "Also write assignments.csv");

    // propagate
    auto* prop = app.add_subcommand("propagate", "Write the constellation ephemeris CSV");
    std::string prop_config, prop_out;
    prop->add_option("--config", prop_config, "Scenario config (JSON)")->required();
    prop->add_option("--out", prop_out, "Output CSV path")->required();

    // dump-graph
    auto* dump = app.add_subcommand("dump-graph", "Write one slot's interference graph (DIMACS)");
    std::string dump_config, dump_out;
    int dump_slot = 0;
    dump->add_option("--config", dump_config, "Scenario config (JSON)")->required();
    dump->add_option("--slot", dump_slot, "Time slot");
    dump->add_option("--out", dump_out, "Output path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) {
            leofa::ScenarioConfig cfg = leofa::load_scenario(config_path);
            opt.algo = parse_algo(algo_name);
            opt.decomp = parse_decomp(decomp_name);
            if (subchannels > 0) opt.subchannels_override = subchannels;
            if (nat > 0) opt.nat_override = nat;
            if (seed >= 0) opt.seed_override = static_cast<std::uint64_t>(seed);

            leofa::Ephemeris eph;
            const leofa::Ephemeris* eph_ptr = nullptr;
            if (!ephemeris_path.empty()) {
                eph = leofa::load_ephemeris_csv(ephemeris_path);
                eph_ptr = &eph;
            }
            const leofa::RunReport report = leofa::run_simulation(cfg, opt, eph_ptr);
            leofa::write_report_files(report, out_dir, dump_assignments);
            std::printf("slots=%zu mean_lf_rate=%.6f max_lf_rate=%.6f fsr=%.6f\n",
                        report.slots.size(), report.mean_lf_rate, report.max_lf_rate, report.fsr);
        } else if (*prop) {
            leofa::ScenarioConfig cfg = leofa::load_scenario(prop_config);
            const leofa::Ephemeris eph = leofa::propagate_constellation(cfg.shells, cfg.time_grid);
            leofa::save_ephemeris_csv(eph, prop_out);
            std::printf("slots=%d sats=%d -> %s\n", eph.num_slots, eph.num_sats, prop_out.c_str());
        } else if (*dump) {
            leofa::ScenarioConfig cfg = leofa::load_scenario(dump_config);
            if (dump_slot < 0 || dump_slot >= cfg.time_grid.num_slots)
                throw leofa::ConfigError("--slot", "outside the scenario time grid");
            const leofa::Ephemeris eph = leofa::propagate_constellation(cfg.shells, cfg.time_grid);
            std::vector<leofa::Vec3> gw_pos;
            for (const auto& g : cfg.gateways)
                gw_pos.push_back(leofa::gateway_position_at(g, cfg.geodetic_model,
                                                            cfg.time_grid.elapsed_at(dump_slot)));
            const leofa::LinkAssignment assignment = leofa::select_satellites(
                eph, cfg.gateways, gw_pos, dump_slot, cfg.elevation_threshold_deg);
            const leofa::LinkBudgetConfig budget = leofa::LinkBudgetConfig::from_scenario(cfg);
            const leofa::SlotGeometry geo(assignment, eph, cfg.gateways, gw_pos, cfg.sat_mask(),
                                          cfg.gs_mask(), budget);
            leofa::GraphBuildParams params;
            params.weak_threshold_linear = leofa::db_to_linear(cfg.weak_threshold_db);
            params.itu_threshold_linear = budget.itu_threshold_linear;
            const leofa::InterferenceGraph graph = leofa::build_graph(assignment, geo, params);
            std::ofstream out(dump_out);
            if (!out) throw std::runtime_error("cannot open " + dump_out);
            leofa::write_dimacs(graph, out);
            std::printf("slot=%d vertices=%d edges=%lld -> %s\n", dump_slot, graph.n,
                        static_cast<long long>(graph.edge_count), dump_out.c_str());
        }
    } catch (const leofa::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
