#include "leofa/scenario.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace leofa {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

int ScenarioConfig::total_satellites() const {
    int n = 0;
    for (const auto& s : shells) n += s.count();
    return n;
}

GainMask ScenarioConfig::sat_mask() const {
    GainMask m = sat_mask_override ? *sat_mask_override : s1528_like_mask();
    m.peak_gain_db = peak_gain_sat_db;
    m.validate();
    return m;
}

GainMask ScenarioConfig::gs_mask() const {
    GainMask m = gs_mask_override ? *gs_mask_override : s1428_like_mask();
    m.peak_gain_db = peak_gain_gs_db;
    m.validate();
    return m;
}

void ScenarioConfig::validate() const {
    if (shells.empty())
        throw ConfigError("shells", "at least one orbital shell is required");
    for (size_t i = 0; i < shells.size(); ++i) {
        const auto& s = shells[i];
        const std::string ctx = "shells[" + std::to_string(i) + "]";
        if (s.altitude_km <= 0.0) throw ConfigError(ctx + ".altitude_km", "must be > 0");
        if (s.inclination_deg < 0.0 || s.inclination_deg > 180.0)
            throw ConfigError(ctx + ".inclination_deg", "must be in [0, 180]");
        if (s.num_planes < 1) throw ConfigError(ctx + ".num_planes", "must be >= 1");
        if (s.sats_per_plane < 1) throw ConfigError(ctx + ".sats_per_plane", "must be >= 1");
    }
    if (gateways.empty())
        throw ConfigError("gateways", "at least one gateway station is required");
    for (size_t i = 0; i < gateways.size(); ++i) {
        const auto& g = gateways[i];
        const std::string ctx = "gateways[" + std::to_string(i) + "]";
        if (g.latitude_deg < -90.0 || g.latitude_deg > 90.0)
            throw ConfigError(ctx + ".latitude_deg", "must be in [-90, 90]");
        if (g.longitude_deg < -180.0 || g.longitude_deg > 180.0)
            throw ConfigError(ctx + ".longitude_deg", "must be in [-180, 180]");
        if (g.n_antennas < 1) throw ConfigError(ctx + ".n_antennas", "must be >= 1");
        for (size_t j = 0; j < i; ++j)
            if (gateways[j].id == g.id) throw ConfigError(ctx + ".id", "duplicate gateway id");
    }
    if (time_grid.dt_s <= 0.0) throw ConfigError("time_grid.dt_s", "must be > 0");
    if (time_grid.num_slots < 1) throw ConfigError("time_grid.num_slots", "must be >= 1");
    if (num_subchannels < 1) throw ConfigError("num_subchannels", "must be >= 1");
    if (total_bandwidth_hz <= 0.0) throw ConfigError("total_bandwidth_hz", "must be > 0");
    if (carrier_freq_hz <= 0.0) throw ConfigError("carrier_freq_hz", "must be > 0");
    if (noise_temp_k <= 0.0) throw ConfigError("noise_temp_k", "must be > 0");
    sat_mask();
    gs_mask();
}

Ephemeris propagate_constellation(const std::vector<OrbitalShell>& shells, const TimeGrid& grid) {
    if (grid.num_slots < 1) throw ConfigError("time_grid.num_slots", "must be >= 1");
    if (grid.dt_s <= 0.0) throw ConfigError("time_grid.dt_s", "must be > 0");
    int num_sats = 0;
    for (size_t i = 0; i < shells.size(); ++i) {
        if (shells[i].altitude_km <= 0.0)
            throw ConfigError("shells[" + std::to_string(i) + "].altitude_km", "must be > 0");
        num_sats += shells[i].count();
    }

    Ephemeris eph;
    eph.num_slots = grid.num_slots;
    eph.num_sats = num_sats;
    eph.positions.resize(static_cast<size_t>(grid.num_slots) * num_sats);

    int sat0 = 0;
    for (const auto& shell : shells) {
        const double a = constants::earth_radius_m + shell.altitude_km * 1000.0;
        const double mean_motion = std::sqrt(constants::earth_mu / (a * a * a));
        const double incl = deg2rad(shell.inclination_deg);
        const double ci = std::cos(incl);
        const double si = std::sin(incl);
        for (int p = 0; p < shell.num_planes; ++p) {
            const double raan = deg2rad(shell.raan_spread_deg * p / shell.num_planes);
            const double cr = std::cos(raan);
            const double sr = std::sin(raan);
            for (int k = 0; k < shell.sats_per_plane; ++k) {
                const double u0 = deg2rad(360.0 * k / shell.sats_per_plane +
                                          shell.phasing_offset_deg * p);
                const int sat = sat0 + p * shell.sats_per_plane + k;
                for (int slot = 0; slot < grid.num_slots; ++slot) {
                    const double u = u0 + mean_motion * grid.elapsed_at(slot);
                    const double xo = a * std::cos(u);
                    const double yo = a * std::sin(u);
                    // orbital plane -> inertial: Rx(incl), then Rz(raan)
                    const Vec3 pos{cr * xo - sr * (yo * ci),
                                   sr * xo + cr * (yo * ci),
                                   yo * si};
                    eph.at(slot, sat) = pos;
                }
            }
        }
        sat0 += shell.count();
    }
    return eph;
}

Vec3 gateway_ecef(const GatewayStation& gs, GeodeticModel model) {
    return geodetic_to_ecef(gs.latitude_deg, gs.longitude_deg, gs.altitude_m, model);
}

Vec3 gateway_position_at(const GatewayStation& gs, GeodeticModel model, double elapsed_s) {
    return rotate_z(gateway_ecef(gs, model), constants::sidereal_rate_rad_s * elapsed_s);
}

namespace {

void check_keys(const json& obj, const std::string& ctx, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) { known = true; break; }
        if (!known) throw ConfigError(ctx.empty() ? it.key() : ctx + "." + it.key(), "unknown key");
    }
}

const json& require(const json& obj, const std::string& ctx, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(ctx.empty() ? key : ctx + "." + key, "missing required key");
    return *it;
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError(where, "expected a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ConfigError(where, "expected an integer");
    return v.get<int>();
}

double opt_number(const json& obj, const std::string& ctx, const char* key, double def) {
    auto it = obj.find(key);
    if (it == obj.end()) return def;
    return as_number(*it, ctx.empty() ? key : ctx + "." + key);
}

GainMask parse_mask(const json& obj, const std::string& ctx, const GainMask& base) {
    check_keys(obj, ctx, {"half_beamwidth_deg", "sidelobe_floor_db", "rolloff"});
    GainMask m = base;
    m.half_beamwidth_deg = opt_number(obj, ctx, "half_beamwidth_deg", base.half_beamwidth_deg);
    m.sidelobe_floor_db = opt_number(obj, ctx, "sidelobe_floor_db", base.sidelobe_floor_db);
    if (obj.contains("rolloff")) {
        const json& arr = obj["rolloff"];
        if (!arr.is_array()) throw ConfigError(ctx + ".rolloff", "expected an array");
        m.rolloff.clear();
        for (size_t i = 0; i < arr.size(); ++i) {
            const std::string sctx = ctx + ".rolloff[" + std::to_string(i) + "]";
            check_keys(arr[i], sctx, {"start_deg", "slope_db_per_decade"});
            GainMask::LogSegment seg;
            seg.start_deg = as_number(require(arr[i], sctx, "start_deg"), sctx + ".start_deg");
            seg.slope_db_per_decade =
                as_number(require(arr[i], sctx, "slope_db_per_decade"), sctx + ".slope_db_per_decade");
            m.rolloff.push_back(seg);
        }
    }
    return m;
}

}  // namespace

ScenarioConfig parse_scenario_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", e.what());
    }
    if (!root.is_object()) throw ConfigError("<document>", "expected a JSON object");

    check_keys(root, "",
               {"shells", "gateways", "time_grid", "elevation_threshold_deg", "carrier_freq_hz",
                "total_bandwidth_hz", "num_subchannels", "tx_power_dbw", "noise_temp_k",
                "peak_gain_sat_db", "peak_gain_gs_db", "itu_threshold_db", "weak_threshold_db",
                "rng_seed", "geodetic_model", "vsu_constant_psd", "sat_mask", "gs_mask"});

    ScenarioConfig cfg;

    const json& shells = require(root, "", "shells");
    if (!shells.is_array()) throw ConfigError("shells", "expected an array");
    for (size_t i = 0; i < shells.size(); ++i) {
        const std::string ctx = "shells[" + std::to_string(i) + "]";
        check_keys(shells[i], ctx,
                   {"altitude_km", "inclination_deg", "num_planes", "sats_per_plane",
                    "phasing_offset_deg", "raan_spread_deg"});
        OrbitalShell s;
        s.altitude_km = as_number(require(shells[i], ctx, "altitude_km"), ctx + ".altitude_km");
        s.inclination_deg = as_number(require(shells[i], ctx, "inclination_deg"), ctx + ".inclination_deg");
        s.num_planes = as_int(require(shells[i], ctx, "num_planes"), ctx + ".num_planes");
        s.sats_per_plane = as_int(require(shells[i], ctx, "sats_per_plane"), ctx + ".sats_per_plane");
        s.phasing_offset_deg = opt_number(shells[i], ctx, "phasing_offset_deg", 0.0);
        s.raan_spread_deg = opt_number(shells[i], ctx, "raan_spread_deg", 360.0);
        cfg.shells.push_back(s);
    }

    const json& gws = require(root, "", "gateways");
    if (!gws.is_array()) throw ConfigError("gateways", "expected an array");
    for (size_t i = 0; i < gws.size(); ++i) {
        const std::string ctx = "gateways[" + std::to_string(i) + "]";
        check_keys(gws[i], ctx, {"id", "latitude_deg", "longitude_deg", "altitude_m", "n_antennas"});
        GatewayStation g;
        g.id = as_int(require(gws[i], ctx, "id"), ctx + ".id");
        g.latitude_deg = as_number(require(gws[i], ctx, "latitude_deg"), ctx + ".latitude_deg");
        g.longitude_deg = as_number(require(gws[i], ctx, "longitude_deg"), ctx + ".longitude_deg");
        g.altitude_m = opt_number(gws[i], ctx, "altitude_m", 0.0);
        g.n_antennas = as_int(require(gws[i], ctx, "n_antennas"), ctx + ".n_antennas");
        cfg.gateways.push_back(g);
    }

    const json& tg = require(root, "", "time_grid");
    check_keys(tg, "time_grid", {"t0_s", "dt_s", "num_slots"});
    cfg.time_grid.t0_s = opt_number(tg, "time_grid", "t0_s", 0.0);
    cfg.time_grid.dt_s = as_number(require(tg, "time_grid", "dt_s"), "time_grid.dt_s");
    cfg.time_grid.num_slots = as_int(require(tg, "time_grid", "num_slots"), "time_grid.num_slots");

    cfg.elevation_threshold_deg = opt_number(root, "", "elevation_threshold_deg", 40.0);
    cfg.carrier_freq_hz = opt_number(root, "", "carrier_freq_hz", 20e9);
    cfg.total_bandwidth_hz = opt_number(root, "", "total_bandwidth_hz", 500e6);
    cfg.num_subchannels = as_int(require(root, "", "num_subchannels"), "num_subchannels");
    cfg.tx_power_dbw = opt_number(root, "", "tx_power_dbw", 12.0);
    cfg.noise_temp_k = opt_number(root, "", "noise_temp_k", 398.0);
    cfg.peak_gain_sat_db = opt_number(root, "", "peak_gain_sat_db", 35.0);
    cfg.peak_gain_gs_db = opt_number(root, "", "peak_gain_gs_db", 45.76);
    cfg.itu_threshold_db = opt_number(root, "", "itu_threshold_db", -12.2);
    cfg.weak_threshold_db = opt_number(root, "", "weak_threshold_db", -13.0);
    if (root.contains("rng_seed")) {
        if (!root["rng_seed"].is_number_integer()) throw ConfigError("rng_seed", "expected an integer");
        cfg.rng_seed = root["rng_seed"].get<std::uint64_t>();
    }
    if (root.contains("geodetic_model")) {
        const std::string m = root["geodetic_model"].is_string()
                                  ? root["geodetic_model"].get<std::string>()
                                  : throw ConfigError("geodetic_model", "expected a string");
        if (m == "spherical") cfg.geodetic_model = GeodeticModel::Spherical;
        else if (m == "wgs84") cfg.geodetic_model = GeodeticModel::Wgs84;
        else throw ConfigError("geodetic_model", "expected \"spherical\" or \"wgs84\"");
    }
    if (root.contains("vsu_constant_psd")) {
        if (!root["vsu_constant_psd"].is_boolean()) throw ConfigError("vsu_constant_psd", "expected a boolean");
        cfg.vsu_constant_psd = root["vsu_constant_psd"].get<bool>();
    }
    if (root.contains("sat_mask"))
        cfg.sat_mask_override = parse_mask(root["sat_mask"], "sat_mask", s1528_like_mask(cfg.peak_gain_sat_db));
    if (root.contains("gs_mask"))
        cfg.gs_mask_override = parse_mask(root["gs_mask"], "gs_mask", s1428_like_mask(cfg.peak_gain_gs_db));

    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario_json(ss.str());
}

std::string scenario_to_json(const ScenarioConfig& cfg) {
    ordered_json root;
    root["shells"] = ordered_json::array();
    for (const auto& s : cfg.shells)
        root["shells"].push_back({{"altitude_km", s.altitude_km},
                                  {"inclination_deg", s.inclination_deg},
                                  {"num_planes", s.num_planes},
                                  {"sats_per_plane", s.sats_per_plane},
                                  {"phasing_offset_deg", s.phasing_offset_deg},
                                  {"raan_spread_deg", s.raan_spread_deg}});
    root["gateways"] = ordered_json::array();
    for (const auto& g : cfg.gateways)
        root["gateways"].push_back({{"id", g.id},
                                    {"latitude_deg", g.latitude_deg},
                                    {"longitude_deg", g.longitude_deg},
                                    {"altitude_m", g.altitude_m},
                                    {"n_antennas", g.n_antennas}});
    root["time_grid"] = {{"t0_s", cfg.time_grid.t0_s},
                         {"dt_s", cfg.time_grid.dt_s},
                         {"num_slots", cfg.time_grid.num_slots}};
    root["elevation_threshold_deg"] = cfg.elevation_threshold_deg;
    root["carrier_freq_hz"] = cfg.carrier_freq_hz;
    root["total_bandwidth_hz"] = cfg.total_bandwidth_hz;
    root["num_subchannels"] = cfg.num_subchannels;
    root["tx_power_dbw"] = cfg.tx_power_dbw;
    root["noise_temp_k"] = cfg.noise_temp_k;
    root["peak_gain_sat_db"] = cfg.peak_gain_sat_db;
    root["peak_gain_gs_db"] = cfg.peak_gain_gs_db;
    root["itu_threshold_db"] = cfg.itu_threshold_db;
    root["weak_threshold_db"] = cfg.weak_threshold_db;
    root["rng_seed"] = cfg.rng_seed;
    root["geodetic_model"] = cfg.geodetic_model == GeodeticModel::Spherical ? "spherical" : "wgs84";
    root["vsu_constant_psd"] = cfg.vsu_constant_psd;
    auto dump_mask = [](const GainMask& m) {
        ordered_json j;
        j["half_beamwidth_deg"] = m.half_beamwidth_deg;
        j["sidelobe_floor_db"] = m.sidelobe_floor_db;
        j["rolloff"] = ordered_json::array();
        for (const auto& seg : m.rolloff)
            j["rolloff"].push_back(
                {{"start_deg", seg.start_deg}, {"slope_db_per_decade", seg.slope_db_per_decade}});
        return j;
    };
    if (cfg.sat_mask_override) root["sat_mask"] = dump_mask(*cfg.sat_mask_override);
    if (cfg.gs_mask_override) root["gs_mask"] = dump_mask(*cfg.gs_mask_override);
    return root.dump(2);
}

void save_ephemeris_csv(const Ephemeris& eph, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw ConfigError("<file>", "cannot open " + path + " for writing");
    std::fputs("slot,sat_id,x_m,y_m,z_m\n", f);
    for (int slot = 0; slot < eph.num_slots; ++slot)
        for (int sat = 0; sat < eph.num_sats; ++sat) {
            const Vec3& p = eph.at(slot, sat);
            std::fprintf(f, "%d,%d,%.17g,%.17g,%.17g\n", slot, sat, p.x, p.y, p.z);
        }
    std::fclose(f);
}

Ephemeris load_ephemeris_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open " + path);
    std::string header;
    if (!std::getline(in, header) || header != "slot,sat_id,x_m,y_m,z_m")
        throw ConfigError("<csv header>", "expected 'slot,sat_id,x_m,y_m,z_m'");

    struct Row { int slot, sat; Vec3 p; };
    std::vector<Row> rows;
    int max_slot = -1, max_sat = -1;
    std::string line;
    size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        Row r;
        if (std::sscanf(line.c_str(), "%d,%d,%lf,%lf,%lf", &r.slot, &r.sat, &r.p.x, &r.p.y, &r.p.z) != 5)
            throw ConfigError("<csv line " + std::to_string(lineno) + ">", "malformed row");
        if (r.slot < 0 || r.sat < 0)
            throw ConfigError("<csv line " + std::to_string(lineno) + ">", "negative slot or sat_id");
        max_slot = std::max(max_slot, r.slot);
        max_sat = std::max(max_sat, r.sat);
        rows.push_back(r);
    }
    if (rows.empty()) throw ConfigError("<csv>", "no data rows");

    Ephemeris eph;
    eph.num_slots = max_slot + 1;
    eph.num_sats = max_sat + 1;
    eph.positions.resize(static_cast<size_t>(eph.num_slots) * eph.num_sats);
    std::vector<char> seen(eph.positions.size(), 0);
    for (const auto& r : rows) {
        const size_t idx = static_cast<size_t>(r.slot) * eph.num_sats + r.sat;
        if (seen[idx]) throw ConfigError("<csv>", "duplicate (slot, sat_id) row");
        seen[idx] = 1;
        eph.positions[idx] = r.p;
    }
    for (char s : seen)
        if (!s) throw ConfigError("<csv>", "incomplete slot x satellite grid");
    return eph;
}

}  // namespace leofa
