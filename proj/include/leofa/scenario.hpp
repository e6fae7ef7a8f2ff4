#pragma once

// Scenario configuration, Walker-style constellation propagation and
// gateway geometry. Satellites follow circular Keplerian orbits around a
// spherical Earth in an inertial frame aligned with ECEF at t0; Earth
// rotation is applied to gateway positions at the sidereal rate, so the
// satellite-gateway geometry evolves while orbit radii stay exact.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "leofa/antenna.hpp"
#include "leofa/geometry.hpp"

namespace leofa {

// Configuration / file errors carry the offending field name.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

struct OrbitalShell {
    double altitude_km = 0.0;
    double inclination_deg = 0.0;
    int num_planes = 1;
    int sats_per_plane = 1;
    double phasing_offset_deg = 0.0;  // inter-plane phase advance
    double raan_spread_deg = 360.0;

    int count() const { return num_planes * sats_per_plane; }
};

struct GatewayStation {
    int id = 0;
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double altitude_m = 0.0;
    int n_antennas = 1;  // N_at
};

struct TimeGrid {
    double t0_s = 0.0;
    double dt_s = 10.0;
    int num_slots = 1;  // T_slot

    double elapsed_at(int slot) const { return dt_s * slot; }
};

struct ScenarioConfig {
    std::vector<OrbitalShell> shells;
    std::vector<GatewayStation> gateways;
    TimeGrid time_grid;

    double elevation_threshold_deg = 40.0;  // theta_thr
    double carrier_freq_hz = 20e9;
    double total_bandwidth_hz = 500e6;  // B_w
    int num_subchannels = 1;            // C
    double tx_power_dbw = 12.0;
    double noise_temp_k = 398.0;
    double peak_gain_sat_db = 35.0;
    double peak_gain_gs_db = 45.76;
    double itu_threshold_db = -12.2;  // aggregate I/N regulation
    double weak_threshold_db = -13.0; // weak-interference cutoff for graph edges
    std::uint64_t rng_seed = 1;
    GeodeticModel geodetic_model = GeodeticModel::Spherical;
    bool vsu_constant_psd = false;  // optimistic reuse capacity convention

    // Optional overrides of the preset mask shapes (peaks always come
    // from peak_gain_*_db above).
    std::optional<GainMask> sat_mask_override;
    std::optional<GainMask> gs_mask_override;

    int total_satellites() const;
    GainMask sat_mask() const;
    GainMask gs_mask() const;
    void validate() const;  // throws ConfigError
};

struct Ephemeris {
    int num_slots = 0;
    int num_sats = 0;
    std::vector<Vec3> positions;  // slot-major: positions[slot * num_sats + sat]

    const Vec3& at(int slot, int sat) const { return positions[static_cast<size_t>(slot) * num_sats + sat]; }
    Vec3& at(int slot, int sat) { return positions[static_cast<size_t>(slot) * num_sats + sat]; }
};

// Circular-orbit propagation of all shells over the grid. Satellite ids
// run shell by shell, plane by plane, slot ordering matching the grid.
// Deterministic; throws ConfigError on non-physical shells.
Ephemeris propagate_constellation(const std::vector<OrbitalShell>& shells, const TimeGrid& grid);

// Gateway ECEF at epoch and its inertial position after elapsed seconds.
Vec3 gateway_ecef(const GatewayStation& gs, GeodeticModel model);
Vec3 gateway_position_at(const GatewayStation& gs, GeodeticModel model, double elapsed_s);

ScenarioConfig parse_scenario_json(const std::string& text);
ScenarioConfig load_scenario(const std::string& path);
std::string scenario_to_json(const ScenarioConfig& config);  // canonical echo

void save_ephemeris_csv(const Ephemeris& eph, const std::string& path);
Ephemeris load_ephemeris_csv(const std::string& path);

}  // namespace leofa
