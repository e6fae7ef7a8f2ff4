#pragma once

// Link-budget computations: single-link and aggregate interference,
// noise, I/N, C/N, SINR, capacity and capacity degradation, link-failure
// counting against the ITU aggregate I/N regulation, and the capacity
// degradation bound for compliant links.
//
// All internal math is in linear units; dB appears only at the I/O
// boundaries.

#include <functional>
#include <vector>

#include "leofa/antenna.hpp"
#include "leofa/selection.hpp"

namespace leofa {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

struct LinkBudgetConfig {
    double carrier_wavelength_m = 0.015;
    double subchannel_bandwidth_hz = 62.5e6;  // B = B_w / C
    double boltzmann = constants::boltzmann;
    double noise_temp_k = 398.0;
    double tx_power_w = 15.848931924611133;   // 12 dBW
    double itu_threshold_linear = 0.0603;     // I_th^R as a linear ratio

    static LinkBudgetConfig from_scenario(const ScenarioConfig& cfg);
    double noise_w() const { return boltzmann * noise_temp_k * subchannel_bandwidth_hz; }
};

// P * G_tx(theta_tx) * G_rx(theta_rx) * (lambda / 4 pi d)^2, watts.
double single_link_interference_w(double tx_power_w, double off_axis_tx_deg,
                                  double off_axis_rx_deg, double distance_m,
                                  const GainMask& tx_mask, const GainMask& rx_mask,
                                  double wavelength_m);

double noise_power_w(double boltzmann, double noise_temp_k, double bandwidth_hz);
inline double i_over_n(double interference_w, double noise_w) { return interference_w / noise_w; }

// Precomputed per-slot link geometry over the assignment's entries.
// Vertex indices match LinkAssignment::entries.
class SlotGeometry {
public:
    SlotGeometry(const LinkAssignment& assignment, const Ephemeris& eph,
                 const std::vector<GatewayStation>& gateways,
                 const std::vector<Vec3>& gateway_pos, const GainMask& sat_mask,
                 const GainMask& gs_mask, const LinkBudgetConfig& budget);

    int size() const { return static_cast<int>(entries_.size()); }
    bool is_real(int v) const { return entries_[v].real; }
    double carrier_power_w(int v) const { return entries_[v].carrier_w; }

    // Off-axis single-link interference from the satellite of entry u into
    // the receiving antenna of entry v, watts. Zero for virtual entries,
    // u == v, or an interferer below the victim gateway's horizon.
    double single_link_w(int u, int v) const;
    double single_link_i_over_n(int u, int v) const { return single_link_w(u, v) / noise_w_; }

    // Interferer above the horizontal plane of v's gateway.
    bool co_visible(int u, int v) const;

    // All other real working satellites above the victim's horizon.
    std::vector<int> interferer_set(int victim) const;

    // Aggregate I/N for victim v over entries sharing its color.
    double aggregate_i_over_n(int v, const std::vector<int>& colors) const;

    const LinkBudgetConfig& budget() const { return budget_; }
    double noise_w() const { return noise_w_; }

private:
    struct Entry {
        bool real = false;
        Vec3 sat_pos;       // inertial
        Vec3 gw_pos;        // rotated to slot time
        Vec3 bs_sat;        // satellite boresight: sat -> own gateway (unit)
        Vec3 bs_gw;         // antenna boresight: gateway -> own satellite (unit)
        double distance_m = 0.0;
        double carrier_w = 0.0;
        int gateway_index = 0;
    };
    std::vector<Entry> entries_;
    GainMask sat_mask_, gs_mask_;
    LinkBudgetConfig budget_;
    double noise_w_ = 0.0;
};

// Strict exceedance: a link exactly at the regulation boundary complies.
inline bool is_link_failure(double aggregate_i_over_n, double itu_threshold_linear) {
    return aggregate_i_over_n > itu_threshold_linear;
}

// Number of working links whose aggregate co-channel I/N strictly
// exceeds the threshold (boundary counts as compliant). Throws if a real
// entry is uncolored (color 0).
int count_link_failures(const SlotGeometry& geo, const std::vector<int>& colors,
                        double itu_threshold_linear);

// Same restricted to a victim subset, with interference drawn only from
// that subset (used to rank colorings of decomposed subgraphs).
int count_link_failures_subset(const SlotGeometry& geo, const std::vector<int>& colors,
                               const std::vector<int>& victims, double itu_threshold_linear);

struct LinkQuality {
    double cn_linear = 0.0;
    double sinr_linear = 0.0;
    double capacity_bps = 0.0;  // R_s = B log2(1 + SINR)
};
LinkQuality cn_sinr_capacity(double carrier_w, double interference_w, double noise_w,
                             double bandwidth_hz);

// Delta R_s = 1 - log2(1 + SINR) / log2(1 + C/N).
double capacity_degradation(double sinr_linear, double cn_linear);
// System-level degradation 1 - sum(R) / sum(Rbar).
double system_capacity_degradation(const std::vector<double>& r,
                                   const std::vector<double>& r_bar);

// Degradation bound for a compliant link: log base (C/N) of (1 + I_th^R).
double capacity_degradation_bound(double cn_linear, double itu_threshold_linear);
// The positive gap between the two log ratios the bound's proof rests on;
// must be > 0 whenever SINR > 1.
double capacity_bound_gap(double sinr_linear, double cn_linear);
// Checks Delta R_s <= bound for a compliant link with SINR > 1.
bool capacity_bound_holds(double cn_linear, double i_over_n_linear, double itu_threshold_linear);

}  // namespace leofa
