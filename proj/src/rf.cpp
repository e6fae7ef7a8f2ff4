#include "leofa/rf.hpp"

#include <cmath>
#include <stdexcept>

namespace leofa {

LinkBudgetConfig LinkBudgetConfig::from_scenario(const ScenarioConfig& cfg) {
    LinkBudgetConfig b;
    b.carrier_wavelength_m = constants::speed_of_light / cfg.carrier_freq_hz;
    b.subchannel_bandwidth_hz = cfg.total_bandwidth_hz / cfg.num_subchannels;
    b.noise_temp_k = cfg.noise_temp_k;
    b.tx_power_w = db_to_linear(cfg.tx_power_dbw);
    b.itu_threshold_linear = db_to_linear(cfg.itu_threshold_db);
    return b;
}

double single_link_interference_w(double tx_power_w, double off_axis_tx_deg,
                                  double off_axis_rx_deg, double distance_m,
                                  const GainMask& tx_mask, const GainMask& rx_mask,
                                  double wavelength_m) {
    if (distance_m <= 0.0)
        throw std::invalid_argument("single_link_interference_w: distance must be > 0");
    const double g_tx = db_to_linear(gain_db(tx_mask, off_axis_tx_deg));
    const double g_rx = db_to_linear(gain_db(rx_mask, off_axis_rx_deg));
    const double spread = 4.0 * constants::pi * distance_m / wavelength_m;
    return tx_power_w * g_tx * g_rx / (spread * spread);
}

double noise_power_w(double boltzmann, double noise_temp_k, double bandwidth_hz) {
    return boltzmann * noise_temp_k * bandwidth_hz;
}

SlotGeometry::SlotGeometry(const LinkAssignment& assignment, const Ephemeris& eph,
                           const std::vector<GatewayStation>& gateways,
                           const std::vector<Vec3>& gateway_pos, const GainMask& sat_mask,
                           const GainMask& gs_mask, const LinkBudgetConfig& budget)
    : sat_mask_(sat_mask), gs_mask_(gs_mask), budget_(budget) {
    noise_w_ = budget_.noise_w();

    // gateway id -> index in the gateways vector
    std::unordered_map<int, int> gw_index;
    for (size_t i = 0; i < gateways.size(); ++i) gw_index[gateways[i].id] = static_cast<int>(i);

    entries_.resize(assignment.entries.size());
    for (size_t v = 0; v < assignment.entries.size(); ++v) {
        const LinkEntry& le = assignment.entries[v];
        Entry& e = entries_[v];
        e.gateway_index = gw_index.at(le.gateway_id);
        e.gw_pos = gateway_pos[e.gateway_index];
        if (le.is_virtual()) continue;
        e.real = true;
        e.sat_pos = eph.at(assignment.slot, le.sat_id);
        const Vec3 los = e.sat_pos - e.gw_pos;
        e.distance_m = los.norm();
        e.bs_gw = los * (1.0 / e.distance_m);
        e.bs_sat = (e.gw_pos - e.sat_pos) * (1.0 / e.distance_m);
        e.carrier_w = single_link_interference_w(budget_.tx_power_w, 0.0, 0.0, e.distance_m,
                                                 sat_mask_, gs_mask_, budget_.carrier_wavelength_m);
    }
}

bool SlotGeometry::co_visible(int u, int v) const {
    const Entry& iu = entries_[u];
    const Entry& iv = entries_[v];
    if (!iu.real || !iv.real || u == v) return false;
    return elevation_angle_deg(iv.gw_pos, iu.sat_pos) > 0.0;
}

double SlotGeometry::single_link_w(int u, int v) const {
    if (!co_visible(u, v)) return 0.0;
    const Entry& iu = entries_[u];
    const Entry& iv = entries_[v];
    const Vec3 path = iv.gw_pos - iu.sat_pos;
    const double d = path.norm();
    const double theta_tx = angle_between_deg(iu.bs_sat, path);
    const double theta_rx = angle_between_deg(iv.bs_gw, iu.sat_pos - iv.gw_pos);
    return single_link_interference_w(budget_.tx_power_w, theta_tx, theta_rx, d, sat_mask_,
                                      gs_mask_, budget_.carrier_wavelength_m);
}

std::vector<int> SlotGeometry::interferer_set(int victim) const {
    std::vector<int> out;
    for (int u = 0; u < size(); ++u)
        if (co_visible(u, victim)) out.push_back(u);
    return out;
}

double SlotGeometry::aggregate_i_over_n(int v, const std::vector<int>& colors) const {
    double sum_w = 0.0;
    for (int u = 0; u < size(); ++u)
        if (colors[u] == colors[v] && co_visible(u, v)) sum_w += single_link_w(u, v);
    return sum_w / noise_w_;
}

int count_link_failures(const SlotGeometry& geo, const std::vector<int>& colors,
                        double itu_threshold_linear) {
    int failures = 0;
    for (int v = 0; v < geo.size(); ++v) {
        if (!geo.is_real(v)) continue;
        if (colors[v] == 0)
            throw std::invalid_argument("count_link_failures: uncolored working vertex");
        if (is_link_failure(geo.aggregate_i_over_n(v, colors), itu_threshold_linear)) ++failures;
    }
    return failures;
}

int count_link_failures_subset(const SlotGeometry& geo, const std::vector<int>& colors,
                               const std::vector<int>& victims, double itu_threshold_linear) {
    int failures = 0;
    for (int v : victims) {
        if (!geo.is_real(v)) continue;
        if (colors[v] == 0)
            throw std::invalid_argument("count_link_failures_subset: uncolored working vertex");
        double sum_w = 0.0;
        for (int u : victims)
            if (colors[u] == colors[v] && geo.co_visible(u, v)) sum_w += geo.single_link_w(u, v);
        if (is_link_failure(sum_w / geo.noise_w(), itu_threshold_linear)) ++failures;
    }
    return failures;
}

LinkQuality cn_sinr_capacity(double carrier_w, double interference_w, double noise_w,
                             double bandwidth_hz) {
    LinkQuality q;
    q.cn_linear = carrier_w / noise_w;
    q.sinr_linear = carrier_w / (interference_w + noise_w);
    q.capacity_bps = bandwidth_hz * std::log2(1.0 + q.sinr_linear);
    return q;
}

double capacity_degradation(double sinr_linear, double cn_linear) {
    return 1.0 - std::log2(1.0 + sinr_linear) / std::log2(1.0 + cn_linear);
}

double system_capacity_degradation(const std::vector<double>& r,
                                   const std::vector<double>& r_bar) {
    double num = 0.0, den = 0.0;
    for (double x : r) num += x;
    for (double x : r_bar) den += x;
    if (den <= 0.0) return 0.0;
    return 1.0 - num / den;
}

double capacity_degradation_bound(double cn_linear, double itu_threshold_linear) {
    return std::log(1.0 + itu_threshold_linear) / std::log(cn_linear);
}

double capacity_bound_gap(double sinr_linear, double cn_linear) {
    return std::log2(1.0 + sinr_linear) / std::log2(1.0 + cn_linear) -
           std::log2(sinr_linear) / std::log2(cn_linear);
}

bool capacity_bound_holds(double cn_linear, double i_over_n_linear, double itu_threshold_linear) {
    const double sinr = cn_linear / (1.0 + i_over_n_linear);
    if (i_over_n_linear > itu_threshold_linear)
        throw std::invalid_argument("capacity_bound_holds: link violates the ITU regulation");
    if (sinr <= 1.0)
        throw std::invalid_argument("capacity_bound_holds: requires SINR > 1");
    return capacity_degradation(sinr, cn_linear) <=
           capacity_degradation_bound(cn_linear, itu_threshold_linear);
}

}  // namespace leofa
