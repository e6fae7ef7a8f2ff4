#pragma once

// Per-slot satellite selection under the maximum-elevation principle and
// link continuity tracking between consecutive slots.
//
// The (gateway, antenna) entries of a slot double as the vertex set of
// that slot's interference graph: entries are ordered by (gateway id,
// antenna index) and vacant antennas are materialized as VIRTUAL
// entries, which become isolated graph vertices.

#include <string>
#include <unordered_map>
#include <vector>

#include "leofa/scenario.hpp"

namespace leofa {

inline constexpr int kVirtualSat = -1;

struct LinkEntry {
    int gateway_id = 0;
    int antenna_index = 0;
    int sat_id = kVirtualSat;
    double elevation_deg = 0.0;

    bool is_virtual() const { return sat_id < 0; }
};

struct LinkAssignment {
    int slot = 0;
    std::vector<LinkEntry> entries;             // sorted by (gateway_id, antenna_index)
    std::unordered_map<int, int> vertex_of_sat; // real sat_id -> entry index

    int size() const { return static_cast<int>(entries.size()); }
    int real_count() const { return static_cast<int>(vertex_of_sat.size()); }
};

// Round-robin selection: gateways take turns in ascending id order, one
// antenna per turn, each picking the unassigned satellite with the
// highest elevation >= threshold (ties broken by smaller sat_id). An
// empty sky yields all-VIRTUAL entries.
LinkAssignment select_satellites(const Ephemeris& eph,
                                 const std::vector<GatewayStation>& gateways,
                                 const std::vector<Vec3>& gateway_pos,
                                 int slot,
                                 double elevation_threshold_deg);

// m_c and the constrained set S_c(t): satellites served by the same
// gateway in both slots. For slot 0 pass an empty previous assignment.
struct Continuity {
    std::vector<std::uint8_t> constrained;  // per current entry
    std::vector<int> constrained_sats;      // S_c(t), ascending sat_id
    int count() const { return static_cast<int>(constrained_sats.size()); }
};

Continuity continuity_mask(const LinkAssignment& prev, const LinkAssignment& cur);

// Dump format: slot,gateway,antenna,sat_id,elevation_deg (sat_id -1 = VIRTUAL).
void append_assignment_csv(const LinkAssignment& a, std::string& out);

}  // namespace leofa
