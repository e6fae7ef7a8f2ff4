#pragma once

// Parameterized antenna gain envelopes. The shipped presets approximate
// the ITU S.1528 (satellite tx) and S.1428 (gateway rx) patterns: a
// parabolic main lobe, one or more log-slope sidelobe segments whose
// levels are derived by continuity, and a constant back-lobe floor.
// Exact ITU coefficients are not public; the presets are calibrated to
// the published peak gains and to sharp near-boresight rolloff at a
// 20 GHz feeder-link geometry.

#include <vector>

namespace leofa {

struct GainMask {
    double peak_gain_db = 0.0;        // gain at boresight, dBi
    double half_beamwidth_deg = 1.0;  // phi_3dB of the parabolic main lobe
    double sidelobe_floor_db = -10.0; // back-lobe level, dBi

    // Sidelobe envelope: from start_deg onward the gain falls by
    // slope_db_per_decade per decade of angle. Segment levels follow by
    // continuity from the previous piece, so the envelope is always
    // continuous and non-increasing (slopes must be >= 0).
    struct LogSegment {
        double start_deg = 0.0;
        double slope_db_per_decade = 25.0;
    };
    std::vector<LogSegment> rolloff;

    // Throws std::invalid_argument on a malformed mask.
    void validate() const;
};

// Mask value at an off-axis angle in [0, 180]. Negative angles rejected.
double gain_db(const GainMask& mask, double off_axis_deg);

// Presets. Peak gains default to the feeder-link values (35 dBi satellite,
// 45.76 dBi gateway) and can be overridden from the scenario config.
GainMask s1528_like_mask(double peak_gain_db = 35.0);
GainMask s1428_like_mask(double peak_gain_db = 45.76);

}  // namespace leofa
