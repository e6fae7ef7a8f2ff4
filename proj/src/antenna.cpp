#include "leofa/antenna.hpp"

#include <cmath>
#include <stdexcept>

namespace leofa {

void GainMask::validate() const {
    if (half_beamwidth_deg <= 0.0)
        throw std::invalid_argument("GainMask: half_beamwidth_deg must be > 0");
    if (sidelobe_floor_db > peak_gain_db)
        throw std::invalid_argument("GainMask: sidelobe_floor_db above peak gain");
    double prev = 0.0;
    for (const auto& seg : rolloff) {
        if (seg.start_deg <= prev)
            throw std::invalid_argument("GainMask: rolloff segments must start at increasing positive angles");
        if (seg.slope_db_per_decade < 0.0)
            throw std::invalid_argument("GainMask: rolloff slope must be >= 0");
        prev = seg.start_deg;
    }
}

double gain_db(const GainMask& mask, double off_axis_deg) {
    if (off_axis_deg < 0.0)
        throw std::invalid_argument("gain_db: negative off-axis angle");

    auto parabola = [&](double phi) {
        const double r = phi / mask.half_beamwidth_deg;
        return mask.peak_gain_db - 3.0 * r * r;
    };

    double value;
    if (mask.rolloff.empty() || off_axis_deg < mask.rolloff.front().start_deg) {
        value = parabola(off_axis_deg);
    } else {
        // Segment levels chain by continuity from the main lobe.
        double level = parabola(mask.rolloff.front().start_deg);
        size_t i = 0;
        while (i + 1 < mask.rolloff.size() && off_axis_deg >= mask.rolloff[i + 1].start_deg) {
            level -= mask.rolloff[i].slope_db_per_decade *
                     std::log10(mask.rolloff[i + 1].start_deg / mask.rolloff[i].start_deg);
            ++i;
        }
        value = level - mask.rolloff[i].slope_db_per_decade *
                            std::log10(off_axis_deg / mask.rolloff[i].start_deg);
    }
    return std::max(value, mask.sidelobe_floor_db);
}

GainMask s1528_like_mask(double peak_gain_db) {
    GainMask m;
    m.peak_gain_db = peak_gain_db;
    m.half_beamwidth_deg = 1.6;
    m.sidelobe_floor_db = -6.75;
    // Sidelobe envelope takes over where the main lobe is 20 dB down.
    m.rolloff = {{m.half_beamwidth_deg * std::sqrt(20.0 / 3.0), 25.0}};
    return m;
}

GainMask s1428_like_mask(double peak_gain_db) {
    GainMask m;
    m.peak_gain_db = peak_gain_db;
    m.half_beamwidth_deg = 0.9;
    m.sidelobe_floor_db = -10.0;
    m.rolloff = {{m.half_beamwidth_deg * std::sqrt(20.0 / 3.0), 25.0}};
    return m;
}

}  // namespace leofa
