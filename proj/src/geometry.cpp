#include "leofa/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace leofa {

Vec3 geodetic_to_ecef(double lat_deg, double lon_deg, double alt_m, GeodeticModel model) {
    if (lat_deg < -90.0 || lat_deg > 90.0)
        throw std::invalid_argument("geodetic_to_ecef: latitude out of [-90, 90]");
    const double lat = deg2rad(lat_deg);
    const double lon = deg2rad(lon_deg);
    if (model == GeodeticModel::Spherical) {
        const double r = constants::earth_radius_m + alt_m;
        return {r * std::cos(lat) * std::cos(lon),
                r * std::cos(lat) * std::sin(lon),
                r * std::sin(lat)};
    }
    const double s = std::sin(lat);
    const double n = constants::wgs84_a_m / std::sqrt(1.0 - constants::wgs84_e2 * s * s);
    return {(n + alt_m) * std::cos(lat) * std::cos(lon),
            (n + alt_m) * std::cos(lat) * std::sin(lon),
            (n * (1.0 - constants::wgs84_e2) + alt_m) * s};
}

void ecef_to_geodetic_spherical(const Vec3& p, double& lat_deg, double& lon_deg) {
    const double r = p.norm();
    lat_deg = rad2deg(std::asin(p.z / r));
    lon_deg = rad2deg(std::atan2(p.y, p.x));
}

double elevation_angle_deg(const Vec3& gs, const Vec3& sat) {
    const Vec3 los = sat - gs;
    const double d = los.norm();
    if (d <= 0.0)
        throw std::invalid_argument("elevation_angle_deg: coincident positions");
    const double s = gs.normalized().dot(los) / d;  // sin(elevation)
    return rad2deg(std::asin(std::clamp(s, -1.0, 1.0)));
}

double angle_between_deg(const Vec3& a, const Vec3& b) {
    const double na = a.norm();
    const double nb = b.norm();
    if (na <= 0.0 || nb <= 0.0)
        throw std::invalid_argument("angle_between_deg: zero-length vector");
    const double c = std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
    return rad2deg(std::acos(c));
}

Vec3 rotate_z(const Vec3& v, double angle_rad) {
    const double c = std::cos(angle_rad);
    const double s = std::sin(angle_rad);
    return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

}  // namespace leofa
