#pragma once

// Earth-centered coordinate geometry shared by the propagator, the
// selection logic and the link-budget code. All distances in meters,
// all angles in degrees unless a _rad suffix says otherwise.

#include <cmath>

namespace leofa {

namespace constants {
// Spherical mean Earth radius. The propagator and the default geodetic
// conversion work on a sphere; WGS-84 is available for GS coordinates.
inline constexpr double earth_radius_m = 6371000.0;
inline constexpr double wgs84_a_m = 6378137.0;
inline constexpr double wgs84_e2 = 6.69437999014e-3;
inline constexpr double earth_mu = 3.986004418e14;   // m^3/s^2
inline constexpr double sidereal_rate_rad_s = 7.2921150e-5;
inline constexpr double boltzmann = 1.380649e-23;    // J/K
inline constexpr double speed_of_light = 299792458.0;
inline constexpr double pi = 3.14159265358979323846;
}  // namespace constants

inline double deg2rad(double d) { return d * constants::pi / 180.0; }
inline double rad2deg(double r) { return r * 180.0 / constants::pi; }

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        double n = norm();
        return {x / n, y / n, z / n};
    }
};

enum class GeodeticModel { Spherical, Wgs84 };

// lat/lon in degrees, alt in meters above the reference surface.
// Throws std::invalid_argument when |lat| > 90.
Vec3 geodetic_to_ecef(double lat_deg, double lon_deg, double alt_m,
                      GeodeticModel model = GeodeticModel::Spherical);

// Spherical inverse, used for map exports only.
void ecef_to_geodetic_spherical(const Vec3& p, double& lat_deg, double& lon_deg);

// Angle between the local horizontal plane at gs and the line of sight
// to sat, in [-90, 90] degrees. Throws on coincident positions.
double elevation_angle_deg(const Vec3& gs, const Vec3& sat);

// Angle between two directions, [0, 180] degrees.
double angle_between_deg(const Vec3& a, const Vec3& b);

Vec3 rotate_z(const Vec3& v, double angle_rad);

}  // namespace leofa
