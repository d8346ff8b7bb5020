#pragma once

#include "leosim/grid.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace leosim::orbit {

inline constexpr double kMu = 3.986004418e14;           // Earth GM, m^3/s^2
inline constexpr double kEarthRadius = 6378.137e3;      // m
inline constexpr double kEarthRotation = 7.2921159e-5;  // rad/s
inline constexpr double kLightSpeed = 299792458.0;      // m/s

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3
operator-(Vec3 a, Vec3 b)
{
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

inline double
dot(Vec3 a, Vec3 b)
{
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double
norm(Vec3 a)
{
  return std::sqrt(dot(a, a));
}

inline double
distance(Vec3 a, Vec3 b)
{
  return norm(a - b);
}

// One-way light time between two points, seconds.
inline double
propagation_delay(Vec3 a, Vec3 b)
{
  return distance(a, b) / kLightSpeed;
}

// Uniform shell of circular orbits: `planes` ascending nodes spread evenly
// over 360 degrees, satellites spread evenly within each plane, all at the
// same altitude and inclination.
struct ShellConfig {
  int planes = 72;
  int sats_per_plane = 22;
  double altitude_m = 550e3;
  double inclination_deg = 53.0;
};

struct GroundSite {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
};

double semi_major_axis(const ShellConfig& cfg);

// Circular orbit period 2*pi*sqrt(a^3/mu), seconds.
double orbital_period(const ShellConfig& cfg);

// Positions for the whole shell plus fixed ground sites, all in an
// Earth-centered inertial frame with the Earth rotating beneath.
class Ephemeris
{
public:
  Ephemeris(const ShellConfig& cfg, std::vector<GroundSite> sites);

  const ShellConfig&
  shell() const
  {
    return m_cfg;
  }

  grid::Dims
  dims() const
  {
    return {m_cfg.planes, m_cfg.sats_per_plane};
  }

  double
  period() const
  {
    return m_period;
  }

  std::size_t
  site_count() const
  {
    return m_sitesEcef.size();
  }

  Vec3 sat_position(grid::Coord c, double t) const;

  Vec3 site_position(std::size_t site, double t) const;

  // Elevation of the satellite above the site's horizon plane, radians.
  double elevation(std::size_t site, grid::Coord c, double t) const;

  bool
  visible(std::size_t site, grid::Coord c, double t, double mask_deg) const
  {
    return elevation(site, c, t) >= mask_deg * kPi / 180.0;
  }

  // All satellites above the mask at time t, in (plane, index) order.
  std::vector<grid::Coord> visible_set(std::size_t site, double t, double mask_deg) const;

private:
  static constexpr double kPi = 3.14159265358979323846;

  ShellConfig m_cfg;
  double m_period = 0.0;
  double m_meanMotion = 0.0;
  double m_a = 0.0;
  std::vector<Vec3> m_xhat; // per plane: node direction in the equator
  std::vector<Vec3> m_yhat; // per plane: in-plane direction 90 deg ahead
  std::vector<Vec3> m_sitesEcef;
};

// Access window [start_s, end_s) during which `sat` serves the site.
struct AccessWindow {
  int start_s = 0;
  int end_s = 0;
  grid::Coord sat;
};

// Greedy schedule sampled at whole seconds: at each switch instant pick the
// visible satellite that will stay above the mask the longest (lowest
// (plane, index) on ties), ride it until it sets, repeat. Windows abut by
// construction. Throws std::runtime_error if no satellite is visible at
// some sample.
std::vector<AccessWindow>
build_schedule(const Ephemeris& eph, std::size_t site, double mask_deg, int horizon_s);

} // namespace leosim::orbit
