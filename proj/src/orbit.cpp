#include "leosim/orbit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace leosim::orbit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double
deg2rad(double d)
{
  return d * kPi / 180.0;
}

} // namespace

double
semi_major_axis(const ShellConfig& cfg)
{
  return kEarthRadius + cfg.altitude_m;
}

double
orbital_period(const ShellConfig& cfg)
{
  double a = semi_major_axis(cfg);
  return 2.0 * kPi * std::sqrt(a * a * a / kMu);
}

Ephemeris::Ephemeris(const ShellConfig& cfg, std::vector<GroundSite> sites)
  : m_cfg(cfg)
{
  grid::validate_dims({cfg.planes, cfg.sats_per_plane});
  if (cfg.altitude_m <= 0) {
    throw std::invalid_argument("altitude must be positive");
  }
  m_a = semi_major_axis(cfg);
  m_period = orbital_period(cfg);
  m_meanMotion = 2.0 * kPi / m_period;

  double inc = deg2rad(cfg.inclination_deg);
  m_xhat.reserve(static_cast<std::size_t>(cfg.planes));
  m_yhat.reserve(static_cast<std::size_t>(cfg.planes));
  for (int p = 0; p < cfg.planes; ++p) {
    double raan = 2.0 * kPi * p / cfg.planes;
    m_xhat.push_back({std::cos(raan), std::sin(raan), 0.0});
    m_yhat.push_back({-std::sin(raan) * std::cos(inc), std::cos(raan) * std::cos(inc),
                      std::sin(inc)});
  }

  m_sitesEcef.reserve(sites.size());
  for (const auto& s : sites) {
    if (s.lat_deg < -90.0 || s.lat_deg > 90.0) {
      throw std::invalid_argument("site latitude out of range");
    }
    double lat = deg2rad(s.lat_deg);
    double lon = deg2rad(s.lon_deg);
    m_sitesEcef.push_back({kEarthRadius * std::cos(lat) * std::cos(lon),
                           kEarthRadius * std::cos(lat) * std::sin(lon),
                           kEarthRadius * std::sin(lat)});
  }
}

Vec3
Ephemeris::sat_position(grid::Coord c, double t) const
{
  const Vec3& xh = m_xhat[static_cast<std::size_t>(c.plane)];
  const Vec3& yh = m_yhat[static_cast<std::size_t>(c.plane)];
  double u = 2.0 * kPi * c.index / m_cfg.sats_per_plane + m_meanMotion * t;
  double cu = std::cos(u);
  double su = std::sin(u);
  return {(xh.x * cu + yh.x * su) * m_a, (xh.y * cu + yh.y * su) * m_a,
          (xh.z * cu + yh.z * su) * m_a};
}

Vec3
Ephemeris::site_position(std::size_t site, double t) const
{
  const Vec3& e = m_sitesEcef.at(site);
  double th = kEarthRotation * t;
  double ct = std::cos(th);
  double st = std::sin(th);
  return {ct * e.x - st * e.y, st * e.x + ct * e.y, e.z};
}

double
Ephemeris::elevation(std::size_t site, grid::Coord c, double t) const
{
  Vec3 sp = site_position(site, t);
  Vec3 v = sat_position(c, t) - sp;
  double sinEl = dot(v, {sp.x / kEarthRadius, sp.y / kEarthRadius, sp.z / kEarthRadius}) / norm(v);
  return std::asin(std::clamp(sinEl, -1.0, 1.0));
}

std::vector<grid::Coord>
Ephemeris::visible_set(std::size_t site, double t, double mask_deg) const
{
  std::vector<grid::Coord> out;
  for (int p = 0; p < m_cfg.planes; ++p) {
    for (int i = 0; i < m_cfg.sats_per_plane; ++i) {
      if (visible(site, {p, i}, t, mask_deg)) {
        out.push_back({p, i});
      }
    }
  }
  return out;
}

std::vector<AccessWindow>
build_schedule(const Ephemeris& eph, std::size_t site, double mask_deg, int horizon_s)
{
  if (horizon_s <= 0) {
    throw std::invalid_argument("horizon must be positive");
  }
  std::vector<AccessWindow> wins;
  int t = 0;
  while (t < horizon_s) {
    grid::Coord best{-1, -1};
    int bestRem = 0;
    for (int p = 0; p < eph.shell().planes; ++p) {
      for (int i = 0; i < eph.shell().sats_per_plane; ++i) {
        int rem = 0;
        for (int u = t; u <= horizon_s && eph.visible(site, {p, i}, u, mask_deg); ++u) {
          ++rem;
        }
        if (rem > bestRem) {
          bestRem = rem;
          best = {p, i};
        }
      }
    }
    if (bestRem == 0) {
      throw std::runtime_error("no satellite above the mask at t=" + std::to_string(t) +
                               "s for site " + std::to_string(site));
    }
    int end = std::min(t + bestRem, horizon_s);
    wins.push_back(AccessWindow{t, end, best});
    t = end;
  }
  return wins;
}

} // namespace leosim::orbit
