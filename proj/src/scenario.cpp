#include "leosim/scenario.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace leosim {

namespace {

using nlohmann::json;

[[noreturn]] void
fail(const std::string& where, const std::string& what)
{
  throw ScenarioError(where + ": " + what);
}

// Pulls `key` out of `obj` with a type check; `seen` drives the
// unknown-key sweep once the whole object has been read.
class ObjectReader
{
public:
  ObjectReader(const json& obj, std::string where)
    : m_obj(obj)
    , m_where(std::move(where))
  {
    if (!obj.is_object()) {
      fail(m_where, "expected an object");
    }
  }

  template<typename T>
  void
  get(const char* key, T& out)
  {
    m_seen.insert(key);
    auto it = m_obj.find(key);
    if (it == m_obj.end()) {
      return; // keep the default
    }
    try {
      out = it->get<T>();
    }
    catch (const json::exception&) {
      fail(m_where + "." + key, "wrong type");
    }
  }

  const json*
  child(const char* key)
  {
    m_seen.insert(key);
    auto it = m_obj.find(key);
    return it == m_obj.end() ? nullptr : &*it;
  }

  void
  finish() const
  {
    for (auto it = m_obj.begin(); it != m_obj.end(); ++it) {
      if (!m_seen.count(it.key())) {
        fail(m_where, "unknown key \"" + it.key() + "\"");
      }
    }
  }

private:
  const json& m_obj;
  std::string m_where;
  std::set<std::string> m_seen;
};

void
read_site(const json& obj, const std::string& where, orbit::GroundSite& site)
{
  ObjectReader r(obj, where);
  r.get("lat_deg", site.lat_deg);
  r.get("lon_deg", site.lon_deg);
  r.finish();
}

Scenario
from_json(const json& root)
{
  Scenario sc;
  ObjectReader r(root, "scenario");
  r.get("duration_s", sc.duration_s);
  r.get("seed", sc.seed);
  r.get("handover_s", sc.handover_s);

  if (const json* shell = r.child("shell")) {
    ObjectReader s(*shell, "shell");
    s.get("planes", sc.shell.planes);
    s.get("sats_per_plane", sc.shell.sats_per_plane);
    double altitude_km = sc.shell.altitude_m / 1e3;
    s.get("altitude_km", altitude_km);
    sc.shell.altitude_m = altitude_km * 1e3;
    s.get("inclination_deg", sc.shell.inclination_deg);
    s.finish();
  }

  if (const json* sites = r.child("sites")) {
    ObjectReader s(*sites, "sites");
    if (const json* p = s.child("producer")) {
      read_site(*p, "sites.producer", sc.producer);
    }
    if (const json* c = s.child("consumer")) {
      read_site(*c, "sites.consumer", sc.consumer);
    }
    s.finish();
  }

  if (const json* radio = r.child("radio")) {
    ObjectReader s(*radio, "radio");
    s.get("mask_deg", sc.mask_deg);
    s.get("bit_rate_bps", sc.ground_bit_rate);
    s.finish();
  }

  if (const json* isl = r.child("isl")) {
    ObjectReader s(*isl, "isl");
    s.get("bit_rate_bps", sc.isl_bit_rate);
    s.finish();
  }

  if (const json* proto = r.child("protocol")) {
    ObjectReader s(*proto, "protocol");
    s.get("interest_lifetime_s", sc.interest_lifetime_s);
    s.get("freshness_cap_s", sc.freshness_cap_s);
    s.get("data_freshness_s", sc.data_freshness_s);
    s.get("cs_capacity", sc.cs_capacity);
    s.get("content_prefix", sc.content_prefix);
    s.get("sat_prefix", sc.sat_prefix);
    s.finish();
  }

  if (const json* traffic = r.child("traffic")) {
    ObjectReader s(*traffic, "traffic");
    s.get("rate_hz", sc.rate_hz);
    s.get("start_s", sc.start_s);
    s.get("stop_s", sc.stop_s);
    s.finish();
  }

  r.finish();
  return sc;
}

void
require(bool ok, const std::string& what)
{
  if (!ok) {
    throw ScenarioError(what);
  }
}

} // namespace

void
validate_scenario(const Scenario& sc)
{
  require(sc.duration_s > 0, "duration_s must be positive");
  require(sc.handover_s >= 0, "handover_s must not be negative");
  require(sc.shell.planes >= 3 && sc.shell.sats_per_plane >= 3,
          "shell needs at least 3 planes of 3 satellites");
  require(sc.shell.altitude_m > 0, "altitude_km must be positive");
  require(sc.shell.inclination_deg > 0 && sc.shell.inclination_deg <= 90,
          "inclination_deg must lie in (0, 90]");
  require(sc.mask_deg > 0 && sc.mask_deg < 90, "mask_deg must lie in (0, 90)");
  require(sc.ground_bit_rate > 0 && sc.isl_bit_rate > 0,
          "bit rates must be positive");
  require(sc.interest_lifetime_s > 0, "interest_lifetime_s must be positive");
  require(sc.freshness_cap_s > 0, "freshness_cap_s must be positive");
  require(sc.data_freshness_s > 0, "data_freshness_s must be positive");
  require(sc.cs_capacity > 0, "cs_capacity must be positive");
  require(!sc.content_prefix.empty() && sc.content_prefix.front() == '/',
          "content_prefix must start with '/'");
  require(!sc.sat_prefix.empty() && sc.sat_prefix.front() == '/',
          "sat_prefix must start with '/'");
  require(sc.content_prefix != sc.sat_prefix,
          "content_prefix and sat_prefix must differ");
  require(sc.rate_hz > 0, "rate_hz must be positive");
  require(sc.start_s >= 0 && sc.start_s < sc.duration_s,
          "start_s must lie inside the run");
  require(sc.stop_s == -1.0 || sc.stop_s > sc.start_s,
          "stop_s must be -1 or after start_s");
  require(std::abs(sc.producer.lat_deg) <= 90 && std::abs(sc.consumer.lat_deg) <= 90,
          "site latitudes must lie in [-90, 90]");
}

Scenario
load_scenario(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ScenarioError("cannot open " + path);
  }
  json root;
  try {
    root = json::parse(in);
  }
  catch (const json::exception& e) {
    throw ScenarioError(path + ": " + e.what());
  }
  Scenario sc = from_json(root);
  validate_scenario(sc);
  return sc;
}

} // namespace leosim
