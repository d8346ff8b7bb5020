#include "leosim/grid.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace leosim::grid {

const char*
dir_label(Dir d)
{
  switch (d) {
    case Dir::Fore:
      return "F";
    case Dir::Aft:
      return "A";
    case Dir::Port:
      return "P";
    case Dir::Starboard:
      return "S";
  }
  return "?";
}

void
validate_dims(Dims g)
{
  if (g.planes < 3 || g.sats_per_plane < 3) {
    throw std::invalid_argument("grid dims must be at least 3x3, got " +
                                std::to_string(g.planes) + "x" + std::to_string(g.sats_per_plane));
  }
}

bool
contains(Dims g, Coord c)
{
  return c.plane >= 0 && c.plane < g.planes && c.index >= 0 && c.index < g.sats_per_plane;
}

Coord
neighbor(Coord c, Dir d, Dims g)
{
  switch (d) {
    case Dir::Fore:
      return {c.plane, (c.index + 1) % g.sats_per_plane};
    case Dir::Aft:
      return {c.plane, (c.index + g.sats_per_plane - 1) % g.sats_per_plane};
    case Dir::Port:
      return {(c.plane + g.planes - 1) % g.planes, c.index};
    case Dir::Starboard:
      return {(c.plane + 1) % g.planes, c.index};
  }
  throw std::invalid_argument("bad direction");
}

int
torus_distance(Coord a, Coord b, Dims g)
{
  int dp = std::abs(a.plane - b.plane);
  dp = std::min(dp, g.planes - dp);
  int di = std::abs(a.index - b.index);
  di = std::min(di, g.sats_per_plane - di);
  return dp + di;
}

namespace {

// Bitmask of directions that move `c` strictly closer to `target`.
unsigned
closingDirs(Coord c, Coord target, Dims g)
{
  unsigned mask = 0;
  int base = torus_distance(target, c, g);
  for (Dir d : kAllDirs) {
    if (torus_distance(target, neighbor(c, d, g), g) < base) {
      mask |= 1u << static_cast<int>(d);
    }
  }
  return mask;
}

// Fixed tie-break weight: prefer fore over aft over port over starboard.
int
preferenceWeight(unsigned dirMask)
{
  int w = 0;
  for (int d = 0; d < 4; ++d) {
    if (dirMask & (1u << d)) {
      w += 8 >> d;
    }
  }
  return w;
}

} // namespace

Plan
disseminate(Coord current, std::vector<Coord> delegations, Dims g)
{
  validate_dims(g);
  for (Coord d : delegations) {
    if (!contains(g, d)) {
      throw std::invalid_argument("delegation (" + std::to_string(d.plane) + "," +
                                  std::to_string(d.index) + ") outside grid");
    }
  }
  std::sort(delegations.begin(), delegations.end());
  delegations.erase(std::unique(delegations.begin(), delegations.end()), delegations.end());

  Plan plan;
  std::vector<Coord> active;
  std::vector<unsigned> dirs; // closing-direction mask per active delegation
  for (Coord d : delegations) {
    if (d == current) {
      plan.deliver_local = true;
      continue;
    }
    active.push_back(d);
    dirs.push_back(closingDirs(current, d, g));
  }
  if (active.empty()) {
    return plan;
  }

  // Initial per-direction candidate sets (a delegation may appear in several).
  std::array<std::vector<Coord>, 4> cand;
  for (std::size_t i = 0; i < active.size(); ++i) {
    for (int d = 0; d < 4; ++d) {
      if (dirs[i] & (1u << d)) {
        cand[static_cast<std::size_t>(d)].push_back(active[i]);
      }
    }
  }

  // Pick the cheapest direction subset that still covers every delegation:
  // fewest directions, then largest combined candidate sets, then the fixed
  // fore/aft/port/starboard preference.
  unsigned bestMask = 0;
  std::array<int, 3> bestKey = {5, 0, 0};
  for (unsigned m = 0; m < 16; ++m) {
    bool covers = true;
    for (unsigned dm : dirs) {
      if ((dm & m) == 0) {
        covers = false;
        break;
      }
    }
    if (!covers) {
      continue;
    }
    int coverage = 0;
    for (int d = 0; d < 4; ++d) {
      if (m & (1u << d)) {
        coverage += static_cast<int>(cand[static_cast<std::size_t>(d)].size());
      }
    }
    std::array<int, 3> key = {std::popcount(m), -coverage, -preferenceWeight(m)};
    if (key < bestKey) {
      bestKey = key;
      bestMask = m;
    }
  }

  for (int d = 0; d < 4; ++d) {
    if (bestMask & (1u << d)) {
      plan.sets[static_cast<std::size_t>(d)] = cand[static_cast<std::size_t>(d)];
    }
  }

  // Make the sets disjoint: a delegation held by several chosen directions
  // stays with the currently largest one (earliest direction on ties).
  for (Coord d : active) {
    std::vector<int> holders;
    for (int h = 0; h < 4; ++h) {
      const auto& s = plan.sets[static_cast<std::size_t>(h)];
      if (std::find(s.begin(), s.end(), d) != s.end()) {
        holders.push_back(h);
      }
    }
    if (holders.size() <= 1) {
      continue;
    }
    int keep = holders[0];
    for (int h : holders) {
      if (plan.sets[static_cast<std::size_t>(h)].size() > plan.sets[static_cast<std::size_t>(keep)].size()) {
        keep = h;
      }
    }
    for (int h : holders) {
      if (h != keep) {
        auto& s = plan.sets[static_cast<std::size_t>(h)];
        s.erase(std::remove(s.begin(), s.end(), d), s.end());
      }
    }
  }
  return plan;
}

ndn::Name
satellite_name(const ndn::Name& prefix, Coord c)
{
  ndn::Name n = prefix;
  n.append(std::to_string(c.plane));
  n.append(std::to_string(c.index));
  return n;
}

namespace {

std::optional<int>
parseInt(const std::string& s)
{
  if (s.empty() || (s.size() > 1 && s[0] == '0')) {
    return std::nullopt; // no leading zeros, keeps names canonical
  }
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    return std::nullopt;
  }
  return v;
}

} // namespace

std::optional<Coord>
parse_satellite_name(const ndn::Name& prefix, const ndn::Name& name, Dims g)
{
  if (name.size() != prefix.size() + 2 || !prefix.isPrefixOf(name)) {
    return std::nullopt;
  }
  auto plane = parseInt(name.at(prefix.size()));
  auto index = parseInt(name.at(prefix.size() + 1));
  if (!plane || !index) {
    return std::nullopt;
  }
  Coord c{*plane, *index};
  if (!contains(g, c)) {
    return std::nullopt;
  }
  return c;
}

std::vector<std::pair<Dir, std::vector<ndn::Name>>>
plan_to_hints(const Plan& plan, const ndn::Name& sat_prefix, const std::optional<ndn::Name>& tail)
{
  std::vector<std::pair<Dir, std::vector<ndn::Name>>> out;
  for (Dir d : kAllDirs) {
    const auto& set = plan.sets[static_cast<std::size_t>(d)];
    if (set.empty()) {
      continue;
    }
    std::vector<ndn::Name> hints;
    hints.reserve(set.size() + 1);
    for (Coord c : set) {
      hints.push_back(satellite_name(sat_prefix, c));
    }
    if (tail) {
      hints.push_back(*tail);
    }
    out.emplace_back(d, std::move(hints));
  }
  return out;
}

} // namespace leosim::grid
