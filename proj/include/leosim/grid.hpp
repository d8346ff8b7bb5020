#pragma once

#include "leosim/name.hpp"

#include <array>
#include <compare>
#include <optional>
#include <utility>
#include <vector>

namespace leosim::grid {

// Satellites form a torus: `planes` orbital planes of `sats_per_plane`
// satellites each. Fore/aft neighbors are in the same plane, port/starboard
// neighbors hold the same slot in the adjacent planes.

struct Dims {
  int planes = 0;
  int sats_per_plane = 0;
};

struct Coord {
  int plane = 0;
  int index = 0;
  auto operator<=>(const Coord&) const = default;
};

enum class Dir : int {
  Fore = 0,      // same plane, index + 1
  Aft = 1,       // same plane, index - 1
  Port = 2,      // plane - 1, same index
  Starboard = 3, // plane + 1, same index
};

inline constexpr std::array<Dir, 4> kAllDirs = {Dir::Fore, Dir::Aft, Dir::Port, Dir::Starboard};

const char* dir_label(Dir d); // "F", "A", "P", "S"

// Throws std::invalid_argument unless both dimensions are at least 3
// (smaller rings make a neighbor coincide with the node itself or make
// the two lateral neighbors the same node).
void validate_dims(Dims g);

bool contains(Dims g, Coord c);

Coord neighbor(Coord c, Dir d, Dims g);

// Hop distance on the torus.
int torus_distance(Coord a, Coord b, Dims g);

// Which next hops, one per direction, receive which delegations.
struct Plan {
  std::array<std::vector<Coord>, 4> sets; // indexed by Dir, each sorted
  bool deliver_local = false;             // this node was itself a delegation

  bool
  forwards() const
  {
    for (const auto& s : sets) {
      if (!s.empty()) {
        return true;
      }
    }
    return false;
  }
};

// Splits the delegation list among the smallest set of outgoing directions
// such that every delegation moves strictly closer to its target, then the
// per-direction lists are made disjoint so each delegation travels along a
// single path. Duplicates are dropped; a delegation equal to `current` only
// sets deliver_local. Throws std::invalid_argument on bad dims or an
// out-of-range delegation.
Plan disseminate(Coord current, std::vector<Coord> delegations, Dims g);

// "<prefix>/<plane>/<index>"
ndn::Name satellite_name(const ndn::Name& prefix, Coord c);

// Inverse of satellite_name; nullopt if the name does not parse or is out
// of range for the given dims.
std::optional<Coord> parse_satellite_name(const ndn::Name& prefix, const ndn::Name& name, Dims g);

// Builds the per-direction delegation name lists for forwarded Interests:
// each listed direction carries its delegations as satellite names, with
// `tail` (normally the producer gateway's name) appended after them.
// Directions with no delegations are omitted. Order follows Dir.
std::vector<std::pair<Dir, std::vector<ndn::Name>>>
plan_to_hints(const Plan& plan, const ndn::Name& sat_prefix, const std::optional<ndn::Name>& tail);

} // namespace leosim::grid
