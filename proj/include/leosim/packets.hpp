#pragma once

#include "leosim/name.hpp"
#include "leosim/time.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace leosim::ndn {

// Fixed wire sizes used for link serialization.
inline constexpr std::size_t kInterestBytes = 100;
inline constexpr std::size_t kDataBytes = 1100;

struct Interest {
  Name name;
  // Forwarding delegations in preference order. Empty means "route by the
  // content name". When present, routers route by the delegations until the
  // Interest enters the producer's region.
  std::vector<Name> hint;
  std::uint64_t nonce = 0;
  SimTime lifetime = kNsPerSec;
};

struct Data {
  Name name;
  SimTime freshness = 0; // caches may serve this copy until insert time + freshness
  std::string payload;
};

using Packet = std::variant<Interest, Data>;

inline std::size_t
wire_size(const Packet& pkt)
{
  return std::holds_alternative<Interest>(pkt) ? kInterestBytes : kDataBytes;
}

} // namespace leosim::ndn
