#pragma once

#include <cstdint>

namespace leosim {

// Simulation clock value in integer nanoseconds since run start.
// Integer time keeps event ordering exact and runs reproducible.
using SimTime = std::int64_t;

inline constexpr SimTime kNsPerUs = 1'000;
inline constexpr SimTime kNsPerMs = 1'000'000;
inline constexpr SimTime kNsPerSec = 1'000'000'000;

constexpr SimTime
secs(double s)
{
  return static_cast<SimTime>(s * 1e9 + (s >= 0 ? 0.5 : -0.5));
}

constexpr SimTime
millis(double ms)
{
  return static_cast<SimTime>(ms * 1e6 + (ms >= 0 ? 0.5 : -0.5));
}

constexpr double
to_secs(SimTime t)
{
  return static_cast<double>(t) / 1e9;
}

} // namespace leosim
