#pragma once

#include "leosim/orbit.hpp"
#include "leosim/time.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace leosim {

// A malformed or out-of-range scenario file. The CLI maps this to its
// configuration-error exit code.
class ScenarioError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// Everything one run needs, with defaults matching scenarios/baseline.json.
struct Scenario {
  double duration_s = 10000.0;
  std::uint64_t seed = 1;
  double handover_s = 1.0;

  orbit::ShellConfig shell; // 72 x 22, 550 km, 53 deg

  orbit::GroundSite producer{42.0, 32.8975691699109};
  orbit::GroundSite consumer{42.0, -32.8975691699109};

  double mask_deg = 25.0;
  double ground_bit_rate = 1e9;
  double isl_bit_rate = 1e9;

  double interest_lifetime_s = 1.0;
  double freshness_cap_s = 30.0;
  double data_freshness_s = 10.0;
  std::size_t cs_capacity = 10000;
  std::string content_prefix = "/video";
  std::string sat_prefix = "/lsat";

  double rate_hz = 100.0;
  double start_s = 0.0;
  double stop_s = -1.0; // -1: run to duration_s
};

// Parses and range-checks a scenario file. Unknown keys are rejected so a
// typo cannot silently fall back to a default. Throws ScenarioError.
Scenario load_scenario(const std::string& path);

// Same checks for a scenario assembled in code.
void validate_scenario(const Scenario& sc);

} // namespace leosim
