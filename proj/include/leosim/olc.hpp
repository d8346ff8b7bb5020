#pragma once

#include "leosim/name.hpp"

#include <string>
#include <vector>

namespace leosim::olc {

// Open Location Code (plus code) encoding over the 20 character base
// alphabet "23456789CFGHJMPQRVWX". Codes use 5 digit pairs down to a
// 0.000125 x 0.000125 degree cell, then single grid digits (4 columns x
// 5 rows per step) for lengths beyond 10.

inline constexpr char kSeparator = '+';
inline constexpr char kPadding = '0';
inline constexpr int kSeparatorPosition = 8;
inline constexpr int kPairCodeLength = 10;
inline constexpr int kMaxCodeLength = 15;

// Geodetic bounding box of a decoded code, degrees.
struct CodeArea {
  double lat_lo = 0.0;
  double lon_lo = 0.0;
  double lat_hi = 0.0;
  double lon_hi = 0.0;

  double center_lat() const { return (lat_lo + lat_hi) / 2.0; }
  double center_lon() const { return (lon_lo + lon_hi) / 2.0; }
};

// Cell height in degrees for a given code length.
double lat_precision(int code_length);

// Encodes a position to a code with the given number of significant digits.
// Latitude is clipped to [-90, 90], longitude normalized to [-180, 180).
// Throws std::invalid_argument for unsupported lengths (less than 2, or odd
// below 10) or non-finite coordinates. Lengths above 15 are truncated to 15.
std::string encode(double lat_deg, double lon_deg, int code_length = kPairCodeLength);

// Decodes a code to its bounding box. Throws std::invalid_argument if the
// code is malformed.
CodeArea decode(const std::string& code);

// True if the string is a well formed full code.
bool is_valid(const std::string& code);

// Splits a code into two character name components, dropping the separator
// and any padding: "8CJH0000+" -> {"8C", "JH"}. Throws std::invalid_argument
// for malformed codes or an odd number of significant digits.
std::vector<std::string> to_name_components(const std::string& code);

// Matches a requested gateway name against a concrete gateway's own name.
// Both are of the form <routable prefix>/<code pair>... and the requested
// locator may be coarser (a prefix of the gateway's pairs). Components after
// the requested locator (e.g. an operation suffix) are ignored. Throws
// std::invalid_argument if the gateway name carries no locator pairs.
bool name_matches_gateway(const ndn::Name& requested, const ndn::Name& gateway);

} // namespace leosim::olc
