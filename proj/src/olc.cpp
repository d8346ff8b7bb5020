#include "leosim/olc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace leosim::olc {

namespace {

const std::string kAlphabet = "23456789CFGHJMPQRVWX";

constexpr int kGridCols = 4;
constexpr int kGridRows = 5;
constexpr int kGridCodeLength = kMaxCodeLength - kPairCodeLength;
constexpr double kLatMax = 90.0;
constexpr double kLonMax = 180.0;

// Integer value of one degree at the finest (15 digit) resolution.
constexpr std::int64_t kFinalLatPrecision = 8000LL * 5 * 5 * 5 * 5 * 5; // 2.5e7
constexpr std::int64_t kFinalLonPrecision = 8000LL * 4 * 4 * 4 * 4 * 4; // 8.192e6

int
alphabetIndex(char c)
{
  auto pos = kAlphabet.find(c);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

double
clipLat(double lat)
{
  return std::min(kLatMax, std::max(-kLatMax, lat));
}

double
normalizeLon(double lon)
{
  while (lon < -kLonMax) {
    lon += 2 * kLonMax;
  }
  while (lon >= kLonMax) {
    lon -= 2 * kLonMax;
  }
  return lon;
}

} // namespace

double
lat_precision(int code_length)
{
  if (code_length <= kPairCodeLength) {
    // one pair refines latitude by a factor of 20
    return std::pow(20.0, -(code_length / 2) + 2);
  }
  return std::pow(20.0, -3) / std::pow(kGridRows, code_length - kPairCodeLength);
}

std::string
encode(double lat_deg, double lon_deg, int code_length)
{
  if (code_length < 2 || (code_length < kPairCodeLength && code_length % 2 == 1)) {
    throw std::invalid_argument("unsupported code length " + std::to_string(code_length));
  }
  if (!std::isfinite(lat_deg) || !std::isfinite(lon_deg)) {
    throw std::invalid_argument("non-finite coordinate");
  }
  code_length = std::min(code_length, kMaxCodeLength);

  double lat = clipLat(lat_deg);
  double lon = normalizeLon(lon_deg);
  if (lat == kLatMax) {
    // nudge the north pole into the topmost cell
    lat -= lat_precision(code_length);
  }

  // Work on scaled integers; the round/1e6 dance strips float artifacts from
  // the degree-to-integer conversion.
  auto latVal = static_cast<std::int64_t>(
    std::nearbyint((lat + kLatMax) * static_cast<double>(kFinalLatPrecision) * 1e6) / 1e6);
  auto lonVal = static_cast<std::int64_t>(
    std::nearbyint((lon + kLonMax) * static_cast<double>(kFinalLonPrecision) * 1e6) / 1e6);

  std::string gridPart;
  if (code_length > kPairCodeLength) {
    char digits[kGridCodeLength];
    for (int i = kGridCodeLength - 1; i >= 0; --i) {
      int ndx = static_cast<int>((latVal % kGridRows) * kGridCols + (lonVal % kGridCols));
      digits[i] = kAlphabet[static_cast<std::size_t>(ndx)];
      latVal /= kGridRows;
      lonVal /= kGridCols;
    }
    gridPart.assign(digits, static_cast<std::size_t>(code_length - kPairCodeLength));
  }
  else {
    for (int i = 0; i < kGridCodeLength; ++i) {
      latVal /= kGridRows;
      lonVal /= kGridCols;
    }
  }

  std::string pairs(kPairCodeLength, '?');
  for (int i = kPairCodeLength / 2 - 1; i >= 0; --i) {
    pairs[static_cast<std::size_t>(2 * i + 1)] = kAlphabet[static_cast<std::size_t>(lonVal % 20)];
    pairs[static_cast<std::size_t>(2 * i)] = kAlphabet[static_cast<std::size_t>(latVal % 20)];
    latVal /= 20;
    lonVal /= 20;
  }

  if (code_length < kSeparatorPosition) {
    return pairs.substr(0, static_cast<std::size_t>(code_length)) +
           std::string(static_cast<std::size_t>(kSeparatorPosition - code_length), kPadding) +
           kSeparator;
  }
  if (code_length == kSeparatorPosition) {
    return pairs.substr(0, kSeparatorPosition) + kSeparator;
  }
  return pairs.substr(0, kSeparatorPosition) + kSeparator +
         pairs.substr(kSeparatorPosition, static_cast<std::size_t>(code_length - kSeparatorPosition)) +
         gridPart;
}

namespace {

// Returns the significant digits if the code is well formed, else nullopt-ish
// empty string with ok=false.
bool
extractDigits(const std::string& code, std::string& digits)
{
  auto sepPos = code.find(kSeparator);
  if (sepPos != static_cast<std::size_t>(kSeparatorPosition) ||
      code.find(kSeparator, sepPos + 1) != std::string::npos) {
    return false;
  }
  if (code.size() == static_cast<std::size_t>(kSeparatorPosition) + 2) {
    return false; // a single digit after the separator is meaningless
  }
  if (code.size() > static_cast<std::size_t>(kMaxCodeLength) + 1) {
    return false;
  }
  bool inPadding = false;
  digits.clear();
  for (std::size_t i = 0; i < code.size(); ++i) {
    char c = code[i];
    if (c == kSeparator) {
      continue;
    }
    if (c == kPadding) {
      if (i >= static_cast<std::size_t>(kSeparatorPosition)) {
        return false; // padding is only legal before the separator
      }
      if (!inPadding && i % 2 != 0) {
        return false; // padding starts at a pair boundary
      }
      inPadding = true;
      continue;
    }
    if (inPadding) {
      return false; // significant digit after padding started
    }
    if (alphabetIndex(c) < 0) {
      return false;
    }
    digits += c;
  }
  if (digits.size() < 2) {
    return false;
  }
  // full codes must start inside the valid degree ranges
  if (alphabetIndex(digits[0]) > 8 || alphabetIndex(digits[1]) > 17) {
    return false;
  }
  return true;
}

} // namespace

bool
is_valid(const std::string& code)
{
  std::string digits;
  return extractDigits(code, digits);
}

CodeArea
decode(const std::string& code)
{
  std::string digits;
  if (!extractDigits(code, digits)) {
    throw std::invalid_argument("malformed location code '" + code + "'");
  }
  CodeArea area;
  area.lat_lo = -kLatMax;
  area.lon_lo = -kLonMax;
  double h = 400.0;
  double w = 400.0;
  std::size_t pairDigits = std::min<std::size_t>(digits.size(), kPairCodeLength);
  for (std::size_t i = 0; i < pairDigits; ++i) {
    int v = alphabetIndex(digits[i]);
    if (i % 2 == 0) {
      h /= 20.0;
      area.lat_lo += v * h;
    }
    else {
      w /= 20.0;
      area.lon_lo += v * w;
    }
  }
  for (std::size_t i = pairDigits; i < digits.size(); ++i) {
    int v = alphabetIndex(digits[i]);
    h /= kGridRows;
    w /= kGridCols;
    area.lat_lo += (v / kGridCols) * h;
    area.lon_lo += (v % kGridCols) * w;
  }
  area.lat_hi = area.lat_lo + h;
  area.lon_hi = area.lon_lo + w;
  return area;
}

std::vector<std::string>
to_name_components(const std::string& code)
{
  std::string digits;
  if (!extractDigits(code, digits)) {
    throw std::invalid_argument("malformed location code '" + code + "'");
  }
  if (digits.size() % 2 != 0) {
    throw std::invalid_argument("odd number of significant digits in '" + code + "'");
  }
  std::vector<std::string> comps;
  comps.reserve(digits.size() / 2);
  for (std::size_t i = 0; i < digits.size(); i += 2) {
    comps.push_back(digits.substr(i, 2));
  }
  return comps;
}

namespace {

bool
isCodePair(const std::string& comp)
{
  return comp.size() == 2 && alphabetIndex(comp[0]) >= 0 && alphabetIndex(comp[1]) >= 0;
}

} // namespace

bool
name_matches_gateway(const ndn::Name& requested, const ndn::Name& gateway)
{
  // locator = maximal trailing run of code pairs in the gateway name
  std::size_t locStart = gateway.size();
  while (locStart > 0 && isCodePair(gateway.at(locStart - 1))) {
    --locStart;
  }
  if (locStart == gateway.size()) {
    throw std::invalid_argument("gateway name '" + gateway.toUri() + "' has no locator");
  }

  if (requested.size() < locStart + 1) {
    return false; // too short to carry the prefix plus any locator
  }
  for (std::size_t i = 0; i < locStart; ++i) {
    if (requested.at(i) != gateway.at(i)) {
      return false;
    }
  }

  // requested locator pairs must be a prefix of the gateway's
  std::size_t i = locStart;
  for (; i < requested.size() && isCodePair(requested.at(i)); ++i) {
    if (i >= gateway.size() || requested.at(i) != gateway.at(i)) {
      return false;
    }
  }
  return i > locStart;
}

} // namespace leosim::olc
