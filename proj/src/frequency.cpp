#include "wanderlust/frequency.hpp"

#include <cstdio>
#include <string>

#include "wanderlust/error.hpp"

namespace wanderlust {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Rgba Rgba::from_hex(const std::string& hex) {
  if ((hex.size() != 7 && hex.size() != 9) || hex[0] != '#') {
    throw ConfigError("color '" + hex + "' is not #RRGGBB or #RRGGBBAA");
  }
  std::array<std::uint8_t, 4> channels{0, 0, 0, 255};
  for (std::size_t i = 0; i + 1 < hex.size(); i += 2) {
    const int hi = hex_digit(hex[i + 1]);
    const int lo = hex_digit(hex[i + 2]);
    if (hi < 0 || lo < 0) throw ConfigError("color '" + hex + "' has a non-hex digit");
    channels[i / 2] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return {channels[0], channels[1], channels[2], channels[3]};
}

std::string Rgba::to_hex() const {
  char buf[10];
  if (a == 255) {
    std::snprintf(buf, sizeof buf, "#%02X%02X%02X", r, g, b);
  } else {
    std::snprintf(buf, sizeof buf, "#%02X%02X%02X%02X", r, g, b, a);
  }
  return buf;
}

void FrequencyGroupTable::validate() const {
  int expected_lo = 1;
  for (const auto& range : ranges) {
    if (range.lo != expected_lo || range.hi < range.lo) {
      throw ConfigError("frequency groups must be ascending, contiguous ranges starting at 1");
    }
    expected_lo = range.hi + 1;
  }
  if (ranges.back().lo != 22 || ranges.back().hi != kMaxFrequency) {
    throw ConfigError("the top frequency group must be exactly 22-30");
  }
}

int FrequencyGroupTable::group_of(int f) const {
  if (f < 1 || f > kMaxFrequency) {
    throw FrequencyOutOfRange("frequency " + std::to_string(f) + " is outside 1..30");
  }
  for (int g = 0; g < kGroupCount; ++g) {
    if (f <= ranges[g].hi) return g + 1;
  }
  throw FrequencyOutOfRange("frequency " + std::to_string(f) + " is not covered by the group table");
}

int freq_group(int f) {
  static const FrequencyGroupTable table;
  return table.group_of(f);
}

}  // namespace wanderlust
