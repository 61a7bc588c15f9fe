#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace wanderlust {

inline constexpr int kMaxFrequency = 30;
inline constexpr int kGroupCount = 4;

struct Rgba {
  std::uint8_t r = 0, g = 0, b = 0, a = 255;

  /// "#RRGGBB" or "#RRGGBBAA". Throws ConfigError on anything else.
  static Rgba from_hex(const std::string& hex);
  std::string to_hex() const;

  friend bool operator==(const Rgba&, const Rgba&) = default;
};

/// Inclusive visits-per-month range.
struct FrequencyRange {
  int lo = 1;
  int hi = 1;

  friend bool operator==(const FrequencyRange&, const FrequencyRange&) = default;
};

/// Four frequency bands covering 1..30 with the top band pinned to 22..30.
struct FrequencyGroupTable {
  std::array<FrequencyRange, kGroupCount> ranges{{{1, 7}, {8, 14}, {15, 21}, {22, 30}}};
  std::array<Rgba, kGroupCount> colors{{
      {0x00, 0x00, 0x8B, 0xFF},  // dark blue
      {0xAD, 0xD8, 0xE6, 0xFF},  // light blue
      {0xFF, 0x7F, 0x50, 0xFF},  // coral
      {0xFF, 0x14, 0x93, 0xFF},  // deep pink
  }};

  /// Throws ConfigError unless the ranges are ascending, disjoint, cover
  /// exactly 1..30 and the last one is 22..30.
  void validate() const;

  /// Group index 1..4. Throws FrequencyOutOfRange for f outside 1..30.
  int group_of(int f) const;

  friend bool operator==(const FrequencyGroupTable&, const FrequencyGroupTable&) = default;
};

inline constexpr std::array<const char*, kGroupCount> kGroupColorNames{"dark blue", "light blue", "coral",
                                                                       "deep pink"};

/// Group under the default 1-7 / 8-14 / 15-21 / 22-30 table.
int freq_group(int f);

}  // namespace wanderlust
