#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "wanderlust/grid.hpp"

namespace wanderlust {

/// One raw location fix.
struct PingRecord {
  std::string user_id;
  int day = 1;
  double x_m = 0.0;
  double y_m = 0.0;
  /// Source line, 0 when not read from a file.
  std::size_t line = 0;

  friend bool operator==(const PingRecord&, const PingRecord&) = default;
};

/// A user's monthly visiting frequency to one non-home cell. Trips are
/// home-anchored: home -> dest -> home.
struct UserVisit {
  std::string user_id;
  CellId home_cell = 0;
  CellId dest_cell = 0;
  int f = 1;

  friend bool operator==(const UserVisit&, const UserVisit&) = default;
};

struct TripEvent {
  std::uint32_t step = 0;
  std::uint32_t agent_id = 0;
  CellId home_cell = 0;
  CellId dest_cell = 0;

  friend bool operator==(const TripEvent&, const TripEvent&) = default;
};

}  // namespace wanderlust
