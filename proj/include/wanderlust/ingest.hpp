#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "wanderlust/frequency.hpp"
#include "wanderlust/grid.hpp"
#include "wanderlust/law.hpp"
#include "wanderlust/records.hpp"

namespace wanderlust {

/// Reads `user_id,day,x_m,y_m` rows. The header line is optional. Every bad
/// line is collected and reported in one ParseError.
std::vector<PingRecord> parse_pings(std::istream& in);

/// Reads `user_id,home_cell,dest_cell,f` rows. When a grid is given, cell
/// ids are range-checked too.
std::vector<UserVisit> parse_visits(std::istream& in, const GridSpec* grid = nullptr);

struct AggregateOptions {
  /// Downgrade out-of-grid pings from errors to counted drops.
  bool clip = false;
  unsigned workers = 1;
};

struct AggregateResult {
  std::vector<UserVisit> visits;
  std::size_t clipped = 0;
};

/// Per (user, cell) f = number of distinct active days, capped at 30. Home is
/// the user's cell with the largest f (lowest id on ties). Emits one visit per
/// non-home cell, users in lexicographic id order and cells ascending.
AggregateResult aggregate_visits(std::span<const PingRecord> pings, const GridSpec& grid,
                                 const AggregateOptions& options = {});

/// One spectrum per destination. `ring_window` fixes the number of rings
/// (0 = the largest ring seen in the data); each ring's exposure is the
/// number of grid cells lying on it.
std::map<CellId, Spectrum> build_spectra(std::span<const UserVisit> visits, const GridSpec& grid,
                                         int ring_window = 0);

/// Number of grid cells at each ring 1..rings around a destination.
Eigen::VectorXd ring_cell_counts(CellId dest, const GridSpec& grid, int rings);

struct Flow {
  CellId origin_cell = 0;
  CellId dest_cell = 0;
  std::array<std::uint32_t, kGroupCount> group_counts{};

  std::uint64_t total_visitors() const {
    return std::uint64_t{group_counts[0]} + group_counts[1] + group_counts[2] + group_counts[3];
  }

  friend bool operator==(const Flow&, const Flow&) = default;
};

/// Flows in canonical (dest, origin) order with a per-destination index.
class FlowTable {
 public:
  FlowTable() = default;
  /// Sorts into canonical order. Throws std::invalid_argument on duplicate
  /// pairs, self flows or empty flows.
  explicit FlowTable(std::vector<Flow> flows);

  const std::vector<Flow>& flows() const { return flows_; }
  std::size_t size() const { return flows_.size(); }
  bool empty() const { return flows_.empty(); }

  /// Flows into one destination; empty when it has none.
  std::span<const Flow> into(CellId dest) const;

  std::vector<CellId> destinations() const;

 private:
  std::vector<Flow> flows_;
  std::map<CellId, std::pair<std::size_t, std::size_t>> by_dest_;
};

FlowTable build_flows(std::span<const UserVisit> visits, const FrequencyGroupTable& table = {});

}  // namespace wanderlust
