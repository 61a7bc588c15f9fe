#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wanderlust/frequency.hpp"
#include "wanderlust/ingest.hpp"
#include "wanderlust/law.hpp"
#include "wanderlust/synth.hpp"

namespace wanderlust {

enum class DestRule { VisitorsOrMu, VisitorsAndMu };

/// A threshold layer selecting which destinations and flows are drawn.
struct LayerPreset {
  std::string name;
  std::int64_t min_dest_visitors = 0;
  double min_log10_mu = -std::numeric_limits<double>::infinity();
  DestRule dest_rule = DestRule::VisitorsOrMu;
  /// Bit g - 1 set when group g is selected.
  std::uint8_t group_mask = 0b1111;
  std::uint64_t min_flow_visitors = 1;

  void validate() const;

  bool includes_group(int g) const { return (group_mask >> (g - 1)) & 1u; }
  bool dest_passes(const CellStats& stats) const;
  bool flow_passes(const Flow& flow) const;

  friend bool operator==(const LayerPreset&, const LayerPreset&) = default;
};

const char* to_string(DestRule rule);
DestRule dest_rule_from_string(const std::string& text);

/// peak5000, peak5000-frequent, peak10000, intermediate50.
const std::vector<LayerPreset>& preset_catalog();

/// Throws UnknownPreset.
const LayerPreset& find_preset(const std::string& name);

using CellStatsMap = std::map<CellId, CellStats>;

struct LayerSelection {
  std::vector<CellId> destinations;
  /// Indices into the flow table, canonical order.
  std::vector<std::size_t> flows;
};

/// Destinations pass on their thresholds; a flow passes when its destination
/// does, its masked visitors reach min_flow_visitors and at least one masked
/// group is non-empty. Throws MissingStats for flows into cells without stats.
LayerSelection apply_preset(const CellStatsMap& cells, const FlowTable& flows, const LayerPreset& preset);

/// Two-line info panel:
///   No. {cell_id}[ {name}]
///   visitors: {visitors} visits: {visits} log10 μ: {log10_mu to 3 places}
std::string panel_text(const CellStats& stats, const std::optional<std::string>& name = std::nullopt);

/// Half-up (away from zero) rounding to `places` decimals applied to the
/// shortest decimal representation of `value`; trailing zeros kept.
std::string format_fixed_half_up(double value, int places);

struct DiscDot {
  double radial = 0.0;
  double angle = 0.0;
  int group = 1;
};

struct DiscSnapshot {
  CellId dest_cell = 0;
  double radius_km = 50.0;
  std::vector<DiscDot> dots;
};

struct DiscOptions {
  double radius_km = 50.0;
  /// Replace true azimuths with seeded random angles.
  bool scatter_angle = false;
  std::uint64_t seed = 0;
};

/// One dot per visitor of `dest_cell` living within the radius: radial =
/// distance / radius, angle = azimuth from the destination to the home
/// (east = 0, counter-clockwise, in [0, 2 pi)), colored by frequency group.
DiscSnapshot disc_snapshot(CellId dest_cell, std::span<const UserVisit> visits, const GridSpec& grid,
                           const DiscOptions& options = {}, const FrequencyGroupTable& table = {});

/// One trip per agent per step, ordered by (step, agent_id).
std::vector<TripEvent> export_frames(std::span<const PlaybackAgent> agents, std::uint32_t n_steps,
                                     std::uint64_t seed);

}  // namespace wanderlust
