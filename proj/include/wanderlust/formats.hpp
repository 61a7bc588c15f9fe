#pragma once

// On-disk artifacts exchanged between pipeline stages and the viewer.

#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>

#include "wanderlust/config.hpp"
#include "wanderlust/ingest.hpp"
#include "wanderlust/layers.hpp"
#include "wanderlust/synth.hpp"

namespace wanderlust {

inline constexpr const char* kVisitsHeader = "user_id,home_cell,dest_cell,f";
inline constexpr const char* kFlowsHeader = "origin_cell,dest_cell,g1,g2,g3,g4";
inline constexpr const char* kNamesHeader = "cell_id,name";

void write_visits_csv(std::ostream& out, std::span<const UserVisit> visits);

void write_flows_csv(std::ostream& out, const FlowTable& flows);
/// Throws ParseError listing the offending lines.
FlowTable parse_flows_csv(std::istream& in);

/// Array of {cell_id, visitors, visits, mu, log10_mu, height_m} sorted by id.
Json cells_to_json(const CellStatsMap& cells);
std::string cells_json_bytes(const CellStatsMap& cells);
CellStatsMap cells_from_json(const Json& j);

/// `cell_id,name` rows; the name runs to the end of the line and may contain
/// commas.
std::map<CellId, std::string> parse_names(std::istream& in);

/// One line per event: {"step":n,"agent":id,"to":cell}
std::string frame_line(const TripEvent& event);
void write_frames(std::ostream& out, std::span<const TripEvent> events);
std::vector<TripEvent> parse_frames(std::istream& in);

Json agents_to_json(std::span<const PlaybackAgent> agents);
Json disc_to_json(const DiscSnapshot& disc);
Json truth_to_json(const SyntheticWorld& world);

/// Panel fields of one cell for the viewer, including the formatted text.
Json cell_panel_json(const CellStats& stats, const std::optional<std::string>& name);

}  // namespace wanderlust
