#include "wanderlust/formats.hpp"

#include <charconv>
#include <string_view>

#include "wanderlust/error.hpp"

namespace wanderlust {

namespace {

template <typename T>
bool parse_uint(std::string_view text, T& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return !text.empty() && ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

void write_visits_csv(std::ostream& out, std::span<const UserVisit> visits) {
  out << kVisitsHeader << '\n';
  std::string line;
  for (const auto& v : visits) {
    line.clear();
    line += v.user_id;
    line += ',';
    line += std::to_string(v.home_cell);
    line += ',';
    line += std::to_string(v.dest_cell);
    line += ',';
    line += std::to_string(v.f);
    line += '\n';
    out << line;
  }
}

void write_flows_csv(std::ostream& out, const FlowTable& flows) {
  out << kFlowsHeader << '\n';
  for (const auto& f : flows.flows()) {
    out << f.origin_cell << ',' << f.dest_cell << ',' << f.group_counts[0] << ',' << f.group_counts[1] << ','
        << f.group_counts[2] << ',' << f.group_counts[3] << '\n';
  }
}

FlowTable parse_flows_csv(std::istream& in) {
  std::vector<Flow> flows;
  std::vector<ParseIssue> issues;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if ((number == 1 && line == kFlowsHeader) || line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t comma; (comma = rest.find(',')) != std::string_view::npos; rest.remove_prefix(comma + 1)) {
      fields.push_back(rest.substr(0, comma));
    }
    fields.push_back(rest);
    Flow flow;
    bool ok = fields.size() == 6 && parse_uint(fields[0], flow.origin_cell) && parse_uint(fields[1], flow.dest_cell);
    for (int g = 0; ok && g < kGroupCount; ++g) ok = parse_uint(fields[std::size_t(2 + g)], flow.group_counts[g]);
    if (!ok) {
      issues.push_back({number, "expected origin_cell,dest_cell,g1,g2,g3,g4 as unsigned integers"});
    } else if (flow.origin_cell == flow.dest_cell || flow.total_visitors() == 0) {
      issues.push_back({number, "flow must join two distinct cells and carry visitors"});
    } else {
      flows.push_back(flow);
    }
  }
  if (!issues.empty()) throw ParseError(std::move(issues));
  try {
    return FlowTable(std::move(flows));
  } catch (const std::invalid_argument& e) {
    throw ParseError({{0, e.what()}});
  }
}

Json cells_to_json(const CellStatsMap& cells) {
  Json out = Json::array();
  for (const auto& [id, s] : cells) {
    out.push_back({{"cell_id", s.cell_id},
                   {"visitors", s.visitors},
                   {"visits", s.visits},
                   {"mu", s.mu},
                   {"log10_mu", s.log10_mu},
                   {"height_m", s.height_m}});
  }
  return out;
}

std::string cells_json_bytes(const CellStatsMap& cells) { return cells_to_json(cells).dump(1) + "\n"; }

CellStatsMap cells_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError({{0, "cells file must hold a JSON array"}});
  CellStatsMap cells;
  std::size_t index = 0;
  for (const Json& item : j) {
    ++index;
    try {
      CellStats s;
      s.cell_id = item.at("cell_id").get<CellId>();
      s.visitors = item.at("visitors").get<std::int64_t>();
      s.visits = item.at("visits").get<std::int64_t>();
      s.mu = item.at("mu").get<double>();
      s.log10_mu = item.at("log10_mu").get<double>();
      s.height_m = item.at("height_m").get<double>();
      if (!cells.emplace(s.cell_id, s).second) {
        throw ParseError({{index, "duplicate cell_id " + std::to_string(s.cell_id)}});
      }
    } catch (const Json::exception& e) {
      throw ParseError({{index, std::string("cells entry: ") + e.what()}});
    }
  }
  return cells;
}

std::map<CellId, std::string> parse_names(std::istream& in) {
  std::map<CellId, std::string> names;
  std::vector<ParseIssue> issues;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if ((number == 1 && line == kNamesHeader) || line.empty()) continue;
    const std::size_t comma = line.find(',');
    CellId id = 0;
    if (comma == std::string::npos || !parse_uint(std::string_view(line).substr(0, comma), id)) {
      issues.push_back({number, "expected cell_id,name"});
      continue;
    }
    names[id] = line.substr(comma + 1);
  }
  if (!issues.empty()) throw ParseError(std::move(issues));
  return names;
}

std::string frame_line(const TripEvent& event) {
  return R"({"step":)" + std::to_string(event.step) + R"(,"agent":)" + std::to_string(event.agent_id) +
         R"(,"to":)" + std::to_string(event.dest_cell) + "}";
}

void write_frames(std::ostream& out, std::span<const TripEvent> events) {
  for (const auto& e : events) out << frame_line(e) << '\n';
}

std::vector<TripEvent> parse_frames(std::istream& in) {
  std::vector<TripEvent> events;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      const Json j = Json::parse(line);
      TripEvent e;
      e.step = j.at("step").get<std::uint32_t>();
      e.agent_id = j.at("agent").get<std::uint32_t>();
      e.dest_cell = j.at("to").get<CellId>();
      events.push_back(e);
    } catch (const Json::exception& e) {
      throw ParseError({{number, e.what()}});
    }
  }
  return events;
}

Json agents_to_json(std::span<const PlaybackAgent> agents) {
  Json out = Json::array();
  for (const auto& a : agents) {
    Json places = Json::array();
    for (const auto& p : a.places) places.push_back({{"cell", p.cell}, {"weight", p.weight}});
    out.push_back({{"agent", a.agent_id}, {"user_id", a.user_id}, {"home", a.home_cell}, {"places", places}});
  }
  return out;
}

Json disc_to_json(const DiscSnapshot& disc) {
  Json dots = Json::array();
  for (const auto& d : disc.dots) dots.push_back({{"radial", d.radial}, {"angle", d.angle}, {"group", d.group}});
  return {{"dest_cell", disc.dest_cell}, {"radius_km", disc.radius_km}, {"dots", dots}};
}

Json truth_to_json(const SyntheticWorld& world) {
  Json towns = Json::array();
  for (const auto& t : world.towns) {
    towns.push_back({{"cell", t.cell}, {"peak_mu", t.peak_mu}, {"radius_km", t.radius_km}});
  }
  std::vector<double> mu(world.mu_map.data(), world.mu_map.data() + world.mu_map.size());
  return {{"grid", to_json(world.grid)}, {"seed", world.seed}, {"towns", towns}, {"mu", mu}};
}

Json cell_panel_json(const CellStats& stats, const std::optional<std::string>& name) {
  return {{"cell_id", stats.cell_id},
          {"name", name ? Json(*name) : Json(nullptr)},
          {"visitors", stats.visitors},
          {"visits", stats.visits},
          {"mu", stats.mu},
          {"log10_mu", stats.log10_mu},
          {"height_m", stats.height_m},
          {"panel", panel_text(stats, name)}};
}

}  // namespace wanderlust
