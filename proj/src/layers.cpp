#include "wanderlust/layers.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "wanderlust/error.hpp"

namespace wanderlust {

void LayerPreset::validate() const {
  if ((group_mask & 0b1111) == 0 || (group_mask & ~0b1111) != 0) {
    throw ConfigError("preset '" + name + "' needs a non-empty group mask over groups 1..4");
  }
  if (min_dest_visitors < 0) throw ConfigError("preset '" + name + "' has a negative visitor threshold");
  if (std::isnan(min_log10_mu)) throw ConfigError("preset '" + name + "' has a NaN log10 mu threshold");
}

bool LayerPreset::dest_passes(const CellStats& stats) const {
  const bool by_visitors = stats.visitors >= min_dest_visitors;
  const bool by_mu = stats.log10_mu >= min_log10_mu;
  return dest_rule == DestRule::VisitorsOrMu ? (by_visitors || by_mu) : (by_visitors && by_mu);
}

bool LayerPreset::flow_passes(const Flow& flow) const {
  std::uint64_t masked = 0;
  bool any = false;
  for (int g = 1; g <= kGroupCount; ++g) {
    if (!includes_group(g)) continue;
    masked += flow.group_counts[g - 1];
    any = any || flow.group_counts[g - 1] > 0;
  }
  return any && masked >= min_flow_visitors;
}

const char* to_string(DestRule rule) {
  return rule == DestRule::VisitorsOrMu ? "visitors OR mu" : "visitors AND mu";
}

DestRule dest_rule_from_string(const std::string& text) {
  if (text == "visitors OR mu") return DestRule::VisitorsOrMu;
  if (text == "visitors AND mu") return DestRule::VisitorsAndMu;
  throw ConfigError("unknown dest_rule '" + text + "'");
}

const std::vector<LayerPreset>& preset_catalog() {
  constexpr double kNoMu = -std::numeric_limits<double>::infinity();
  static const std::vector<LayerPreset> catalog{
      {"peak5000", 5000, 1.65, DestRule::VisitorsOrMu, 0b1111, 1},
      {"peak5000-frequent", 5000, 1.65, DestRule::VisitorsOrMu, 0b1000, 1},
      {"peak10000", 10000, 1.65, DestRule::VisitorsOrMu, 0b1111, 1},
      // AND with an unbounded mu clause reduces to the visitor threshold.
      {"intermediate50", 50, kNoMu, DestRule::VisitorsAndMu, 0b1111, 1},
  };
  return catalog;
}

const LayerPreset& find_preset(const std::string& name) {
  for (const auto& preset : preset_catalog()) {
    if (preset.name == name) return preset;
  }
  throw UnknownPreset("unknown preset '" + name + "'");
}

LayerSelection apply_preset(const CellStatsMap& cells, const FlowTable& flows, const LayerPreset& preset) {
  preset.validate();
  LayerSelection selection;
  for (const auto& [id, stats] : cells) {
    if (preset.dest_passes(stats)) selection.destinations.push_back(id);
  }
  const auto& all = flows.flows();
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto it = cells.find(all[i].dest_cell);
    if (it == cells.end()) {
      throw MissingStats("no cell stats for flow destination " + std::to_string(all[i].dest_cell));
    }
    if (preset.dest_passes(it->second) && preset.flow_passes(all[i])) selection.flows.push_back(i);
  }
  return selection;
}

std::string format_fixed_half_up(double value, int places) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, std::fabs(value), std::chars_format::fixed);
  std::string digits(buf, ec == std::errc() ? end : buf);

  std::string int_part = digits.substr(0, digits.find('.'));
  std::string frac_part = digits.find('.') == std::string::npos ? "" : digits.substr(digits.find('.') + 1);
  const bool round_up = frac_part.size() > std::size_t(places) && frac_part[std::size_t(places)] >= '5';
  frac_part.resize(std::size_t(places), '0');

  std::string number = int_part + frac_part;
  if (round_up) {
    int i = int(number.size()) - 1;
    for (; i >= 0; --i) {
      if (number[std::size_t(i)] == '9') {
        number[std::size_t(i)] = '0';
      } else {
        ++number[std::size_t(i)];
        break;
      }
    }
    if (i < 0) number.insert(number.begin(), '1');
  }
  std::string out = number.substr(0, number.size() - std::size_t(places));
  if (places > 0) out += "." + number.substr(number.size() - std::size_t(places));
  const bool zero = number.find_first_not_of('0') == std::string::npos;
  return (value < 0 && !zero) ? "-" + out : out;
}

std::string panel_text(const CellStats& stats, const std::optional<std::string>& name) {
  std::string text = "No. " + std::to_string(stats.cell_id);
  if (name && !name->empty()) text += " " + *name;
  text += "\nvisitors: " + std::to_string(stats.visitors) + " visits: " + std::to_string(stats.visits) +
          " log10 μ: " + format_fixed_half_up(stats.log10_mu, 3);
  return text;
}

DiscSnapshot disc_snapshot(CellId dest_cell, std::span<const UserVisit> visits, const GridSpec& grid,
                           const DiscOptions& options, const FrequencyGroupTable& table) {
  if (!(options.radius_km > 0.0)) throw std::invalid_argument("disc radius must be positive");
  const Eigen::Vector2d center = cell_center(dest_cell, grid);
  DiscSnapshot disc{dest_cell, options.radius_km, {}};
  std::uint64_t index = 0;
  for (const auto& v : visits) {
    if (v.dest_cell != dest_cell) continue;
    const Eigen::Vector2d offset = (cell_center(v.home_cell, grid) - center) / 1000.0;
    const double dist = offset.norm();
    if (dist > options.radius_km) continue;
    double angle;
    if (options.scatter_angle) {
      StreamRng rng(options.seed, stream::kDiscScatter, dest_cell, index++);
      angle = rng.uniform() * 2.0 * std::numbers::pi;
    } else {
      angle = std::atan2(offset.y(), offset.x());
      if (angle < 0.0) angle += 2.0 * std::numbers::pi;
      if (angle >= 2.0 * std::numbers::pi) angle = 0.0;
    }
    disc.dots.push_back({dist / options.radius_km, angle, table.group_of(v.f)});
  }
  return disc;
}

std::vector<TripEvent> export_frames(std::span<const PlaybackAgent> agents, std::uint32_t n_steps,
                                     std::uint64_t seed) {
  if (agents.empty()) throw std::invalid_argument("frame export needs at least one agent");
  if (n_steps < 1) throw std::invalid_argument("frame export needs at least one step");
  std::vector<const PlaybackAgent*> ordered;
  ordered.reserve(agents.size());
  for (const auto& a : agents) ordered.push_back(&a);
  std::sort(ordered.begin(), ordered.end(), [](auto* a, auto* b) { return a->agent_id < b->agent_id; });

  std::vector<TripEvent> events;
  events.reserve(std::size_t(n_steps) * agents.size());
  for (std::uint32_t step = 1; step <= n_steps; ++step) {
    for (const auto* agent : ordered) events.push_back(playback_step(*agent, step, seed));
  }
  return events;
}

}  // namespace wanderlust
