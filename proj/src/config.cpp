#include "wanderlust/config.hpp"

#include <fstream>
#include <set>

#include "wanderlust/error.hpp"

namespace wanderlust {

namespace {

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const Json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError("'" + std::string(key) + "' in " + where + " has the wrong type");
  }
}

}  // namespace

void PipelineConfig::validate() const {
  grid.validate();
  groups.validate();
  height.validate();
  width.validate();
  if (tessellation.arc_samples < 2) throw ConfigError("arc_samples must be at least 2");
  if (tessellation.vertices_per_flow < 2) throw ConfigError("vertices_per_flow must be at least 2");
  find_preset(preset);
}

Json to_json(const GridSpec& grid) {
  return {{"origin_x_m", grid.origin_x_m}, {"origin_y_m", grid.origin_y_m}, {"cell_size_m", grid.cell_size_m},
          {"n_cols", grid.n_cols}, {"n_rows", grid.n_rows}};
}

GridSpec grid_from_json(const Json& j) {
  reject_unknown(j, {"origin_x_m", "origin_y_m", "cell_size_m", "n_cols", "n_rows"}, "grid");
  GridSpec grid;
  read(j, "origin_x_m", grid.origin_x_m, "grid");
  read(j, "origin_y_m", grid.origin_y_m, "grid");
  read(j, "cell_size_m", grid.cell_size_m, "grid");
  read(j, "n_cols", grid.n_cols, "grid");
  read(j, "n_rows", grid.n_rows, "grid");
  grid.validate();
  return grid;
}

Json to_json(const FrequencyGroupTable& table) {
  Json groups = Json::array();
  for (int g = 0; g < kGroupCount; ++g) {
    groups.push_back({{"group", g + 1},
                      {"lo", table.ranges[g].lo},
                      {"hi", table.ranges[g].hi},
                      {"color", table.colors[g].to_hex()}});
  }
  return groups;
}

Json to_json(const HeightParams& params) { return {{"p", params.p}, {"s", params.s}}; }

Json to_json(const WidthParams& params) {
  return {{"w0", params.w0}, {"beta", params.beta}, {"w_min", params.w_min}};
}

Json to_json(const LayerPreset& preset) {
  Json groups = Json::array();
  for (int g = 1; g <= kGroupCount; ++g) {
    if (preset.includes_group(g)) groups.push_back(g);
  }
  // JSON has no infinity; an unbounded mu clause is written as null.
  Json min_mu = std::isfinite(preset.min_log10_mu) ? Json(preset.min_log10_mu) : Json(nullptr);
  return {{"name", preset.name},
          {"min_dest_visitors", preset.min_dest_visitors},
          {"min_log10_mu", min_mu},
          {"dest_rule", to_string(preset.dest_rule)},
          {"group_mask", groups},
          {"min_flow_visitors", preset.min_flow_visitors}};
}

Json to_json(const PipelineConfig& config) {
  return {{"grid", to_json(config.grid)},
          {"frequency_groups", to_json(config.groups)},
          {"height", to_json(config.height)},
          {"width", to_json(config.width)},
          {"arc_samples", config.tessellation.arc_samples},
          {"vertices_per_flow", config.tessellation.vertices_per_flow},
          {"preset", config.preset},
          {"seed", config.seed}};
}

PipelineConfig config_from_json(const Json& j) {
  reject_unknown(j, {"grid", "frequency_groups", "height", "width", "arc_samples", "vertices_per_flow", "preset", "seed"},
                 "config");
  PipelineConfig config;
  if (j.contains("grid")) config.grid = grid_from_json(j.at("grid"));
  if (j.contains("frequency_groups")) {
    const Json& groups = j.at("frequency_groups");
    if (!groups.is_array() || groups.size() != kGroupCount) {
      throw ConfigError("frequency_groups must be an array of 4 groups");
    }
    for (int g = 0; g < kGroupCount; ++g) {
      const Json& item = groups[std::size_t(g)];
      reject_unknown(item, {"group", "lo", "hi", "color"}, "frequency_groups entry");
      int index = g + 1;
      read(item, "group", index, "frequency_groups entry");
      if (index != g + 1) throw ConfigError("frequency_groups must be listed in order 1..4");
      read(item, "lo", config.groups.ranges[g].lo, "frequency_groups entry");
      read(item, "hi", config.groups.ranges[g].hi, "frequency_groups entry");
      if (item.contains("color")) {
        std::string hex;
        read(item, "color", hex, "frequency_groups entry");
        config.groups.colors[g] = Rgba::from_hex(hex);
      }
    }
  }
  if (j.contains("height")) {
    reject_unknown(j.at("height"), {"p", "s"}, "height");
    read(j.at("height"), "p", config.height.p, "height");
    read(j.at("height"), "s", config.height.s, "height");
  }
  if (j.contains("width")) {
    reject_unknown(j.at("width"), {"w0", "beta", "w_min"}, "width");
    read(j.at("width"), "w0", config.width.w0, "width");
    read(j.at("width"), "beta", config.width.beta, "width");
    read(j.at("width"), "w_min", config.width.w_min, "width");
  }
  read(j, "arc_samples", config.tessellation.arc_samples, "config");
  read(j, "vertices_per_flow", config.tessellation.vertices_per_flow, "config");
  read(j, "preset", config.preset, "config");
  read(j, "seed", config.seed, "config");
  config.validate();
  return config;
}

namespace {

Json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

}  // namespace

PipelineConfig load_config(const std::filesystem::path& path) { return config_from_json(load_json(path)); }

TownFile towns_from_json(const Json& j, const GridSpec& grid) {
  reject_unknown(j, {"towns", "r_max_km", "f_max"}, "town file");
  TownFile file;
  read(j, "r_max_km", file.r_max_km, "town file");
  read(j, "f_max", file.f_max, "town file");
  if (file.r_max_km < 1) throw ConfigError("r_max_km must be at least 1");
  if (file.f_max < 1 || file.f_max > kMaxFrequency) throw ConfigError("f_max must lie in 1..30");
  if (!j.contains("towns") || !j.at("towns").is_array()) throw ConfigError("town file needs a 'towns' array");
  for (const Json& item : j.at("towns")) {
    reject_unknown(item, {"col", "row", "peak_mu", "radius_km"}, "town");
    if (!item.contains("col") || !item.contains("row") || !item.contains("peak_mu") || !item.contains("radius_km")) {
      throw ConfigError("each town needs col, row, peak_mu and radius_km");
    }
    std::int64_t col = 0, row = 0;
    TownCenter town;
    read(item, "col", col, "town");
    read(item, "row", row, "town");
    read(item, "peak_mu", town.peak_mu, "town");
    read(item, "radius_km", town.radius_km, "town");
    if (col < 0 || row < 0 || col >= grid.n_cols || row >= grid.n_rows) {
      throw ConfigError("town at (" + std::to_string(col) + ", " + std::to_string(row) + ") is outside the grid");
    }
    town.cell = grid.cell_at(std::uint32_t(col), std::uint32_t(row));
    file.towns.push_back(town);
  }
  if (file.towns.empty()) throw ConfigError("town file lists no towns");
  return file;
}

TownFile load_towns(const std::filesystem::path& path, const GridSpec& grid) {
  return towns_from_json(load_json(path), grid);
}

}  // namespace wanderlust
