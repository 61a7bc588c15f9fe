#pragma once

#include <cstdint>
#include <cmath>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "wanderlust/frequency.hpp"
#include "wanderlust/geometry.hpp"
#include "wanderlust/grid.hpp"
#include "wanderlust/law.hpp"
#include "wanderlust/layers.hpp"
#include "wanderlust/synth.hpp"

namespace wanderlust {

using Json = nlohmann::json;

/// Every knob of the pipeline. Unknown keys are rejected on parse; missing
/// keys keep their defaults.
struct PipelineConfig {
  GridSpec grid{0.0, 0.0, 1000.0, 100, 100};
  FrequencyGroupTable groups;
  HeightParams height;
  WidthParams width;
  TessellateParams tessellation;
  std::string preset = "peak5000";
  std::uint64_t seed = 42;

  void validate() const;

  friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

Json to_json(const GridSpec& grid);
GridSpec grid_from_json(const Json& j);

Json to_json(const FrequencyGroupTable& table);
Json to_json(const HeightParams& params);
Json to_json(const WidthParams& params);
Json to_json(const LayerPreset& preset);

Json to_json(const PipelineConfig& config);
/// Throws ConfigError on unknown keys, wrong types or violated invariants.
PipelineConfig config_from_json(const Json& j);

PipelineConfig load_config(const std::filesystem::path& path);

/// Town file: {"towns": [{"col", "row", "peak_mu", "radius_km"}...],
///             "r_max_km": int, "f_max": int}
struct TownFile {
  std::vector<TownCenter> towns;
  int r_max_km = 20;
  int f_max = kMaxFrequency;
};

TownFile towns_from_json(const Json& j, const GridSpec& grid);
TownFile load_towns(const std::filesystem::path& path, const GridSpec& grid);

}  // namespace wanderlust
