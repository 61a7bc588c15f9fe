#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wanderlust/config.hpp"
#include "wanderlust/geometry.hpp"
#include "wanderlust/ingest.hpp"
#include "wanderlust/layers.hpp"

namespace wanderlust {

inline constexpr int kBundleFormatVersion = 1;
inline constexpr std::size_t kVertexRecordBytes = 24;
inline constexpr std::size_t kFlowRecordBytes = 20;
inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kVertexFile = "vertices.bin";
inline constexpr const char* kFlowFile = "flows.bin";

/// 24 bytes little-endian: x y z width (f32), group (u8), flags (u8, 0),
/// pad (u16, 0), flow_index (u32).
struct VertexRecord {
  float x = 0, y = 0, z = 0, width = 0;
  std::uint8_t group = 1;
  std::uint8_t flags = 0;
  std::uint16_t pad = 0;
  std::uint32_t flow_index = 0;

  friend bool operator==(const VertexRecord&, const VertexRecord&) = default;
};

/// 20 bytes little-endian, all u32.
struct FlowRecord {
  std::uint32_t first_vertex = 0;
  std::uint32_t vertex_count = 0;
  std::uint32_t origin_cell = 0;
  std::uint32_t dest_cell = 0;
  std::uint32_t total_visitors = 0;

  friend bool operator==(const FlowRecord&, const FlowRecord&) = default;
};

struct GeometryBundle {
  Json manifest;
  std::vector<VertexRecord> vertices;
  std::vector<FlowRecord> flows;
};

struct BundleParams {
  GridSpec grid;
  FrequencyGroupTable groups;
  HeightParams height;
  WidthParams width;
  TessellateParams tessellation;
  unsigned workers = 1;
};

BundleParams bundle_params(const PipelineConfig& config, unsigned workers = 1);

/// Vertex run of one flow in double precision, before packing. Throws
/// MissingStats when the destination has no stats.
std::vector<Vertex<double>> tessellate(const Flow& flow, const CellStatsMap& cells, const BundleParams& params,
                                       std::uint32_t flow_index = 0);

/// All preset-passing flows in canonical (dest, origin) order. The result is
/// identical for any worker count.
GeometryBundle compile_bundle(const FlowTable& flows, const CellStatsMap& cells, const LayerPreset& preset,
                              const BundleParams& params);

std::string encode_vertices(std::span<const VertexRecord> vertices);
std::string encode_flows(std::span<const FlowRecord> flows);
/// Throws BundleError when the byte length is not a whole number of records.
std::vector<VertexRecord> decode_vertices(std::string_view bytes);
std::vector<FlowRecord> decode_flows(std::string_view bytes);

std::string manifest_bytes(const Json& manifest);

/// Checks manifest version and counts against buffer lengths.
void validate_bundle(const GeometryBundle& bundle);

/// Writes manifest.json, vertices.bin and flows.bin. Throws IoError.
void write_bundle(const GeometryBundle& bundle, const std::filesystem::path& dir);
GeometryBundle read_bundle(const std::filesystem::path& dir);

}  // namespace wanderlust
