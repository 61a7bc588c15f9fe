#include "wanderlust/bundle.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "wanderlust/error.hpp"
#include "wanderlust/parallel.hpp"

namespace wanderlust {

namespace {

template <typename T>
void put_le(std::string& out, T value) {
  using U = std::make_unsigned_t<std::conditional_t<std::is_floating_point_v<T>,
                                                    std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>, T>>;
  const U bits = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

template <typename T>
T get_le(const char* p) {
  using U = std::make_unsigned_t<std::conditional_t<std::is_floating_point_v<T>,
                                                    std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>, T>>;
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) bits |= U(static_cast<unsigned char>(p[i])) << (8 * i);
  return std::bit_cast<T>(bits);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), std::streamsize(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

Json color_table(const FrequencyGroupTable& groups) {
  Json colors = Json::array();
  for (int g = 0; g < kGroupCount; ++g) {
    const Rgba& c = groups.colors[g];
    colors.push_back({{"group", g + 1},
                      {"name", kGroupColorNames[g]},
                      {"hex", c.to_hex()},
                      {"rgba", {c.r, c.g, c.b, c.a}},
                      {"lo", groups.ranges[g].lo},
                      {"hi", groups.ranges[g].hi}});
  }
  return colors;
}

}  // namespace

BundleParams bundle_params(const PipelineConfig& config, unsigned workers) {
  return {config.grid, config.groups, config.height, config.width, config.tessellation, workers};
}

std::vector<Vertex<double>> tessellate(const Flow& flow, const CellStatsMap& cells, const BundleParams& params,
                                       std::uint32_t flow_index) {
  const auto it = cells.find(flow.dest_cell);
  if (it == cells.end()) {
    throw MissingStats("no cell stats for flow destination " + std::to_string(flow.dest_cell));
  }
  const double height = mountain_height(it->second.mu, params.height);
  const auto cp = control_points<double>(cell_center(flow.origin_cell, params.grid),
                                         cell_center(flow.dest_cell, params.grid), height);
  return tessellate_curve<double>(cp, flow.group_counts, flow_width(flow.total_visitors(), params.width), flow_index,
                                  params.tessellation);
}

GeometryBundle compile_bundle(const FlowTable& flows, const CellStatsMap& cells, const LayerPreset& preset,
                              const BundleParams& params) {
  const LayerSelection selection = apply_preset(cells, flows, preset);
  const std::size_t n = selection.flows.size();
  const std::size_t m = std::size_t(params.tessellation.vertices_per_flow);
  if (n * m > std::numeric_limits<std::uint32_t>::max()) throw BundleError("bundle exceeds 2^32 vertices");

  GeometryBundle bundle;
  bundle.vertices.resize(n * m);
  bundle.flows.resize(n);
  parallel_chunks(n, params.workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Flow& flow = flows.flows()[selection.flows[i]];
      if (flow.total_visitors() > std::numeric_limits<std::uint32_t>::max()) {
        throw BundleError("flow total exceeds 32 bits");
      }
      const auto run = tessellate(flow, cells, params, std::uint32_t(i));
      for (std::size_t k = 0; k < run.size(); ++k) {
        const auto& v = run[k];
        bundle.vertices[i * m + k] = {float(v.position.x()), float(v.position.y()), float(v.position.z()),
                                      float(v.width),        v.group,               0,
                                      0,                     v.flow_index};
      }
      bundle.flows[i] = {std::uint32_t(i * m), std::uint32_t(m), flow.origin_cell, flow.dest_cell,
                         std::uint32_t(flow.total_visitors())};
    }
  });

  double max_height = 0.0;
  for (CellId dest : selection.destinations) {
    max_height = std::max(max_height, mountain_height(cells.at(dest).mu, params.height));
  }
  const GridSpec& g = params.grid;
  bundle.manifest = {
      {"format_version", kBundleFormatVersion},
      {"grid", to_json(g)},
      {"params",
       {{"height", to_json(params.height)},
        {"width", to_json(params.width)},
        {"arc_samples", params.tessellation.arc_samples},
        {"vertices_per_flow", params.tessellation.vertices_per_flow}}},
      {"colors", color_table(params.groups)},
      {"preset", to_json(preset)},
      {"counts", {{"vertices", bundle.vertices.size()}, {"flows", bundle.flows.size()},
                  {"destinations", selection.destinations.size()}}},
      {"buffers",
       {{"vertices", {{"file", kVertexFile}, {"record_bytes", kVertexRecordBytes},
                      {"byte_length", bundle.vertices.size() * kVertexRecordBytes}}},
        {"flows", {{"file", kFlowFile}, {"record_bytes", kFlowRecordBytes},
                   {"byte_length", bundle.flows.size() * kFlowRecordBytes}}}}},
      {"bbox",
       {{"min", {g.origin_x_m, g.origin_y_m, 0.0}},
        {"max", {g.origin_x_m + g.n_cols * g.cell_size_m, g.origin_y_m + g.n_rows * g.cell_size_m, max_height}}}},
  };
  return bundle;
}

std::string encode_vertices(std::span<const VertexRecord> vertices) {
  std::string out;
  out.reserve(vertices.size() * kVertexRecordBytes);
  for (const auto& v : vertices) {
    put_le(out, v.x);
    put_le(out, v.y);
    put_le(out, v.z);
    put_le(out, v.width);
    put_le(out, v.group);
    put_le(out, v.flags);
    put_le(out, v.pad);
    put_le(out, v.flow_index);
  }
  return out;
}

std::string encode_flows(std::span<const FlowRecord> flows) {
  std::string out;
  out.reserve(flows.size() * kFlowRecordBytes);
  for (const auto& f : flows) {
    put_le(out, f.first_vertex);
    put_le(out, f.vertex_count);
    put_le(out, f.origin_cell);
    put_le(out, f.dest_cell);
    put_le(out, f.total_visitors);
  }
  return out;
}

std::vector<VertexRecord> decode_vertices(std::string_view bytes) {
  if (bytes.size() % kVertexRecordBytes != 0) {
    throw BundleError("vertex buffer length " + std::to_string(bytes.size()) + " is not a multiple of 24");
  }
  std::vector<VertexRecord> out(bytes.size() / kVertexRecordBytes);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const char* p = bytes.data() + i * kVertexRecordBytes;
    out[i] = {get_le<float>(p),       get_le<float>(p + 4),          get_le<float>(p + 8),
              get_le<float>(p + 12),  get_le<std::uint8_t>(p + 16),  get_le<std::uint8_t>(p + 17),
              get_le<std::uint16_t>(p + 18), get_le<std::uint32_t>(p + 20)};
  }
  return out;
}

std::vector<FlowRecord> decode_flows(std::string_view bytes) {
  if (bytes.size() % kFlowRecordBytes != 0) {
    throw BundleError("flow buffer length " + std::to_string(bytes.size()) + " is not a multiple of 20");
  }
  std::vector<FlowRecord> out(bytes.size() / kFlowRecordBytes);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const char* p = bytes.data() + i * kFlowRecordBytes;
    out[i] = {get_le<std::uint32_t>(p), get_le<std::uint32_t>(p + 4), get_le<std::uint32_t>(p + 8),
              get_le<std::uint32_t>(p + 12), get_le<std::uint32_t>(p + 16)};
  }
  return out;
}

std::string manifest_bytes(const Json& manifest) { return manifest.dump(2) + "\n"; }

void validate_bundle(const GeometryBundle& bundle) {
  const Json& m = bundle.manifest;
  try {
    if (m.at("format_version").get<int>() != kBundleFormatVersion) {
      throw BundleError("unsupported bundle format_version " + m.at("format_version").dump());
    }
    const auto n_vertices = m.at("counts").at("vertices").get<std::size_t>();
    const auto n_flows = m.at("counts").at("flows").get<std::size_t>();
    if (n_vertices != bundle.vertices.size()) {
      throw BundleError("manifest lists " + std::to_string(n_vertices) + " vertices, buffer holds " +
                        std::to_string(bundle.vertices.size()));
    }
    if (n_flows != bundle.flows.size()) {
      throw BundleError("manifest lists " + std::to_string(n_flows) + " flows, buffer holds " +
                        std::to_string(bundle.flows.size()));
    }
  } catch (const Json::exception& e) {
    throw BundleError(std::string("malformed manifest: ") + e.what());
  }
  for (const auto& f : bundle.flows) {
    if (std::uint64_t{f.first_vertex} + f.vertex_count > bundle.vertices.size()) {
      throw BundleError("flow record points past the vertex buffer");
    }
  }
}

void write_bundle(const GeometryBundle& bundle, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / kManifestFile, manifest_bytes(bundle.manifest));
  write_file(dir / kVertexFile, encode_vertices(bundle.vertices));
  write_file(dir / kFlowFile, encode_flows(bundle.flows));
}

GeometryBundle read_bundle(const std::filesystem::path& dir) {
  GeometryBundle bundle;
  try {
    bundle.manifest = Json::parse(read_file(dir / kManifestFile));
  } catch (const Json::parse_error& e) {
    throw BundleError((dir / kManifestFile).string() + ": " + e.what());
  }
  std::string vertex_file = kVertexFile;
  std::string flow_file = kFlowFile;
  try {
    vertex_file = bundle.manifest.at("buffers").at("vertices").at("file").get<std::string>();
    flow_file = bundle.manifest.at("buffers").at("flows").at("file").get<std::string>();
  } catch (const Json::exception& e) {
    throw BundleError(std::string("malformed manifest: ") + e.what());
  }
  bundle.vertices = decode_vertices(read_file(dir / vertex_file));
  bundle.flows = decode_flows(read_file(dir / flow_file));
  validate_bundle(bundle);
  return bundle;
}

}  // namespace wanderlust
