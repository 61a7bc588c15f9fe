#include "wanderlust/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wanderlust/bundle.hpp"
#include "wanderlust/error.hpp"
#include "wanderlust/formats.hpp"
#include "wanderlust/ingest.hpp"
#include "wanderlust/layers.hpp"
#include "wanderlust/parallel.hpp"
#include "wanderlust/synth.hpp"

namespace wanderlust::cli {

namespace {

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

void write_text(const fs::path& path, const std::string& bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << bytes;
  if (!out) throw IoError("short write to " + path.string());
}

std::vector<UserVisit> load_visits(const fs::path& path, const GridSpec& grid) {
  auto in = open_input(path);
  return parse_visits(in, &grid);
}

}  // namespace

PipelineConfig resolve_config(const GlobalOptions& global) {
  PipelineConfig config = global.config ? load_config(*global.config) : PipelineConfig{};
  if (global.seed) config.seed = *global.seed;
  if (global.preset) config.preset = *global.preset;
  config.validate();
  return config;
}

SynthSummary run_synth(const PipelineConfig& config, unsigned workers, const SynthArgs& args) {
  const TownFile towns = load_towns(args.towns, config.grid);
  const SyntheticWorld world = build_world({config.grid, towns.towns}, config.seed);
  const auto visits = sample_visits(world, {towns.f_max, towns.r_max_km, workers}, config.seed);

  std::ostringstream csv;
  write_visits_csv(csv, visits);
  write_text(args.out_visits, csv.str());
  write_text(args.out_truth, truth_to_json(world).dump() + "\n");
  return {visits.size()};
}

FitSummary run_fit(const PipelineConfig& config, unsigned workers, const FitArgs& args) {
  if (args.visits.has_value() == args.pings.has_value()) {
    throw ConfigError("fit needs exactly one of --visits or --pings");
  }
  FitSummary summary;
  std::vector<UserVisit> visits;
  if (args.visits) {
    visits = load_visits(*args.visits, config.grid);
  } else {
    auto in = open_input(*args.pings);
    const auto pings = parse_pings(in);
    auto aggregated = aggregate_visits(pings, config.grid, {args.clip, workers});
    visits = std::move(aggregated.visits);
    summary.clipped = aggregated.clipped;
  }

  const auto spectra = build_spectra(visits, config.grid);
  std::vector<const Spectrum*> ordered;
  ordered.reserve(spectra.size());
  for (const auto& [id, s] : spectra) ordered.push_back(&s);
  std::vector<CellStats> stats(ordered.size());
  parallel_chunks(ordered.size(), workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) stats[i] = cell_stats(*ordered[i], config.height);
  });
  CellStatsMap cells;
  for (const auto& s : stats) cells.emplace(s.cell_id, s);

  const FlowTable flows = build_flows(visits, config.groups);
  std::ostringstream flows_csv;
  write_flows_csv(flows_csv, flows);
  write_text(args.out_cells, cells_json_bytes(cells));
  write_text(args.out_flows, flows_csv.str());

  summary.visits = visits.size();
  summary.cells = cells.size();
  summary.flows = flows.size();
  return summary;
}

CompileSummary run_compile(const PipelineConfig& config, unsigned workers, const CompileArgs& args) {
  CellStatsMap cells;
  {
    auto in = open_input(args.cells);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw ParseError({{0, args.cells.string() + ": " + e.what()}});
    }
    cells = cells_from_json(j);
  }
  FlowTable flows;
  {
    auto in = open_input(args.flows);
    flows = parse_flows_csv(in);
  }
  const auto bundle = compile_bundle(flows, cells, find_preset(config.preset), bundle_params(config, workers));
  write_bundle(bundle, args.out_dir);
  return {bundle.flows.size(), bundle.vertices.size()};
}

void run_disc(const PipelineConfig& config, const DiscArgs& args) {
  if (!config.grid.contains(args.cell)) throw ConfigError("cell " + std::to_string(args.cell) + " is outside the grid");
  if (!(args.radius_km > 0.0)) throw ConfigError("radius must be positive");
  const auto visits = load_visits(args.visits, config.grid);
  const auto disc =
      disc_snapshot(args.cell, visits, config.grid, {args.radius_km, args.scatter_angle, config.seed}, config.groups);
  const std::string bytes = disc_to_json(disc).dump() + "\n";
  if (args.out) {
    write_text(*args.out, bytes);
  } else {
    std::cout << bytes;
  }
}

void run_frames(const PipelineConfig& config, const FramesArgs& args) {
  if (args.steps < 1) throw ConfigError("--steps must be at least 1");
  if (args.sample < 1) throw ConfigError("--sample must be at least 1");
  const auto visits = load_visits(args.visits, config.grid);
  const auto agents = playback_init(visits, args.sample, config.seed);
  const auto events = export_frames(agents, args.steps, config.seed);
  std::ostringstream frames;
  write_frames(frames, events);
  write_text(args.out_frames, frames.str());
  if (args.out_agents) write_text(*args.out_agents, agents_to_json(agents).dump() + "\n");
}

int report_error(const std::exception& e) {
  if (const auto* parse = dynamic_cast<const ParseError*>(&e)) {
    std::cerr << "error: input has " << parse->issues().size() << " malformed line(s)\n";
    const std::size_t shown = std::min<std::size_t>(10, parse->issues().size());
    for (std::size_t i = 0; i < shown; ++i) {
      std::cerr << "  line " << parse->issues()[i].line << ": " << parse->issues()[i].message << "\n";
    }
    return kExitData;
  }
  std::cerr << "error: " << e.what() << "\n";
  if (dynamic_cast<const ConfigError*>(&e)) return kExitUsage;
  return kExitData;
}

}  // namespace wanderlust::cli
