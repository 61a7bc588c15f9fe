#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "wanderlust/config.hpp"

namespace wanderlust::cli {

namespace fs = std::filesystem;

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitUsage = 2;

/// Flags shared by every verb; they override the config file.
struct GlobalOptions {
  std::optional<fs::path> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> preset;
  unsigned workers = 1;
};

PipelineConfig resolve_config(const GlobalOptions& global);

struct SynthArgs {
  fs::path towns;
  fs::path out_visits = "visits.csv";
  fs::path out_truth = "truth.json";
};

struct SynthSummary {
  std::size_t visits = 0;
};

SynthSummary run_synth(const PipelineConfig& config, unsigned workers, const SynthArgs& args);

struct FitArgs {
  std::optional<fs::path> visits;
  std::optional<fs::path> pings;
  bool clip = false;
  fs::path out_cells = "cells.json";
  fs::path out_flows = "flows.csv";
};

struct FitSummary {
  std::size_t visits = 0;
  std::size_t cells = 0;
  std::size_t flows = 0;
  std::size_t clipped = 0;
};

FitSummary run_fit(const PipelineConfig& config, unsigned workers, const FitArgs& args);

struct CompileArgs {
  fs::path cells = "cells.json";
  fs::path flows = "flows.csv";
  fs::path out_dir = "bundle";
};

struct CompileSummary {
  std::size_t flows = 0;
  std::size_t vertices = 0;
};

CompileSummary run_compile(const PipelineConfig& config, unsigned workers, const CompileArgs& args);

struct DiscArgs {
  fs::path visits;
  std::uint32_t cell = 0;
  double radius_km = 50.0;
  bool scatter_angle = false;
  std::optional<fs::path> out;  // stdout when absent
};

void run_disc(const PipelineConfig& config, const DiscArgs& args);

struct FramesArgs {
  fs::path visits;
  std::size_t sample = 10000;
  std::uint32_t steps = 30;
  fs::path out_frames = "frames.jsonl";
  std::optional<fs::path> out_agents;
};

void run_frames(const PipelineConfig& config, const FramesArgs& args);

/// Maps an exception escaping a command to an exit code and prints it.
int report_error(const std::exception& e);

}  // namespace wanderlust::cli
