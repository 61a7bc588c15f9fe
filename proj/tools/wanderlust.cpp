// Command-line driver: synth -> fit -> compile -> serve, plus disc and frames
// exports for the viewer.

#include <csignal>
#include <iostream>

#include <CLI11.hpp>

#include "wanderlust/commands.hpp"
#include "wanderlust/error.hpp"
#include "wanderlust/server.hpp"

namespace {

const wanderlust::BundleServer* g_server = nullptr;

void handle_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace wanderlust;
  namespace fs = std::filesystem;

  CLI::App app{"wanderlust: attractiveness mountains from mobility records"};
  app.require_subcommand(1);

  cli::GlobalOptions global;
  std::string config_path, preset;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "Pipeline config JSON")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "Random seed (overrides config)");
  auto* preset_opt = app.add_option("--preset", preset, "Layer preset (overrides config)");
  app.add_option("--workers", global.workers, "Worker threads")->check(CLI::Range(1u, 1024u));

  cli::SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Sample a synthetic visits file from a town configuration");
  synth_cmd->add_option("--towns", synth.towns, "Town configuration JSON")->required();
  synth_cmd->add_option("--out-visits", synth.out_visits, "Visits CSV to write");
  synth_cmd->add_option("--out-truth", synth.out_truth, "Ground-truth attractiveness JSON to write");

  cli::FitArgs fit;
  std::string fit_visits, fit_pings;
  auto* fit_cmd = app.add_subcommand("fit", "Fit per-cell attractiveness and build the flow table");
  auto* fit_visits_opt = fit_cmd->add_option("--visits", fit_visits, "Visits CSV (user_id,home_cell,dest_cell,f)");
  auto* fit_pings_opt = fit_cmd->add_option("--pings", fit_pings, "Pings CSV (user_id,day,x_m,y_m)");
  fit_visits_opt->excludes(fit_pings_opt);
  fit_cmd->add_flag("--clip", fit.clip, "Drop out-of-grid pings instead of failing");
  fit_cmd->add_option("--out-cells", fit.out_cells, "cells.json to write");
  fit_cmd->add_option("--out-flows", fit.out_flows, "flows.csv to write");

  cli::CompileArgs compile;
  auto* compile_cmd = app.add_subcommand("compile", "Compile cells and flows into a geometry bundle");
  compile_cmd->add_option("--cells", compile.cells, "cells.json");
  compile_cmd->add_option("--flows", compile.flows, "flows.csv");
  compile_cmd->add_option("--out", compile.out_dir, "Bundle directory");

  cli::DiscArgs disc;
  std::string disc_out;
  auto* disc_cmd = app.add_subcommand("disc", "Export a destination's visitor disc snapshot");
  disc_cmd->add_option("--visits", disc.visits, "Visits CSV")->required();
  disc_cmd->add_option("--cell", disc.cell, "Destination cell id")->required();
  disc_cmd->add_option("--radius", disc.radius_km, "Disc radius in km");
  disc_cmd->add_flag("--scatter-angle", disc.scatter_angle, "Use seeded random angles");
  auto* disc_out_opt = disc_cmd->add_option("--out", disc_out, "Output JSON (stdout when omitted)");

  cli::FramesArgs frames;
  std::string frames_agents;
  auto* frames_cmd = app.add_subcommand("frames", "Simulate sampled visitors and export the trip stream");
  frames_cmd->add_option("--visits", frames.visits, "Visits CSV")->required();
  frames_cmd->add_option("--sample", frames.sample, "Number of visitors to sample");
  frames_cmd->add_option("--steps", frames.steps, "Playback steps");
  frames_cmd->add_option("--out", frames.out_frames, "frames.jsonl to write");
  auto* frames_agents_opt = frames_cmd->add_option("--agents", frames_agents, "agents.json to write");

  ServerSources sources;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string serve_cells, serve_names, serve_frames, serve_visits;
  auto* serve_cmd = app.add_subcommand("serve", "Serve a bundle and its stats over HTTP");
  serve_cmd->add_option("--bundle", sources.bundle_dir, "Bundle directory")->required();
  serve_cmd->add_option("--port", port, "TCP port (0 = any free port)");
  serve_cmd->add_option("--host", host, "Bind address");
  auto* cells_opt = serve_cmd->add_option("--cells", serve_cells, "cells.json (default: <bundle>/cells.json)");
  auto* names_opt = serve_cmd->add_option("--names", serve_names, "Cell names CSV (cell_id,name)");
  auto* sframes_opt = serve_cmd->add_option("--frames", serve_frames, "frames.jsonl");
  auto* visits_opt = serve_cmd->add_option("--visits", serve_visits, "Visits CSV enabling /api/disc");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  try {
    if (!config_path.empty()) global.config = config_path;
    if (*seed_opt) global.seed = seed;
    if (*preset_opt) global.preset = preset;
    const PipelineConfig config = cli::resolve_config(global);

    if (*synth_cmd) {
      const auto summary = cli::run_synth(config, global.workers, synth);
      std::cerr << "synth: " << summary.visits << " visits\n";
    } else if (*fit_cmd) {
      if (*fit_visits_opt) fit.visits = fit_visits;
      if (*fit_pings_opt) fit.pings = fit_pings;
      const auto summary = cli::run_fit(config, global.workers, fit);
      std::cerr << "fit: " << summary.visits << " visits, " << summary.cells << " cells, " << summary.flows
                << " flows";
      if (summary.clipped) std::cerr << ", " << summary.clipped << " out-of-grid pings dropped";
      std::cerr << "\n";
    } else if (*compile_cmd) {
      const auto summary = cli::run_compile(config, global.workers, compile);
      std::cerr << "compile: " << summary.flows << " flows, " << summary.vertices << " vertices\n";
    } else if (*disc_cmd) {
      if (*disc_out_opt) disc.out = disc_out;
      cli::run_disc(config, disc);
    } else if (*frames_cmd) {
      if (*frames_agents_opt) frames.out_agents = frames_agents;
      cli::run_frames(config, frames);
    } else if (*serve_cmd) {
      if (*cells_opt) sources.cells = serve_cells;
      if (*names_opt) sources.names = serve_names;
      if (*sframes_opt) sources.frames = serve_frames;
      if (*visits_opt) sources.visits = serve_visits;
      const BundleServer server(sources);
      g_server = &server;
      std::signal(SIGINT, handle_signal);
      std::signal(SIGTERM, handle_signal);
      server.listen(host, port, [&](int bound) {
        std::cout << "serving " << sources.bundle_dir.string() << " on http://" << host << ":" << bound << "/"
                  << std::endl;
      });
      g_server = nullptr;
    }
  } catch (const std::exception& e) {
    return cli::report_error(e);
  }
  return cli::kExitOk;
}
