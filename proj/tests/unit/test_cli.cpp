#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wanderlust/bundle.hpp"
#include "wanderlust/formats.hpp"

using namespace wanderlust;
namespace fs = std::filesystem;

namespace {

const std::string kTool = WANDERLUST_TOOL;

int run(const std::string& args) {
  const int status = std::system((kTool + " " + args + " 2>/dev/null >/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Workspace {
  fs::path dir;
  std::string cfg;

  explicit Workspace(const std::string& name) : dir(fs::temp_directory_path() / ("wanderlust_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "config.json") << R"({"grid": {"n_cols": 40, "n_rows": 40}, "preset": "intermediate50"})";
    std::ofstream(dir / "towns.json")
        << R"({"towns": [{"col": 12, "row": 14, "peak_mu": 400, "radius_km": 2},
                         {"col": 28, "row": 25, "peak_mu": 80, "radius_km": 1.5}], "r_max_km": 8})";
    cfg = "--config " + (dir / "config.json").string();
  }
  ~Workspace() { fs::remove_all(dir); }

  std::string p(const std::string& name) const { return (dir / name).string(); }

  int pipeline(const std::string& tag, int workers) const {
    const std::string w = " --workers " + std::to_string(workers) + " ";
    if (int rc = run(cfg + w + "synth --towns " + p("towns.json") + " --out-visits " + p(tag + "visits.csv") +
                     " --out-truth " + p(tag + "truth.json")))
      return rc;
    if (int rc = run(cfg + w + "fit --visits " + p(tag + "visits.csv") + " --out-cells " + p(tag + "cells.json") +
                     " --out-flows " + p(tag + "flows.csv")))
      return rc;
    return run(cfg + w + "compile --cells " + p(tag + "cells.json") + " --flows " + p(tag + "flows.csv") +
               " --out " + p(tag + "bundle"));
  }
};

}  // namespace

TEST_CASE("pipeline is byte-identical across runs and worker counts") {
  const Workspace ws("pipeline");
  REQUIRE(ws.pipeline("a_", 1) == 0);
  REQUIRE(ws.pipeline("b_", 1) == 0);
  REQUIRE(ws.pipeline("c_", 8) == 0);
  for (const char* file : {"visits.csv", "truth.json", "cells.json", "flows.csv", "bundle/manifest.json",
                           "bundle/vertices.bin", "bundle/flows.bin"}) {
    CAPTURE(file);
    const auto a = slurp(ws.dir / ("a_" + std::string(file)));
    CHECK_FALSE(a.empty());
    CHECK(a == slurp(ws.dir / ("b_" + std::string(file))));
    CHECK(a == slurp(ws.dir / ("c_" + std::string(file))));
  }
  const auto bundle = read_bundle(ws.dir / "a_bundle");
  CHECK(fs::file_size(ws.dir / "a_bundle/vertices.bin") == 24 * bundle.vertices.size());
  CHECK(fs::file_size(ws.dir / "a_bundle/flows.bin") == 20 * bundle.flows.size());
  CHECK_FALSE(bundle.flows.empty());
}

TEST_CASE("seed changes the sample") {
  const Workspace ws("seed");
  REQUIRE(run(ws.cfg + " synth --towns " + ws.p("towns.json") + " --out-visits " + ws.p("a.csv") +
              " --out-truth " + ws.p("a.json")) == 0);
  REQUIRE(run(ws.cfg + " --seed 7 synth --towns " + ws.p("towns.json") + " --out-visits " + ws.p("b.csv") +
              " --out-truth " + ws.p("b.json")) == 0);
  CHECK(slurp(ws.dir / "a.csv") != slurp(ws.dir / "b.csv"));
}

TEST_CASE("disc and frames exports") {
  const Workspace ws("exports");
  REQUIRE(ws.pipeline("", 1) == 0);
  const std::string dest = std::to_string(12 + 14 * 40);
  REQUIRE(run(ws.cfg + " disc --visits " + ws.p("visits.csv") + " --cell " + dest + " --radius 5 --out " +
              ws.p("disc.json")) == 0);
  const auto disc = Json::parse(slurp(ws.dir / "disc.json"));
  CHECK(disc["dest_cell"] == std::stoi(dest));
  CHECK_FALSE(disc["dots"].empty());

  REQUIRE(run(ws.cfg + " frames --visits " + ws.p("visits.csv") + " --sample 20 --steps 3 --out " +
              ws.p("frames.jsonl") + " --agents " + ws.p("agents.json")) == 0);
  std::ifstream in(ws.dir / "frames.jsonl");
  CHECK(parse_frames(in).size() == 60);
  CHECK(Json::parse(slurp(ws.dir / "agents.json")).size() == 20);
  CHECK(run(ws.cfg + " frames --visits " + ws.p("visits.csv") + " --sample 100000000") == 1);
}

TEST_CASE("exit codes") {
  const Workspace ws("exit");
  CHECK(run("") == 2);
  CHECK(run("bogus") == 2);
  CHECK(run("fit") == 2);
  CHECK(run("--preset nope fit --visits x.csv") == 2);
  CHECK(run("--config " + ws.p("missing.json") + " fit --visits x.csv") == 2);
  std::ofstream(ws.dir / "unknown.json") << R"({"colour": 1})";
  CHECK(run("--config " + ws.p("unknown.json") + " fit --visits x.csv") == 2);
  CHECK(run(ws.cfg + " fit --visits " + ws.p("x.csv") + " --pings " + ws.p("y.csv")) == 2);

  std::ofstream(ws.dir / "bad.csv") << "user_id,home_cell,dest_cell,f\nu1,1,2,40\nu2,3,3,1\n";
  CHECK(run(ws.cfg + " fit --visits " + ws.p("bad.csv") + " --out-cells " + ws.p("c.json") + " --out-flows " +
            ws.p("f.csv")) == 1);
  std::ofstream(ws.dir / "pings.csv") << "user_id,day,x_m,y_m\nu1,1,500,500\nu1,2,-900,500\n";
  CHECK(run(ws.cfg + " fit --pings " + ws.p("pings.csv") + " --out-cells " + ws.p("c.json") + " --out-flows " +
            ws.p("f.csv")) == 1);
  CHECK(run(ws.cfg + " fit --clip --pings " + ws.p("pings.csv") + " --out-cells " + ws.p("c.json") +
            " --out-flows " + ws.p("f.csv")) == 0);
  CHECK(run(ws.cfg + " compile --cells " + ws.p("none.json") + " --flows " + ws.p("none.csv")) == 1);
  CHECK(run("serve --bundle " + ws.p("no_bundle")) == 1);
}
