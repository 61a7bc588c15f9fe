#include "wanderlust/server.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <httplib.h>

#include "wanderlust/config.hpp"
#include "wanderlust/error.hpp"
#include "wanderlust/formats.hpp"
#include "wanderlust/ingest.hpp"

namespace wanderlust {

namespace fs = std::filesystem;

struct BundleServer::Listener {
  httplib::Server http;
};

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<fs::path> with_default(const std::optional<fs::path>& given, const fs::path& fallback) {
  if (given) return given;
  if (fs::exists(fallback)) return fallback;
  return std::nullopt;
}

std::optional<CellId> parse_cell(std::string_view text) {
  CellId id = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), id);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return id;
}

HttpResponse not_found(const std::string& what) {
  return {404, "application/json", Json{{"error", what}}.dump(), {}};
}

}  // namespace

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

BundleServer::BundleServer(const ServerSources& sources) : listener_(std::make_shared<Listener>()) {
  const GeometryBundle bundle = read_bundle(sources.bundle_dir);
  manifest_bytes_ = slurp(sources.bundle_dir / kManifestFile);
  try {
    grid_ = grid_from_json(bundle.manifest.at("grid"));
    for (const Json& c : bundle.manifest.at("colors")) {
      const int g = c.at("group").get<int>();
      if (g < 1 || g > kGroupCount) throw BundleError("color table group out of range");
      groups_.ranges[g - 1] = {c.at("lo").get<int>(), c.at("hi").get<int>()};
      groups_.colors[g - 1] = Rgba::from_hex(c.at("hex").get<std::string>());
    }
    groups_.validate();
    for (const char* key : {"vertices", "flows"}) {
      const auto file = bundle.manifest.at("buffers").at(key).at("file").get<std::string>();
      static_files_["/" + file] = slurp(sources.bundle_dir / file);
    }
  } catch (const Json::exception& e) {
    throw BundleError(std::string("malformed manifest: ") + e.what());
  } catch (const ConfigError& e) {
    throw BundleError(std::string("malformed manifest: ") + e.what());
  }

  if (const auto path = with_default(sources.cells, sources.bundle_dir / "cells.json")) {
    cells_bytes_ = slurp(*path);
    try {
      cells_ = cells_from_json(Json::parse(cells_bytes_));
    } catch (const Json::parse_error& e) {
      throw ParseError({{0, path->string() + ": " + e.what()}});
    }
  } else {
    cells_bytes_ = "[]\n";
  }
  if (sources.names) {
    std::ifstream in(*sources.names);
    if (!in) throw IoError("cannot open " + sources.names->string());
    names_ = parse_names(in);
  }
  if (const auto path = with_default(sources.frames, sources.bundle_dir / "frames.jsonl")) frames_bytes_ = slurp(*path);
  if (const auto path = with_default(sources.agents, sources.bundle_dir / "agents.json")) agents_bytes_ = slurp(*path);
  if (sources.visits) {
    std::ifstream in(*sources.visits);
    if (!in) throw IoError("cannot open " + sources.visits->string());
    visits_ = parse_visits(in, &grid_);
  }
}

HttpResponse BundleServer::respond(std::string body, std::string content_type, const std::string& if_none_match) const {
  const std::string etag = "\"" + content_hash(body) + "\"";
  HttpResponse response{200, std::move(content_type), std::move(body), {}};
  response.headers["ETag"] = etag;
  response.headers["Cache-Control"] = "no-cache";
  if (!if_none_match.empty() && if_none_match == etag) {
    response.status = 304;
    response.body.clear();
  }
  return response;
}

HttpResponse BundleServer::handle(const std::string& path, const std::map<std::string, std::string>& query,
                                  const std::string& if_none_match) const {
  if (path == "/api/manifest") return respond(manifest_bytes_, "application/json", if_none_match);
  if (path == "/api/cells") return respond(cells_bytes_, "application/json", if_none_match);
  if (path == "/api/frames") {
    if (!frames_bytes_) return not_found("no frames loaded");
    return respond(*frames_bytes_, "application/x-ndjson", if_none_match);
  }
  if (path == "/api/agents") {
    if (!agents_bytes_) return not_found("no agents loaded");
    return respond(*agents_bytes_, "application/json", if_none_match);
  }

  constexpr std::string_view kCell = "/api/cell/";
  if (path.starts_with(kCell)) {
    const auto id = parse_cell(std::string_view(path).substr(kCell.size()));
    const auto it = id ? cells_.find(*id) : cells_.end();
    if (it == cells_.end()) return not_found("unknown cell");
    const auto name = names_.find(it->first);
    const auto panel = cell_panel_json(it->second, name == names_.end() ? std::nullopt
                                                                        : std::optional<std::string>(name->second));
    return respond(panel.dump(), "application/json", if_none_match);
  }

  constexpr std::string_view kDisc = "/api/disc/";
  if (path.starts_with(kDisc)) {
    if (!visits_) return not_found("no visits loaded");
    const auto id = parse_cell(std::string_view(path).substr(kDisc.size()));
    if (!id || !grid_.contains(*id)) return not_found("unknown cell");
    double radius = 50.0;
    if (const auto r = query.find("radius"); r != query.end()) {
      const auto [ptr, ec] = std::from_chars(r->second.data(), r->second.data() + r->second.size(), radius);
      if (ec != std::errc() || ptr != r->second.data() + r->second.size() || !(radius > 0.0)) {
        return {400, "application/json", Json{{"error", "radius must be a positive number"}}.dump(), {}};
      }
    }
    const auto disc = disc_snapshot(*id, *visits_, grid_, {radius, false, 0}, groups_);
    return respond(disc_to_json(disc).dump(), "application/json", if_none_match);
  }

  if (const auto it = static_files_.find(path); it != static_files_.end()) {
    return respond(it->second, "application/octet-stream", if_none_match);
  }
  return not_found("no such resource");
}

void BundleServer::listen(const std::string& host, int port, const std::function<void(int)>& on_bound) const {
  auto& http = listener_->http;
  http.Get(".*", [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const HttpResponse out = handle(req.path, query, req.get_header_value("If-None-Match"));
    res.status = out.status;
    for (const auto& [k, v] : out.headers) res.set_header(k, v);
    if (out.status != 304) res.set_content(out.body, out.content_type);
  });
  int bound = port;
  if (port == 0) {
    bound = http.bind_to_any_port(host);
  } else if (!http.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound < 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  if (on_bound) on_bound(bound);
  http.listen_after_bind();
}

void BundleServer::stop() const { listener_->http.stop(); }

}  // namespace wanderlust
