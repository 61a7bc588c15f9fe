#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string_view>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wanderlust/bundle.hpp"
#include "wanderlust/layers.hpp"
#include "wanderlust/records.hpp"

namespace wanderlust {

struct ServerSources {
  std::filesystem::path bundle_dir;
  /// Default to cells.json / frames.jsonl / agents.json inside the bundle
  /// directory when present.
  std::optional<std::filesystem::path> cells;
  std::optional<std::filesystem::path> names;
  std::optional<std::filesystem::path> frames;
  std::optional<std::filesystem::path> agents;
  /// Enables /api/disc/{id}.
  std::optional<std::filesystem::path> visits;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::map<std::string, std::string> headers;
};

/// Read-only view over a compiled bundle and its side artifacts. Everything
/// is loaded and validated up front and never mutated afterwards, so
/// concurrent requests need no locking.
///
///   GET /api/manifest           manifest.json bytes as stored
///   GET /api/cells              cells.json bytes as stored
///   GET /api/cell/{id}          panel fields plus formatted panel text
///   GET /api/frames             frames stream (JSON lines)
///   GET /api/agents             playback agents
///   GET /api/disc/{id}?radius=R disc snapshot (needs visits)
///   GET /{buffer file}          binary buffers named in the manifest
///
/// Responses carry a content-hash ETag and honor If-None-Match.
class BundleServer {
 public:
  /// Throws BundleError (or IoError/ParseError) when the bundle is unusable.
  explicit BundleServer(const ServerSources& sources);

  HttpResponse handle(const std::string& path, const std::map<std::string, std::string>& query = {},
                      const std::string& if_none_match = {}) const;

  /// Blocks serving on host:port. port 0 picks a free port; `on_bound`
  /// receives the actual port before the loop starts.
  void listen(const std::string& host, int port, const std::function<void(int)>& on_bound = {}) const;

  /// Stops a running listen() from another thread.
  void stop() const;

  std::size_t cell_count() const { return cells_.size(); }

 private:
  HttpResponse respond(std::string body, std::string content_type, const std::string& if_none_match) const;

  std::map<std::string, std::string> static_files_;  // url path -> bytes
  std::string manifest_bytes_;
  std::string cells_bytes_;
  std::optional<std::string> frames_bytes_;
  std::optional<std::string> agents_bytes_;
  CellStatsMap cells_;
  std::map<CellId, std::string> names_;
  std::optional<std::vector<UserVisit>> visits_;
  GridSpec grid_;
  FrequencyGroupTable groups_;
  struct Listener;
  std::shared_ptr<Listener> listener_;
};

/// 64-bit FNV-1a of the bytes as 16 hex digits.
std::string content_hash(std::string_view bytes);

}  // namespace wanderlust
