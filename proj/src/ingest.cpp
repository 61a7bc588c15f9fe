#include "wanderlust/ingest.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>

#include "wanderlust/error.hpp"
#include "wanderlust/parallel.hpp"

namespace wanderlust {

namespace {

constexpr std::string_view kPingHeader = "user_id,day,x_m,y_m";
constexpr std::string_view kVisitHeader = "user_id,home_cell,dest_cell,f";

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  if (text.empty()) return false;
  const char* first = text.data();
  if constexpr (std::is_floating_point_v<T>) {
    if (*first == '+') ++first;
  }
  const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

/// Calls fn(line_number, line) for every data line, skipping an optional
/// header and blank trailing lines.
template <typename Fn>
void for_each_row(std::istream& in, std::string_view header, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (number == 1 && line == header) continue;
    if (line.empty()) continue;
    fn(number, std::string_view(line));
  }
}

constexpr std::size_t kMaxIssues = 1000;

void note(std::vector<ParseIssue>& issues, std::size_t line, std::string message) {
  if (issues.size() < kMaxIssues) issues.push_back({line, std::move(message)});
}

}  // namespace

std::vector<PingRecord> parse_pings(std::istream& in) {
  std::vector<PingRecord> records;
  std::vector<ParseIssue> issues;
  for_each_row(in, kPingHeader, [&](std::size_t number, std::string_view line) {
    const auto fields = split_commas(line);
    if (fields.size() != 4) {
      note(issues, number, "expected 4 columns, found " + std::to_string(fields.size()));
      return;
    }
    PingRecord rec;
    rec.line = number;
    rec.user_id = std::string(fields[0]);
    if (rec.user_id.empty()) return note(issues, number, "empty user_id");
    if (!parse_number(fields[1], rec.day)) return note(issues, number, "day is not an integer");
    if (rec.day < 1 || rec.day > 31) return note(issues, number, "day " + std::to_string(rec.day) + " outside 1..31");
    if (!parse_number(fields[2], rec.x_m) || !std::isfinite(rec.x_m)) return note(issues, number, "x_m is not a number");
    if (!parse_number(fields[3], rec.y_m) || !std::isfinite(rec.y_m)) return note(issues, number, "y_m is not a number");
    records.push_back(std::move(rec));
  });
  if (!issues.empty()) throw ParseError(std::move(issues));
  return records;
}

std::vector<UserVisit> parse_visits(std::istream& in, const GridSpec* grid) {
  std::vector<UserVisit> records;
  std::vector<ParseIssue> issues;
  for_each_row(in, kVisitHeader, [&](std::size_t number, std::string_view line) {
    const auto fields = split_commas(line);
    if (fields.size() != 4) {
      note(issues, number, "expected 4 columns, found " + std::to_string(fields.size()));
      return;
    }
    UserVisit rec;
    rec.user_id = std::string(fields[0]);
    if (rec.user_id.empty()) return note(issues, number, "empty user_id");
    if (!parse_number(fields[1], rec.home_cell)) return note(issues, number, "home_cell is not a cell id");
    if (!parse_number(fields[2], rec.dest_cell)) return note(issues, number, "dest_cell is not a cell id");
    if (!parse_number(fields[3], rec.f)) return note(issues, number, "f is not an integer");
    if (rec.f < 1 || rec.f > kMaxFrequency) return note(issues, number, "f " + std::to_string(rec.f) + " outside 1..30");
    if (rec.home_cell == rec.dest_cell) return note(issues, number, "dest_cell equals home_cell");
    if (grid && (!grid->contains(rec.home_cell) || !grid->contains(rec.dest_cell))) {
      return note(issues, number, "cell id outside the grid");
    }
    records.push_back(std::move(rec));
  });
  if (!issues.empty()) throw ParseError(std::move(issues));
  return records;
}

AggregateResult aggregate_visits(std::span<const PingRecord> pings, const GridSpec& grid,
                                 const AggregateOptions& options) {
  // Bin first so out-of-grid errors are reported in file order.
  std::vector<CellId> cells(pings.size());
  std::vector<bool> keep(pings.size(), true);
  std::vector<ParseIssue> issues;
  std::size_t clipped = 0;
  for (std::size_t i = 0; i < pings.size(); ++i) {
    try {
      cells[i] = cell_of({pings[i].x_m, pings[i].y_m}, grid);
    } catch (const OutOfGrid& e) {
      keep[i] = false;
      if (options.clip) {
        ++clipped;
      } else {
        note(issues, pings[i].line ? pings[i].line : i + 1, e.what());
      }
    }
  }
  if (!issues.empty()) {
    throw OutOfGrid("line " + std::to_string(issues.front().line) + ": " + issues.front().message);
  }

  // Shard users by hash; each shard builds its users' day masks.
  const unsigned shards = std::max(1u, options.workers);
  std::vector<std::vector<UserVisit>> parts(shards);
  const std::hash<std::string> hasher;
  parallel_chunks(shards, shards, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t shard = begin; shard < end; ++shard) {
      std::unordered_map<std::string, std::map<CellId, std::uint32_t>> days;
      for (std::size_t i = 0; i < pings.size(); ++i) {
        if (!keep[i] || hasher(pings[i].user_id) % shards != shard) continue;
        days[pings[i].user_id][cells[i]] |= std::uint32_t{1} << (pings[i].day - 1);
      }
      auto& out = parts[shard];
      for (const auto& [user, per_cell] : days) {
        CellId home = 0;
        int home_f = 0;
        for (const auto& [cell, mask] : per_cell) {
          const int f = std::popcount(mask);
          if (f > home_f) {
            home = cell;
            home_f = f;
          }
        }
        for (const auto& [cell, mask] : per_cell) {
          if (cell == home) continue;
          out.push_back({user, home, cell, std::min(kMaxFrequency, std::popcount(mask))});
        }
      }
    }
  });

  AggregateResult result;
  result.clipped = clipped;
  for (auto& part : parts) {
    result.visits.insert(result.visits.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::sort(result.visits.begin(), result.visits.end(), [](const UserVisit& a, const UserVisit& b) {
    return std::tie(a.user_id, a.dest_cell) < std::tie(b.user_id, b.dest_cell);
  });
  return result;
}

Eigen::VectorXd ring_cell_counts(CellId dest, const GridSpec& grid, int rings) {
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(rings);
  if (rings <= 0) return counts;
  const double cell_km = grid.cell_size_m / 1000.0;
  const int reach = static_cast<int>(std::ceil((rings + 0.5) / cell_km));
  const int col = int(grid.col_of(dest));
  const int row = int(grid.row_of(dest));
  for (int r = std::max(0, row - reach); r <= std::min(int(grid.n_rows) - 1, row + reach); ++r) {
    for (int c = std::max(0, col - reach); c <= std::min(int(grid.n_cols) - 1, col + reach); ++c) {
      if (r == row && c == col) continue;
      const int ring = ring_of(std::hypot((c - col) * cell_km, (r - row) * cell_km));
      if (ring <= rings) counts(ring - 1) += 1.0;
    }
  }
  return counts;
}

std::map<CellId, Spectrum> build_spectra(std::span<const UserVisit> visits, const GridSpec& grid, int ring_window) {
  std::vector<int> rings(visits.size());
  int max_ring = 0;
  for (std::size_t i = 0; i < visits.size(); ++i) {
    rings[i] = ring_of(cell_distance_km(visits[i].home_cell, visits[i].dest_cell, grid));
    max_ring = std::max(max_ring, rings[i]);
  }
  const int window = ring_window > 0 ? ring_window : max_ring;

  std::map<CellId, Spectrum> spectra;
  for (std::size_t i = 0; i < visits.size(); ++i) {
    const auto& v = visits[i];
    if (v.f < 1 || v.f > kMaxFrequency) throw FrequencyOutOfRange("visit frequency outside 1..30");
    if (rings[i] > window) continue;
    auto it = spectra.find(v.dest_cell);
    if (it == spectra.end()) {
      it = spectra.emplace(v.dest_cell, Spectrum(v.dest_cell, window)).first;
      it->second.ring_cells = ring_cell_counts(v.dest_cell, grid, window);
    }
    it->second.at(rings[i], v.f) += 1;
  }
  return spectra;
}

FlowTable::FlowTable(std::vector<Flow> flows) : flows_(std::move(flows)) {
  std::sort(flows_.begin(), flows_.end(), [](const Flow& a, const Flow& b) {
    return std::tie(a.dest_cell, a.origin_cell) < std::tie(b.dest_cell, b.origin_cell);
  });
  for (std::size_t i = 0; i < flows_.size(); ++i) {
    const Flow& flow = flows_[i];
    if (flow.origin_cell == flow.dest_cell) throw std::invalid_argument("flow origin equals destination");
    if (flow.total_visitors() == 0) throw std::invalid_argument("flow has no visitors");
    if (i > 0 && flows_[i - 1].dest_cell == flow.dest_cell && flows_[i - 1].origin_cell == flow.origin_cell) {
      throw std::invalid_argument("duplicate flow " + std::to_string(flow.origin_cell) + " -> " +
                                  std::to_string(flow.dest_cell));
    }
    auto [it, inserted] = by_dest_.try_emplace(flow.dest_cell, i, i + 1);
    if (!inserted) it->second.second = i + 1;
  }
}

std::span<const Flow> FlowTable::into(CellId dest) const {
  const auto it = by_dest_.find(dest);
  if (it == by_dest_.end()) return {};
  return std::span<const Flow>(flows_).subspan(it->second.first, it->second.second - it->second.first);
}

std::vector<CellId> FlowTable::destinations() const {
  std::vector<CellId> out;
  out.reserve(by_dest_.size());
  for (const auto& [dest, range] : by_dest_) out.push_back(dest);
  return out;
}

FlowTable build_flows(std::span<const UserVisit> visits, const FrequencyGroupTable& table) {
  std::map<std::pair<CellId, CellId>, Flow> pairs;
  for (const auto& v : visits) {
    auto [it, inserted] = pairs.try_emplace({v.dest_cell, v.home_cell});
    if (inserted) {
      it->second.origin_cell = v.home_cell;
      it->second.dest_cell = v.dest_cell;
    }
    ++it->second.group_counts[table.group_of(v.f) - 1];
  }
  std::vector<Flow> flows;
  flows.reserve(pairs.size());
  for (auto& [key, flow] : pairs) flows.push_back(flow);
  return FlowTable(std::move(flows));
}

}  // namespace wanderlust
