#include "wanderlust/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

#include "wanderlust/error.hpp"
#include "wanderlust/parallel.hpp"

namespace wanderlust {

SyntheticWorld build_world(const WorldConfig& config, std::uint64_t seed) {
  config.grid.validate();
  if (config.towns.empty()) throw ConfigError("world needs at least one town center");
  for (const auto& town : config.towns) {
    if (!config.grid.contains(town.cell)) {
      throw ConfigError("town center cell " + std::to_string(town.cell) + " is outside the grid");
    }
    if (!(town.peak_mu >= 0.0) || !std::isfinite(town.peak_mu)) {
      throw ConfigError("town peak_mu must be finite and non-negative");
    }
    if (!(town.radius_km > 0.0) || !std::isfinite(town.radius_km)) {
      throw ConfigError("town radius_km must be positive");
    }
  }

  const GridSpec& grid = config.grid;
  const Eigen::Index n = Eigen::Index(grid.cell_count());
  const double cell_km = grid.cell_size_m / 1000.0;
  Eigen::ArrayXd cols(n), rows(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cols(i) = grid.col_of(CellId(i));
    rows(i) = grid.row_of(CellId(i));
  }

  SyntheticWorld world{grid, Eigen::VectorXd::Zero(n), config.towns, seed};
  for (const auto& town : config.towns) {
    const Eigen::ArrayXd dx = (cols - grid.col_of(town.cell)) * cell_km;
    const Eigen::ArrayXd dy = (rows - grid.row_of(town.cell)) * cell_km;
    const Eigen::ArrayXd d2 = dx.square() + dy.square();
    world.mu_map.array() += town.peak_mu * (-d2 / (2.0 * town.radius_km * town.radius_km)).exp();
  }
  return world;
}

std::array<std::int64_t, kMaxFrequency> sample_pair(double mu, int ring, int f_max, std::uint64_t seed, CellId dest,
                                                    CellId origin) {
  std::array<std::int64_t, kMaxFrequency> counts{};
  if (!(mu > 0.0)) return counts;

  // Poisson splitting: one total draw, then a binomial chain over f. The
  // per-f marginals are exactly Poisson(mu / (ring f)^2) and independent.
  std::array<double, kMaxFrequency> weight{};
  double weight_sum = 0.0;
  for (int f = 1; f <= f_max; ++f) {
    weight[f - 1] = 1.0 / (double(f) * f);
    weight_sum += weight[f - 1];
  }
  StreamRng rng(seed, stream::kSampleVisits, dest, origin);
  const double lambda = mu / (double(ring) * ring) * weight_sum;
  std::int64_t remaining = std::poisson_distribution<std::int64_t>(lambda)(rng);
  double remaining_weight = weight_sum;
  for (int f = 1; f <= f_max && remaining > 0; ++f) {
    if (f == f_max) {
      counts[f - 1] = remaining;
      break;
    }
    const double p = std::min(1.0, weight[f - 1] / remaining_weight);
    const std::int64_t k = std::binomial_distribution<std::int64_t>(remaining, p)(rng);
    counts[f - 1] = k;
    remaining -= k;
    remaining_weight -= weight[f - 1];
  }
  return counts;
}

namespace {

struct RingOffset {
  int dcol;
  int drow;
  int ring;
};

// Neighbor offsets within r_max, in ascending cell-id order for a fixed dest.
std::vector<RingOffset> ring_offsets(const GridSpec& grid, int r_max_km) {
  const double cell_km = grid.cell_size_m / 1000.0;
  const int reach = static_cast<int>(std::ceil((r_max_km + 0.5) / cell_km));
  std::vector<RingOffset> offsets;
  for (int dr = -reach; dr <= reach; ++dr) {
    for (int dc = -reach; dc <= reach; ++dc) {
      if (dr == 0 && dc == 0) continue;
      const int ring = ring_of(std::hypot(dc * cell_km, dr * cell_km));
      if (ring <= r_max_km) offsets.push_back({dc, dr, ring});
    }
  }
  return offsets;
}

struct RawVisit {
  CellId home;
  CellId dest;
  int f;
  std::int64_t count;
};

}  // namespace

std::vector<UserVisit> sample_visits(const SyntheticWorld& world, const SampleOptions& options, std::uint64_t seed) {
  if (options.r_max_km < 1) throw ConfigError("r_max_km must be at least 1");
  if (options.f_max < 1 || options.f_max > kMaxFrequency) throw ConfigError("f_max must lie in 1..30");
  const GridSpec& grid = world.grid;
  if (world.mu_map.size() != Eigen::Index(grid.cell_count())) {
    throw ConfigError("mu map size does not match the grid");
  }
  const auto offsets = ring_offsets(grid, options.r_max_km);
  const std::size_t n_cells = grid.cell_count();

  std::vector<std::vector<RawVisit>> parts(std::max(1u, options.workers));
  const std::size_t chunks = parallel_chunks(n_cells, options.workers, [&](std::size_t c, std::size_t begin,
                                                                           std::size_t end) {
    auto& out = parts[c];
    for (std::size_t d = begin; d < end; ++d) {
      const double mu = world.mu_map(Eigen::Index(d));
      if (!(mu > 0.0)) continue;
      const CellId dest = CellId(d);
      const int col = int(grid.col_of(dest));
      const int row = int(grid.row_of(dest));
      for (const auto& off : offsets) {
        const int oc = col + off.dcol;
        const int orow = row + off.drow;
        if (oc < 0 || orow < 0 || oc >= int(grid.n_cols) || orow >= int(grid.n_rows)) continue;
        const CellId origin = grid.cell_at(std::uint32_t(oc), std::uint32_t(orow));
        const auto counts = sample_pair(mu, off.ring, options.f_max, seed, dest, origin);
        for (int f = 1; f <= options.f_max; ++f) {
          if (counts[f - 1] > 0) out.push_back({origin, dest, f, counts[f - 1]});
        }
      }
    }
  });
  parts.resize(chunks);

  std::size_t total = 0;
  for (const auto& part : parts) {
    for (const auto& raw : part) total += std::size_t(raw.count);
  }
  std::vector<UserVisit> visits;
  visits.reserve(total);
  std::uint64_t next_user = 1;
  for (const auto& part : parts) {
    for (const auto& raw : part) {
      for (std::int64_t k = 0; k < raw.count; ++k) {
        visits.push_back({"u" + std::to_string(next_user++), raw.home, raw.dest, raw.f});
      }
    }
  }
  return visits;
}

std::vector<PlaybackAgent> playback_init(std::span<const UserVisit> visits, std::size_t sample_size,
                                         std::uint64_t seed) {
  std::vector<PlaybackAgent> users;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& v : visits) {
    auto [it, inserted] = index.try_emplace(v.user_id, users.size());
    if (inserted) users.push_back({0, v.user_id, v.home_cell, {}});
    auto& places = users[it->second].places;
    auto place = std::find_if(places.begin(), places.end(), [&](const auto& p) { return p.cell == v.dest_cell; });
    if (place == places.end()) {
      places.push_back({v.dest_cell, v.f});
    } else {
      place->weight += v.f;
    }
  }
  if (sample_size > users.size()) {
    throw SampleTooLarge("sample of " + std::to_string(sample_size) + " exceeds the " +
                         std::to_string(users.size()) + " available users");
  }

  std::vector<std::size_t> order(users.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  StreamRng rng(seed, stream::kPlaybackInit);
  for (std::size_t i = 0; i < sample_size; ++i) {
    const std::size_t j = i + std::size_t(rng.below(order.size() - i));
    std::swap(order[i], order[j]);
  }
  order.resize(sample_size);
  std::sort(order.begin(), order.end());

  std::vector<PlaybackAgent> agents;
  agents.reserve(sample_size);
  for (std::size_t i = 0; i < order.size(); ++i) {
    agents.push_back(std::move(users[order[i]]));
    agents.back().agent_id = std::uint32_t(i);
  }
  return agents;
}

TripEvent playback_step(const PlaybackAgent& agent, std::uint32_t step, StreamRng& rng) {
  if (agent.places.empty()) throw std::invalid_argument("playback agent has no places");
  std::uint64_t total = 0;
  for (const auto& place : agent.places) total += std::uint64_t(place.weight);
  std::uint64_t pick = rng.below(total);
  for (const auto& place : agent.places) {
    if (pick < std::uint64_t(place.weight)) return {step, agent.agent_id, agent.home_cell, place.cell};
    pick -= std::uint64_t(place.weight);
  }
  return {step, agent.agent_id, agent.home_cell, agent.places.back().cell};
}

TripEvent playback_step(const PlaybackAgent& agent, std::uint32_t step, std::uint64_t seed) {
  StreamRng rng(seed, stream::kPlaybackStep, agent.agent_id, step);
  return playback_step(agent, step, rng);
}

}  // namespace wanderlust
