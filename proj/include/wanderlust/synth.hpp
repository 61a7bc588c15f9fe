#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wanderlust/frequency.hpp"
#include "wanderlust/grid.hpp"
#include "wanderlust/records.hpp"
#include "wanderlust/rng.hpp"

namespace wanderlust {

struct TownCenter {
  CellId cell = 0;
  double peak_mu = 0.0;
  double radius_km = 1.0;

  friend bool operator==(const TownCenter&, const TownCenter&) = default;
};

struct WorldConfig {
  GridSpec grid;
  std::vector<TownCenter> towns;
};

/// Ground-truth attractiveness surface.
struct SyntheticWorld {
  GridSpec grid;
  Eigen::VectorXd mu_map;  // row-major, one entry per cell
  std::vector<TownCenter> towns;
  std::uint64_t seed = 0;
};

/// mu(cell) = sum over towns of peak * exp(-d^2 / (2 radius^2)), d in km
/// between cell centers. The surface is closed-form; the seed is recorded
/// with the world for provenance only.
SyntheticWorld build_world(const WorldConfig& config, std::uint64_t seed);

/// Visitor counts per frequency (index f - 1) for one (destination, origin)
/// pair at the given ring: independent Poisson(mu / (ring f)^2) draws for
/// f = 1..f_max, keyed by (seed, dest, origin).
std::array<std::int64_t, kMaxFrequency> sample_pair(double mu, int ring, int f_max, std::uint64_t seed, CellId dest,
                                                    CellId origin);

struct SampleOptions {
  int f_max = kMaxFrequency;
  int r_max_km = 20;
  unsigned workers = 1;
};

/// Draws visitors for every destination straight from the visitation law.
/// Records come out in (dest, origin, f) order with sequential user ids
/// "u1", "u2", ..., independent of the worker count.
std::vector<UserVisit> sample_visits(const SyntheticWorld& world, const SampleOptions& options, std::uint64_t seed);

struct PlaybackPlace {
  CellId cell = 0;
  int weight = 1;

  friend bool operator==(const PlaybackPlace&, const PlaybackPlace&) = default;
};

struct PlaybackAgent {
  std::uint32_t agent_id = 0;
  std::string user_id;
  CellId home_cell = 0;
  std::vector<PlaybackPlace> places;

  friend bool operator==(const PlaybackAgent&, const PlaybackAgent&) = default;
};

/// Samples `sample_size` distinct users uniformly without replacement. Agents
/// keep the users' first-appearance order and are numbered from 0; each
/// place is weighted by the observed monthly frequency.
std::vector<PlaybackAgent> playback_init(std::span<const UserVisit> visits, std::size_t sample_size,
                                         std::uint64_t seed);

/// Next trip of an agent: a place drawn with probability weight / total.
TripEvent playback_step(const PlaybackAgent& agent, std::uint32_t step, StreamRng& rng);

/// Same, drawing from the counter stream keyed by (seed, agent, step).
TripEvent playback_step(const PlaybackAgent& agent, std::uint32_t step, std::uint64_t seed);

}  // namespace wanderlust
