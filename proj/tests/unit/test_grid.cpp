#include <doctest.h>

#include <cmath>

#include "wanderlust/error.hpp"
#include "wanderlust/frequency.hpp"
#include "wanderlust/grid.hpp"

using namespace wanderlust;

namespace {

GridSpec grid(std::uint32_t cols = 10, std::uint32_t rows = 10) { return {0.0, 0.0, 1000.0, cols, rows}; }

}  // namespace

TEST_CASE("cell_of uses half-open cells") {
  const GridSpec g = grid();
  CHECK(cell_of({500.0, 500.0}, g) == g.cell_at(0, 0));
  CHECK(cell_of({1000.0, 0.0}, g) == g.cell_at(1, 0));
  CHECK(cell_of({999.999, 1000.0}, g) == g.cell_at(0, 1));
  CHECK_THROWS_AS(cell_of({-1.0, 0.0}, g), OutOfGrid);
  // The far edge belongs to a cell that does not exist.
  CHECK_THROWS_AS(cell_of({10000.0, 5.0}, g), OutOfGrid);
  CHECK_THROWS_AS(cell_of({NAN, 5.0}, g), OutOfGrid);
}

TEST_CASE("cell_of honors a shifted origin and cell size") {
  const GridSpec g{-5000.0, 2000.0, 500.0, 4, 3};
  CHECK(cell_of({-5000.0, 2000.0}, g) == 0);
  CHECK(cell_of({-4499.0, 2600.0}, g) == g.cell_at(1, 1));
  CHECK_THROWS_AS(cell_of({-3000.0, 2000.0}, g), OutOfGrid);
}

TEST_CASE("cell ids are row-major") {
  const GridSpec g = grid(7, 3);
  CHECK(g.cell_at(2, 1) == 9);
  CHECK(g.col_of(9) == 2);
  CHECK(g.row_of(9) == 1);
  CHECK(cell_center(9, g).isApprox(Eigen::Vector2d(2500.0, 1500.0)));
  CHECK_THROWS_AS(cell_center(21, g), InvalidCell);
}

TEST_CASE("cell_distance_km") {
  const GridSpec g = grid();
  CHECK(cell_distance_km(5, 5, g) == 0.0);
  CHECK(cell_distance_km(g.cell_at(3, 3), g.cell_at(4, 3), g) == doctest::Approx(1.0));
  CHECK(cell_distance_km(g.cell_at(3, 3), g.cell_at(4, 4), g) == doctest::Approx(1.4142135623730951).epsilon(1e-15));
  CHECK(cell_distance_km(g.cell_at(0, 0), g.cell_at(9, 7), g) == cell_distance_km(g.cell_at(9, 7), g.cell_at(0, 0), g));
  CHECK_THROWS_AS(cell_distance_km(0, 100, g), InvalidCell);
}

TEST_CASE("ring_of rounds half up and clamps to the first ring") {
  CHECK(ring_of(0.7) == 1);
  CHECK(ring_of(0.2) == 1);
  CHECK(ring_of(1.4142) == 1);
  CHECK(ring_of(2.5) == 3);
  CHECK(ring_of(2.4999) == 2);
  CHECK_THROWS_AS(ring_of(0.0), SelfVisit);
  CHECK_THROWS_AS(ring_of(-1.0), SelfVisit);
}

TEST_CASE("grid validation") {
  CHECK_NOTHROW(grid().validate());
  CHECK_THROWS_AS((GridSpec{0, 0, 0.0, 1, 1}.validate()), ConfigError);
  CHECK_THROWS_AS((GridSpec{0, 0, 1000.0, 0, 1}.validate()), ConfigError);
  CHECK_THROWS_AS((GridSpec{0, 0, -1.0, 1, 1}.validate()), ConfigError);
}

TEST_CASE("freq_group under the default table") {
  CHECK(freq_group(1) == 1);
  CHECK(freq_group(7) == 1);
  CHECK(freq_group(8) == 2);
  CHECK(freq_group(14) == 2);
  CHECK(freq_group(21) == 3);
  CHECK(freq_group(22) == 4);
  CHECK(freq_group(30) == 4);
  CHECK_THROWS_AS(freq_group(0), FrequencyOutOfRange);
  CHECK_THROWS_AS(freq_group(31), FrequencyOutOfRange);
}

TEST_CASE("freq_group is total on 1..30 with exactly one group each") {
  const FrequencyGroupTable table;
  for (int f = 1; f <= 30; ++f) {
    int hits = 0;
    for (const auto& range : table.ranges) hits += (f >= range.lo && f <= range.hi);
    CHECK(hits == 1);
    const int g = table.group_of(f);
    CHECK((f >= table.ranges[g - 1].lo && f <= table.ranges[g - 1].hi));
  }
}

TEST_CASE("frequency table validation pins the top group") {
  FrequencyGroupTable table;
  CHECK_NOTHROW(table.validate());
  table.ranges = {{{1, 3}, {4, 10}, {11, 21}, {22, 30}}};
  CHECK_NOTHROW(table.validate());
  CHECK(table.group_of(11) == 3);
  table.ranges = {{{1, 5}, {6, 12}, {13, 20}, {21, 30}}};
  CHECK_THROWS_AS(table.validate(), ConfigError);
  table.ranges = {{{1, 5}, {7, 12}, {13, 21}, {22, 30}}};
  CHECK_THROWS_AS(table.validate(), ConfigError);
}

TEST_CASE("colors round-trip through hex") {
  const FrequencyGroupTable table;
  CHECK(table.colors[0].to_hex() == "#00008B");
  CHECK(table.colors[1].to_hex() == "#ADD8E6");
  CHECK(table.colors[2].to_hex() == "#FF7F50");
  CHECK(table.colors[3].to_hex() == "#FF1493");
  CHECK(Rgba::from_hex("#FF149380") == Rgba{0xFF, 0x14, 0x93, 0x80});
  CHECK_THROWS_AS(Rgba::from_hex("FF1493"), ConfigError);
  CHECK_THROWS_AS(Rgba::from_hex("#GG1493"), ConfigError);
}
