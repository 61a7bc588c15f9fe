#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace wanderlust {

using CellId = std::uint32_t;

/// Regular square partition of a projected plane. Cells are half-open
/// [x0, x0 + s) x [y0, y0 + s) and numbered row-major from the origin corner.
struct GridSpec {
  double origin_x_m = 0.0;
  double origin_y_m = 0.0;
  double cell_size_m = 1000.0;
  std::uint32_t n_cols = 1;
  std::uint32_t n_rows = 1;

  /// Throws ConfigError when the grid is degenerate.
  void validate() const;

  std::uint64_t cell_count() const { return std::uint64_t{n_cols} * n_rows; }
  bool contains(CellId id) const { return id < cell_count(); }

  CellId cell_at(std::uint32_t col, std::uint32_t row) const { return row * n_cols + col; }
  std::uint32_t col_of(CellId id) const { return id % n_cols; }
  std::uint32_t row_of(CellId id) const { return id / n_cols; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Cell containing a planar point. Throws OutOfGrid outside the bounding box.
CellId cell_of(const Eigen::Vector2d& point, const GridSpec& grid);

/// Cell center in planar meters. Throws InvalidCell for ids outside the grid.
Eigen::Vector2d cell_center(CellId id, const GridSpec& grid);

/// Euclidean distance between two cell centers in kilometers.
double cell_distance_km(CellId a, CellId b, const GridSpec& grid);

/// 1 km distance ring: max(1, round-half-up(d)). Throws SelfVisit for d <= 0.
int ring_of(double dist_km);

}  // namespace wanderlust
