#include "wanderlust/grid.hpp"

#include <cmath>
#include <string>

#include "wanderlust/error.hpp"

namespace wanderlust {

namespace {

std::string describe(const Eigen::Vector2d& p) {
  return "(" + std::to_string(p.x()) + ", " + std::to_string(p.y()) + ")";
}

}  // namespace

ParseError::ParseError(std::vector<ParseIssue> issues)
    : Error(issues.empty() ? std::string("parse error")
                           : "line " + std::to_string(issues.front().line) + ": " + issues.front().message),
      issues_(std::move(issues)) {}

void GridSpec::validate() const {
  if (!(cell_size_m > 0.0) || !std::isfinite(cell_size_m)) {
    throw ConfigError("grid cell_size_m must be positive");
  }
  if (n_cols == 0 || n_rows == 0) {
    throw ConfigError("grid must have at least one row and one column");
  }
  if (!std::isfinite(origin_x_m) || !std::isfinite(origin_y_m)) {
    throw ConfigError("grid origin must be finite");
  }
  if (cell_count() > std::uint64_t{UINT32_MAX}) {
    throw ConfigError("grid has more cells than a 32-bit cell id can address");
  }
}

CellId cell_of(const Eigen::Vector2d& point, const GridSpec& grid) {
  const double cx = std::floor((point.x() - grid.origin_x_m) / grid.cell_size_m);
  const double cy = std::floor((point.y() - grid.origin_y_m) / grid.cell_size_m);
  if (!(cx >= 0.0 && cy >= 0.0 && cx < grid.n_cols && cy < grid.n_rows)) {
    throw OutOfGrid("point " + describe(point) + " lies outside the grid");
  }
  return grid.cell_at(static_cast<std::uint32_t>(cx), static_cast<std::uint32_t>(cy));
}

Eigen::Vector2d cell_center(CellId id, const GridSpec& grid) {
  if (!grid.contains(id)) {
    throw InvalidCell("cell id " + std::to_string(id) + " is outside the grid");
  }
  return {grid.origin_x_m + (grid.col_of(id) + 0.5) * grid.cell_size_m,
          grid.origin_y_m + (grid.row_of(id) + 0.5) * grid.cell_size_m};
}

double cell_distance_km(CellId a, CellId b, const GridSpec& grid) {
  if (!grid.contains(a) || !grid.contains(b)) {
    throw InvalidCell("cell id outside the grid");
  }
  const double dx = (double(grid.col_of(a)) - double(grid.col_of(b))) * grid.cell_size_m;
  const double dy = (double(grid.row_of(a)) - double(grid.row_of(b))) * grid.cell_size_m;
  return std::hypot(dx, dy) / 1000.0;
}

int ring_of(double dist_km) {
  if (!(dist_km > 0.0)) {
    throw SelfVisit("distance " + std::to_string(dist_km) + " km has no ring; self-cell visits are excluded");
  }
  const double r = std::floor(dist_km + 0.5);
  return r < 1.0 ? 1 : static_cast<int>(r);
}

}  // namespace wanderlust
