#pragma once

// Flow curves rising from an origin on the ground to a destination lifted to
// its mountain height, with arc-length subdivision by frequency group.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "wanderlust/error.hpp"
#include "wanderlust/frequency.hpp"

namespace wanderlust {

template <typename Scalar>
using Vec2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

/// Cubic Bezier control polygon, one control point per column.
template <typename Scalar>
struct CurveControl {
  Eigen::Matrix<Scalar, 3, 4> points;

  auto p(int i) const { return points.col(i); }
};

/// Thirds scheme: P0 = (o, 0), P1 = o + (d - o)/3 at z = 0,
/// P2 = o + 2(d - o)/3 at z = h, P3 = (d, h). The plan view is the straight
/// segment o -> d traversed linearly in t and z(t) = h t^2 (3 - 2t).
template <typename Scalar>
CurveControl<Scalar> control_points(const Vec2<Scalar>& origin, const Vec2<Scalar>& dest, Scalar height) {
  if (!(height >= Scalar(0))) throw std::invalid_argument("destination height must be non-negative");
  if (origin == dest) throw DegenerateFlow("flow origin and destination coincide");
  const Vec2<Scalar> step = (dest - origin) / Scalar(3);
  CurveControl<Scalar> cp;
  cp.points.col(0) << origin, Scalar(0);
  cp.points.col(1) << origin + step, Scalar(0);
  cp.points.col(2) << origin + Scalar(2) * step, height;
  cp.points.col(3) << dest, height;
  return cp;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 4, 1> bernstein3(Scalar t) {
  const Scalar s = Scalar(1) - t;
  return {s * s * s, Scalar(3) * s * s * t, Scalar(3) * s * t * t, t * t * t};
}

template <typename Scalar>
Vec3<Scalar> eval_cubic(const CurveControl<Scalar>& cp, Scalar t) {
  if (!(t >= Scalar(0) && t <= Scalar(1))) throw std::out_of_range("curve parameter outside [0, 1]");
  return cp.points * bernstein3(t);
}

/// Cumulative chord lengths at t = i / K, i = 0..K.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> arc_table(const CurveControl<Scalar>& cp, int samples = 64) {
  if (samples < 2) throw std::invalid_argument("arc table needs at least 2 samples");
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> table(samples + 1);
  table(0) = Scalar(0);
  Vec3<Scalar> prev = cp.points.col(0);
  for (int i = 1; i <= samples; ++i) {
    const Vec3<Scalar> cur = i == samples ? Vec3<Scalar>(cp.points.col(3)) : eval_cubic(cp, Scalar(i) / samples);
    table(i) = table(i - 1) + (cur - prev).norm();
    prev = cur;
  }
  return table;
}

/// Curve parameter at arc fraction s in [0, 1], by linear interpolation
/// inside the arc table. s = 0 and s = 1 map to t = 0 and t = 1 exactly.
template <typename Scalar>
Scalar param_at_arc(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& table, Scalar s) {
  const Eigen::Index k = table.size() - 1;
  if (s <= Scalar(0)) return Scalar(0);
  if (s >= Scalar(1)) return Scalar(1);
  const Scalar total = table(k);
  if (!(total > Scalar(0))) return s;
  const Scalar target = s * total;
  const Scalar* first = table.data();
  const Eigen::Index hi = std::clamp<Eigen::Index>(std::lower_bound(first, first + k + 1, target) - first, 1, k);
  const Scalar span = table(hi) - table(hi - 1);
  const Scalar frac = span > Scalar(0) ? (target - table(hi - 1)) / span : Scalar(0);
  return (Scalar(hi - 1) + frac) / Scalar(k);
}

struct FlowSegment {
  double s0 = 0.0;  // arc fraction
  double s1 = 0.0;
  double t0 = 0.0;  // curve parameter
  double t1 = 0.0;
  int group = 1;
};

/// Contiguous segments, groups ascending from the origin end, empty groups
/// omitted.
struct FlowSegmentation {
  std::vector<FlowSegment> segments;
};

FlowSegmentation subdivide(const std::array<std::uint32_t, kGroupCount>& group_counts,
                           const Eigen::VectorXd& arc_table);

struct WidthParams {
  double w0 = 10.0;
  double beta = 0.5;
  double w_min = 2.0;

  void validate() const;

  friend bool operator==(const WidthParams&, const WidthParams&) = default;
};

/// max(w_min, w0 * total^beta), in world meters.
double flow_width(std::uint64_t total_visitors, const WidthParams& params);

/// First vertex index of each group when `m` vertices are split by arc share:
/// group g owns [round(c_{g-1} m), round(c_g m)) with c the cumulative shares.
std::array<int, kGroupCount + 1> group_vertex_bounds(const std::array<std::uint32_t, kGroupCount>& group_counts,
                                                     int m);

template <typename Scalar>
struct Vertex {
  Vec3<Scalar> position;
  Scalar width{};
  std::uint8_t group = 1;
  std::uint32_t flow_index = 0;
};

struct TessellateParams {
  int arc_samples = 64;
  int vertices_per_flow = 32;

  friend bool operator==(const TessellateParams&, const TessellateParams&) = default;
};

/// `m` vertices uniformly spaced in arc length along a flow curve.
template <typename Scalar>
std::vector<Vertex<Scalar>> tessellate_curve(const CurveControl<Scalar>& cp,
                                             const std::array<std::uint32_t, kGroupCount>& group_counts,
                                             Scalar width, std::uint32_t flow_index, const TessellateParams& params) {
  const int m = params.vertices_per_flow;
  if (m < 2) throw std::invalid_argument("at least 2 vertices per flow are required");
  const auto table = arc_table(cp, params.arc_samples);
  const auto bounds = group_vertex_bounds(group_counts, m);
  std::vector<Vertex<Scalar>> run(static_cast<std::size_t>(m));
  int group = 0;
  for (int i = 0; i < m; ++i) {
    while (i >= bounds[group + 1]) ++group;
    const Scalar t = i == m - 1 ? Scalar(1) : param_at_arc(table, Scalar(i) / Scalar(m - 1));
    auto& v = run[static_cast<std::size_t>(i)];
    v.position = eval_cubic(cp, t);
    v.width = width;
    v.group = static_cast<std::uint8_t>(group + 1);
    v.flow_index = flow_index;
  }
  return run;
}

}  // namespace wanderlust
