#include "wanderlust/geometry.hpp"

#include <cmath>

#include "wanderlust/error.hpp"

namespace wanderlust {

FlowSegmentation subdivide(const std::array<std::uint32_t, kGroupCount>& group_counts,
                           const Eigen::VectorXd& arc_table) {
  std::uint64_t total = 0;
  for (auto c : group_counts) total += c;
  if (total == 0) throw std::invalid_argument("cannot subdivide a flow without visitors");

  FlowSegmentation seg;
  std::uint64_t cumulative = 0;
  double s0 = 0.0;
  double t0 = 0.0;
  for (int g = 0; g < kGroupCount; ++g) {
    if (group_counts[g] == 0) continue;
    cumulative += group_counts[g];
    const double s1 = cumulative == total ? 1.0 : double(cumulative) / double(total);
    const double t1 = param_at_arc(arc_table, s1);
    seg.segments.push_back({s0, s1, t0, t1, g + 1});
    s0 = s1;
    t0 = t1;
  }
  return seg;
}

void WidthParams::validate() const {
  if (!(w0 > 0.0) || !(beta > 0.0) || !(w_min >= 0.0)) {
    throw ConfigError("width parameters need w0 > 0, beta > 0, w_min >= 0");
  }
}

double flow_width(std::uint64_t total_visitors, const WidthParams& params) {
  if (total_visitors < 1) throw std::invalid_argument("flow width needs at least one visitor");
  return std::max(params.w_min, params.w0 * std::pow(double(total_visitors), params.beta));
}

std::array<int, kGroupCount + 1> group_vertex_bounds(const std::array<std::uint32_t, kGroupCount>& group_counts,
                                                     int m) {
  std::uint64_t total = 0;
  for (auto c : group_counts) total += c;
  if (total == 0) throw std::invalid_argument("flow has no visitors");
  std::array<int, kGroupCount + 1> bounds{};
  std::uint64_t cumulative = 0;
  for (int g = 0; g < kGroupCount; ++g) {
    cumulative += group_counts[g];
    // round-half-up of cumulative * m / total in integer arithmetic
    bounds[g + 1] = static_cast<int>((2 * cumulative * std::uint64_t(m) + total) / (2 * total));
  }
  return bounds;
}

}  // namespace wanderlust
