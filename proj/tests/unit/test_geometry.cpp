#include <doctest.h>

#include <random>

#include "../oracles.hpp"
#include "wanderlust/error.hpp"
#include "wanderlust/geometry.hpp"
#include "wanderlust/law.hpp"

using namespace wanderlust;
using Counts = std::array<std::uint32_t, kGroupCount>;

namespace {

std::array<oracle::P3, 4> as_oracle(const CurveControl<double>& cp) {
  std::array<oracle::P3, 4> p;
  for (int i = 0; i < 4; ++i) p[i] = {cp.points(0, i), cp.points(1, i), cp.points(2, i)};
  return p;
}

CurveControl<double> sample_curve() {
  return control_points<double>({1500.0, 2500.0}, {40500.0, 17500.0}, 7382.0);
}

}  // namespace

TEST_CASE("control points follow the thirds scheme") {
  const auto cp = control_points<double>({0.0, 0.0}, {3000.0, 6000.0}, 900.0);
  CHECK(cp.p(0) == Eigen::Vector3d(0, 0, 0));
  CHECK(cp.p(1) == Eigen::Vector3d(1000, 2000, 0));
  CHECK(cp.p(2) == Eigen::Vector3d(2000, 4000, 900));
  CHECK(cp.p(3) == Eigen::Vector3d(3000, 6000, 900));
  CHECK_THROWS_AS(control_points<double>({5.0, 5.0}, {5.0, 5.0}, 1.0), DegenerateFlow);
  CHECK_THROWS(control_points<double>({0.0, 0.0}, {1.0, 0.0}, -1.0));
}

TEST_CASE("eval_cubic agrees with de Casteljau") {
  const auto cp = sample_curve();
  const auto ref = as_oracle(cp);
  for (int i = 0; i <= 100; ++i) {
    const double t = i / 100.0;
    const auto mine = eval_cubic(cp, t);
    const auto theirs = oracle::de_casteljau(ref, t);
    CHECK(mine.x() == doctest::Approx(theirs.x).epsilon(1e-12));
    CHECK(mine.y() == doctest::Approx(theirs.y).epsilon(1e-12));
    CHECK(std::abs(mine.z() - theirs.z) <= 1e-9);
  }
  CHECK(eval_cubic(cp, 0.0) == cp.p(0));
  CHECK(eval_cubic(cp, 1.0) == cp.p(3));
  CHECK_THROWS_AS(eval_cubic(cp, 1.5), std::out_of_range);
}

TEST_CASE("arc table approaches the integrated length") {
  const auto cp = sample_curve();
  const double exact = oracle::arc_length(as_oracle(cp), 0.0, 1.0);
  const auto coarse = arc_table(cp, 64);
  CHECK(coarse.size() == 65);
  CHECK(coarse(0) == 0.0);
  CHECK(coarse(64) <= exact);
  CHECK(coarse(64) == doctest::Approx(exact).epsilon(1e-4));
  CHECK(arc_table(cp, 1024)(1024) == doctest::Approx(exact).epsilon(1e-7));
}

TEST_CASE("param_at_arc inverts the table") {
  const auto cp = sample_curve();
  const auto table = arc_table(cp, 64);
  CHECK(param_at_arc(table, 0.0) == 0.0);
  CHECK(param_at_arc(table, 1.0) == 1.0);
  for (int i = 0; i <= 64; ++i) {
    CHECK(param_at_arc(table, table(i) / table(64)) == doctest::Approx(i / 64.0).epsilon(1e-12));
  }
  double prev = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double t = param_at_arc(table, i / 200.0);
    CHECK(t >= prev);
    prev = t;
  }
}

TEST_CASE("subdivide splits arc length by group share") {
  const auto cp = sample_curve();
  const auto ref = as_oracle(cp);
  const double total = oracle::arc_length(ref, 0.0, 1.0);
  const Counts counts{6, 0, 3, 1};
  const auto seg = subdivide(counts, arc_table(cp, 64));
  REQUIRE(seg.segments.size() == 3);
  CHECK(seg.segments[0].group == 1);
  CHECK(seg.segments[1].group == 3);
  CHECK(seg.segments[2].group == 4);
  CHECK(seg.segments[0].t0 == 0.0);
  CHECK(seg.segments[2].t1 == 1.0);
  const double expected[] = {0.6, 0.3, 0.1};
  for (int i = 0; i < 3; ++i) {
    const auto& s = seg.segments[i];
    CHECK(s.s1 - s.s0 == doctest::Approx(expected[i]).epsilon(1e-12));
    const double measured = oracle::arc_length(ref, s.t0, s.t1) / total;
    CHECK(std::abs(measured - expected[i]) <= 1.0 / 64.0);
    if (i > 0) CHECK(s.t0 == seg.segments[i - 1].t1);
  }
  CHECK_THROWS(subdivide(Counts{0, 0, 0, 0}, arc_table(cp, 64)));
}

TEST_CASE("subdivide property over random count vectors") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint32_t> count(0, 50);
  std::bernoulli_distribution zero(0.3);
  const auto cp = sample_curve();
  const auto ref = as_oracle(cp);
  const double total = oracle::arc_length(ref, 0.0, 1.0, 200);
  const auto table = arc_table(cp, 64);
  for (int trial = 0; trial < 300; ++trial) {
    Counts c{};
    for (auto& x : c) x = zero(rng) ? 0 : count(rng);
    if (c[0] + c[1] + c[2] + c[3] == 0) c[2] = 1;
    const double n = double(c[0]) + c[1] + c[2] + c[3];
    const auto seg = subdivide(c, table);
    double sum = 0.0;
    int last_group = 0;
    for (const auto& s : seg.segments) {
      CHECK(s.group > last_group);
      CHECK(c[s.group - 1] > 0);
      last_group = s.group;
      sum += s.s1 - s.s0;
      const double measured = oracle::arc_length(ref, s.t0, s.t1, 200) / total;
      CHECK(std::abs(measured - c[s.group - 1] / n) <= 1.0 / 64.0);
    }
    std::size_t nonempty = 0;
    for (auto x : c) nonempty += x > 0;
    CHECK(seg.segments.size() == nonempty);
    CHECK(std::abs(sum - 1.0) <= 1e-9);
  }
}

TEST_CASE("flow width") {
  const WidthParams p;
  CHECK(flow_width(1, p) == 10.0);
  CHECK(flow_width(100, p) == doctest::Approx(100.0));
  CHECK(flow_width(1, {1.0, 0.5, 2.0}) == 2.0);
  CHECK_THROWS(flow_width(0, p));
  CHECK_THROWS_AS(WidthParams({0.0, 0.5, 2.0}).validate(), ConfigError);
}

TEST_CASE("group vertex bounds") {
  CHECK(group_vertex_bounds(Counts{1, 1, 1, 1}, 32) == std::array<int, 5>{0, 8, 16, 24, 32});
  CHECK(group_vertex_bounds(Counts{0, 0, 5, 0}, 32) == std::array<int, 5>{0, 0, 0, 32, 32});
  // 32 / 3 = 10.67 -> 11, 64 / 3 = 21.33 -> 21
  CHECK(group_vertex_bounds(Counts{1, 1, 1, 0}, 32) == std::array<int, 5>{0, 11, 21, 32, 32});
  // exact half rounds up
  CHECK(group_vertex_bounds(Counts{1, 3, 0, 0}, 2) == std::array<int, 5>{0, 1, 2, 2, 2});
}

TEST_CASE("tessellated runs keep the geometry contract") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(0.0, 100000.0), mu_log(-0.5, 4.5);
  std::uniform_int_distribution<std::uint32_t> count(0, 20);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Vector2d o(coord(rng), coord(rng)), d(coord(rng), coord(rng));
    const double h = mountain_height(std::pow(10.0, mu_log(rng)), {});
    Counts c{count(rng), count(rng), count(rng), count(rng)};
    if (c[0] + c[1] + c[2] + c[3] == 0) c[0] = 1;
    const auto run = tessellate_curve(control_points(o, d, h), c, 4.0, 9u, {});
    REQUIRE(run.size() == 32);
    CHECK(run.front().position.z() == 0.0);
    CHECK(std::abs(run.back().position.z() - h) <= 1e-9);
    for (std::size_t i = 0; i < run.size(); ++i) {
      const auto& v = run[i];
      CHECK(v.flow_index == 9u);
      CHECK(v.width == 4.0);
      CHECK(oracle::distance_to_segment(v.position.x(), v.position.y(), o.x(), o.y(), d.x(), d.y()) <= 1e-6);
      if (i > 0) {
        CHECK(v.position.z() >= run[i - 1].position.z());
        CHECK(v.group >= run[i - 1].group);
      }
    }
    CHECK(run.front().position.head<2>() == o);
  }
}

TEST_CASE("tessellated vertices are evenly spaced in arc length") {
  const auto cp = sample_curve();
  const auto ref = as_oracle(cp);
  const double total = oracle::arc_length(ref, 0.0, 1.0);
  const auto run = tessellate_curve(cp, Counts{1, 0, 0, 0}, 1.0, 0u, {64, 9});
  const auto table = arc_table(cp, 64);
  for (int i = 0; i < 9; ++i) {
    const double t = param_at_arc(table, i / 8.0);
    CHECK(std::abs(oracle::arc_length(ref, 0.0, t) / total - i / 8.0) <= 1.0 / 64.0);
    CHECK((eval_cubic(cp, t) - run[i].position).norm() <= 1e-9);
  }
}
