#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wanderlust/law.hpp"

using namespace wanderlust;

TEST_CASE("expected_visitors follows the inverse-square law") {
  CHECK(expected_visitors(5.0, 1.0, 1.0) == 5.0);
  CHECK(expected_visitors(100.0, 5.0, 2.0) == doctest::Approx(1.0));
  CHECK(expected_visitors(0.0, 7.0, 13.0) == 0.0);
  CHECK_THROWS(expected_visitors(1.0, 0.5, 1.0));
  CHECK_THROWS(expected_visitors(1.0, 1.0, 0.0));
}

TEST_CASE("expected_visitors times (r f)^2 recovers mu") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mu(0.0, 1e6), r(1.0, 200.0), f(1.0, 30.0);
  for (int i = 0; i < 2000; ++i) {
    const double m = mu(rng), rr = r(rng), ff = f(rng);
    CHECK(expected_visitors(m, rr, ff) * (rr * ff) * (rr * ff) == doctest::Approx(m).epsilon(1e-14));
  }
  CHECK(expected_visitors(300.0, 3.0, 4.0) * 144.0 == 300.0);
}

TEST_CASE("estimate_mu on small fixtures") {
  const std::vector<SpectrumBin> single{{1, 1, 5.0, 1.0}};
  CHECK(estimate_mu(single).mu_hat == doctest::Approx(5.0));
  CHECK_FALSE(estimate_mu(single).slope_diag.has_value());
  CHECK(estimate_mu(single).n_bins == 1);

  const std::vector<SpectrumBin> pair{{2, 1, 25.0, 1.0}, {1, 2, 25.0, 1.0}};
  const MuFit fit = estimate_mu(pair);
  CHECK(fit.mu_hat == doctest::Approx(100.0).epsilon(1e-14));
  // Both bins sit at r f = 2.
  CHECK_FALSE(fit.slope_diag.has_value());

  const std::vector<SpectrumBin> empty{{1, 1, 0.0, 1.0}, {2, 3, 0.0, 4.0}};
  CHECK_THROWS_AS(estimate_mu(empty), NoData);
  CHECK_THROWS_AS(estimate_mu(std::vector<SpectrumBin>{}), NoData);
}

TEST_CASE("estimate_mu is exact on a noiseless law spectrum") {
  for (double mu : {300.0, 1.0, 0.37, 12345.6}) {
    const auto bins = oracle::exact_law_bins(mu, 10, 10);
    const MuFit fit = estimate_mu(bins);
    CHECK(std::abs(fit.mu_hat - mu) <= 1e-9 * mu);
    REQUIRE(fit.slope_diag.has_value());
    CHECK(std::abs(*fit.slope_diag + 2.0) <= 1e-9);
    CHECK(fit.n_bins == 100);
  }
}

TEST_CASE("estimate_mu counts ring exposure") {
  // 8 cells on ring 1, 16 on ring 2, each expecting mu / (r f)^2.
  RealSpectrum s(0, 2);
  s.ring_cells << 8.0, 16.0;
  for (int r = 1; r <= 2; ++r) {
    for (int f = 1; f <= kMaxFrequency; ++f) s.at(r, f) = s.ring_cells(r - 1) * 40.0 / std::pow(r * f, 2);
  }
  const MuFit fit = estimate_mu(s);
  CHECK(fit.mu_hat == doctest::Approx(40.0).epsilon(1e-12));
  CHECK(*fit.slope_diag == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("estimate_mu is invariant under bin reordering") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> count(0, 50);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SpectrumBin> bins;
    for (int r = 1; r <= 6; ++r) {
      for (int f = 1; f <= 30; f += 3) bins.push_back({r, f, double(count(rng)), double(4 * r)});
    }
    const MuFit reference = estimate_mu(bins);
    std::shuffle(bins.begin(), bins.end(), rng);
    const MuFit shuffled = estimate_mu(bins);
    CHECK(shuffled.mu_hat == doctest::Approx(reference.mu_hat).epsilon(1e-12));
    CHECK(*shuffled.slope_diag == doctest::Approx(*reference.slope_diag).epsilon(1e-12));
    CHECK(shuffled.n_bins == reference.n_bins);
  }
}

TEST_CASE("estimate_mu rejects malformed bins") {
  CHECK_THROWS(estimate_mu(std::vector<SpectrumBin>{{0, 1, 1.0, 1.0}}));
  CHECK_THROWS(estimate_mu(std::vector<SpectrumBin>{{1, 31, 1.0, 1.0}}));
  CHECK_THROWS(estimate_mu(std::vector<SpectrumBin>{{1, 1, -1.0, 1.0}}));
  CHECK_THROWS(estimate_mu(std::vector<SpectrumBin>{{1, 1, 3.0, 0.0}}));
}

TEST_CASE("mountain_height") {
  const HeightParams params;
  CHECK(mountain_height(1.0, params) == 0.0);
  CHECK(mountain_height(0.5, params) == 0.0);
  CHECK(mountain_height(0.0, params) == 0.0);
  CHECK(mountain_height(std::pow(10.0, 2.717), params) == doctest::Approx(7382.089).epsilon(0.01 / 7382.089));
  CHECK(mountain_height(10.0, {3.0, 250.0}) == doctest::Approx(250.0));
  CHECK(mountain_height(1000.0, {1.0, 1.0}) == doctest::Approx(3.0));
}

TEST_CASE("mountain_height is monotone and flat on (0, 1]") {
  const HeightParams params;
  double prev = 0.0;
  for (double mu = 1e-3; mu < 1e7; mu *= 1.07) {
    const double h = mountain_height(mu, params);
    if (mu <= 1.0) CHECK(h == 0.0);
    CHECK(h >= prev);
    prev = h;
  }
}

TEST_CASE("cell_stats sums visitors and visits") {
  Spectrum s(42, 3);
  s.at(2, 3) = 1;
  s.at(1, 5) = 1;
  const CellStats stats = cell_stats(s, HeightParams{});
  CHECK(stats.cell_id == 42);
  CHECK(stats.visitors == 2);
  CHECK(stats.visits == 8);
  CHECK(stats.mu > 0.0);
  CHECK(stats.log10_mu == doctest::Approx(std::log10(stats.mu)));
  CHECK(stats.height_m == doctest::Approx(mountain_height(stats.mu, HeightParams{})));

  CHECK_THROWS_AS(cell_stats(Spectrum(1, 4), HeightParams{}), NoData);
}

TEST_CASE("cell_stats on the exact-law fixture matches direct summation") {
  const double mu = 300.0;
  RealSpectrum s(0, 10);
  double visitors = 0.0, visits = 0.0;
  for (int r = 1; r <= 10; ++r) {
    for (int f = 1; f <= kMaxFrequency; ++f) {
      const double lambda = mu / ((r * f) * double(r * f));
      s.at(r, f) = lambda;
      visitors += lambda;
      visits += f * lambda;
    }
  }
  const auto stats = cell_stats(s, HeightParams{});
  CHECK(stats.visitors == doctest::Approx(visitors).epsilon(1e-13));
  CHECK(stats.visits == doctest::Approx(visits).epsilon(1e-13));
  CHECK(std::abs(stats.mu - mu) <= 1e-9 * mu);
}

TEST_CASE("visits never fall below visitors") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> count(0, 20);
  for (int trial = 0; trial < 200; ++trial) {
    Spectrum s(0, 5);
    for (int r = 1; r <= 5; ++r) {
      for (int f = 1; f <= kMaxFrequency; ++f) s.at(r, f) = count(rng) < 3 ? count(rng) : 0;
    }
    if (s.visitors() == 0) continue;
    const CellStats stats = cell_stats(s, HeightParams{});
    CHECK(stats.visits >= stats.visitors);
  }
}

TEST_CASE("pool_spectra adds counts and exposure") {
  Spectrum a(1, 2), b(2, 3);
  a.at(1, 1) = 3;
  b.at(1, 1) = 4;
  b.at(3, 2) = 1;
  a.ring_cells << 8, 12;
  b.ring_cells << 8, 16, 20;
  const std::vector<Spectrum> all{a, b};
  const RealSpectrum pooled = pool_spectra(all);
  CHECK(pooled.rings() == 3);
  CHECK(pooled.at(1, 1) == 7.0);
  CHECK(pooled.at(3, 2) == 1.0);
  CHECK(pooled.ring_cells(0) == 16.0);
  CHECK(pooled.ring_cells(1) == 28.0);
  CHECK(pooled.ring_cells(2) == 20.0);
}
