#pragma once

// The visitation law and everything fitted from it: per-destination
// distance/frequency spectra, attractiveness estimation and the
// attractiveness-to-height mapping used for the mountains.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wanderlust/error.hpp"
#include "wanderlust/frequency.hpp"
#include "wanderlust/grid.hpp"

namespace wanderlust {

/// Expected unique visitors from one origin cell at ring r visiting f times
/// a month: mu / (r f)^2.
double expected_visitors(double mu, double r_km, double f);

/// Unique-visitor counts of one destination binned by distance ring (rows,
/// ring r at row r - 1) and monthly frequency (columns, f at column f - 1).
///
/// `ring_cells(r - 1)` is the number of origin cells lying on ring r. It is
/// the exposure of every bin in that row: the law predicts
/// ring_cells * mu / (r f)^2 visitors per bin. Hand-built fixtures that
/// already hold per-cell densities keep the default of one.
template <typename Scalar>
struct BasicSpectrum {
  using CountMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, kMaxFrequency, Eigen::RowMajor>;

  CellId dest_cell = 0;
  CountMatrix counts;
  Eigen::VectorXd ring_cells;

  BasicSpectrum() = default;
  BasicSpectrum(CellId dest, int rings)
      : dest_cell(dest), counts(CountMatrix::Zero(rings, kMaxFrequency)), ring_cells(Eigen::VectorXd::Ones(rings)) {}

  int rings() const { return static_cast<int>(counts.rows()); }

  Scalar& at(int ring, int f) { return counts(ring - 1, f - 1); }
  const Scalar& at(int ring, int f) const { return counts(ring - 1, f - 1); }

  Scalar visitors() const { return counts.sum(); }

  /// Sum of f * N over all bins.
  Scalar visits() const {
    const auto f = Eigen::Matrix<Scalar, kMaxFrequency, 1>::LinSpaced(kMaxFrequency, Scalar(1), Scalar(kMaxFrequency));
    return (counts * f).sum();
  }
};

using Spectrum = BasicSpectrum<std::int64_t>;
using RealSpectrum = BasicSpectrum<double>;

/// One (ring, frequency) bin in flat form.
struct SpectrumBin {
  int ring = 1;
  int f = 1;
  double count = 0.0;
  double cells = 1.0;
};

template <typename Scalar>
std::vector<SpectrumBin> to_bins(const BasicSpectrum<Scalar>& spectrum) {
  std::vector<SpectrumBin> bins;
  bins.reserve(static_cast<std::size_t>(spectrum.counts.size()));
  for (int r = 1; r <= spectrum.rings(); ++r) {
    const double cells = spectrum.ring_cells(r - 1);
    for (int f = 1; f <= kMaxFrequency; ++f) {
      const double n = static_cast<double>(spectrum.at(r, f));
      if (cells > 0.0 || n > 0.0) bins.push_back({r, f, n, cells});
    }
  }
  return bins;
}

struct MuFit {
  double mu_hat = 0.0;
  /// OLS slope of ln(N / cells) on ln(r f) over non-empty bins. Diagnostic
  /// only; absent unless at least two distinct r f values are present.
  std::optional<double> slope_diag;
  /// Number of non-empty bins.
  std::size_t n_bins = 0;
};

/// Fits attractiveness with the law's exponent held at -2.
///
/// mu_hat is the Poisson maximum-likelihood estimate
///   sum_b N_b / sum_b cells_b / (r_b f_b)^2
/// over every listed bin, so empty bins inside the observation window still
/// count as exposure. Throws NoData when every bin is empty.
MuFit estimate_mu(std::span<const SpectrumBin> bins);

template <typename Scalar>
MuFit estimate_mu(const BasicSpectrum<Scalar>& spectrum) {
  const auto bins = to_bins(spectrum);
  return estimate_mu(std::span<const SpectrumBin>(bins));
}

/// Sums counts and ring exposures of several spectra into one.
template <typename Range>
RealSpectrum pool_spectra(const Range& spectra) {
  int rings = 0;
  for (const auto& s : spectra) rings = std::max(rings, s.rings());
  RealSpectrum pooled(0, rings);
  pooled.ring_cells.setZero();
  for (const auto& s : spectra) {
    pooled.counts.topRows(s.rings()) += s.counts.template cast<double>();
    pooled.ring_cells.head(s.rings()) += s.ring_cells;
  }
  return pooled;
}

struct HeightParams {
  double p = 2.0;
  double s = 1000.0;

  void validate() const;

  friend bool operator==(const HeightParams&, const HeightParams&) = default;
};

/// s * (log10 mu)^p for mu > 1, otherwise 0.
double mountain_height(double mu, const HeightParams& params);

template <typename Count>
struct BasicCellStats {
  CellId cell_id = 0;
  Count visitors = 0;
  Count visits = 0;
  double mu = 0.0;
  double log10_mu = 0.0;
  double height_m = 0.0;
};

using CellStats = BasicCellStats<std::int64_t>;

template <typename Scalar>
BasicCellStats<Scalar> cell_stats(const BasicSpectrum<Scalar>& spectrum, const HeightParams& params) {
  const MuFit fit = estimate_mu(spectrum);
  BasicCellStats<Scalar> stats;
  stats.cell_id = spectrum.dest_cell;
  stats.visitors = spectrum.visitors();
  stats.visits = spectrum.visits();
  stats.mu = fit.mu_hat;
  stats.log10_mu = std::log10(fit.mu_hat);
  stats.height_m = mountain_height(fit.mu_hat, params);
  return stats;
}

}  // namespace wanderlust
