#include "wanderlust/law.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wanderlust {

double expected_visitors(double mu, double r_km, double f) {
  if (!(r_km >= 1.0)) throw std::invalid_argument("ring distance below the first 1 km ring");
  if (!(f >= 1.0)) throw FrequencyOutOfRange("frequency below 1");
  if (!(mu >= 0.0)) throw std::invalid_argument("attractiveness must be non-negative");
  const double rf = r_km * f;
  return mu / (rf * rf);
}

MuFit estimate_mu(std::span<const SpectrumBin> bins) {
  double observed = 0.0;
  double exposure = 0.0;
  std::vector<double> log_rf;
  std::vector<double> log_density;
  for (const auto& bin : bins) {
    if (bin.ring < 1 || bin.f < 1 || bin.f > kMaxFrequency) {
      throw std::invalid_argument("spectrum bin (r=" + std::to_string(bin.ring) + ", f=" + std::to_string(bin.f) +
                                  ") is outside the law's domain");
    }
    if (!(bin.count >= 0.0) || !(bin.cells >= 0.0)) {
      throw std::invalid_argument("spectrum bins must be non-negative");
    }
    if (bin.count > 0.0 && bin.cells == 0.0) {
      throw std::invalid_argument("non-empty spectrum bin with zero exposure");
    }
    const double rf = double(bin.ring) * bin.f;
    exposure += bin.cells / (rf * rf);
    if (bin.count > 0.0) {
      observed += bin.count;
      log_rf.push_back(std::log(rf));
      log_density.push_back(std::log(bin.count / bin.cells));
    }
  }
  if (log_rf.empty()) throw NoData("spectrum has no visitors");

  MuFit fit;
  fit.mu_hat = observed / exposure;
  fit.n_bins = log_rf.size();

  const Eigen::Map<const Eigen::ArrayXd> x(log_rf.data(), Eigen::Index(log_rf.size()));
  const Eigen::Map<const Eigen::ArrayXd> y(log_density.data(), Eigen::Index(log_density.size()));
  if (x.maxCoeff() > x.minCoeff()) {
    const Eigen::ArrayXd dx = x - x.mean();
    fit.slope_diag = (dx * (y - y.mean())).sum() / dx.square().sum();
  }
  return fit;
}

void HeightParams::validate() const {
  if (!(p > 0.0) || !(s > 0.0)) throw ConfigError("height parameters p and s must be positive");
}

double mountain_height(double mu, const HeightParams& params) {
  if (!(mu > 1.0)) return 0.0;
  return params.s * std::pow(std::log10(mu), params.p);
}

}  // namespace wanderlust
