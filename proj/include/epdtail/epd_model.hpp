#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "epdtail/tail_data.hpp"

namespace epdtail {

/// Upper bound used by the ML optimizer's reparametrization of delta.
inline constexpr double kDeltaMax = 10.0;

/// max(-1, 1/tau): delta must lie strictly above this.
double delta_lower_bound(double tau);

/// True when xi > 0, tau < 0 and delta > max(-1, 1/tau).
bool in_epd_region(double xi, double delta, double tau) noexcept;

/// Parameters of the extended Pareto distribution with survival
/// {y (1 + delta - delta y^tau)}^{-1/xi}, y >= 1.
struct EPDParams {
  double xi;
  double delta;
  double tau;

  /// Throws InvalidArgument when (xi, delta, tau) is outside the region.
  EPDParams(double xi_, double delta_, double tau_);
};

struct EPDFit {
  EPDParams params;
  double loglik;  // mean log-likelihood per excess
  bool converged;
  int iterations;
};

double epd_survival(const EPDParams& p, double y);

/// Mean log-likelihood (1/k) l(xi, delta | y). Returns -infinity outside the
/// parameter region.
double epd_log_likelihood(double xi, double delta, double tau, const ExcessSet& e);

/// Analytic (d/dxi, d/ddelta) of epd_log_likelihood at an interior point.
std::array<double, 2> epd_log_likelihood_gradient(double xi, double delta, double tau,
                                                  const ExcessSet& e);

/// Minimum number of excesses accepted by the two-parameter fits.
inline constexpr std::size_t kMinFitExcesses = 10;

/// Maximum-likelihood (xi, delta) for fixed tau. Starts at (hill, 0).
EPDFit epd_ml_fit(const ExcessSet& e, double tau);

/// Inverse of the EPD distribution function: y with survival 1 - q.
double epd_quantile(const EPDParams& p, double q);

/// Inverse-transform draws; deterministic for a given seed.
std::vector<double> epd_sample(const EPDParams& p, std::size_t count, std::uint64_t seed);

/// (k/n) times the EPD survival at x / X_{n-k,n}.
double epd_tail_prob(const SortedSample& s, std::size_t k, double x, const EPDParams& p);

}  // namespace epdtail
