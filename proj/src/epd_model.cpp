#include "epdtail/epd_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "epdtail/classical.hpp"
#include "epdtail/error.hpp"
#include "epdtail/random.hpp"
#include "likelihood_kernel.hpp"
#include "optimize.hpp"

namespace epdtail {

double delta_lower_bound(double tau) {
  if (!(tau < 0.0)) throw InvalidArgument("tau must be negative");
  return std::max(-1.0, 1.0 / tau);
}

bool in_epd_region(double xi, double delta, double tau) noexcept {
  if (!(xi > 0.0) || !(tau < 0.0) || !std::isfinite(delta) || !std::isfinite(xi)) return false;
  return delta > std::max(-1.0, 1.0 / tau);
}

EPDParams::EPDParams(double xi_, double delta_, double tau_) : xi(xi_), delta(delta_), tau(tau_) {
  if (!in_epd_region(xi, delta, tau))
    throw InvalidArgument("EPD parameters outside the region xi > 0, tau < 0, delta > max(-1, 1/tau)");
}

double epd_survival(const EPDParams& p, double y) {
  if (!(y >= 1.0)) throw InvalidArgument("epd_survival requires y >= 1");
  const double inner = 1.0 + p.delta - p.delta * std::pow(y, p.tau);
  return std::exp(-(std::log(y) + std::log(inner)) / p.xi);
}

double epd_log_likelihood(double xi, double delta, double tau, const ExcessSet& e) {
  if (!(tau < 0.0)) return -std::numeric_limits<double>::infinity();
  return detail::LikelihoodKernel(e, tau).value(xi, delta);
}

std::array<double, 2> epd_log_likelihood_gradient(double xi, double delta, double tau,
                                                  const ExcessSet& e) {
  if (!in_epd_region(xi, delta, tau))
    throw InvalidArgument("gradient requested outside the EPD parameter region");
  return detail::LikelihoodKernel(e, tau).gradient(xi, delta);
}

EPDFit epd_ml_fit(const ExcessSet& e, double tau) {
  if (e.k() < kMinFitExcesses)
    throw InvalidArgument("EPD fit needs at least " + std::to_string(kMinFitExcesses) +
                          " excesses, got " + std::to_string(e.k()));
  if (!(tau < 0.0)) throw InvalidArgument("EPD fit requires tau < 0");
  const double h = hill(e).xi;
  if (!(h > 0.0)) throw NumericalError("EPD fit: all excesses are ties");

  const detail::LikelihoodKernel kernel(e, tau);
  const auto r = detail::fit_xi_delta(
      [&](double xi, double d) { return kernel.value(xi, d); },
      [&](double xi, double d) { return kernel.gradient(xi, d); }, h, 0.0, kernel.lower(),
      kDeltaMax);
  return {EPDParams(r.xi, r.delta, tau), r.value, r.converged && std::isfinite(r.value),
          r.iterations};
}

double epd_quantile(const EPDParams& p, double q) {
  if (!(q > 0.0 && q < 1.0)) throw InvalidArgument("epd_quantile requires 0 < q < 1");
  // Solve h(w) = w + log(1 + delta - delta e^{tau w}) - log z = 0 in w = log y,
  // with z = (1 - q)^{-xi}. h is strictly increasing on the support.
  const double log_z = -p.xi * std::log1p(-q);
  if (p.delta == 0.0) return std::exp(log_z);
  const double lo_scale = std::log(std::max(1.0, 1.0 + p.delta));
  const double hi_scale = std::log(std::min(1.0, 1.0 + p.delta));
  double lo = std::max(0.0, log_z - lo_scale);
  double hi = std::max(lo, log_z - hi_scale);
  auto h = [&](double w) { return w + std::log1p(p.delta * (1.0 - std::exp(p.tau * w))) - log_z; };
  double w = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double hv = h(w);
    if (hv == 0.0) break;
    if (hv > 0.0) hi = w; else lo = w;
    const double et = std::exp(p.tau * w);
    const double dh = 1.0 + (-p.delta * p.tau * et) / (1.0 + p.delta * (1.0 - et));
    double wn = w - hv / dh;
    if (!(wn > lo && wn < hi)) wn = 0.5 * (lo + hi);
    if (std::abs(wn - w) <= 1e-15 * std::max(1.0, std::abs(w))) {
      w = wn;
      break;
    }
    w = wn;
  }
  return std::exp(w);
}

std::vector<double> epd_sample(const EPDParams& p, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> out(count);
  for (auto& v : out) v = epd_quantile(p, uniform_open01(rng));
  return out;
}

double epd_tail_prob(const SortedSample& s, std::size_t k, double x, const EPDParams& p) {
  const double t = s.threshold(k);
  if (x < t) throw InvalidArgument("x is below the threshold X_{n-k,n}");
  const double frac = static_cast<double>(k) / static_cast<double>(s.size());
  return frac * epd_survival(p, x / t);
}

}  // namespace epdtail
