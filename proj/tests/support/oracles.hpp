#pragma once

// Test-only reference computations. Nothing here calls into the library's
// estimation code paths; they are written directly from the model formulas.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <vector>

namespace oracle {

/// Kolmogorov-Smirnov statistic of `x` against a continuous CDF.
inline double ks_statistic(std::vector<double> x, const std::function<double(double)>& cdf) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Asymptotic KS p-value with the Stephens small-sample correction.
inline double ks_pvalue(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lam = (sn + 0.12 + 0.11 / sn) * d;
  if (lam < 1e-3) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * lam * lam);
    sum += (j % 2 == 1 ? 1.0 : -1.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// Composite Simpson rule with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Standard error of a chain mean by non-overlapping batch means.
inline double batch_means_se(std::span<const double> x, std::size_t batches = 50) {
  const std::size_t len = x.size() / batches;
  std::vector<double> m(batches);
  for (std::size_t b = 0; b < batches; ++b)
    m[b] = std::accumulate(x.begin() + b * len, x.begin() + (b + 1) * len, 0.0) / len;
  const double mu = std::accumulate(m.begin(), m.end(), 0.0) / batches;
  double v = 0.0;
  for (double z : m) v += (z - mu) * (z - mu);
  v /= (batches - 1);
  return std::sqrt(v / batches);
}

/// Mean EPD log-likelihood, transcribed term by term.
inline double epd_loglik(double xi, double delta, double tau, std::span<const double> y) {
  if (!(xi > 0.0) || !(tau < 0.0) || !(delta > std::max(-1.0, 1.0 / tau)))
    return -std::numeric_limits<double>::infinity();
  const double k = static_cast<double>(y.size());
  double s1 = 0.0, s2 = 0.0;
  for (double v : y) {
    const double yt = std::pow(v, tau);
    const double b = 1.0 + delta * (1.0 - (1.0 + tau) * yt);
    if (!(b > 0.0)) return -std::numeric_limits<double>::infinity();
    s1 += std::log(v) + std::log(1.0 + delta * (1.0 - yt));
    s2 += std::log(b);
  }
  return -std::log(xi) - (1.0 / xi + 1.0) * s1 / k + s2 / k;
}

/// The same likelihood in extended precision, for finite differences whose
/// rounding error must stay well below the step.
inline long double epd_loglik_ld(long double xi, long double delta, long double tau,
                                 std::span<const double> y) {
  const long double k = static_cast<long double>(y.size());
  long double s1 = 0.0L, s2 = 0.0L;
  for (double v : y) {
    const long double yt = std::pow(static_cast<long double>(v), tau);
    s1 += std::log(static_cast<long double>(v)) + std::log1p(delta * (1.0L - yt));
    s2 += std::log1p(delta * (1.0L - (1.0L + tau) * yt));
  }
  return -std::log(xi) - (1.0L / xi + 1.0L) * s1 / k + s2 / k;
}

/// Central difference of epd_loglik_ld in xi (which = 0) or delta (which = 1).
inline double epd_loglik_fd(double xi, double delta, double tau, std::span<const double> y,
                            int which, double h = 1e-6) {
  const long double hx = which == 0 ? h : 0.0, hd = which == 1 ? h : 0.0;
  const long double up = epd_loglik_ld(xi + hx, delta + hd, tau, y);
  const long double dn = epd_loglik_ld(xi - hx, delta - hd, tau, y);
  return static_cast<double>((up - dn) / (2.0L * h));
}

/// Per-excess log posterior with gamma(eps, 1) on xi and the normal kernel on
/// delta, truncated at max(-1, 1/tau).
inline double log_post(double xi, double delta, double tau, std::span<const double> y,
                       double sigma2, double eps = 1e-4) {
  const double l = epd_loglik(xi, delta, tau, y);
  if (!std::isfinite(l)) return l;
  const double k = static_cast<double>(y.size());
  const double lpxi = (eps - 1.0) * std::log(xi) - xi - std::lgamma(eps);
  return l + (lpxi - 0.5 * delta * delta / sigma2) / k;
}

struct GridOptimum {
  double xi;
  double delta;
  double value;
};

/// Brute-force maximization of f over xi in [xi_lo, xi_hi], delta in
/// (d_lo, d_hi]: a dense log-spaced grid in xi, then repeated local grids
/// shrinking around the incumbent.
inline GridOptimum grid_maximize(const std::function<double(double, double)>& f, double xi_lo,
                                 double xi_hi, double d_lo, double d_hi, int n0 = 240,
                                 int rounds = 40) {
  GridOptimum best{xi_lo, d_hi, -std::numeric_limits<double>::infinity()};
  const double eps = 1e-9;
  for (int i = 0; i < n0; ++i) {
    const double xi = xi_lo * std::pow(xi_hi / xi_lo, (i + 0.5) / n0);
    for (int j = 0; j < n0; ++j) {
      const double d = d_lo + eps + (d_hi - d_lo - eps) * (j + 0.5) / n0;
      const double v = f(xi, d);
      if (v > best.value) best = {xi, d, v};
    }
  }
  double wx = 2.0 * std::log(xi_hi / xi_lo) / n0;
  double wd = 2.0 * (d_hi - d_lo) / n0;
  const int m = 21;
  for (int r = 0; r < rounds; ++r) {
    const GridOptimum c = best;
    for (int i = 0; i < m; ++i) {
      const double xi = c.xi * std::exp(wx * (2.0 * i / (m - 1) - 1.0));
      for (int j = 0; j < m; ++j) {
        const double d = std::clamp(c.delta + wd * (2.0 * j / (m - 1) - 1.0), d_lo + eps, d_hi);
        const double v = f(xi, d);
        if (v > best.value) best = {xi, d, v};
      }
    }
    wx *= 0.6;
    wd *= 0.6;
  }
  return best;
}

/// Exact Pareto(xi) sample by inversion, independent of the library RNG helpers.
inline std::vector<double> pareto_sample(double xi, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = std::pow(1.0 - u(rng), -xi);
  return x;
}

/// Burr(xi, rho) by inversion of (1 + x^{-rho/xi})^{1/rho}.
inline std::vector<double> burr_sample(double xi, double rho, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = std::pow(std::pow(1.0 - u(rng), rho) - 1.0, -xi / rho);
  return x;
}

/// Descending excesses over the (k+1)-th largest value.
inline std::vector<double> top_excesses(std::vector<double> x, std::size_t k) {
  std::sort(x.begin(), x.end());
  const std::size_t n = x.size();
  std::vector<double> y(k);
  for (std::size_t j = 1; j <= k; ++j) y[j - 1] = x[n - j] / x[n - k - 1];
  return y;
}

}  // namespace oracle
