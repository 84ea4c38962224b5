#include "epdtail/second_order.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epdtail/error.hpp"

namespace epdtail {

std::string_view to_string(RhoSource s) {
  switch (s) {
    case RhoSource::estimated: return "estimated";
    case RhoSource::fixed_minus_one: return "fixed_minus_one";
    case RhoSource::user: return "user";
  }
  return "unknown";
}

std::size_t default_rho_k1(std::size_t n) {
  const auto k1 = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 0.975)));
  return std::min(n - 1, k1);
}

double rho_fraga(const SortedSample& s, std::size_t k1, double tuning) {
  const std::size_t n = s.size();
  if (k1 < 10) throw InvalidArgument("rho_fraga needs k1 >= 10");
  if (k1 > n - 1) throw InvalidArgument("rho_fraga needs k1 <= n-1");
  if (tuning != 0.0 && tuning != 1.0) throw InvalidArgument("rho_fraga tuning must be 0 or 1");

  const auto v = s.values();
  const double log_t = std::log(v[n - k1 - 1]);
  double m1 = 0.0, m2 = 0.0, m3 = 0.0;
  for (std::size_t i = 1; i <= k1; ++i) {
    const double l = std::log(v[n - i]) - log_t;
    m1 += l;
    m2 += l * l;
    m3 += l * l * l;
  }
  const double kk = static_cast<double>(k1);
  m1 /= kk;
  m2 /= kk;
  m3 /= kk;
  if (!(m1 > 0.0) || !(m2 > 0.0) || !(m3 > 0.0))
    throw NumericalError("rho_fraga: degenerate log-moment statistics");

  double num, den;
  if (tuning == 0.0) {
    num = std::log(m1) - 0.5 * std::log(m2 / 2.0);
    den = 0.5 * std::log(m2 / 2.0) - std::log(m3 / 6.0) / 3.0;
  } else {
    num = m1 - std::sqrt(m2 / 2.0);
    den = std::sqrt(m2 / 2.0) - std::cbrt(m3 / 6.0);
  }
  if (!(den > 0.0)) throw NumericalError("rho_fraga: nonpositive ratio denominator");
  const double t = num / den;
  if (t == 3.0 || !std::isfinite(t)) throw NumericalError("rho_fraga: ratio statistic is singular");
  const double rho = -std::abs(3.0 * (t - 1.0) / (t - 3.0));
  if (!(rho < 0.0)) throw NumericalError("rho_fraga: estimate is not negative");
  return rho;
}

double clamp_rho(double rho) noexcept { return std::min(-0.5, rho); }

double tau_hat(double rho, double hill) {
  if (!(rho < 0.0)) throw InvalidArgument("tau_hat requires rho < 0");
  if (!(hill > 0.0)) throw NumericalError("tau_hat: Hill estimate is zero (all-tie excesses)");
  return rho / hill;
}

RhoChoice estimate_rho(const SortedSample& s, std::optional<std::size_t> k1, double tuning) {
  const std::size_t used = k1.value_or(default_rho_k1(s.size()));
  if (!k1 && used < 10) return {-1.0, RhoSource::fixed_minus_one};
  try {
    return {clamp_rho(rho_fraga(s, used, tuning)),
            RhoSource::estimated};
  } catch (const NumericalError&) {
    return {-1.0, RhoSource::fixed_minus_one};
  }
}

SecondOrderParams make_second_order(double rho, double hill, RhoSource source) {
  return {rho, tau_hat(rho, hill), hill, source};
}

}  // namespace epdtail
