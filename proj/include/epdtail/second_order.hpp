#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "epdtail/tail_data.hpp"

namespace epdtail {

enum class RhoSource { estimated, fixed_minus_one, user };

std::string_view to_string(RhoSource s);

/// Second-order pair at one threshold: tau = rho / hill.
struct SecondOrderParams {
  double rho;
  double tau;
  double hill;
  RhoSource source;
};

/// Default number of top order statistics used by rho_fraga:
/// min(n - 1, floor(n^0.975)).
std::size_t default_rho_k1(std::size_t n);

/// Three-moment ratio estimator of rho built from log-spacings of the top k1
/// order statistics. `tuning` is 0 (logarithmic form) or 1 (power form).
/// Throws NumericalError when the statistics are degenerate.
double rho_fraga(const SortedSample& s, std::size_t k1, double tuning = 0.0);

/// min(-0.5, rho).
double clamp_rho(double rho) noexcept;

/// rho / hill. Throws NumericalError when hill is zero.
double tau_hat(double rho, double hill);

/// rho_fraga with the default k1, clamped; falls back to rho = -1 when the
/// estimator is not computable.
struct RhoChoice {
  double rho;
  RhoSource source;
};
RhoChoice estimate_rho(const SortedSample& s, std::optional<std::size_t> k1 = std::nullopt,
                       double tuning = 0.0);

SecondOrderParams make_second_order(double rho, double hill, RhoSource source);

}  // namespace epdtail
