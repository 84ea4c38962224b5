#pragma once

namespace epdtail {

/// Limiting regime of sqrt(k)(xi_B - xi): tail index xi, second-order rho,
/// bias scale lambda = lim sqrt(k) a(n/k) and prior strength
/// zeta = xi^2 (1 - 2 rho)(1 - rho)^2 / mu with mu = lim k sigma^2.
/// zeta may be +infinity (the Hill limit, mu -> 0).
struct AsymptoticRegime {
  double xi;
  double rho;
  double lambda;
  double zeta;

  /// Validates xi > 0, rho < 0, lambda >= 0, zeta >= 0.
  AsymptoticRegime(double xi_, double rho_, double lambda_, double zeta_);
  /// Regime with zeta derived from mu > 0.
  static AsymptoticRegime from_mu(double xi, double rho, double lambda, double mu);
};

/// zeta corresponding to mu: xi^2 (1 - 2 rho)(1 - rho)^2 / mu.
double zeta_from_mu(double xi, double rho, double mu);

/// Asymptotic mean (lambda rho / (1 - rho)) zeta / (zeta + rho^4).
double asym_mean(const AsymptoticRegime& r);

/// Asymptotic variance
/// xi^2 / (1 + zeta rho^-4)^2 [((1 - rho)/rho)^2 + zeta^2/rho^8 + 2 zeta/rho^4].
double asym_var(const AsymptoticRegime& r);

/// The same variance rewritten without negative powers of rho:
/// xi^2 [rho^6 (1 - rho)^2 + zeta^2 + 2 zeta rho^4] / (zeta + rho^4)^2.
double asym_var_stable(const AsymptoticRegime& r);

/// xi^2 (1 - 2 rho) / lambda^2; +infinity at lambda = 0.
double zeta_opt(double xi, double rho, double lambda);

/// (1 - rho)^2 lambda^2.
double mu_opt(double rho, double lambda);

/// (1 - rho)^2 a(n/k)^2 for a caller-supplied a(n/k).
double sigma2_opt(double rho, double a_nk);

/// Optimal-prior MSE in the factored form
/// xi^2 + xi^2 rho^2 (1 - 2 rho)/(1 - rho)^2 lambda^2
///        (xi^2 (1 - 2 rho) + lambda^2 rho^4 (1 - rho)^2) / (xi^2 (1 - 2 rho) + lambda^2 rho^4)^2.
double mse_opt(double xi, double rho, double lambda);

/// The same MSE as a weighted average of the Hill and EPD-ML limiting MSEs.
double mse_opt_weighted(double xi, double rho, double lambda);

/// The increasing-in-lambda^2 correction term of mse_opt (mse_opt - xi^2).
double mse_opt_excess(double xi, double rho, double lambda);

enum class LimitKind { hill, epd_ml };

/// hill: xi^2 + lambda^2 rho^2 / (1 - rho)^2; epd_ml: xi^2 ((1 - rho)/rho)^2.
double limit_mse(LimitKind kind, double xi, double rho, double lambda);

}  // namespace epdtail
