#include "epdtail/asymptotics.hpp"

#include <cmath>
#include <limits>

#include "epdtail/error.hpp"

namespace epdtail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sq(double x) { return x * x; }

}  // namespace

AsymptoticRegime::AsymptoticRegime(double xi_, double rho_, double lambda_, double zeta_)
    : xi(xi_), rho(rho_), lambda(lambda_), zeta(zeta_) {
  if (!(xi > 0.0)) throw InvalidArgument("regime requires xi > 0");
  if (!(rho < 0.0)) throw InvalidArgument("regime requires rho < 0");
  if (!(lambda >= 0.0)) throw InvalidArgument("regime requires lambda >= 0");
  if (!(zeta >= 0.0)) throw InvalidArgument("regime requires zeta >= 0");
}

AsymptoticRegime AsymptoticRegime::from_mu(double xi, double rho, double lambda, double mu) {
  return {xi, rho, lambda, zeta_from_mu(xi, rho, mu)};
}

double zeta_from_mu(double xi, double rho, double mu) {
  if (!(mu > 0.0)) throw InvalidArgument("mu must be positive");
  return sq(xi) * (1.0 - 2.0 * rho) * sq(1.0 - rho) / mu;
}

double asym_mean(const AsymptoticRegime& r) {
  const double hill_bias = r.lambda * r.rho / (1.0 - r.rho);
  if (std::isinf(r.zeta)) return hill_bias;
  return hill_bias * r.zeta / (r.zeta + std::pow(r.rho, 4));
}

double asym_var(const AsymptoticRegime& r) {
  if (std::isinf(r.zeta)) return sq(r.xi);
  const double rho4 = std::pow(r.rho, 4);
  const double rho8 = std::pow(r.rho, 8);
  return sq(r.xi) / sq(1.0 + r.zeta / rho4) *
         (sq((1.0 - r.rho) / r.rho) + sq(r.zeta) / rho8 + 2.0 * r.zeta / rho4);
}

double asym_var_stable(const AsymptoticRegime& r) {
  if (std::isinf(r.zeta)) return sq(r.xi);
  const double rho4 = std::pow(r.rho, 4);
  const double rho6 = std::pow(r.rho, 6);
  return sq(r.xi) * (rho6 * sq(1.0 - r.rho) + sq(r.zeta) + 2.0 * r.zeta * rho4) /
         sq(r.zeta + rho4);
}

double zeta_opt(double xi, double rho, double lambda) {
  if (lambda == 0.0) return kInf;
  return sq(xi) * (1.0 - 2.0 * rho) / sq(lambda);
}

double mu_opt(double rho, double lambda) { return sq(1.0 - rho) * sq(lambda); }

double sigma2_opt(double rho, double a_nk) { return sq(1.0 - rho) * sq(a_nk); }

double mse_opt_excess(double xi, double rho, double lambda) {
  const double x2 = sq(xi);
  const double l2 = sq(lambda);
  const double rho4 = std::pow(rho, 4);
  const double base = x2 * (1.0 - 2.0 * rho);
  return x2 * sq(rho) * (1.0 - 2.0 * rho) / sq(1.0 - rho) * l2 *
         (base + l2 * rho4 * sq(1.0 - rho)) / sq(base + l2 * rho4);
}

double mse_opt(double xi, double rho, double lambda) {
  return sq(xi) + mse_opt_excess(xi, rho, lambda);
}

double mse_opt_weighted(double xi, double rho, double lambda) {
  const double x2 = sq(xi);
  const double l2 = sq(lambda);
  const double rho4 = std::pow(rho, 4);
  const double rho8 = std::pow(rho, 8);
  const double w_hill = sq(x2) * sq(1.0 - 2.0 * rho);
  const double w_mid = 2.0 * x2 * rho4 * l2 * (1.0 - 2.0 * rho);
  const double w_ml = sq(l2) * rho8;
  return (w_hill * limit_mse(LimitKind::hill, xi, rho, lambda) + w_mid * x2 +
          w_ml * limit_mse(LimitKind::epd_ml, xi, rho, lambda)) /
         (w_hill + w_mid + w_ml);
}

double limit_mse(LimitKind kind, double xi, double rho, double lambda) {
  switch (kind) {
    case LimitKind::hill: return sq(xi) + sq(lambda) * sq(rho) / sq(1.0 - rho);
    case LimitKind::epd_ml: return sq(xi) * sq((1.0 - rho) / rho);
  }
  throw InvalidArgument("unknown limit kind");
}

}  // namespace epdtail
