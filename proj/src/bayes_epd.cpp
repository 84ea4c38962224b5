#include "epdtail/bayes_epd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "epdtail/classical.hpp"
#include "epdtail/epd_model.hpp"
#include "epdtail/error.hpp"
#include "epdtail/random.hpp"
#include "likelihood_kernel.hpp"
#include "optimize.hpp"

namespace epdtail {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

class PosteriorKernel {
 public:
  PosteriorKernel(const ExcessSet& e, double tau, const PriorSpec& prior)
      : lik_(e, tau), prior_(prior), inv_k_(1.0 / static_cast<double>(e.k())) {}

  double value(double xi, double delta) const {
    if (!(delta > prior_.trunc_lower)) return kNegInf;
    const double l = lik_.value(xi, delta);
    if (!std::isfinite(l)) return kNegInf;
    return l + inv_k_ * (log_prior_xi(xi, prior_.gamma_shape) -
                         0.5 * delta * delta / prior_.sigma2);
  }

  std::array<double, 2> gradient(double xi, double delta) const {
    auto g = lik_.gradient(xi, delta);
    g[0] += inv_k_ * ((prior_.gamma_shape - 1.0) / xi - 1.0);
    g[1] += inv_k_ * (-delta / prior_.sigma2);
    return g;
  }

  double lower() const noexcept { return std::max(lik_.lower(), prior_.trunc_lower); }
  double k() const noexcept { return 1.0 / inv_k_; }

 private:
  detail::LikelihoodKernel lik_;
  PriorSpec prior_;
  double inv_k_;
};

void require_fit_size(const ExcessSet& e) {
  if (e.k() < kMinFitExcesses)
    throw InvalidArgument("Bayes estimation needs at least " + std::to_string(kMinFitExcesses) +
                          " excesses, got " + std::to_string(e.k()));
}

BayesEstimate solve_first_order(const ExcessSet& e, double tau, double k_sigma2,
                                const ClosedFormOptions& opt) {
  require_fit_size(e);
  if (!(tau < 0.0)) throw InvalidArgument("closed form requires tau < 0");
  const double h = hill(e).xi;
  if (!(h > 0.0)) throw NumericalError("closed form: Hill estimate is zero");
  const double e1 = moment_stat(e, tau);
  const double e2 = moment_stat(e, 2.0 * tau);
  const double c = opt.centering == Centering::derived ? 1.0 / (1.0 - h * tau) : 1.0 / (h * tau);
  const double numerator = (1.0 - h * tau) * (e1 - c);

  double xi = h;
  double delta = 0.0;
  // The first-order system is not constrained to the EPD region; callers
  // that need a distribution (tail probabilities) validate via EPDParams.
  auto finish = [&](double x, double d) -> BayesEstimate {
    if (!std::isfinite(x) || !std::isfinite(d))
      throw NumericalError("closed form: non-finite solution");
    return {x, d, BayesMethod::closed_form, std::nullopt};
  };
  const double prior_coef = opt.include_prior_term ? opt.prior_term_sign / k_sigma2 : 0.0;
  const int max_iter = opt.solver == ClosedFormSolver::one_step ? 1 : opt.max_iterations;
  for (int it = 0; it < max_iter; ++it) {
    const double bracket = 1.0 - 2.0 * (1.0 - xi * tau) * e1 +
                           (1.0 - 2.0 * xi * tau - xi * tau * tau) * e2 -
                           tau * (1.0 - e1) * e1;
    const double d = prior_coef * xi - bracket;
    if (std::abs(d) < 1e-12) throw NumericalError("closed form: singular denominator D");
    delta = numerator / d;
    const double xi_next = h + delta * (1.0 - e1);
    if (opt.solver == ClosedFormSolver::one_step) return finish(xi_next, delta);
    if (!std::isfinite(xi_next)) break;
    const bool done = std::abs(xi_next - xi) < opt.tolerance;
    xi = xi_next;
    if (done) return finish(xi, delta);
  }

  // The iteration can cycle when it is not contractive. D is affine in xi,
  // D = a xi + b, so the system reduces to a u^2 + (a H + b) u = c0 with
  // u = xi - H. Take the root that tends to 0 with c0.
  const double a = prior_coef - 2.0 * tau * e1 + (2.0 * tau + tau * tau) * e2;
  const double b = -(1.0 - 2.0 * e1 + e2 - tau * (1.0 - e1) * e1);
  const double c0 = (1.0 - e1) * numerator;
  const double bb = a * h + b;
  const double disc = bb * bb + 4.0 * a * c0;
  if (!(disc >= 0.0)) throw NumericalError("closed form: system has no real solution");
  const double q = bb + std::copysign(std::sqrt(disc), bb);
  if (q == 0.0) throw NumericalError("closed form: singular denominator D");
  xi = h + 2.0 * c0 / q;
  const double d = a * xi + b;
  if (std::abs(d) < 1e-12) throw NumericalError("closed form: singular denominator D");
  delta = numerator / d;
  if (!std::isfinite(xi) || !std::isfinite(delta))
    throw NumericalError("closed form: fixed-point iteration did not converge");
  return finish(xi, delta);
}

}  // namespace

PriorSpec PriorSpec::make(double sigma2, double tau, double gamma_shape) {
  if (!(sigma2 > 0.0)) throw InvalidArgument("prior variance must be positive");
  if (!(gamma_shape > 0.0)) throw InvalidArgument("gamma shape must be positive");
  return {sigma2, gamma_shape, delta_lower_bound(tau)};
}

double prior_variance(std::size_t k, std::size_t n, double rho) {
  if (k < 1 || k >= n) throw InvalidArgument("prior_variance requires 1 <= k < n");
  if (!(rho < 0.0)) throw InvalidArgument("prior_variance requires rho < 0");
  return std::pow(static_cast<double>(k) / static_cast<double>(n), -2.0 * rho);
}

double log_prior_xi(double xi, double shape) {
  if (!(xi > 0.0)) return kNegInf;
  return (shape - 1.0) * std::log(xi) - xi - std::lgamma(shape);
}

double log_posterior(double xi, double delta, const ExcessSet& e, double tau,
                     const PriorSpec& prior) {
  if (!(tau < 0.0)) return kNegInf;
  return PosteriorKernel(e, tau, prior).value(xi, delta);
}

std::array<double, 2> log_posterior_gradient(double xi, double delta, const ExcessSet& e,
                                             double tau, const PriorSpec& prior) {
  if (!in_epd_region(xi, delta, tau) || !(delta > prior.trunc_lower))
    throw InvalidArgument("gradient requested outside the posterior support");
  return PosteriorKernel(e, tau, prior).gradient(xi, delta);
}

std::string_view to_string(ClosedFormSolver s) {
  return s == ClosedFormSolver::one_step ? "one_step" : "fixed_point";
}

std::string_view to_string(BayesMethod m) {
  switch (m) {
    case BayesMethod::closed_form: return "closed";
    case BayesMethod::mcmc: return "mcmc";
    case BayesMethod::map: return "map";
  }
  return "unknown";
}

BayesEstimate bayes_closed_form(const ExcessSet& e, double tau, const PriorSpec& prior,
                                const ClosedFormOptions& opt) {
  return solve_first_order(e, tau, static_cast<double>(e.k()) * prior.sigma2, opt);
}

BayesEstimate ml_first_order(const ExcessSet& e, double tau, const ClosedFormOptions& opt) {
  ClosedFormOptions o = opt;
  o.include_prior_term = false;
  return solve_first_order(e, tau, 1.0, o);
}

BayesEstimate bayes_map(const ExcessSet& e, double tau, const PriorSpec& prior) {
  require_fit_size(e);
  const double h = hill(e).xi;
  if (!(h > 0.0)) throw NumericalError("posterior mode: Hill estimate is zero");
  const PosteriorKernel kernel(e, tau, prior);
  const auto r = detail::fit_xi_delta(
      [&](double xi, double d) { return kernel.value(xi, d); },
      [&](double xi, double d) { return kernel.gradient(xi, d); }, h, 0.0, kernel.lower(),
      kDeltaMax);
  if (!r.converged || !std::isfinite(r.value))
    throw NumericalError("posterior mode: optimizer did not converge");
  return {r.xi, r.delta, BayesMethod::map, std::nullopt};
}

PosteriorChain metropolis_sample(const ExcessSet& e, double tau, const PriorSpec& prior,
                                 const McmcConfig& cfg) {
  if (!(cfg.iterations > cfg.burn_in))
    throw InvalidArgument("MCMC iterations must exceed burn-in");
  if (!(cfg.step_log_xi > 0.0) || !(cfg.step_delta > 0.0))
    throw InvalidArgument("MCMC step scales must be positive");
  if (!(cfg.target_acceptance > 0.0 && cfg.target_acceptance < 1.0))
    throw InvalidArgument("MCMC target acceptance must be in (0, 1)");
  require_fit_size(e);
  const double h = hill(e).xi;
  if (!(h > 0.0)) throw NumericalError("MCMC: Hill estimate is zero");

  const PosteriorKernel kernel(e, tau, prior);
  const double kk = kernel.k();
  const bool one_d = cfg.fixed_delta.has_value();
  if (one_d && !std::isfinite(kernel.value(h, *cfg.fixed_delta)))
    throw InvalidArgument("MCMC: fixed delta outside the posterior support");

  // Total (not per-excess) log posterior at xi = exp(u). The acceptance
  // ratio adds u, the log-Jacobian of that map.
  auto total = [&](double u, double d) { return kk * kernel.value(std::exp(u), d); };

  Rng rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  double u = std::log(h);
  double d = one_d ? *cfg.fixed_delta : 0.0;
  double lp = total(u, d);

  // Proposal: theta' = theta + scale * L z, with L lower-triangular.
  double l00 = cfg.step_log_xi, l10 = 0.0, l11 = cfg.step_delta;
  double log_scale = 0.0;
  const std::size_t phase_b = cfg.burn_in / 2;
  std::vector<std::array<double, 2>> history;
  history.reserve(phase_b);

  PosteriorChain chain;
  chain.burn_in = cfg.burn_in;
  chain.seed = cfg.seed;
  chain.draws.reserve(cfg.iterations - cfg.burn_in);
  chain.logpost.reserve(cfg.iterations - cfg.burn_in);
  std::size_t accepted_after = 0;
  std::size_t adapt_t = 0;

  for (std::size_t t = 0; t < cfg.iterations; ++t) {
    if (t == phase_b && phase_b >= 50 && !one_d) {
      // Shape the proposal after the second half of phase-A draws.
      const std::size_t from = history.size() / 2;
      const double m = static_cast<double>(history.size() - from);
      double mu0 = 0.0, mu1 = 0.0;
      for (std::size_t i = from; i < history.size(); ++i) mu0 += history[i][0], mu1 += history[i][1];
      mu0 /= m;
      mu1 /= m;
      double c00 = 0.0, c01 = 0.0, c11 = 0.0;
      for (std::size_t i = from; i < history.size(); ++i) {
        const double a = history[i][0] - mu0, b = history[i][1] - mu1;
        c00 += a * a, c01 += a * b, c11 += b * b;
      }
      c00 /= m, c01 /= m, c11 /= m;
      const double f = 2.38 * 2.38 / 2.0;
      if (c00 > 0.0 && c11 > 0.0 && c00 * c11 - c01 * c01 > 1e-6 * c00 * c11) {
        l00 = std::sqrt(f * c00);
        l10 = f * c01 / l00;
        l11 = std::sqrt(f * c11 - l10 * l10);
        log_scale = 0.0;
        adapt_t = 0;
      }
    }
    const double scale = std::exp(log_scale);
    const double z0 = normal(rng);
    const double z1 = one_d ? 0.0 : normal(rng);
    const double u_new = u + scale * l00 * z0;
    const double d_new = one_d ? d : d + scale * (l10 * z0 + l11 * z1);
    const double lp_new = total(u_new, d_new);
    const double log_ratio = (lp_new + u_new) - (lp + u);
    const bool accept = std::isfinite(lp_new) && std::log(uniform_open01(rng)) < log_ratio;
    if (accept) {
      u = u_new;
      d = d_new;
      lp = lp_new;
    }
    if (t < cfg.burn_in) {
      const double gain = 1.0 / std::pow(static_cast<double>(++adapt_t) + 1.0, 0.6);
      log_scale += gain * ((accept ? 1.0 : 0.0) - cfg.target_acceptance);
      if (t < phase_b) history.push_back({u, d});
    } else {
      accepted_after += accept ? 1 : 0;
      chain.draws.push_back({std::exp(u), d});
      chain.logpost.push_back(lp);
    }
  }
  chain.acceptance_rate =
      static_cast<double>(accepted_after) / static_cast<double>(chain.draws.size());
  if (accepted_after == 0 || accepted_after == chain.draws.size())
    throw NumericalError("MCMC: degenerate chain (acceptance rate " +
                         std::to_string(chain.acceptance_rate) + ")");
  return chain;
}

PosteriorDraw posterior_mode(const PosteriorChain& chain) {
  if (chain.draws.empty() || chain.draws.size() != chain.logpost.size())
    throw InvalidArgument("posterior_mode needs a non-empty chain");
  std::size_t best = 0;
  for (std::size_t i = 1; i < chain.logpost.size(); ++i)
    if (chain.logpost[i] > chain.logpost[best]) best = i;
  return chain.draws[best];
}

Interval hpd_interval(std::span<const double> draws, double alpha) {
  const std::size_t m = draws.size();
  if (m < 2) throw InvalidArgument("hpd_interval needs at least 2 draws");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("hpd_interval requires 0 < alpha < 1");
  std::vector<double> x(draws.begin(), draws.end());
  for (double v : x)
    if (!std::isfinite(v)) throw InvalidArgument("hpd_interval: non-finite draw");
  std::sort(x.begin(), x.end());
  auto w = static_cast<std::size_t>(std::ceil((1.0 - alpha) * static_cast<double>(m) - 1e-9));
  w = std::clamp<std::size_t>(w, 1, m);
  std::size_t best = 0;
  double best_width = x[w - 1] - x[0];
  for (std::size_t i = 1; i + w <= m; ++i) {
    const double width = x[i + w - 1] - x[i];
    if (width < best_width) {
      best_width = width;
      best = i;
    }
  }
  return {x[best], x[best + w - 1], static_cast<double>(w) / static_cast<double>(m)};
}

BayesEstimate bayes_mcmc(const ExcessSet& e, double tau, const PriorSpec& prior,
                         const McmcConfig& config, double alpha) {
  const auto chain = metropolis_sample(e, tau, prior, config);
  const auto mode = posterior_mode(chain);
  std::vector<double> xs;
  xs.reserve(chain.draws.size());
  for (const auto& dr : chain.draws) xs.push_back(dr.xi);
  return {mode.xi, mode.delta, BayesMethod::mcmc, hpd_interval(xs, alpha)};
}

double bayes_tail_prob(const SortedSample& s, std::size_t k, double x, const BayesEstimate& est,
                       double tau) {
  return epd_tail_prob(s, k, x, EPDParams(est.xi, est.delta, tau));
}

std::vector<double> smooth_path(std::span<const double> series, std::size_t window) {
  if (window == 0 || window % 2 == 0) throw InvalidArgument("smoothing window must be odd");
  const std::size_t r = window / 2;
  const std::size_t len = series.size();
  std::vector<double> out(len, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < len; ++i) {
    if (!std::isfinite(series[i])) continue;
    const std::size_t h = std::min({r, i, len - 1 - i});
    double sum = 0.0;
    std::size_t cnt = 0;
    for (std::size_t j = i - h; j <= i + h; ++j) {
      if (std::isfinite(series[j])) {
        sum += series[j];
        ++cnt;
      }
    }
    out[i] = sum / static_cast<double>(cnt);
  }
  return out;
}

}  // namespace epdtail
