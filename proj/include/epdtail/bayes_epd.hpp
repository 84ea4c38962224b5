#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "epdtail/tail_data.hpp"

namespace epdtail {

/// Hyperparameters of the prior pi(xi) pi(delta): a gamma(shape, scale 1)
/// approximation of the MDI prior e^{-xi}/xi on xi, and a zero-mean normal
/// with variance sigma2 on delta, left-truncated at max(-1, 1/tau).
struct PriorSpec {
  double sigma2;
  double gamma_shape;
  double trunc_lower;

  /// Validates and fills trunc_lower from tau.
  static PriorSpec make(double sigma2, double tau, double gamma_shape = 1e-4);
};

/// sigma^2 = (k/n)^{-2 rho}.
double prior_variance(std::size_t k, std::size_t n, double rho);

/// Log density of gamma(shape, scale 1) at xi.
double log_prior_xi(double xi, double shape);

/// Per-excess log posterior (1/k)[l(xi, delta | y) + log pi(xi) + log pi(delta)].
/// log pi(xi) is the full gamma log density; for delta only the Gaussian
/// kernel -delta^2 / (2 sigma2) is kept, since the normal normalizer and the
/// truncation mass depend on (sigma2, tau) alone. Returns -infinity outside
/// the parameter region or at or below the truncation point.
double log_posterior(double xi, double delta, const ExcessSet& e, double tau,
                     const PriorSpec& prior);

std::array<double, 2> log_posterior_gradient(double xi, double delta, const ExcessSet& e,
                                             double tau, const PriorSpec& prior);

enum class BayesMethod { closed_form, mcmc, map };
std::string_view to_string(BayesMethod m);

struct Interval {
  double lower;
  double upper;
  double coverage;
};

struct BayesEstimate {
  double xi;
  double delta;
  BayesMethod method;
  std::optional<Interval> hpd_xi;
};

/// Centering constant of the delta equation in the closed-form system.
/// `derived` uses 1/(1 - H tau), which makes delta vanish when the moment
/// statistic E(tau) sits at its Pareto limit 1/(1 - xi tau); `printed` uses
/// 1/(H tau).
enum class Centering { derived, printed };

/// fixed_point iterates the implicit system (xi appears in D); one_step
/// evaluates D at xi = H, which is the first iterate.
enum class ClosedFormSolver { fixed_point, one_step };
std::string_view to_string(ClosedFormSolver s);

struct ClosedFormOptions {
  Centering centering = Centering::derived;
  /// Sign applied to the xi/(k sigma2) term of the denominator D.
  double prior_term_sign = 1.0;
  /// Drop the xi/(k sigma2) term: the first-order EPD-ML system.
  bool include_prior_term = true;
  ClosedFormSolver solver = ClosedFormSolver::one_step;
  double tolerance = 1e-10;
  int max_iterations = 200;
};

/// First-order posterior mode (xi_B, delta_B) from
///   xi    = H + delta (1 - E(tau))
///   delta = (1 - H tau) / D * (E(tau) - c)
/// with D = xi/(k sigma2) - [1 - 2(1 - xi tau) E(tau)
///        + (1 - 2 xi tau - xi tau^2) E(2 tau) - tau (1 - E(tau)) E(tau)].
/// one_step evaluates D at xi = H. fixed_point iterates from (H, 0); if the
/// iteration does not settle, the equivalent quadratic in xi is solved
/// directly. Throws NumericalError on a singular D or a system without a real
/// solution. The result is not checked against the EPD parameter region.
BayesEstimate bayes_closed_form(const ExcessSet& e, double tau, const PriorSpec& prior,
                                const ClosedFormOptions& opt = {});

/// The same system without the prior term: the first-order EPD-ML solution.
BayesEstimate ml_first_order(const ExcessSet& e, double tau, const ClosedFormOptions& opt = {});

/// Posterior mode found by numerical maximization of log_posterior.
BayesEstimate bayes_map(const ExcessSet& e, double tau, const PriorSpec& prior);

struct McmcConfig {
  std::size_t iterations = 12000;  // total, including burn-in
  std::size_t burn_in = 2000;
  double step_log_xi = 0.1;        // initial proposal sd on log xi
  double step_delta = 0.1;         // initial proposal sd on delta
  std::uint64_t seed = 1;
  /// Hold delta at this value and sample xi only.
  std::optional<double> fixed_delta;
  double target_acceptance = 0.234;
};

struct PosteriorDraw {
  double xi;
  double delta;
};

struct PosteriorChain {
  std::vector<PosteriorDraw> draws;
  std::vector<double> logpost;  // total log posterior k * log_posterior
  double acceptance_rate;       // after burn-in
  std::size_t burn_in;
  std::uint64_t seed;
};

/// Random-walk Metropolis on (log xi, delta). Proposal scales are adapted
/// during burn-in toward the target acceptance rate and frozen afterwards.
PosteriorChain metropolis_sample(const ExcessSet& e, double tau, const PriorSpec& prior,
                                 const McmcConfig& config);

/// Draw with the highest stored log posterior; earliest index on ties.
PosteriorDraw posterior_mode(const PosteriorChain& chain);

/// Shortest window of ceil((1 - alpha) m) sorted draws.
Interval hpd_interval(std::span<const double> draws, double alpha);

/// Posterior mode and HPD of xi from a fresh chain.
BayesEstimate bayes_mcmc(const ExcessSet& e, double tau, const PriorSpec& prior,
                         const McmcConfig& config, double alpha = 0.05);

double bayes_tail_prob(const SortedSample& s, std::size_t k, double x, const BayesEstimate& est,
                       double tau);

/// Centered moving average with an odd window. Near the ends the window
/// shrinks symmetrically. Non-finite entries are skipped inside a window and
/// stay non-finite in the output.
std::vector<double> smooth_path(std::span<const double> series, std::size_t window = 5);

}  // namespace epdtail
