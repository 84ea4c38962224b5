#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "epdtail/bayes_epd.hpp"
#include "epdtail/tail_data.hpp"

namespace epdtail {

enum class DistKind { frechet, burr, loggamma };

/// Simulation distributions with known tail behaviour.
///   frechet(xi):         survival 1 - exp(-x^{-1/xi})
///   burr(xi, rho):       survival (1 + x^{-rho/xi})^{1/rho}
///   loggamma(shape, rate): X = exp(G), G ~ gamma(shape, rate); tail index 1/rate
class SimDistribution {
 public:
  static SimDistribution frechet(double xi);
  static SimDistribution burr(double xi, double rho);
  static SimDistribution loggamma(double shape = 4.0, double rate = 2.0);

  /// Parses "frechet", "burr" or "loggamma" with default parameters.
  static SimDistribution from_name(std::string_view name);

  DistKind kind() const noexcept { return kind_; }
  std::string name() const;
  double true_xi() const noexcept { return true_xi_; }
  /// Zero for loggamma, which has no power-law second-order term.
  double true_rho() const noexcept { return true_rho_; }
  double param1() const noexcept { return p1_; }
  double param2() const noexcept { return p2_; }

  double survival(double x) const;

 private:
  SimDistribution(DistKind kind, double p1, double p2, double xi, double rho)
      : kind_(kind), p1_(p1), p2_(p2), true_xi_(xi), true_rho_(rho) {}
  DistKind kind_;
  double p1_;
  double p2_;
  double true_xi_;
  double true_rho_;
};

std::vector<double> draw_distribution(const SimDistribution& d, std::size_t n, std::uint64_t seed);
SortedSample sample_distribution(const SimDistribution& d, std::size_t n, std::uint64_t seed);

/// Q(p) = inf{x : F(x) >= p}.
double true_quantile(const SimDistribution& d, double p);

enum class Estimator { hill, epd_ml, bayes_closed, bayes_map, bayes_mcmc };
std::string_view to_string(Estimator e);
Estimator estimator_from_string(std::string_view s);

enum class RhoMode { fraga, fixed_minus_one };
std::string_view to_string(RhoMode m);

struct MCStudyConfig {
  SimDistribution dist = SimDistribution::burr(0.75, -0.75);
  std::size_t n = 500;
  std::size_t reps = 1000;
  std::vector<std::size_t> k_grid;  // empty: 10, 15, ..., n - 10
  std::vector<Estimator> estimators{Estimator::hill, Estimator::epd_ml, Estimator::bayes_closed};
  RhoMode rho_mode = RhoMode::fraga;
  std::optional<std::size_t> rho_k1;
  double rho_tuning = 0.0;
  double target_p = 1.0 / 500.0;
  std::uint64_t master_seed = 20240101;
  bool smooth = true;
  std::size_t smooth_window = 5;
  Centering centering = Centering::derived;
  ClosedFormSolver closed_solver = ClosedFormSolver::one_step;
  McmcConfig mcmc{};
  std::size_t threads = 1;
  double max_exclusion_fraction = 0.05;
};

/// Default grid: every k from 10 to n - 10 in steps of 5.
std::vector<std::size_t> default_k_grid(std::size_t n);

/// Throws InvalidArgument on an unusable configuration. Fills the default
/// k grid when it is empty.
MCStudyConfig validated(MCStudyConfig cfg);

std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t rep);

/// Per-replication estimates, indexed [estimator][k position]; NaN marks a
/// failed (excluded) cell.
struct ReplicationResult {
  std::vector<std::vector<double>> xi;
  std::vector<std::vector<double>> tail_prob;
  double rho = 0.0;
};

ReplicationResult run_replication(const MCStudyConfig& cfg, std::size_t rep);

struct MCCell {
  Estimator estimator;
  std::size_t k;
  std::size_t used;
  double bias;
  double variance;
  double mse;
  double rel_bias;
  double rel_variance;
  double rel_mse;
};

struct MCStudyResult {
  MCStudyConfig config;
  double true_xi;
  double x_level;  // Q(1 - target_p)
  std::vector<MCCell> cells;  // estimator-major, k ascending
  std::size_t reps_used;
  std::size_t total_cells;
  std::size_t excluded_cells;
  std::vector<std::size_t> excluded_by_estimator;
  double runtime_seconds;

  const MCCell& cell(Estimator e, std::size_t k) const;
};

/// Replicated estimation with per-replication seeds derived from the master
/// seed. Output does not depend on the thread count.
MCStudyResult run_study(const MCStudyConfig& cfg);

/// Resolved configuration as written into study and manifest files.
nlohmann::json study_config_json(const MCStudyConfig& c);

/// One row per (estimator, k); 12 significant digits.
std::string study_to_csv(const MCStudyResult& r);
/// Configuration, seeds, exclusion counts and all cells. Runtime is left out
/// so that reruns are byte-identical.
std::string study_to_json(const MCStudyResult& r);

}  // namespace epdtail
