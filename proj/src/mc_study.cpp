#include "epdtail/mc_study.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>
#include <nlohmann/json.hpp>

#include "epdtail/classical.hpp"
#include "epdtail/epd_model.hpp"
#include "epdtail/error.hpp"
#include "epdtail/format.hpp"
#include "epdtail/random.hpp"
#include "epdtail/second_order.hpp"

namespace epdtail {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_bayes(Estimator e) {
  return e == Estimator::bayes_closed || e == Estimator::bayes_map || e == Estimator::bayes_mcmc;
}

}  // namespace

SimDistribution SimDistribution::frechet(double xi) {
  if (!(xi > 0.0)) throw InvalidArgument("frechet requires xi > 0");
  return {DistKind::frechet, xi, 0.0, xi, -1.0};
}

SimDistribution SimDistribution::burr(double xi, double rho) {
  if (!(xi > 0.0) || !(rho < 0.0)) throw InvalidArgument("burr requires xi > 0 and rho < 0");
  return {DistKind::burr, xi, rho, xi, rho};
}

SimDistribution SimDistribution::loggamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) throw InvalidArgument("loggamma requires shape, rate > 0");
  return {DistKind::loggamma, shape, rate, 1.0 / rate, 0.0};
}

SimDistribution SimDistribution::from_name(std::string_view name) {
  if (name == "frechet") return frechet(0.5);
  if (name == "burr") return burr(0.75, -0.75);
  if (name == "loggamma") return loggamma(4.0, 2.0);
  throw InvalidArgument("unknown distribution '" + std::string(name) +
                        "'; supported: frechet, burr, loggamma");
}

std::string SimDistribution::name() const {
  switch (kind_) {
    case DistKind::frechet: return "frechet";
    case DistKind::burr: return "burr";
    case DistKind::loggamma: return "loggamma";
  }
  return "unknown";
}

double SimDistribution::survival(double x) const {
  switch (kind_) {
    case DistKind::frechet:
      if (x <= 0.0) return 1.0;
      return -std::expm1(-std::pow(x, -1.0 / p1_));
    case DistKind::burr:
      if (x <= 0.0) return 1.0;
      return std::pow(1.0 + std::pow(x, -p2_ / p1_), 1.0 / p2_);
    case DistKind::loggamma:
      if (x <= 1.0) return 1.0;
      return boost::math::gamma_q(p1_, p2_ * std::log(x));
  }
  return kNaN;
}

double true_quantile(const SimDistribution& d, double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("true_quantile requires 0 < p < 1");
  switch (d.kind()) {
    case DistKind::frechet:
      return std::pow(-std::log(p), -d.param1());
    case DistKind::burr: {
      const double xi = d.param1(), rho = d.param2();
      return std::pow(std::pow(1.0 - p, rho) - 1.0, -xi / rho);
    }
    case DistKind::loggamma: {
      // Bisection on g = log x, where survival(e^g) = Q(shape, rate g).
      const double target = 1.0 - p;
      double lo = 0.0, hi = 1.0;
      while (boost::math::gamma_q(d.param1(), d.param2() * hi) > target) hi *= 2.0;
      for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (boost::math::gamma_q(d.param1(), d.param2() * mid) > target) lo = mid; else hi = mid;
      }
      return std::exp(0.5 * (lo + hi));
    }
  }
  return kNaN;
}

std::vector<double> draw_distribution(const SimDistribution& d, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> x(n);
  switch (d.kind()) {
    case DistKind::frechet:
      for (auto& v : x) v = std::pow(-std::log(uniform_open01(rng)), -d.param1());
      break;
    case DistKind::burr: {
      const double xi = d.param1(), rho = d.param2();
      // Survival u = (1 + x^{-rho/xi})^{1/rho}  =>  x = (u^rho - 1)^{-xi/rho}.
      for (auto& v : x) v = std::pow(std::pow(uniform_open01(rng), rho) - 1.0, -xi / rho);
      break;
    }
    case DistKind::loggamma: {
      std::gamma_distribution<double> g(d.param1(), 1.0 / d.param2());
      for (auto& v : x) v = std::exp(g(rng));
      break;
    }
  }
  return x;
}

SortedSample sample_distribution(const SimDistribution& d, std::size_t n, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("sample size must be at least 2");
  return SortedSample(draw_distribution(d, n, seed));
}

std::string_view to_string(Estimator e) {
  switch (e) {
    case Estimator::hill: return "hill";
    case Estimator::epd_ml: return "epd_ml";
    case Estimator::bayes_closed: return "bayes_closed";
    case Estimator::bayes_map: return "bayes_map";
    case Estimator::bayes_mcmc: return "bayes_mcmc";
  }
  return "unknown";
}

Estimator estimator_from_string(std::string_view s) {
  for (auto e : {Estimator::hill, Estimator::epd_ml, Estimator::bayes_closed, Estimator::bayes_map,
                 Estimator::bayes_mcmc})
    if (to_string(e) == s) return e;
  throw InvalidArgument("unknown estimator '" + std::string(s) +
                        "'; supported: hill, epd_ml, bayes_closed, bayes_map, bayes_mcmc");
}

std::string_view to_string(RhoMode m) {
  return m == RhoMode::fraga ? "fraga" : "fixed_minus_one";
}

std::vector<std::size_t> default_k_grid(std::size_t n) {
  std::vector<std::size_t> g;
  for (std::size_t k = 10; k + 10 <= n; k += 5) g.push_back(k);
  return g;
}

MCStudyConfig validated(MCStudyConfig cfg) {
  if (cfg.reps < 1) throw InvalidArgument("reps must be at least 1");
  if (cfg.n < 21) throw InvalidArgument("sample size must be at least 21");
  if (cfg.k_grid.empty()) cfg.k_grid = default_k_grid(cfg.n);
  std::sort(cfg.k_grid.begin(), cfg.k_grid.end());
  cfg.k_grid.erase(std::unique(cfg.k_grid.begin(), cfg.k_grid.end()), cfg.k_grid.end());
  if (cfg.k_grid.front() < kMinFitExcesses || cfg.k_grid.back() > cfg.n - 1)
    throw InvalidArgument("k grid must lie in [10, n-1]");
  if (cfg.estimators.empty()) throw InvalidArgument("no estimators requested");
  if (!(cfg.target_p > 0.0 && cfg.target_p < 1.0))
    throw InvalidArgument("target_p must be in (0, 1)");
  if (cfg.smooth_window == 0 || cfg.smooth_window % 2 == 0)
    throw InvalidArgument("smoothing window must be odd");
  if (cfg.threads == 0) cfg.threads = 1;
  return cfg;
}

std::uint64_t replication_seed(std::uint64_t master_seed, std::size_t rep) {
  return derive_seed(master_seed, rep);
}

ReplicationResult run_replication(const MCStudyConfig& cfg, std::size_t rep) {
  const std::uint64_t seed = replication_seed(cfg.master_seed, rep);
  const SortedSample s = sample_distribution(cfg.dist, cfg.n, seed);
  const double x = true_quantile(cfg.dist, 1.0 - cfg.target_p);
  const std::size_t nk = cfg.k_grid.size();

  ReplicationResult out;
  out.rho = cfg.rho_mode == RhoMode::fraga ? estimate_rho(s, cfg.rho_k1, cfg.rho_tuning).rho : -1.0;

  std::vector<double> tau(nk, kNaN);
  std::vector<ExcessSet> ex;
  ex.reserve(nk);
  std::vector<double> hills(nk);
  for (std::size_t i = 0; i < nk; ++i) {
    ex.push_back(excesses(s, cfg.k_grid[i]));
    hills[i] = hill(ex.back()).xi;
    if (hills[i] > 0.0) tau[i] = tau_hat(out.rho, hills[i]);
  }

  for (const Estimator est : cfg.estimators) {
    std::vector<double> xi(nk, kNaN), delta(nk, kNaN), p(nk, kNaN);
    for (std::size_t i = 0; i < nk; ++i) {
      const std::size_t k = cfg.k_grid[i];
      try {
        switch (est) {
          case Estimator::hill:
            xi[i] = hills[i];
            delta[i] = 0.0;
            break;
          case Estimator::epd_ml: {
            const auto fit = epd_ml_fit(ex[i], tau[i]);
            if (!fit.converged) throw NumericalError("EPD fit did not converge");
            xi[i] = fit.params.xi;
            delta[i] = fit.params.delta;
            break;
          }
          case Estimator::bayes_closed:
          case Estimator::bayes_map:
          case Estimator::bayes_mcmc: {
            const auto prior = PriorSpec::make(prior_variance(k, cfg.n, out.rho), tau[i]);
            BayesEstimate b{};
            if (est == Estimator::bayes_closed) {
              ClosedFormOptions opt;
              opt.centering = cfg.centering;
              opt.solver = cfg.closed_solver;
              b = bayes_closed_form(ex[i], tau[i], prior, opt);
            } else if (est == Estimator::bayes_map) {
              b = bayes_map(ex[i], tau[i], prior);
            } else {
              McmcConfig mc = cfg.mcmc;
              mc.seed = derive_seed(seed, k);
              b = bayes_mcmc(ex[i], tau[i], prior, mc);
            }
            xi[i] = b.xi;
            delta[i] = b.delta;
            break;
          }
        }
      } catch (const Error&) {
        xi[i] = kNaN;
        delta[i] = kNaN;
      }
    }
    if (is_bayes(est) && cfg.smooth) {
      xi = smooth_path(xi, cfg.smooth_window);
      delta = smooth_path(delta, cfg.smooth_window);
    }
    for (std::size_t i = 0; i < nk; ++i) {
      if (!std::isfinite(xi[i])) continue;
      const std::size_t k = cfg.k_grid[i];
      try {
        if (est == Estimator::hill) {
          p[i] = weissman_tail_prob(s, k, x, xi[i]);
        } else {
          p[i] = epd_tail_prob(s, k, x, EPDParams(xi[i], delta[i], tau[i]));
        }
      } catch (const Error&) {
        xi[i] = kNaN;
      }
    }
    out.xi.push_back(std::move(xi));
    out.tail_prob.push_back(std::move(p));
  }
  return out;
}

const MCCell& MCStudyResult::cell(Estimator e, std::size_t k) const {
  for (const auto& c : cells)
    if (c.estimator == e && c.k == k) return c;
  throw InvalidArgument("no study cell for " + std::string(to_string(e)) + " at k=" +
                        std::to_string(k));
}

MCStudyResult run_study(const MCStudyConfig& cfg_in) {
  const auto start = std::chrono::steady_clock::now();
  const MCStudyConfig cfg = validated(cfg_in);
  std::vector<ReplicationResult> reps(cfg.reps);

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(cfg.threads);
  auto worker = [&](std::size_t id) {
    try {
      for (std::size_t r = next++; r < cfg.reps; r = next++) reps[r] = run_replication(cfg, r);
    } catch (...) {
      errors[id] = std::current_exception();
      next = cfg.reps;
    }
  };
  if (cfg.threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < cfg.threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  MCStudyResult res;
  res.config = cfg;
  res.true_xi = cfg.dist.true_xi();
  res.x_level = true_quantile(cfg.dist, 1.0 - cfg.target_p);
  res.reps_used = cfg.reps;
  res.total_cells = cfg.estimators.size() * cfg.k_grid.size() * cfg.reps;
  res.excluded_cells = 0;
  res.excluded_by_estimator.assign(cfg.estimators.size(), 0);

  for (std::size_t ei = 0; ei < cfg.estimators.size(); ++ei) {
    for (std::size_t ki = 0; ki < cfg.k_grid.size(); ++ki) {
      double sx = 0.0, sr = 0.0;
      std::size_t used = 0;
      for (const auto& rr : reps) {
        const double xi = rr.xi[ei][ki];
        const double p = rr.tail_prob[ei][ki];
        if (!std::isfinite(xi) || !std::isfinite(p)) continue;
        sx += xi;
        sr += p / cfg.target_p - 1.0;
        ++used;
      }
      res.excluded_by_estimator[ei] += cfg.reps - used;
      MCCell c{cfg.estimators[ei], cfg.k_grid[ki], used, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN};
      if (used > 0) {
        const double nu = static_cast<double>(used);
        const double mx = sx / nu, mr = sr / nu;
        double vx = 0.0, vr = 0.0;
        for (const auto& rr : reps) {
          const double xi = rr.xi[ei][ki];
          const double p = rr.tail_prob[ei][ki];
          if (!std::isfinite(xi) || !std::isfinite(p)) continue;
          vx += (xi - mx) * (xi - mx);
          const double r = p / cfg.target_p - 1.0;
          vr += (r - mr) * (r - mr);
        }
        // Population-variance convention: mse = bias^2 + variance.
        c.bias = mx - res.true_xi;
        c.variance = vx / nu;
        c.mse = c.bias * c.bias + c.variance;
        c.rel_bias = mr;
        c.rel_variance = vr / nu;
        c.rel_mse = c.rel_bias * c.rel_bias + c.rel_variance;
      }
      res.cells.push_back(c);
    }
    res.excluded_cells += res.excluded_by_estimator[ei];
  }

  if (static_cast<double>(res.excluded_cells) >
      cfg.max_exclusion_fraction * static_cast<double>(res.total_cells)) {
    std::ostringstream msg;
    msg << "study aborted: " << res.excluded_cells << " of " << res.total_cells
        << " cells excluded by estimator failures (";
    for (std::size_t ei = 0; ei < cfg.estimators.size(); ++ei)
      msg << (ei ? ", " : "") << to_string(cfg.estimators[ei]) << '=' << res.excluded_by_estimator[ei];
    msg << ')';
    throw NumericalError(msg.str());
  }

  res.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

std::string study_to_csv(const MCStudyResult& r) {
  std::ostringstream out;
  out << "estimator,k,used,bias,variance,mse,rel_bias,rel_variance,rel_mse\n";
  for (const auto& c : r.cells) {
    out << to_string(c.estimator) << ',' << c.k << ',' << c.used << ',' << format_number(c.bias)
        << ',' << format_number(c.variance) << ',' << format_number(c.mse) << ','
        << format_number(c.rel_bias) << ',' << format_number(c.rel_variance) << ','
        << format_number(c.rel_mse) << '\n';
  }
  return out.str();
}

namespace {

nlohmann::json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_12(v);
}

}  // namespace

nlohmann::json study_config_json(const MCStudyConfig& c) {
  nlohmann::json j;
  j["distribution"] = {{"name", c.dist.name()},
                       {"param1", num(c.dist.param1())},
                       {"param2", num(c.dist.param2())},
                       {"true_xi", num(c.dist.true_xi())},
                       {"true_rho", num(c.dist.true_rho())}};
  j["n"] = c.n;
  j["reps"] = c.reps;
  j["k_grid"] = c.k_grid;
  std::vector<std::string> est;
  for (auto e : c.estimators) est.emplace_back(to_string(e));
  j["estimators"] = est;
  j["rho_mode"] = std::string(to_string(c.rho_mode));
  j["rho_k1"] = c.rho_k1 ? nlohmann::json(*c.rho_k1) : nlohmann::json(nullptr);
  j["rho_tuning"] = num(c.rho_tuning);
  j["target_p"] = num(c.target_p);
  j["master_seed"] = c.master_seed;
  j["max_exclusion_fraction"] = num(c.max_exclusion_fraction);
  j["smooth"] = c.smooth;
  j["smooth_window"] = c.smooth_window;
  j["centering"] = c.centering == Centering::derived ? "derived" : "printed";
  j["closed_solver"] = std::string(to_string(c.closed_solver));
  j["mcmc"] = {{"iterations", c.mcmc.iterations},
               {"burn_in", c.mcmc.burn_in},
               {"step_log_xi", num(c.mcmc.step_log_xi)},
               {"step_delta", num(c.mcmc.step_delta)}};
  return j;
}

std::string study_to_json(const MCStudyResult& r) {
  nlohmann::json j;
  j["config"] = study_config_json(r.config);
  j["true_xi"] = num(r.true_xi);
  j["x_level"] = num(r.x_level);
  j["reps_used"] = r.reps_used;
  j["total_cells"] = r.total_cells;
  j["excluded_cells"] = r.excluded_cells;
  nlohmann::json ex = nlohmann::json::object();
  for (std::size_t i = 0; i < r.config.estimators.size(); ++i)
    ex[std::string(to_string(r.config.estimators[i]))] = r.excluded_by_estimator[i];
  j["excluded_by_estimator"] = ex;
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"estimator", std::string(to_string(c.estimator))},
                     {"k", c.k},
                     {"used", c.used},
                     {"bias", num(c.bias)},
                     {"variance", num(c.variance)},
                     {"mse", num(c.mse)},
                     {"rel_bias", num(c.rel_bias)},
                     {"rel_variance", num(c.rel_variance)},
                     {"rel_mse", num(c.rel_mse)}});
  }
  j["cells"] = cells;
  return j.dump(2) + "\n";
}

}  // namespace epdtail
