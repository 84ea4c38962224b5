#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "doctest.h"
#include "epdtail/classical.hpp"
#include "epdtail/epd_model.hpp"
#include "epdtail/error.hpp"
#include "support/oracles.hpp"

using namespace epdtail;

TEST_CASE("EPD parameter region") {
  CHECK(delta_lower_bound(-0.5) == -1.0);
  CHECK(delta_lower_bound(-2.0) == -0.5);
  CHECK(in_epd_region(0.5, 0.0, -1.0));
  CHECK_FALSE(in_epd_region(0.5, -1.0, -1.0));
  CHECK_FALSE(in_epd_region(0.0, 0.1, -1.0));
  CHECK_FALSE(in_epd_region(0.5, 0.1, 0.0));
  CHECK_THROWS_AS(EPDParams(0.5, -0.6, -2.0), InvalidArgument);
}

TEST_CASE("epd_survival") {
  const EPDParams pareto(0.7, 0.0, -1.0);
  for (double y : {1.0, 1.5, 3.0, 40.0}) CHECK(epd_survival(pareto, y) == doctest::Approx(std::pow(y, -1.0 / 0.7)));
  CHECK(epd_survival(EPDParams(0.5, 0.3, -0.8), 1.0) == 1.0);
  CHECK(epd_survival(EPDParams(0.5, 0.1, -1.0), 2.0) == doctest::Approx(1.0 / 4.41).epsilon(1e-14));
  CHECK_THROWS_AS(epd_survival(pareto, 0.99), InvalidArgument);
}

TEST_CASE("epd_survival decreases to zero") {
  for (const EPDParams p : {EPDParams(0.5, 0.3, -1.0), EPDParams(1.2, -0.9, -0.4),
                            EPDParams(0.3, 4.0, -3.0), EPDParams(0.8, -0.33, -3.0)}) {
    double prev = 1.0;
    for (double y = 1.01; y < 1e6; y *= 1.1) {
      const double s = epd_survival(p, y);
      CHECK(s < prev);
      prev = s;
    }
    CHECK(prev < 1e-3);
  }
}

TEST_CASE("epd_log_likelihood") {
  const ExcessSet e({4.0, 2.0}, 1.0);
  CHECK(epd_log_likelihood(1.0, 0.0, -1.0, e) == doctest::Approx(-3.0 * std::log(2.0)).epsilon(1e-14));
  SUBCASE("delta = 0 is the Pareto likelihood") {
    const auto x = oracle::pareto_sample(0.6, 80, 4);
    const auto ex = excesses(SortedSample(x), 50);
    const double h = hill(ex).xi;
    for (double xi : {0.3, 0.6, 1.1})
      CHECK(epd_log_likelihood(xi, 0.0, -0.9, ex) ==
            doctest::Approx(-std::log(xi) - (1.0 / xi + 1.0) * h).epsilon(1e-13));
  }
  SUBCASE("boundary and outside give -inf") {
    CHECK(std::isinf(epd_log_likelihood(1.0, -0.5, -2.0, e)));
    CHECK(std::isinf(epd_log_likelihood(1.0, -1.0, -0.5, e)));
    CHECK(std::isinf(epd_log_likelihood(-1.0, 0.0, -0.5, e)));
    CHECK(epd_log_likelihood(1.0, -0.5, -2.0, e) < 0.0);
  }
  SUBCASE("matches an independent transcription") {
    const auto x = oracle::burr_sample(0.75, -0.75, 300, 8);
    const auto y = oracle::top_excesses(x, 120);
    const auto ex = excesses(SortedSample(x), 120);
    for (double d : {-0.6, -0.1, 0.0, 0.4, 2.0})
      CHECK(epd_log_likelihood(0.7, d, -0.8, ex) == doctest::Approx(oracle::epd_loglik(0.7, d, -0.8, y)).epsilon(1e-12));
  }
}

TEST_CASE("likelihood gradient matches central differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto x = oracle::burr_sample(0.75, -0.75, 400, 21);
  const auto e = excesses(SortedSample(x), 150);
  const auto y = oracle::top_excesses(x, 150);
  for (int i = 0; i < 30; ++i) {
    const double tau = -0.3 - 2.0 * u(rng);
    const double lo = delta_lower_bound(tau);
    const double xi = 0.2 + 1.5 * u(rng);
    const double d = lo + 0.05 + (2.0 - lo) * u(rng);
    const auto g = epd_log_likelihood_gradient(xi, d, tau, e);
    CHECK(g[0] == doctest::Approx(oracle::epd_loglik_fd(xi, d, tau, y, 0)).epsilon(1e-6));
    CHECK(g[1] == doctest::Approx(oracle::epd_loglik_fd(xi, d, tau, y, 1)).epsilon(1e-6));
  }
}

TEST_CASE("epd_ml_fit on strict Pareto data") {
  const auto x = oracle::pareto_sample(1.0, 5001, 31);
  const auto e = excesses(SortedSample(x), 5000);
  const auto fit = epd_ml_fit(e, -1.0);
  CHECK(fit.converged);
  CHECK(std::abs(fit.params.delta) < 0.1);
  CHECK(std::abs(fit.params.xi - hill(e).xi) < 0.1);
  // The Pareto (delta = 0, xi = H) is feasible, so the fit cannot do worse.
  CHECK(fit.loglik >= epd_log_likelihood(hill(e).xi, 0.0, -1.0, e) - 1e-12);
}

TEST_CASE("epd_ml_fit recovers simulated EPD parameters") {
  // Truth (0.5, 0.3, -1) with k = 2000. Spread of the estimates over 40
  // replications gives the Monte Carlo standard error.
  const EPDParams truth(0.5, 0.3, -1.0);
  std::vector<double> xs, ds;
  for (int r = 0; r < 40; ++r) {
    auto y = epd_sample(truth, 2000, 4000 + r);
    std::sort(y.begin(), y.end(), std::greater<>());
    const ExcessSet e(y, 1.0);
    const auto fit = epd_ml_fit(e, -1.0);
    REQUIRE(fit.converged);
    xs.push_back(fit.params.xi);
    ds.push_back(fit.params.delta);
  }
  auto mean_sd = [](const std::vector<double>& v) {
    double m = 0.0, s = 0.0;
    for (double z : v) m += z;
    m /= v.size();
    for (double z : v) s += (z - m) * (z - m);
    return std::pair{m, std::sqrt(s / (v.size() - 1))};
  };
  const auto [mx, sx] = mean_sd(xs);
  const auto [md, sd] = mean_sd(ds);
  // Each single fit is within 3 standard errors of the truth ...
  CHECK(std::abs(xs[0] - 0.5) < 3 * sx);
  CHECK(std::abs(ds[0] - 0.3) < 3 * sd);
  // ... and so is the replication mean, at its own standard error.
  CHECK(std::abs(mx - 0.5) < 3 * sx / std::sqrt(40.0) + 0.01);
  CHECK(std::abs(md - 0.3) < 3 * sd / std::sqrt(40.0) + 0.02);
}

TEST_CASE("epd_ml_fit preconditions and scale invariance") {
  const ExcessSet small({5, 4, 3, 2, 1.5}, 1.0);
  CHECK_THROWS_AS(epd_ml_fit(small, -1.0), InvalidArgument);
  auto x = oracle::burr_sample(0.75, -0.75, 500, 12);
  const auto a = epd_ml_fit(excesses(SortedSample(x), 200), -0.8);
  for (auto& v : x) v *= 1000.0;
  const auto b = epd_ml_fit(excesses(SortedSample(x), 200), -0.8);
  CHECK(a.params.xi == doctest::Approx(b.params.xi).epsilon(1e-7));
  CHECK(a.params.delta == doctest::Approx(b.params.delta).epsilon(1e-6));
}

TEST_CASE("epd_ml_fit never does worse than the Pareto fit") {
  for (int r = 0; r < 20; ++r) {
    const auto x = oracle::burr_sample(0.75, -0.75, 500, 600 + r);
    const auto e = excesses(SortedSample(x), 50 + 20 * r);
    const double tau = -0.75 / hill(e).xi;
    const auto fit = epd_ml_fit(e, tau);
    CHECK(fit.converged);
    CHECK(fit.loglik >= epd_log_likelihood(hill(e).xi, 0.0, tau, e) - 1e-12);
    const auto g = epd_log_likelihood_gradient(fit.params.xi, fit.params.delta, tau, e);
    CHECK(std::abs(g[0]) < 1e-5);
  }
}

TEST_CASE("epd_quantile") {
  const EPDParams pareto(0.8, 0.0, -1.0);
  CHECK(epd_quantile(pareto, 0.9) == doctest::Approx(std::pow(0.1, -0.8)).epsilon(1e-13));
  const EPDParams p(0.5, 0.1, -1.0);
  CHECK(epd_quantile(p, 1.0 - 1.0 / 4.41) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(epd_quantile(p, 1.0), InvalidArgument);
  for (const EPDParams q : {p, EPDParams(1.3, -0.95, -0.5), EPDParams(0.4, 6.0, -2.5)})
    for (double u = 0.001; u < 1.0; u += 0.0371)
      CHECK(epd_survival(q, epd_quantile(q, u)) == doctest::Approx(1.0 - u).epsilon(1e-10));
}

TEST_CASE("epd_sample") {
  const EPDParams p(0.5, 0.3, -1.0);
  CHECK(epd_sample(p, 100, 5) == epd_sample(p, 100, 5));
  CHECK(epd_sample(p, 100, 5) != epd_sample(p, 100, 6));

  const auto pareto = epd_sample(EPDParams(0.7, 0.0, -1.0), 10000, 17);
  const double d0 = oracle::ks_statistic(pareto, [](double y) { return 1.0 - std::pow(y, -1.0 / 0.7); });
  CHECK(oracle::ks_pvalue(d0, pareto.size()) > 0.01);

  const auto draws = epd_sample(p, 10000, 18);
  const double d1 = oracle::ks_statistic(draws, [&](double y) {
    return 1.0 - std::pow(y * (1.0 + 0.3 - 0.3 / y), -2.0);
  });
  CHECK(oracle::ks_pvalue(d1, draws.size()) > 0.01);
}

TEST_CASE("epd_tail_prob") {
  const SortedSample s({1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  const EPDParams p(0.5, 0.1, -1.0);
  CHECK(epd_tail_prob(s, 1, 9.0, p) == doctest::Approx(0.1));
  CHECK(epd_tail_prob(s, 1, 18.0, p) == doctest::Approx(0.1 / 4.41).epsilon(1e-13));
  for (double x : {9.0, 12.0, 100.0})
    CHECK(epd_tail_prob(s, 1, x, EPDParams(0.6, 0.0, -1.0)) ==
          doctest::Approx(weissman_tail_prob(s, 1, x, 0.6)).epsilon(1e-14));
  CHECK_THROWS_AS(epd_tail_prob(s, 1, 8.5, p), InvalidArgument);
}
