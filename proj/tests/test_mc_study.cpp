#include <cmath>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "doctest.h"
#include "epdtail/classical.hpp"
#include "epdtail/error.hpp"
#include "epdtail/mc_study.hpp"
#include "support/oracles.hpp"

using namespace epdtail;

namespace {

int ks_passes(const SimDistribution& d, std::uint64_t seed0) {
  int pass = 0;
  for (std::uint64_t s = seed0; s < seed0 + 10; ++s) {
    const auto x = draw_distribution(d, 10000, s);
    const double stat = oracle::ks_statistic(x, [&](double v) { return 1.0 - d.survival(v); });
    pass += oracle::ks_pvalue(stat, x.size()) > 0.01 ? 1 : 0;
  }
  return pass;
}

MCStudyConfig small_config() {
  MCStudyConfig c;
  c.dist = SimDistribution::burr(0.75, -0.75);
  c.n = 300;
  c.reps = 12;
  c.k_grid = {20, 40, 60, 80, 100, 120, 140};
  c.estimators = {Estimator::hill, Estimator::epd_ml, Estimator::bayes_closed, Estimator::bayes_map};
  c.max_exclusion_fraction = 1.0;
  return c;
}

}  // namespace

TEST_CASE("distribution survival functions") {
  const auto f = SimDistribution::frechet(0.5);
  CHECK(f.survival(2.0) == doctest::Approx(1.0 - std::exp(-0.25)).epsilon(1e-14));
  CHECK(f.true_xi() == 0.5);
  const auto b = SimDistribution::burr(0.75, -0.75);
  CHECK(b.survival(1.0) == doctest::Approx(std::pow(2.0, -1.0 / 0.75)).epsilon(1e-14));
  const auto g = SimDistribution::loggamma();
  CHECK(g.true_xi() == 0.5);
  CHECK(g.survival(1.0) == 1.0);
  // Q(4, 2) = e^{-2}(1 + 2 + 2 + 4/3)
  CHECK(g.survival(std::exp(1.0)) == doctest::Approx(std::exp(-2.0) * (19.0 / 3.0)).epsilon(1e-13));
  CHECK_THROWS_AS(SimDistribution::from_name("gumbel"), InvalidArgument);
  CHECK(SimDistribution::from_name("burr").name() == "burr");
}

TEST_CASE("true quantiles") {
  CHECK(true_quantile(SimDistribution::frechet(0.5), 1.0 - 1.0 / 500) ==
        doctest::Approx(22.3494929062486).epsilon(1e-12));
  CHECK(true_quantile(SimDistribution::burr(0.75, -0.75), 1.0 - 1.0 / 500) ==
        doctest::Approx(104.737126344056).epsilon(1e-12));
  const auto g = SimDistribution::loggamma();
  for (double p : {0.1, 0.5, 0.998})
    CHECK(g.survival(true_quantile(g, p)) == doctest::Approx(1.0 - p).epsilon(1e-10));
  CHECK_THROWS_AS(true_quantile(g, 1.0), InvalidArgument);
}

TEST_CASE("samplers pass KS tests") {
  CHECK(ks_passes(SimDistribution::frechet(0.5), 100) >= 9);
  CHECK(ks_passes(SimDistribution::burr(0.75, -0.75), 200) >= 9);
  CHECK(ks_passes(SimDistribution::loggamma(), 300) >= 9);
}

TEST_CASE("sampler determinism") {
  const auto d = SimDistribution::burr(0.75, -0.75);
  CHECK(draw_distribution(d, 50, 1) == draw_distribution(d, 50, 1));
  CHECK(draw_distribution(d, 50, 1) != draw_distribution(d, 50, 2));
  CHECK(replication_seed(7, 0) != replication_seed(7, 1));
  CHECK(replication_seed(7, 0) != replication_seed(8, 0));
}

TEST_CASE("estimator names round trip") {
  for (auto e : {Estimator::hill, Estimator::epd_ml, Estimator::bayes_closed, Estimator::bayes_map,
                 Estimator::bayes_mcmc})
    CHECK(estimator_from_string(to_string(e)) == e);
  CHECK_THROWS_AS(estimator_from_string("moment"), InvalidArgument);
}

TEST_CASE("configuration validation") {
  CHECK(default_k_grid(500).front() == 10);
  CHECK(default_k_grid(500).back() == 490);
  CHECK(default_k_grid(500).size() == 97);
  MCStudyConfig c;
  c.reps = 0;
  CHECK_THROWS_AS(validated(c), InvalidArgument);
  c.reps = 1;
  c.k_grid = {5};
  CHECK_THROWS_AS(validated(c), InvalidArgument);
  c.k_grid = {30, 20, 20};
  CHECK(validated(c).k_grid == std::vector<std::size_t>{20, 30});
  c.target_p = 0.0;
  CHECK_THROWS_AS(validated(c), InvalidArgument);
}

TEST_CASE("single replication has zero variance") {
  auto c = small_config();
  c.reps = 1;
  const auto r = run_study(c);
  const auto rep = run_replication(validated(c), 0);
  for (const auto& cell : r.cells) {
    if (cell.used == 0) continue;
    CHECK(cell.variance == 0.0);
    CHECK(cell.rel_variance == 0.0);
    CHECK(cell.mse == doctest::Approx(cell.bias * cell.bias));
  }
  const auto& h = r.cell(Estimator::hill, 40);
  CHECK(h.bias == doctest::Approx(rep.xi[0][1] - 0.75).epsilon(1e-14));
}

TEST_CASE("study cells satisfy the MSE decomposition") {
  const auto r = run_study(small_config());
  CHECK(r.cells.size() == 4 * 7);
  CHECK(r.x_level == doctest::Approx(true_quantile(SimDistribution::burr(0.75, -0.75), 0.998)));
  for (const auto& c : r.cells) {
    if (c.used == 0) continue;
    CHECK(c.mse == doctest::Approx(c.bias * c.bias + c.variance).epsilon(1e-14));
    CHECK(c.rel_mse == doctest::Approx(c.rel_bias * c.rel_bias + c.rel_variance).epsilon(1e-14));
    CHECK(c.variance >= 0.0);
  }
  std::size_t excluded = 0;
  for (const auto& c : r.cells) excluded += r.reps_used - c.used;
  CHECK(excluded == r.excluded_cells);
}

TEST_CASE("Hill cell matches a direct recomputation") {
  auto c = small_config();
  c.estimators = {Estimator::hill};
  const auto r = run_study(c);
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t rep = 0; rep < c.reps; ++rep) {
    const auto s = sample_distribution(c.dist, c.n, replication_seed(c.master_seed, rep));
    const double h = hill(excesses(s, 60)).xi;
    sum += h;
    sum2 += h * h;
  }
  const double m = sum / c.reps;
  const auto& cell = r.cell(Estimator::hill, 60);
  CHECK(cell.bias == doctest::Approx(m - 0.75).epsilon(1e-12));
  CHECK(cell.variance == doctest::Approx(sum2 / c.reps - m * m).epsilon(1e-9));
}

TEST_CASE("study output is independent of the thread count") {
  auto c = small_config();
  c.threads = 1;
  const auto a = run_study(c);
  c.threads = 3;
  const auto b = run_study(c);
  CHECK(study_to_csv(a) == study_to_csv(b));
  CHECK(study_to_json(a) == study_to_json(b));
}

TEST_CASE("MCMC estimator runs inside a study") {
  auto c = small_config();
  c.reps = 2;
  c.k_grid = {60, 100};
  c.estimators = {Estimator::bayes_mcmc};
  c.mcmc.iterations = 1500;
  c.mcmc.burn_in = 500;
  const auto r = run_study(c);
  CHECK(r.cell(Estimator::bayes_mcmc, 60).used == 2);
  CHECK(study_to_csv(r) == study_to_csv(run_study(c)));
}

TEST_CASE("Hill bias on Frechet data is positive at moderate k") {
  MCStudyConfig c;
  c.dist = SimDistribution::frechet(0.5);
  c.n = 500;
  c.reps = 200;
  c.k_grid = {50, 200};
  c.estimators = {Estimator::hill};
  const auto r = run_study(c);
  // Frechet has rho = -1 with a(t) > 0, so the Hill bias grows with k.
  CHECK(r.cell(Estimator::hill, 200).bias > r.cell(Estimator::hill, 50).bias);
  CHECK(r.cell(Estimator::hill, 200).bias > 0.0);
}

TEST_CASE("exclusion limit aborts the study") {
  auto c = small_config();
  c.k_grid = {250, 260, 270, 280, 290};
  c.estimators = {Estimator::bayes_closed};
  c.max_exclusion_fraction = 0.05;
  CHECK_THROWS_AS(run_study(c), NumericalError);
  c.max_exclusion_fraction = 1.0;
  const auto r = run_study(c);
  CHECK(r.excluded_cells > 0);
  CHECK(r.excluded_by_estimator[0] == r.excluded_cells);
}

TEST_CASE("study CSV layout") {
  auto c = small_config();
  c.reps = 2;
  const auto csv = study_to_csv(run_study(c));
  CHECK(csv.rfind("estimator,k,used,bias,variance,mse,rel_bias,rel_variance,rel_mse\n", 0) == 0);
  CHECK(csv.find("\nbayes_map,140,") != std::string::npos);
}
