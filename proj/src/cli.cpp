#include "epdtail/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <openssl/evp.h>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "epdtail/asymptotics.hpp"
#include "epdtail/bayes_epd.hpp"
#include "epdtail/classical.hpp"
#include "epdtail/epd_model.hpp"
#include "epdtail/error.hpp"
#include "epdtail/format.hpp"
#include "epdtail/mc_study.hpp"
#include "epdtail/random.hpp"
#include "epdtail/second_order.hpp"
#include "epdtail/tail_data.hpp"

#ifndef EPDTAIL_VERSION
#define EPDTAIL_VERSION "0.0.0"
#endif

namespace epdtail {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_12(v);
}

struct RhoFlag {
  bool automatic = true;
  double value = -1.0;
};

RhoFlag parse_rho_flag(const std::string& s) {
  if (s == "auto") return {};
  if (s.rfind("fixed:", 0) == 0) {
    char* end = nullptr;
    const std::string v = s.substr(6);
    const double r = std::strtod(v.c_str(), &end);
    if (v.empty() || *end != '\0') throw InvalidArgument("bad --rho value '" + s + "'");
    if (!(r < 0.0)) throw InvalidArgument("--rho fixed value must be negative");
    return {false, r};
  }
  throw InvalidArgument("--rho must be 'auto' or 'fixed:<value>'");
}

std::string timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::atoll(sde));
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest(const std::string& command, json config, json seeds, const std::string& digest) {
  return {{"command", command},
          {"config", std::move(config)},
          {"seeds", std::move(seeds)},
          {"library_version", library_version()},
          {"input_digest", digest.empty() ? json(nullptr) : json("sha256:" + digest)},
          {"timestamp", timestamp()}};
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot open '" + path.string() + "' for writing");
  f << content;
  if (!f) throw DataError("write failed for '" + path.string() + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct KGrid {
  std::size_t min = 10;
  std::optional<std::size_t> max;
  std::size_t step = 1;
};

std::vector<std::size_t> expand_grid(const KGrid& g, std::size_t upper_default, std::size_t cap) {
  const std::size_t hi = g.max.value_or(upper_default);
  if (g.step == 0) throw InvalidArgument("--k-step must be positive");
  if (g.min < 1 || hi > cap || g.min > hi)
    throw InvalidArgument("k grid [" + std::to_string(g.min) + ", " + std::to_string(hi) +
                          "] is outside [1, " + std::to_string(cap) + "]");
  std::vector<std::size_t> ks;
  for (std::size_t k = g.min; k <= hi; k += g.step) ks.push_back(k);
  return ks;
}

// ---------------------------------------------------------------- estimate

struct EstimateOptions {
  std::string data;
  std::optional<std::size_t> column;
  KGrid grid;
  std::string rho = "auto";
  std::optional<std::size_t> rho_k1;
  double rho_tuning = 0.0;
  std::string method = "closed";
  std::size_t mcmc_iters = 12000;
  std::size_t burn_in = 2000;
  std::uint64_t seed = 1;
  double alpha = 0.05;
  std::optional<double> x;
  std::size_t smooth = 5;
  std::string out;
  std::string format = "csv";
  std::string closed_solver = "one_step";
};

ClosedFormSolver parse_solver(const std::string& s) {
  if (s == "one_step") return ClosedFormSolver::one_step;
  if (s == "fixed_point") return ClosedFormSolver::fixed_point;
  throw InvalidArgument("--closed-solver must be one_step or fixed_point");
}

struct EstimateRow {
  std::size_t k = 0;
  double threshold = kNaN, hill = kNaN, tau = kNaN;
  double ml_xi = kNaN, ml_delta = kNaN;
  double b_xi = kNaN, b_delta = kNaN, b_xi_s = kNaN, b_delta_s = kNaN;
  double hpd_lo = kNaN, hpd_hi = kNaN;
  double p_w = kNaN, p_ml = kNaN, p_b = kNaN;
  std::vector<std::string> status;
};

int cmd_estimate(const EstimateOptions& o, std::ostream& out, std::ostream& err) {
  const std::string raw = read_file(o.data);
  std::istringstream in(raw);
  const SortedSample s = load_sample(in, o.column);
  const std::size_t n = s.size();

  const RhoFlag rf = parse_rho_flag(o.rho);
  RhoChoice rho{rf.value, rf.value == -1.0 ? RhoSource::fixed_minus_one : RhoSource::user};
  if (rf.automatic) rho = estimate_rho(s, o.rho_k1, o.rho_tuning);

  if (o.method != "closed" && o.method != "mcmc" && o.method != "map")
    throw InvalidArgument("--method must be closed, map or mcmc");
  if (o.format != "csv" && o.format != "json") throw InvalidArgument("--format must be csv or json");
  if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw InvalidArgument("--alpha must be in (0, 1)");
  if (o.smooth == 0 || o.smooth % 2 == 0) throw InvalidArgument("--smooth must be odd");
  const bool mcmc = o.method == "mcmc";
  ClosedFormOptions cf;
  cf.solver = parse_solver(o.closed_solver);
  McmcConfig mc;
  mc.iterations = o.mcmc_iters;
  mc.burn_in = o.burn_in;
  if (mcmc && !(mc.iterations > mc.burn_in))
    throw InvalidArgument("--mcmc-iters must exceed --burn-in");

  const auto ks = expand_grid(o.grid, n - 1, n - 1);
  std::vector<EstimateRow> rows;
  rows.reserve(ks.size());
  for (const std::size_t k : ks) {
    const ExcessSet e = excesses(s, k);
    EstimateRow r;
    r.k = k;
    r.threshold = e.threshold();
    r.hill = hill(e).xi;
    if (r.hill > 0.0) {
      r.tau = tau_hat(rho.rho, r.hill);
    } else {
      r.status.push_back("hill_zero");
    }
    if (k < kMinFitExcesses) r.status.push_back("k_below_fit_minimum");
    if (std::isfinite(r.tau) && k >= kMinFitExcesses) {
      try {
        const auto fit = epd_ml_fit(e, r.tau);
        if (!fit.converged) throw NumericalError("not converged");
        r.ml_xi = fit.params.xi;
        r.ml_delta = fit.params.delta;
      } catch (const Error&) {
        r.status.push_back("ml_failed");
      }
      try {
        const auto prior = PriorSpec::make(prior_variance(k, n, rho.rho), r.tau);
        BayesEstimate b{};
        if (o.method == "closed") {
          b = bayes_closed_form(e, r.tau, prior, cf);
        } else if (o.method == "map") {
          b = bayes_map(e, r.tau, prior);
        } else {
          McmcConfig c = mc;
          c.seed = derive_seed(o.seed, k);
          b = bayes_mcmc(e, r.tau, prior, c, o.alpha);
          r.hpd_lo = b.hpd_xi->lower;
          r.hpd_hi = b.hpd_xi->upper;
        }
        r.b_xi = b.xi;
        r.b_delta = b.delta;
      } catch (const Error&) {
        r.status.push_back("bayes_failed");
      }
    }
    rows.push_back(std::move(r));
  }

  std::vector<double> bx, bd;
  for (const auto& r : rows) bx.push_back(r.b_xi), bd.push_back(r.b_delta);
  bx = smooth_path(bx, o.smooth);
  bd = smooth_path(bd, o.smooth);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto& r = rows[i];
    r.b_xi_s = bx[i];
    r.b_delta_s = bd[i];
    if (!o.x) continue;
    if (*o.x < r.threshold) {
      r.status.push_back("x_below_threshold");
      continue;
    }
    if (r.hill > 0.0) r.p_w = weissman_tail_prob(s, r.k, *o.x, r.hill);
    try {
      if (std::isfinite(r.ml_xi)) r.p_ml = epd_tail_prob(s, r.k, *o.x, EPDParams(r.ml_xi, r.ml_delta, r.tau));
    } catch (const Error&) {
      r.status.push_back("p_ml_failed");
    }
    try {
      if (std::isfinite(r.b_xi_s))
        r.p_b = bayes_tail_prob(s, r.k, *o.x, {r.b_xi_s, r.b_delta_s, BayesMethod::closed_form, {}}, r.tau);
    } catch (const Error&) {
      r.status.push_back("p_bayes_failed");
    }
  }

  auto status_of = [](const EstimateRow& r) {
    if (r.status.empty()) return std::string("ok");
    std::string s;
    for (const auto& t : r.status) s += (s.empty() ? "" : ";") + t;
    return s;
  };

  std::ostringstream body;
  if (o.format == "csv") {
    body << "k,threshold,hill,tau,ml_xi,ml_delta,bayes_xi,bayes_delta,bayes_xi_smooth,bayes_delta_smooth";
    if (mcmc) body << ",hpd_lower,hpd_upper";
    if (o.x) body << ",p_weissman,p_ml,p_bayes";
    body << ",status\n";
    for (const auto& r : rows) {
      body << r.k;
      for (double v : {r.threshold, r.hill, r.tau, r.ml_xi, r.ml_delta, r.b_xi, r.b_delta, r.b_xi_s, r.b_delta_s})
        body << ',' << format_number(v);
      if (mcmc) body << ',' << format_number(r.hpd_lo) << ',' << format_number(r.hpd_hi);
      if (o.x) body << ',' << format_number(r.p_w) << ',' << format_number(r.p_ml) << ',' << format_number(r.p_b);
      body << ',' << status_of(r) << '\n';
    }
  } else {
    json j;
    j["n"] = n;
    j["rho"] = num(rho.rho);
    j["rho_source"] = std::string(to_string(rho.source));
    j["method"] = o.method;
    j["x"] = o.x ? num(*o.x) : json(nullptr);
    json arr = json::array();
    for (const auto& r : rows) {
      json row = {{"k", r.k},          {"threshold", num(r.threshold)}, {"hill", num(r.hill)},
                  {"tau", num(r.tau)}, {"ml_xi", num(r.ml_xi)},         {"ml_delta", num(r.ml_delta)},
                  {"bayes_xi", num(r.b_xi)}, {"bayes_delta", num(r.b_delta)},
                  {"bayes_xi_smooth", num(r.b_xi_s)}, {"bayes_delta_smooth", num(r.b_delta_s)},
                  {"status", status_of(r)}};
      if (mcmc) row["hpd_xi"] = {num(r.hpd_lo), num(r.hpd_hi)};
      if (o.x) row["tail_prob"] = {{"weissman", num(r.p_w)}, {"ml", num(r.p_ml)}, {"bayes", num(r.p_b)}};
      arr.push_back(std::move(row));
    }
    j["rows"] = std::move(arr);
    body << j.dump(2) << '\n';
  }

  if (o.out.empty()) {
    out << body.str();
  } else {
    write_file(o.out, body.str());
    json cfg = {{"data", o.data},
                {"column", o.column ? json(*o.column) : json(nullptr)},
                {"k_min", o.grid.min},
                {"k_max", ks.back()},
                {"k_step", o.grid.step},
                {"rho", o.rho},
                {"rho_used", num(rho.rho)},
                {"rho_source", std::string(to_string(rho.source))},
                {"rho_k1", o.rho_k1 ? json(*o.rho_k1) : json(nullptr)},
                {"rho_tuning", o.rho_tuning},
                {"method", o.method},
                {"closed_solver", o.closed_solver},
                {"mcmc_iters", o.mcmc_iters},
                {"burn_in", o.burn_in},
                {"alpha", o.alpha},
                {"x", o.x ? json(*o.x) : json(nullptr)},
                {"smooth", o.smooth},
                {"format", o.format}};
    write_file(o.out + ".manifest.json",
               manifest("estimate", cfg, {{"seed", o.seed}}, sha256_hex(raw)).dump(2) + "\n");
  }
  (void)err;
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  std::string dist = "burr";
  std::size_t n = 500;
  long long reps = 200;
  KGrid grid{10, std::nullopt, 5};
  std::string estimators = "hill,epd_ml,bayes_closed";
  std::string rho = "auto";
  std::optional<std::size_t> rho_k1;
  double rho_tuning = 0.0;
  double target_p = 1.0 / 500.0;
  std::uint64_t seed = 20240101;
  bool no_smooth = false;
  std::size_t mcmc_iters = 3000;
  std::size_t burn_in = 1000;
  std::string centering = "derived";
  std::string closed_solver = "one_step";
  double max_exclusion = 0.05;
  std::size_t threads = 1;
  std::string out = ".";
};

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
  MCStudyConfig cfg;
  cfg.dist = SimDistribution::from_name(o.dist);
  if (o.reps < 1) throw InvalidArgument("reps must be at least 1");
  cfg.n = o.n;
  cfg.reps = static_cast<std::size_t>(o.reps);
  if (o.n < 21) throw InvalidArgument("--n must be at least 21");
  cfg.k_grid = expand_grid(o.grid, o.n - 10, o.n - 1);
  cfg.estimators.clear();
  std::stringstream ss(o.estimators);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) cfg.estimators.push_back(estimator_from_string(tok));
  const RhoFlag rf = parse_rho_flag(o.rho);
  if (!rf.automatic && rf.value != -1.0)
    throw InvalidArgument("simulate supports --rho auto or fixed:-1");
  cfg.rho_mode = rf.automatic ? RhoMode::fraga : RhoMode::fixed_minus_one;
  cfg.rho_k1 = o.rho_k1;
  cfg.rho_tuning = o.rho_tuning;
  cfg.target_p = o.target_p;
  cfg.master_seed = o.seed;
  cfg.smooth = !o.no_smooth;
  if (o.centering == "derived") cfg.centering = Centering::derived;
  else if (o.centering == "printed") cfg.centering = Centering::printed;
  else throw InvalidArgument("--centering must be derived or printed");
  cfg.closed_solver = parse_solver(o.closed_solver);
  if (!(o.max_exclusion >= 0.0 && o.max_exclusion <= 1.0))
    throw InvalidArgument("--max-exclusion must be in [0, 1]");
  cfg.max_exclusion_fraction = o.max_exclusion;
  cfg.mcmc.iterations = o.mcmc_iters;
  cfg.mcmc.burn_in = o.burn_in;
  cfg.threads = o.threads;
  cfg = validated(cfg);

  const auto res = run_study(cfg);
  const fs::path dir(o.out);
  write_file(dir / "study.csv", study_to_csv(res));
  write_file(dir / "study.json", study_to_json(res));
  json m = manifest("simulate", study_config_json(res.config),
                    {{"master_seed", cfg.master_seed}, {"replication_seed_rule", "splitmix64(master, rep)"}},
                    "");
  m["runtime_seconds"] = res.runtime_seconds;
  m["threads"] = cfg.threads;
  write_file(dir / "manifest.json", m.dump(2) + "\n");
  out << "wrote " << (dir / "study.csv").string() << ", " << (dir / "study.json").string()
      << ", " << (dir / "manifest.json").string() << " (" << res.excluded_cells << " of "
      << res.total_cells << " cells excluded)\n";
  (void)err;
  return kExitOk;
}

// ------------------------------------------------------------- asymptotics

struct AsymptoticsOptions {
  double xi = 0.5;
  double rho = -1.0;
  double lambda_min = 0.0;
  double lambda_max = 5.0;
  double lambda_step = 0.5;
  std::vector<double> lambdas;
  std::string out;
};

int cmd_asymptotics(const AsymptoticsOptions& o, std::ostream& out, std::ostream& err) {
  if (!(o.xi > 0.0)) throw InvalidArgument("--xi must be positive");
  if (!(o.rho < 0.0)) throw InvalidArgument("--rho must be negative");
  std::vector<double> grid = o.lambdas;
  if (grid.empty()) {
    if (!(o.lambda_step > 0.0) || !(o.lambda_min >= 0.0) || !(o.lambda_max >= o.lambda_min))
      throw InvalidArgument("invalid lambda grid");
    const auto steps = static_cast<std::size_t>(std::floor((o.lambda_max - o.lambda_min) / o.lambda_step + 1e-9));
    for (std::size_t i = 0; i <= steps; ++i) grid.push_back(o.lambda_min + static_cast<double>(i) * o.lambda_step);
  }
  for (double l : grid)
    if (!(l >= 0.0) || !std::isfinite(l)) throw InvalidArgument("lambda values must be finite and >= 0");

  std::ostringstream body;
  body << "lambda,mse_hill,mse_ml,mse_opt,bias_opt,var_opt\n";
  for (double l : grid) {
    const AsymptoticRegime r(o.xi, o.rho, l, zeta_opt(o.xi, o.rho, l));
    body << format_number(l) << ',' << format_number(limit_mse(LimitKind::hill, o.xi, o.rho, l))
         << ',' << format_number(limit_mse(LimitKind::epd_ml, o.xi, o.rho, l)) << ','
         << format_number(mse_opt(o.xi, o.rho, l)) << ',' << format_number(asym_mean(r)) << ','
         << format_number(asym_var(r)) << '\n';
  }
  if (o.out.empty()) {
    out << body.str();
  } else {
    write_file(o.out, body.str());
    json cfg = {{"xi", o.xi}, {"rho", o.rho}, {"lambdas", grid}};
    write_file(o.out + ".manifest.json", manifest("asymptotics", cfg, json::object(), "").dump(2) + "\n");
  }
  (void)err;
  return kExitOk;
}

}  // namespace

const char* library_version() { return EPDTAIL_VERSION; }

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  std::ostringstream hex;
  hex << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i) hex << std::setw(2) << static_cast<int>(md[i]);
  return hex.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bias-reduced tail index and tail probability estimation", "epdtail"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(library_version()));

  EstimateOptions eo;
  auto* est = app.add_subcommand("estimate", "Hill, EPD-ML and Bayes estimates over a k grid");
  est->add_option("data", eo.data, "Data file (CSV or one value per line)")->required();
  est->add_option("--column", eo.column, "Zero-based column index");
  est->add_option("--k-min", eo.grid.min, "Smallest k")->capture_default_str();
  est->add_option("--k-max", eo.grid.max, "Largest k (default n-1)");
  est->add_option("--k-step", eo.grid.step, "k increment")->capture_default_str();
  est->add_option("--rho", eo.rho, "auto | fixed:<value>")->capture_default_str();
  est->add_option("--rho-k1", eo.rho_k1, "Top order statistics used for rho");
  est->add_option("--rho-tuning", eo.rho_tuning, "0 or 1")->capture_default_str();
  est->add_option("--method", eo.method, "closed | map | mcmc")->capture_default_str();
  est->add_option("--mcmc-iters", eo.mcmc_iters, "Total MCMC iterations")->capture_default_str();
  est->add_option("--burn-in", eo.burn_in, "MCMC burn-in")->capture_default_str();
  est->add_option("--seed", eo.seed, "Random seed")->capture_default_str();
  est->add_option("--alpha", eo.alpha, "HPD level")->capture_default_str();
  est->add_option("--x", eo.x, "Level x for P(X > x)");
  est->add_option("--smooth", eo.smooth, "Smoothing window for the Bayes path")->capture_default_str();
  est->add_option("--out", eo.out, "Output file (default stdout)");
  est->add_option("--format", eo.format, "csv | json")->capture_default_str();
  est->add_option("--closed-solver", eo.closed_solver, "one_step | fixed_point")->capture_default_str();

  SimulateOptions so;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo bias/variance/MSE study");
  // The config file belongs to the top-level app so that a [simulate] section
  // maps onto the subcommand options; fallthrough lets `simulate --config`
  // reach it.
  app.set_config("--config", "", "TOML configuration file; options under [simulate]");
  sim->fallthrough();
  sim->add_option("--dist", so.dist, "frechet | burr | loggamma")->capture_default_str();
  sim->add_option("--n", so.n, "Sample size")->capture_default_str();
  sim->add_option("--reps", so.reps, "Replications")->capture_default_str();
  sim->add_option("--k-min", so.grid.min, "Smallest k")->capture_default_str();
  sim->add_option("--k-max", so.grid.max, "Largest k (default n-10)");
  sim->add_option("--k-step", so.grid.step, "k increment")->capture_default_str();
  sim->add_option("--estimators", so.estimators, "Comma list")->capture_default_str();
  sim->add_option("--rho", so.rho, "auto | fixed:-1")->capture_default_str();
  sim->add_option("--rho-k1", so.rho_k1, "Top order statistics used for rho");
  sim->add_option("--rho-tuning", so.rho_tuning, "0 or 1")->capture_default_str();
  sim->add_option("--target-p", so.target_p, "Tail probability level")->capture_default_str();
  sim->add_option("--seed", so.seed, "Master seed")->capture_default_str();
  sim->add_flag("--no-smooth", so.no_smooth, "Do not smooth Bayes paths");
  sim->add_option("--mcmc-iters", so.mcmc_iters, "MCMC iterations")->capture_default_str();
  sim->add_option("--burn-in", so.burn_in, "MCMC burn-in")->capture_default_str();
  sim->add_option("--centering", so.centering, "derived | printed")->capture_default_str();
  sim->add_option("--closed-solver", so.closed_solver, "one_step | fixed_point")->capture_default_str();
  sim->add_option("--max-exclusion", so.max_exclusion, "Abort when more than this fraction of cells fail")
      ->capture_default_str();
  sim->add_option("--threads", so.threads, "Worker threads")->capture_default_str();
  sim->add_option("--out", so.out, "Output directory")->capture_default_str();

  AsymptoticsOptions ao;
  auto* asy = app.add_subcommand("asymptotics", "Limiting MSE curves over a lambda grid");
  asy->add_option("--xi", ao.xi, "Tail index")->capture_default_str();
  asy->add_option("--rho", ao.rho, "Second-order parameter")->capture_default_str();
  asy->add_option("--lambda-min", ao.lambda_min)->capture_default_str();
  asy->add_option("--lambda-max", ao.lambda_max)->capture_default_str();
  asy->add_option("--lambda-step", ao.lambda_step)->capture_default_str();
  asy->add_option("--lambdas", ao.lambdas, "Explicit lambda list")->delimiter(',');
  asy->add_option("--out", ao.out, "Output file (default stdout)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << library_version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*est) return cmd_estimate(eo, out, err);
    if (*sim) return cmd_simulate(so, out, err);
    if (*asy) return cmd_asymptotics(ao, out, err);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace epdtail
