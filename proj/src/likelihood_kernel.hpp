#pragma once

// Shared EPD likelihood evaluation with log y and y^tau cached once per
// (excess set, tau). Used by the ML fit, the posterior and the sampler.

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "epdtail/epd_model.hpp"
#include "epdtail/tail_data.hpp"

namespace epdtail::detail {

class LikelihoodKernel {
 public:
  LikelihoodKernel(const ExcessSet& e, double tau) : tau_(tau), lower_(delta_lower_bound(tau)) {
    const auto y = e.y();
    log_y_.reserve(y.size());
    y_tau_.reserve(y.size());
    double s = 0.0;
    for (double v : y) {
      const double ly = std::log(v);
      log_y_.push_back(ly);
      y_tau_.push_back(std::exp(tau * ly));
      s += ly;
    }
    mean_log_y_ = s / static_cast<double>(y.size());
  }

  double tau() const noexcept { return tau_; }
  double lower() const noexcept { return lower_; }
  double mean_log_y() const noexcept { return mean_log_y_; }
  std::size_t k() const noexcept { return log_y_.size(); }

  double value(double xi, double delta) const {
    if (!in_epd_region(xi, delta, tau_)) return -std::numeric_limits<double>::infinity();
    double sa = 0.0, sb = 0.0;
    for (double yt : y_tau_) {
      const double b = delta * (1.0 - (1.0 + tau_) * yt);
      if (!(b > -1.0)) return -std::numeric_limits<double>::infinity();
      sa += std::log1p(delta * (1.0 - yt));
      sb += std::log1p(b);
    }
    const double kk = static_cast<double>(k());
    return -std::log(xi) - (1.0 / xi + 1.0) * (mean_log_y_ + sa / kk) + sb / kk;
  }

  std::array<double, 2> gradient(double xi, double delta) const {
    double sa = 0.0, ra = 0.0, rb = 0.0;
    for (double yt : y_tau_) {
      const double ca = 1.0 - yt;
      const double cb = 1.0 - (1.0 + tau_) * yt;
      sa += std::log1p(delta * ca);
      ra += ca / (1.0 + delta * ca);
      rb += cb / (1.0 + delta * cb);
    }
    const double kk = static_cast<double>(k());
    const double d_xi = -1.0 / xi + (mean_log_y_ + sa / kk) / (xi * xi);
    const double d_delta = -(1.0 / xi + 1.0) * ra / kk + rb / kk;
    return {d_xi, d_delta};
  }

 private:
  double tau_;
  double lower_;
  double mean_log_y_ = 0.0;
  std::vector<double> log_y_;
  std::vector<double> y_tau_;
};

}  // namespace epdtail::detail
