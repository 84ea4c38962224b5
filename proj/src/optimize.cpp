#include "optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace epdtail::detail {

namespace {

double norm_inf(const std::array<double, 2>& v) { return std::max(std::abs(v[0]), std::abs(v[1])); }

}  // namespace

MaximizeResult maximize_2d(const std::function<ValueAndGradient(const std::array<double, 2>&)>& f,
                           std::array<double, 2> x, const MaximizeOptions& opt) {
  // Inverse Hessian approximation of the negated objective.
  double h00 = 1.0, h01 = 0.0, h11 = 1.0;
  auto cur = f(x);
  if (!std::isfinite(cur.value)) return {x, cur.value, false, 0};

  int it = 0;
  for (; it < opt.max_iter; ++it) {
    if (norm_inf(cur.grad) < opt.grad_tol) return {x, cur.value, true, it};

    // Ascent direction d = H g.
    std::array<double, 2> d{h00 * cur.grad[0] + h01 * cur.grad[1],
                            h01 * cur.grad[0] + h11 * cur.grad[1]};
    double slope = d[0] * cur.grad[0] + d[1] * cur.grad[1];
    if (!(slope > 0.0)) {
      h00 = 1.0, h01 = 0.0, h11 = 1.0;
      d = cur.grad;
      slope = d[0] * d[0] + d[1] * d[1];
    }
    // Keep the first trial step bounded in parameter space.
    const double dn = norm_inf(d);
    double step = dn > 1.0 ? 1.0 / dn : 1.0;

    ValueAndGradient next{};
    std::array<double, 2> xn{};
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      xn = {x[0] + step * d[0], x[1] + step * d[1]};
      next = f(xn);
      if (std::isfinite(next.value) && next.value >= cur.value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      // No further progress at machine precision; accept the point if it is
      // stationary to a looser tolerance.
      return {x, cur.value, norm_inf(cur.grad) < 1e-6, it};
    }

    const std::array<double, 2> s{xn[0] - x[0], xn[1] - x[1]};
    // y is the change in the gradient of the negated objective.
    const std::array<double, 2> y{cur.grad[0] - next.grad[0], cur.grad[1] - next.grad[1]};
    const double sy = s[0] * y[0] + s[1] * y[1];
    if (sy > 1e-300) {
      if (it == 0) {
        const double yy = y[0] * y[0] + y[1] * y[1];
        const double scale = sy / yy;
        h00 = scale, h01 = 0.0, h11 = scale;
      }
      const double rho = 1.0 / sy;
      // H <- (I - rho s y^T) H (I - rho y s^T) + rho s s^T
      const double hy0 = h00 * y[0] + h01 * y[1];
      const double hy1 = h01 * y[0] + h11 * y[1];
      const double yhy = y[0] * hy0 + y[1] * hy1;
      const double c = (1.0 + rho * yhy) * rho;
      h00 += c * s[0] * s[0] - rho * (hy0 * s[0] + s[0] * hy0);
      h01 += c * s[0] * s[1] - rho * (hy0 * s[1] + s[0] * hy1);
      h11 += c * s[1] * s[1] - rho * (hy1 * s[1] + s[1] * hy1);
    }

    x = xn;
    cur = next;
    if (norm_inf(s) < opt.step_tol) return {x, cur.value, true, it + 1};
  }
  return {x, cur.value, norm_inf(cur.grad) < opt.grad_tol, it};
}

BoxFit fit_xi_delta(const std::function<double(double, double)>& value,
                    const std::function<std::array<double, 2>(double, double)>& grad,
                    double xi0, double delta0, double lower, double upper,
                    const MaximizeOptions& opt) {
  const double width = upper - lower;
  auto to_delta = [&](double v) {
    // Logistic map onto (lower, upper); clamp away from the open end.
    const double sig = 1.0 / (1.0 + std::exp(-v));
    return std::max(lower + width * sig, std::nextafter(lower, upper));
  };
  const double frac = std::clamp((delta0 - lower) / width, 1e-12, 1.0 - 1e-12);
  const std::array<double, 2> theta0{std::log(xi0), std::log(frac / (1.0 - frac))};

  auto objective = [&](const std::array<double, 2>& th) -> ValueAndGradient {
    const double xi = std::exp(th[0]);
    const double sig = 1.0 / (1.0 + std::exp(-th[1]));
    const double delta = to_delta(th[1]);
    const double v = value(xi, delta);
    if (!std::isfinite(v)) return {v, {0.0, 0.0}};
    const auto g = grad(xi, delta);
    return {v, {g[0] * xi, g[1] * width * sig * (1.0 - sig)}};
  };

  const auto r = maximize_2d(objective, theta0, opt);
  return {std::exp(r.theta[0]), to_delta(r.theta[1]), r.value, r.converged, r.iterations};
}

}  // namespace epdtail::detail
