#pragma once

#include <array>
#include <functional>

namespace epdtail::detail {

struct ValueAndGradient {
  double value;
  std::array<double, 2> grad;
};

struct MaximizeResult {
  std::array<double, 2> theta;
  double value;
  bool converged;
  int iterations;
};

struct MaximizeOptions {
  double grad_tol = 1e-8;
  double step_tol = 1e-10;
  int max_iter = 500;
};

/// BFGS ascent on an unconstrained 2-d objective. The objective may return
/// -infinity; the line search backs off from such points.
MaximizeResult maximize_2d(const std::function<ValueAndGradient(const std::array<double, 2>&)>& f,
                           std::array<double, 2> theta0, const MaximizeOptions& opt = {});

/// Fits (xi, delta) over xi > 0, lower < delta <= upper by maximizing
/// `value` with analytic partial derivatives `grad` (both in (xi, delta)).
/// Works on (log xi, logit of delta's position in the interval).
struct BoxFit {
  double xi;
  double delta;
  double value;
  bool converged;
  int iterations;
};

BoxFit fit_xi_delta(const std::function<double(double, double)>& value,
                    const std::function<std::array<double, 2>(double, double)>& grad,
                    double xi0, double delta0, double lower, double upper,
                    const MaximizeOptions& opt = {});

}  // namespace epdtail::detail
