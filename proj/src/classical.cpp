#include "epdtail/classical.hpp"

#include <cmath>

#include "epdtail/error.hpp"

namespace epdtail {

HillEstimate hill(const ExcessSet& e) {
  double sum = 0.0;
  for (double y : e.y()) sum += std::log(y);
  return {sum / static_cast<double>(e.k()), e.k()};
}

double moment_stat(const ExcessSet& e, double s) {
  if (!(s < 0.0)) throw InvalidArgument("moment_stat requires s < 0");
  double sum = 0.0;
  for (double y : e.y()) sum += std::pow(y, s);
  return sum / static_cast<double>(e.k());
}

double weissman_tail_prob(const SortedSample& s, std::size_t k, double x, double xi) {
  if (!(xi > 0.0)) throw InvalidArgument("weissman_tail_prob requires xi > 0");
  const double t = s.threshold(k);
  if (x < t) throw InvalidArgument("x is below the threshold X_{n-k,n}");
  const double frac = static_cast<double>(k) / static_cast<double>(s.size());
  return frac * std::pow(x / t, -1.0 / xi);
}

}  // namespace epdtail
