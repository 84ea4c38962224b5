#pragma once

#include <cstddef>

#include "epdtail/tail_data.hpp"

namespace epdtail {

struct HillEstimate {
  double xi;
  std::size_t k;
};

/// Mean log-excess. Zero when every excess is a tie with the threshold.
HillEstimate hill(const ExcessSet& e);

/// E_{k,n}(s) = (1/k) sum_j y_j^s for s < 0. Lies in (0, 1].
double moment_stat(const ExcessSet& e, double s);

/// Weissman extrapolation (k/n) (x / X_{n-k,n})^{-1/xi}, valid for x at or
/// above the threshold.
double weissman_tail_prob(const SortedSample& s, std::size_t k, double x, double xi);

}  // namespace epdtail
