#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <vector>

namespace epdtail {

/// Ascending order statistics of strictly positive observations.
class SortedSample {
 public:
  /// Sorts `values`. Throws DataError on a nonpositive or non-finite value
  /// and InvalidArgument when fewer than two values are given.
  explicit SortedSample(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  /// X_{n-k,n}: the (k+1)-th largest observation.
  double threshold(std::size_t k) const;

 private:
  std::vector<double> values_;
};

/// The k relative excesses over the (k+1)-th largest observation, largest
/// first. Every entry is >= 1.
class ExcessSet {
 public:
  ExcessSet(std::vector<double> y, double threshold);

  std::size_t k() const noexcept { return y_.size(); }
  std::span<const double> y() const noexcept { return y_; }
  double threshold() const noexcept { return threshold_; }

 private:
  std::vector<double> y_;
  double threshold_;
};

/// Reads one value per record. With `column`, records are split on commas
/// (or whitespace) and the given zero-based field is used. A first line that
/// does not parse as a number is treated as a header.
SortedSample load_sample(std::istream& in,
                         std::optional<std::size_t> column = std::nullopt);

/// Y_{j,k} = X_{n-j+1,n} / X_{n-k,n}, j = 1..k. Requires 1 <= k <= n-1.
ExcessSet excesses(const SortedSample& s, std::size_t k);

}  // namespace epdtail
