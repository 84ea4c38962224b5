#include "epdtail/tail_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "epdtail/error.hpp"

namespace epdtail {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<std::string_view> field(std::string_view line, std::size_t column) {
  const bool delimited = line.find_first_of(",;\t") != std::string_view::npos;
  std::size_t idx = 0;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t end;
    if (delimited) {
      end = line.find_first_of(",;\t", pos);
    } else {
      pos = line.find_first_not_of(' ', pos);
      if (pos == std::string_view::npos) break;
      end = line.find(' ', pos);
    }
    if (end == std::string_view::npos) end = line.size();
    if (idx == column) return line.substr(pos, end - pos);
    ++idx;
    pos = end + 1;
  }
  return std::nullopt;
}

}  // namespace

SortedSample::SortedSample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) throw InvalidArgument("sample needs at least 2 values");
  for (double v : values_) {
    if (!std::isfinite(v)) throw DataError("non-finite value in sample");
    if (v <= 0.0) throw DataError("nonpositive value in sample");
  }
  std::sort(values_.begin(), values_.end());
}

double SortedSample::threshold(std::size_t k) const {
  if (k < 1 || k + 1 > values_.size())
    throw InvalidArgument("k=" + std::to_string(k) + " outside [1, n-1]");
  return values_[values_.size() - k - 1];
}

ExcessSet::ExcessSet(std::vector<double> y, double threshold)
    : y_(std::move(y)), threshold_(threshold) {
  if (y_.empty()) throw InvalidArgument("excess set is empty");
  if (!(threshold_ > 0.0)) throw InvalidArgument("threshold must be positive");
  for (std::size_t j = 0; j < y_.size(); ++j) {
    if (!(y_[j] >= 1.0)) throw InvalidArgument("excesses must be >= 1");
    if (j > 0 && y_[j] > y_[j - 1]) throw InvalidArgument("excesses must be non-increasing");
  }
}

SortedSample load_sample(std::istream& in, std::optional<std::size_t> column) {
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty()) continue;
    std::optional<std::string_view> cell = t;
    if (column) {
      cell = field(t, *column);
    }
    const auto v = cell ? parse_double(*cell) : std::nullopt;
    if (!v) {
      if (first_content) {
        first_content = false;
        continue;  // header
      }
      throw DataError("parse failure at line " + std::to_string(lineno));
    }
    first_content = false;
    if (!std::isfinite(*v)) throw DataError("non-finite value at line " + std::to_string(lineno));
    if (*v <= 0.0) throw DataError("nonpositive value at line " + std::to_string(lineno));
    values.push_back(*v);
  }
  if (values.size() < 2)
    throw DataError("need at least 2 values, got " + std::to_string(values.size()));
  return SortedSample(std::move(values));
}

ExcessSet excesses(const SortedSample& s, std::size_t k) {
  const double t = s.threshold(k);
  const auto v = s.values();
  const std::size_t n = v.size();
  std::vector<double> y(k);
  for (std::size_t j = 1; j <= k; ++j) y[j - 1] = v[n - j] / t;
  return ExcessSet(std::move(y), t);
}

}  // namespace epdtail
