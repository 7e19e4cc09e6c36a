#include "gnls/setops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "gnls/error.hpp"
#include "gnls/field_io.hpp"

namespace gnls {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_endpoint(const std::string& raw, const std::string& whole) {
  const std::string t = trim(raw);
  if (t == "inf" || t == "+inf") return kInf;
  if (t == "-inf") return -kInf;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
    throw InvalidArgument("bad interval endpoint '" + t + "' in '" + whole + "'");
  }
  return v;
}

std::string endpoint_text(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_double(v);
}

}  // namespace

IntervalUnion::IntervalUnion(std::vector<Interval> pieces) {
  for (const auto& p : pieces) {
    if (std::isnan(p.lo) || std::isnan(p.hi)) throw InvalidArgument("interval endpoint is NaN");
  }
  std::erase_if(pieces, [](const Interval& p) { return !(p.lo < p.hi); });
  std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  for (const auto& p : pieces) {
    if (!pieces_.empty() && p.lo < pieces_.back().hi) {
      pieces_.back().hi = std::max(pieces_.back().hi, p.hi);
    } else {
      pieces_.push_back(p);
    }
  }
}

IntervalUnion IntervalUnion::real_line() { return IntervalUnion({{-kInf, kInf}}); }
IntervalUnion IntervalUnion::positive() { return IntervalUnion({{0.0, kInf}}); }
IntervalUnion IntervalUnion::negative() { return IntervalUnion({{-kInf, 0.0}}); }

IntervalUnion IntervalUnion::ball(double center, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("ball radius must be positive");
  return IntervalUnion({{center - radius, center + radius}});
}

bool IntervalUnion::is_bounded() const noexcept {
  return pieces_.empty() || (std::isfinite(pieces_.front().lo) && std::isfinite(pieces_.back().hi));
}

bool IntervalUnion::contains(double x) const {
  return std::any_of(pieces_.begin(), pieces_.end(), [x](const Interval& p) { return p.lo < x && x < p.hi; });
}

double IntervalUnion::measure() const {
  double m = 0.0;
  for (const auto& p : pieces_) m += p.hi - p.lo;
  return m;
}

double IntervalUnion::inf() const { return pieces_.empty() ? kInf : pieces_.front().lo; }
double IntervalUnion::sup() const { return pieces_.empty() ? -kInf : pieces_.back().hi; }

bool IntervalUnion::subset_of(const IntervalUnion& other) const {
  return std::all_of(pieces_.begin(), pieces_.end(), [&](const Interval& p) {
    return std::any_of(other.pieces_.begin(), other.pieces_.end(),
                       [&](const Interval& q) { return q.lo <= p.lo && p.hi <= q.hi; });
  });
}

IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Interval> all = a.intervals();
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return IntervalUnion(std::move(all));
}

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Interval> out;
  const auto& x = a.intervals();
  const auto& y = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const double lo = std::max(x[i].lo, y[j].lo);
    const double hi = std::min(x[i].hi, y[j].hi);
    if (lo < hi) out.push_back({lo, hi});
    if (x[i].hi < y[j].hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalUnion(std::move(out));
}

double symmetric_difference_measure(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<double> cuts{-kInf, kInf};
  for (const auto* s : {&a, &b}) {
    for (const auto& p : s->intervals()) {
      cuts.push_back(p.lo);
      cuts.push_back(p.hi);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double p = cuts[k], q = cuts[k + 1];
    double probe;
    if (std::isinf(p) && std::isinf(q)) {
      probe = 0.0;
    } else if (std::isinf(p)) {
      probe = q - 1.0;
    } else if (std::isinf(q)) {
      probe = p + 1.0;
    } else {
      probe = 0.5 * (p + q);
    }
    if (a.contains(probe) != b.contains(probe)) total += q - p;
  }
  return total;
}

IntervalUnion minkowski_sum(const IntervalUnion& x, const IntervalUnion& y) {
  std::vector<Interval> out;
  out.reserve(x.intervals().size() * y.intervals().size());
  for (const auto& a : x.intervals()) {
    for (const auto& b : y.intervals()) out.push_back({a.lo + b.lo, a.hi + b.hi});
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion minkowski_power(const IntervalUnion& x, int m) {
  if (m < 1) throw InvalidArgument("minkowski_power needs m >= 1");
  IntervalUnion base = x, result;
  bool have = false;
  while (m > 0) {
    if (m & 1) {
      result = have ? minkowski_sum(result, base) : base;
      have = true;
    }
    m >>= 1;
    if (m > 0) base = minkowski_sum(base, base);
  }
  return result;
}

bool is_fixed_point(const IntervalUnion& x, int m) {
  if (m < 2) throw InvalidArgument("is_fixed_point needs m >= 2");
  return minkowski_power(x, m) == x;
}

IntervalUnion parse_interval_union(const std::string& text) {
  const std::string t = trim(text);
  if (t == "R") return IntervalUnion::real_line();
  if (t == "{}") return IntervalUnion::empty();
  std::vector<Interval> pieces;
  std::size_t pos = 0;
  while (pos <= t.size()) {
    const std::size_t bar = t.find('|', pos);
    const std::string item = trim(t.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos));
    if (item == "R") {
      pieces.push_back({-kInf, kInf});
    } else {
      const auto comma = item.find(',');
      if (item.size() < 5 || item.front() != '(' || item.back() != ')' || comma == std::string::npos) {
        throw InvalidArgument("expected '(a,b)' but found '" + item + "'");
      }
      const double lo = parse_endpoint(item.substr(1, comma - 1), t);
      const double hi = parse_endpoint(item.substr(comma + 1, item.size() - comma - 2), t);
      if (!(lo < hi)) throw InvalidArgument("empty interval '" + item + "'");
      pieces.push_back({lo, hi});
    }
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  return IntervalUnion(std::move(pieces));
}

std::string to_string(const IntervalUnion& x) {
  if (x.is_empty()) return "{}";
  if (x == IntervalUnion::real_line()) return "R";
  std::string s;
  for (const auto& p : x.intervals()) {
    if (!s.empty()) s += '|';
    s += '(' + endpoint_text(p.lo) + ',' + endpoint_text(p.hi) + ')';
  }
  return s;
}

IntervalUnion random_bounded_union(std::mt19937_64& rng, int max_pieces) {
  std::uniform_int_distribution<int> count(1, std::max(max_pieces, 1));
  std::uniform_int_distribution<int> start(-32, 31);
  std::uniform_int_distribution<int> length(1, 8);
  std::vector<Interval> pieces;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) {
    const double lo = start(rng) / 4.0;
    pieces.push_back({lo, lo + length(rng) / 4.0});
  }
  return IntervalUnion(std::move(pieces));
}

IntervalUnion random_mixed_union(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 9);
  std::uniform_int_distribution<int> cut(1, 32);
  switch (kind(rng)) {
    case 0: return IntervalUnion::real_line();
    case 1: return IntervalUnion::positive();
    case 2: return IntervalUnion::negative();
    case 3: return IntervalUnion({{cut(rng) / 4.0, kInf}});
    case 4: return IntervalUnion({{-kInf, -cut(rng) / 4.0}});
    case 5: return IntervalUnion({{-cut(rng) / 4.0, kInf}});
    case 6: {
      const double a = cut(rng) / 4.0;
      return unite(IntervalUnion({{0.0, a}}), IntervalUnion({{a + cut(rng) / 4.0, kInf}}));
    }
    case 7: return unite(random_bounded_union(rng), IntervalUnion({{-kInf, -cut(rng) / 4.0}}));
    default: return random_bounded_union(rng);
  }
}

bool is_canonical_fixed_set(const IntervalUnion& x) {
  return x == IntervalUnion::real_line() || x == IntervalUnion::positive() || x == IntervalUnion::negative();
}

FixedPointSummary classify_fixed_points(const UnionSampler& sampler, int m, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("classify_fixed_points needs trials >= 1");
  std::mt19937_64 rng(seed);
  FixedPointSummary sum;
  sum.trials = trials;
  for (int t = 0; t < trials; ++t) {
    const IntervalUnion x = sampler(rng);
    if (!is_fixed_point(x, m)) continue;
    ++sum.fixed_points;
    if (is_canonical_fixed_set(x)) {
      ++sum.canonical;
    } else if (!x.is_empty()) {
      sum.violations.push_back(x);
    }
  }
  return sum;
}

}  // namespace gnls
