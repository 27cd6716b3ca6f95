#include "ssde/funcrep.hpp"

#include "ssde/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace ssde {

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo < hi)) throw Error(Errc::Domain, "interval requires lo < hi");
}

SegmentedFunction::SegmentedFunction(std::vector<double> breakpoints,
                                     std::vector<std::vector<double>> segments)
    : breakpoints_(std::move(breakpoints)), segments_(std::move(segments)) {
  if (breakpoints_.size() < 2) throw Error(Errc::InvalidFunction, "need at least two breakpoints");
  if (segments_.size() + 1 != breakpoints_.size()) {
    throw Error(Errc::InvalidFunction, "segment count must be breakpoint count minus one");
  }
  for (std::size_t j = 0; j + 1 < breakpoints_.size(); ++j) {
    if (!(breakpoints_[j] < breakpoints_[j + 1])) {
      throw Error(Errc::InvalidFunction, "breakpoints must be strictly increasing");
    }
  }
  for (const auto& s : segments_) {
    if (s.size() < 3) throw Error(Errc::InvalidFunction, "each segment needs at least 2 intervals");
    for (double v : s) {
      if (!std::isfinite(v)) throw Error(Errc::InvalidFunction, "non-finite sample value");
    }
  }
}

std::vector<std::size_t> SegmentedFunction::interval_counts() const {
  std::vector<std::size_t> counts;
  counts.reserve(segments_.size());
  for (const auto& s : segments_) counts.push_back(s.size() - 1);
  return counts;
}

double SegmentedFunction::node(std::size_t j, std::size_t k) const {
  const std::size_t m = intervals(j);
  if (k == 0) return breakpoints_[j];
  if (k == m) return breakpoints_[j + 1];
  const double lo = breakpoints_[j];
  const double hi = breakpoints_[j + 1];
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(m);
}

double SegmentedFunction::spacing(std::size_t j) const {
  return (breakpoints_[j + 1] - breakpoints_[j]) / static_cast<double>(intervals(j));
}

bool SegmentedFunction::is_continuous(double tol) const {
  for (std::size_t j = 0; j + 1 < segments_.size(); ++j) {
    if (std::abs(segments_[j].back() - segments_[j + 1].front()) > tol) return false;
  }
  return true;
}

double SegmentedFunction::max_abs() const {
  double m = 0.0;
  for (const auto& s : segments_) {
    for (double v : s) m = std::max(m, std::abs(v));
  }
  return m;
}

bool SegmentedFunction::same_shape(const SegmentedFunction& other) const {
  if (breakpoints_ != other.breakpoints_) return false;
  for (std::size_t j = 0; j < segments_.size(); ++j) {
    if (segments_[j].size() != other.segments_[j].size()) return false;
  }
  return true;
}

double eval(const SegmentedFunction& f, double x) {
  const auto b = f.breakpoints();
  if (!(b.front() <= x && x <= b.back())) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "x = " << x << " outside [" << b.front() << ", " << b.back() << "]";
    throw Error(Errc::Domain, msg.str());
  }
  // First breakpoint b_j (j >= 1) with x <= b_j; ties go to the left segment.
  const auto it = std::lower_bound(b.begin() + 1, b.end(), x);
  const auto j = static_cast<std::size_t>(it - (b.begin() + 1));
  const auto values = f.segment(j);
  const std::size_t m = values.size() - 1;
  const double lo = b[j];
  const double hi = b[j + 1];
  const double t = (x - lo) / (hi - lo) * static_cast<double>(m);
  auto k = static_cast<std::size_t>(std::max(0.0, std::floor(t)));
  if (k >= m) k = m - 1;
  const double frac = t - static_cast<double>(k);
  return values[k] + frac * (values[k + 1] - values[k]);
}

double integrate(const SegmentedFunction& f) {
  double total = 0.0;
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    const auto v = f.segment(j);
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t k = 1; k + 1 < v.size(); ++k) s += v[k];
    total += s * f.spacing(j);
  }
  return total;
}

SegmentedFunction integrate_prefix(const SegmentedFunction& f, double c) {
  std::vector<std::vector<double>> out;
  out.reserve(f.segment_count());
  double running = c;
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    const auto v = f.segment(j);
    const double half_h = 0.5 * f.spacing(j);
    std::vector<double> g(v.size());
    g[0] = running;
    for (std::size_t k = 1; k < v.size(); ++k) g[k] = g[k - 1] + half_h * (v[k - 1] + v[k]);
    running = g.back();
    out.push_back(std::move(g));
  }
  const auto b = f.breakpoints();
  return SegmentedFunction({b.begin(), b.end()}, std::move(out));
}

double double_integral(const SegmentedFunction& f) {
  // On one cell the prefix integral is quadratic; trapezoid on it is off by
  // -h^2 (f_{k+1} - f_k) / 12, which telescopes per segment.
  const SegmentedFunction g = integrate_prefix(f, 0.0);
  double total = integrate(g);
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    const auto v = f.segment(j);
    const double h = f.spacing(j);
    total -= h * h * (v.back() - v.front()) / 12.0;
  }
  return total;
}

double sup_distance(const SegmentedFunction& f, const SegmentedFunction& g) {
  if (!f.same_shape(g)) throw Error(Errc::ShapeMismatch, "sup_distance needs identical grids");
  double d = 0.0;
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    const auto a = f.segment(j);
    const auto b = g.segment(j);
    for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  }
  return d;
}

SegmentedFunction make_sampled(const Evaluator& fn, std::vector<double> breakpoints,
                               std::size_t intervals_per_segment) {
  const std::vector<std::size_t> counts(breakpoints.empty() ? 0 : breakpoints.size() - 1,
                                        intervals_per_segment);
  return make_sampled(fn, std::move(breakpoints), counts);
}

SegmentedFunction make_sampled(const Evaluator& fn, std::vector<double> breakpoints,
                               std::span<const std::size_t> intervals) {
  if (breakpoints.size() < 2 || intervals.size() + 1 != breakpoints.size()) {
    throw Error(Errc::InvalidFunction, "one node count per segment required");
  }
  std::vector<std::vector<double>> segs;
  segs.reserve(intervals.size());
  for (std::size_t j = 0; j < intervals.size(); ++j) {
    const std::size_t m = intervals[j];
    if (m < 2) throw Error(Errc::InvalidFunction, "each segment needs at least 2 intervals");
    const double lo = breakpoints[j];
    const double hi = breakpoints[j + 1];
    std::vector<double> v(m + 1);
    for (std::size_t k = 0; k <= m; ++k) {
      const double x = k == 0 ? lo
                       : k == m ? hi
                                : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(m);
      v[k] = fn(x);
    }
    segs.push_back(std::move(v));
  }
  return SegmentedFunction(std::move(breakpoints), std::move(segs));
}

SegmentedFunction transform(const SegmentedFunction& f,
                            const std::function<double(double, double)>& op) {
  std::vector<std::vector<double>> segs;
  segs.reserve(f.segment_count());
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    const auto v = f.segment(j);
    std::vector<double> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = op(f.node(j, k), v[k]);
    segs.push_back(std::move(out));
  }
  const auto b = f.breakpoints();
  return SegmentedFunction({b.begin(), b.end()}, std::move(segs));
}

SegmentedFunction combine(const SegmentedFunction& f, const SegmentedFunction& g,
                          const std::function<double(double, double)>& op) {
  if (!f.same_shape(g)) throw Error(Errc::ShapeMismatch, "combine needs identical grids");
  std::vector<std::vector<double>> segs;
  segs.reserve(f.segment_count());
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    const auto a = f.segment(j);
    const auto b = g.segment(j);
    std::vector<double> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = op(a[k], b[k]);
    segs.push_back(std::move(out));
  }
  const auto b = f.breakpoints();
  return SegmentedFunction({b.begin(), b.end()}, std::move(segs));
}

namespace {

void write_row(std::ostream& out, double x, double y) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, y);
  out.write(buf, n);
}

}  // namespace

void write_csv(std::ostream& out, const SegmentedFunction& f) {
  out << "x,y\n";
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    const auto v = f.segment(j);
    std::size_t first = 0;
    if (j > 0 && f.segment(j - 1).back() == v.front()) first = 1;
    for (std::size_t k = first; k < v.size(); ++k) write_row(out, f.node(j, k), v[k]);
  }
}

SegmentedFunction read_csv(std::istream& in, std::span<const double> breakpoints) {
  if (breakpoints.size() < 2) throw Error(Errc::Parse, "read_csv needs at least two breakpoints");
  std::string line;
  if (!std::getline(in, line) || line != "x,y") throw Error(Errc::Parse, "missing CSV header 'x,y'");

  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(Errc::Parse, "malformed CSV row: " + line);
    try {
      rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw Error(Errc::Parse, "malformed CSV row: " + line);
    }
  }

  const double tol = 1e-12 * (breakpoints.back() - breakpoints.front());
  auto at = [tol](double x, double b) { return std::abs(x - b) <= tol; };

  std::vector<std::vector<double>> segs(breakpoints.size() - 1);
  std::size_t r = 0;
  for (std::size_t j = 0; j + 1 < breakpoints.size(); ++j) {
    auto& seg = segs[j];
    if (j > 0) {
      // A repeated breakpoint row carries the right-hand value.
      if (r < rows.size() && at(rows[r].first, breakpoints[j])) {
        seg.push_back(rows[r++].second);
      } else {
        seg.push_back(segs[j - 1].back());
      }
    }
    while (r < rows.size()) {
      const auto [x, y] = rows[r];
      if (x > breakpoints[j + 1] + tol) break;
      seg.push_back(y);
      ++r;
      if (at(x, breakpoints[j + 1])) break;
    }
  }
  if (r != rows.size()) throw Error(Errc::Parse, "CSV rows extend beyond the last breakpoint");

  SegmentedFunction f({breakpoints.begin(), breakpoints.end()}, std::move(segs));
  // Re-derive node positions and insist the file matched them.
  std::size_t idx = 0;
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    for (std::size_t k = 0; k <= f.intervals(j); ++k) {
      if (j > 0 && k == 0 && !(idx < rows.size() && at(rows[idx].first, breakpoints[j]) &&
                               idx > 0 && at(rows[idx - 1].first, breakpoints[j]))) {
        continue;
      }
      if (idx >= rows.size() || !at(rows[idx].first, f.node(j, k))) {
        throw Error(Errc::Parse, "CSV nodes are not uniform within the given breakpoints");
      }
      ++idx;
    }
  }
  return f;
}

}  // namespace ssde
