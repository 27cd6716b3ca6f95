#include "ssde/piecemeal.hpp"

#include "ssde/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ssde {

namespace {

std::string describe(std::size_t i, const char* what) {
  std::ostringstream os;
  os << "map " << (i + 1) << ": " << what;
  return os.str();
}

// Horizontal shift forced by the tiling for a map whose image ends at `right`.
template <class T>
T expected_shift(const T& a, const T& right, const T& lo, const T& hi) {
  return a > T(0) ? right - a * hi : right - a * lo;
}

}  // namespace

Interval image_interval(const AffineGraphMap& m, const Interval& domain) {
  const double a = m.a.value;
  if (a == 0.0) throw Error(Errc::DegenerateMap, "horizontal scale a = 0");
  const double p = a * domain.lo + m.e.value;
  const double q = a * domain.hi + m.e.value;
  return {std::min(p, q), std::max(p, q)};
}

std::span<const Rational> Piecemealing::exact_breakpoints() const {
  if (!exact_breakpoints_) throw Error(Errc::NotExact, "piecemealing has no rational entries");
  return *exact_breakpoints_;
}

Piecemealing validate(const Number& lo, const Number& hi, std::vector<AffineGraphMap> maps) {
  if (maps.empty()) throw Error(Errc::Tiling, "a piecemealing needs at least one map");
  if (!(lo.value < hi.value)) throw Error(Errc::Domain, "domain requires x_0 < x_n");
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].a.value == 0.0 || (maps[i].a.exact && maps[i].a.exact->sign() == 0)) {
      throw Error(Errc::DegenerateMap, describe(i, "horizontal scale a = 0"));
    }
  }

  Piecemealing p;
  p.lo_ = lo;
  p.hi_ = hi;

  const bool exact = lo.is_exact() && hi.is_exact() &&
                     std::all_of(maps.begin(), maps.end(),
                                 [](const AffineGraphMap& m) { return m.is_exact(); });
  if (exact) {
    const Rational& x0 = *lo.exact;
    const Rational& xn = *hi.exact;
    const Rational w = xn - x0;
    Rational total;
    for (const auto& m : maps) total += abs(*m.a.exact);
    if (total != Rational(1)) {
      throw Error(Errc::Tiling, "sum of |a_i| is " + total.str() + ", expected 1");
    }
    std::vector<Rational> xs{x0};
    for (std::size_t i = 0; i < maps.size(); ++i) {
      const Rational& a = *maps[i].a.exact;
      xs.push_back(xs.back() + abs(a) * w);
      const Rational want = expected_shift(a, xs[i + 1], x0, xn);
      if (*maps[i].e.exact != want) {
        throw Error(Errc::ShiftMismatch,
                    describe(i, "e = ") + maps[i].e.exact->str() + ", breakpoints require " + want.str());
      }
    }
    p.breakpoints_.reserve(xs.size());
    for (const auto& x : xs) p.breakpoints_.push_back(x.to_double());
    p.exact_breakpoints_ = std::move(xs);
  } else {
    const double x0 = lo.value;
    const double xn = hi.value;
    const double w = xn - x0;
    double total = 0.0;
    for (const auto& m : maps) total += std::abs(m.a.value);
    if (std::abs(total - 1.0) > 1e-12) {
      std::ostringstream os;
      os.precision(17);
      os << "sum of |a_i| is " << total << ", expected 1";
      throw Error(Errc::Tiling, os.str());
    }
    std::vector<double> xs{x0};
    for (std::size_t i = 0; i < maps.size(); ++i) {
      const double a = maps[i].a.value;
      const double next = i + 1 == maps.size() ? xn : xs.back() + std::abs(a) * w;
      xs.push_back(next);
      const double want = expected_shift(a, xs[i + 1], x0, xn);
      if (std::abs(maps[i].e.value - want) > 1e-9 * w) {
        std::ostringstream os;
        os.precision(17);
        os << "e = " << maps[i].e.value << ", breakpoints require " << want;
        throw Error(Errc::ShiftMismatch, describe(i, os.str().c_str()));
      }
    }
    p.breakpoints_ = std::move(xs);
  }
  p.maps_ = std::move(maps);
  return p;
}

Piecemealing validate(const Interval& domain, std::vector<AffineGraphMap> maps) {
  return validate(Number(domain.lo), Number(domain.hi), std::move(maps));
}

SegmentedFunction apply(const Piecemealing& p, const SegmentedFunction& y) {
  const auto yb = y.breakpoints();
  const auto pb = p.breakpoints();
  const double tol = 1e-12 * p.width();
  const bool shared = yb.size() == pb.size() &&
                      std::equal(yb.begin(), yb.end(), pb.begin(),
                                 [tol](double u, double v) { return std::abs(u - v) <= tol; });
  if (!shared) {
    throw Error(Errc::DomainMismatch, "function breakpoints differ from the piecemealing's; "
                                      "pass node counts explicitly");
  }
  const auto counts = y.interval_counts();
  return apply(p, y, counts);
}

SegmentedFunction apply(const Piecemealing& p, const SegmentedFunction& y,
                        std::span<const std::size_t> intervals) {
  const double x0 = p.lo().value;
  const double xn = p.hi().value;
  const double w = xn - x0;
  const double tol = 1e-12 * w;
  const Interval yd = y.domain();
  if (std::abs(yd.lo - x0) > tol || std::abs(yd.hi - xn) > tol) {
    throw Error(Errc::DomainMismatch, "function domain differs from the piecemealing's");
  }
  if (intervals.size() != p.size()) {
    throw Error(Errc::DomainMismatch, "one node count per piecemealing segment required");
  }
  const auto pb = p.breakpoints();
  std::vector<std::vector<double>> segs;
  segs.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& m = p.maps()[i];
    const double a = m.a.value;
    const double d = m.d.value;
    const double e = m.e.value;
    const double f = m.f.value;
    const std::size_t count = intervals[i];
    if (count < 2) throw Error(Errc::InvalidFunction, "each segment needs at least 2 intervals");
    const double lo = pb[i];
    const double hi = pb[i + 1];
    std::vector<double> v(count + 1);
    for (std::size_t k = 0; k <= count; ++k) {
      const double x = k == 0 ? lo
                       : k == count
                           ? hi
                           : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count);
      double u = (x - e) / a;
      if (u < yd.lo || u > yd.hi) {
        if (u < x0 - tol || u > xn + tol) {
          std::ostringstream os;
          os.precision(17);
          os << "map " << (i + 1) << " sends x = " << x << " back to " << u;
          throw Error(Errc::ArgumentOutOfRange, os.str());
        }
        u = std::clamp(u, yd.lo, yd.hi);
      }
      v[k] = d * eval(y, u) + f;
    }
    segs.push_back(std::move(v));
  }
  return SegmentedFunction({pb.begin(), pb.end()}, std::move(segs));
}

SegmentedFunction sample_on(const Piecemealing& p, const Evaluator& fn,
                            std::size_t intervals_per_segment) {
  const auto pb = p.breakpoints();
  return make_sampled(fn, {pb.begin(), pb.end()}, intervals_per_segment);
}

}  // namespace ssde
