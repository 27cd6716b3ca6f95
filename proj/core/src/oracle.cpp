#include "ssde/oracle.hpp"

#include "ssde/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

namespace ssde::oracle {

namespace {

void check_levels(const QuadratureSpec& spec) {
  if (spec.levels.size() < 2) throw Error(Errc::NonConvergent, "need at least two refinement levels");
  for (std::size_t i = 0; i + 1 < spec.levels.size(); ++i) {
    if (spec.levels[i] == 0 || spec.levels[i] >= spec.levels[i + 1]) {
      throw Error(Errc::NonConvergent, "refinement levels must be positive and strictly increasing");
    }
  }
}

double node_x(const Interval& s, std::size_t k, std::size_t n) {
  if (k == 0) return s.lo;
  if (k == n) return s.hi;
  return s.lo + s.width() * static_cast<double>(k) / static_cast<double>(n);
}

struct LevelSums {
  double value = 0.0;
  double scale = 0.0;  // same rule applied to |integrand|, for the rounding floor
};

LevelSums single_level(const std::vector<Piece>& pieces, std::size_t n) {
  LevelSums out;
  for (const auto& piece : pieces) {
    const double h = piece.span.width() / static_cast<double>(n);
    double s = 0.0;
    double a = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double v = piece.fn(node_x(piece.span, k, n));
      const double wgt = (k == 0 || k == n) ? 0.5 : 1.0;
      s += wgt * v;
      a += wgt * std::abs(v);
    }
    out.value += s * h;
    out.scale += a * h;
  }
  return out;
}

LevelSums double_level(const std::vector<Piece>& pieces, std::size_t n) {
  LevelSums out;
  double inner = 0.0;      // running integral from the left end
  double inner_abs = 0.0;
  for (const auto& piece : pieces) {
    const double h = piece.span.width() / static_cast<double>(n);
    double prev = piece.fn(piece.span.lo);
    for (std::size_t k = 1; k <= n; ++k) {
      const double cur = piece.fn(node_x(piece.span, k, n));
      const double before = inner;
      inner += 0.5 * h * (prev + cur);
      inner_abs += 0.5 * h * (std::abs(prev) + std::abs(cur));
      out.value += 0.5 * h * (before + inner);
      out.scale += h * inner_abs;
      prev = cur;
    }
  }
  return out;
}

template <class LevelFn>
Estimate extrapolate(const QuadratureSpec& spec, LevelFn level) {
  check_levels(spec);
  std::vector<LevelSums> sums;
  sums.reserve(spec.levels.size());
  for (std::size_t n : spec.levels) sums.push_back(level(n));

  auto factor = [&](std::size_t i) {  // 1 / (r^2 - 1) between levels i-1 and i
    const double r = static_cast<double>(spec.levels[i]) / static_cast<double>(spec.levels[i - 1]);
    return 1.0 / (r * r - 1.0);
  };
  auto floor_at = [&](std::size_t i) { return 1e-13 * (1.0 + sums[i].scale); };

  for (std::size_t i = 2; i < sums.size(); ++i) {
    const double prev_est = std::abs(sums[i - 1].value - sums[i - 2].value) * factor(i - 1);
    const double step = std::abs(sums[i].value - sums[i - 1].value);
    if (step > 10.0 * prev_est + floor_at(i)) {
      std::ostringstream os;
      os.precision(6);
      os << "level " << spec.levels[i] << " moved the value by " << step << ", estimate was " << prev_est;
      throw Error(Errc::NonConvergent, os.str());
    }
  }

  const std::size_t last = sums.size() - 1;
  const double diff = sums[last].value - sums[last - 1].value;
  Estimate est;
  est.value = spec.richardson ? sums[last].value + diff * factor(last) : sums[last].value;
  est.error = std::abs(diff) * factor(last) + floor_at(last);
  return est;
}

void check_pieces(const std::vector<Piece>& pieces) {
  if (pieces.empty()) throw Error(Errc::Domain, "no pieces to integrate");
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    if (pieces[i].span.hi != pieces[i + 1].span.lo) {
      throw Error(Errc::Domain, "pieces must be contiguous");
    }
  }
}

}  // namespace

Estimate brute_integral(const Evaluator& fn, const Interval& interval, const QuadratureSpec& spec) {
  return brute_integral(std::vector<Piece>{{interval, fn}}, spec);
}

Estimate brute_integral(const std::vector<Piece>& pieces, const QuadratureSpec& spec) {
  check_pieces(pieces);
  return extrapolate(spec, [&](std::size_t n) { return single_level(pieces, n); });
}

Estimate brute_double_integral(const Evaluator& fn, const Interval& interval,
                               const QuadratureSpec& spec) {
  return brute_double_integral(std::vector<Piece>{{interval, fn}}, spec);
}

Estimate brute_double_integral(const std::vector<Piece>& pieces, const QuadratureSpec& spec) {
  check_pieces(pieces);
  return extrapolate(spec, [&](std::size_t n) { return double_level(pieces, n); });
}

std::vector<Piece> image_pieces(const Piecemealing& p, const Evaluator& y) {
  const auto xs = p.breakpoints();
  const double lo = p.lo().value;
  const double hi = p.hi().value;
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& m = p.maps()[i];
    pieces.push_back({Interval(xs[i], xs[i + 1]),
                      [=, a = m.a.value, d = m.d.value, e = m.e.value, f = m.f.value](double x) {
                        return d * y(std::clamp((x - e) / a, lo, hi)) + f;
                      }});
  }
  return pieces;
}

std::vector<Piece> segment_pieces(const SegmentedFunction& f) {
  std::vector<Piece> pieces;
  const auto b = f.breakpoints();
  for (std::size_t j = 0; j < f.segment_count(); ++j) {
    const auto seg = f.segment(j);
    std::vector<double> values(seg.begin(), seg.end());
    const double lo = b[j];
    const double hi = b[j + 1];
    pieces.push_back({Interval(lo, hi), [values = std::move(values), lo, hi](double x) {
                        const std::size_t m = values.size() - 1;
                        const double t = std::clamp((x - lo) / (hi - lo), 0.0, 1.0) * static_cast<double>(m);
                        const auto k = std::min(static_cast<std::size_t>(t), m - 1);
                        const double frac = t - static_cast<double>(k);
                        return values[k] + frac * (values[k + 1] - values[k]);
                      }});
  }
  return pieces;
}

double Rng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

long Rng::integer(long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(engine_() % span);
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* env = std::getenv("SSDE_SEED"); env != nullptr && *env != '\0') {
    return std::stoull(env);
  }
  return fallback;
}

SegmentedFunction random_zero_mean(const Interval& interval, std::uint64_t seed) {
  Rng rng(seed);
  const auto segments = static_cast<std::size_t>(rng.integer(1, 3));
  std::vector<double> weights(segments);
  double total = 0.0;
  for (auto& w : weights) total += (w = rng.uniform(0.5, 1.5));

  std::vector<double> breakpoints{interval.lo};
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < segments; ++j) {
    acc += weights[j];
    breakpoints.push_back(interval.lo + interval.width() * acc / total);
  }
  breakpoints.push_back(interval.hi);

  std::vector<std::vector<double>> segs;
  double carry = rng.uniform(-1.0, 1.0);
  for (std::size_t j = 0; j < segments; ++j) {
    const auto cells = static_cast<std::size_t>(rng.integer(8, 64));
    std::vector<double> v(cells + 1);
    v[0] = carry;
    for (std::size_t k = 1; k <= cells; ++k) v[k] = rng.uniform(-1.0, 1.0);
    carry = v.back();
    segs.push_back(std::move(v));
  }
  SegmentedFunction raw(breakpoints, std::move(segs));
  const double shift = integrate(raw) / interval.width();
  return transform(raw, [shift](double, double v) { return v - shift; });
}

double Polynomial::operator()(double x) const {
  const double u = (x - lo) / width;
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  return acc;
}

Polynomial random_polynomial(Rng& rng, const Interval& domain, int max_degree) {
  Polynomial p{domain.lo, domain.width(), {}};
  const long degree = rng.integer(0, max_degree);
  for (long k = 0; k <= degree; ++k) p.coeffs.push_back(rng.uniform(-1.0, 1.0));
  return p;
}

Piecemealing random_piecemealing(Rng& rng, const PiecemealingOptions& options) {
  const auto n = static_cast<std::size_t>(rng.integer(1, static_cast<long>(options.max_maps)));
  std::vector<long> parts(n);
  long total = 0;
  for (auto& k : parts) total += (k = rng.integer(1, 4));
  std::vector<int> signs(n);
  bool any_negative = false;
  for (auto& s : signs) {
    s = rng.integer(0, 1) == 0 ? 1 : -1;
    any_negative = any_negative || s < 0;
  }
  if (options.force_reversing && !any_negative) signs[rng.integer(0, static_cast<long>(n) - 1)] = -1;

  std::vector<Rational> a(n), d(n), f(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = Rational(signs[i] * parts[i], total);
    d[i] = Rational(rng.integer(-6, 6), rng.integer(1, 4));
    f[i] = Rational(rng.integer(-6, 6), rng.integer(1, 6));
  }
  if (options.l_condition) {
    Rational s;
    for (std::size_t i = 0; i + 1 < n; ++i) s += a[i] * abs(a[i]) * d[i];
    d[n - 1] = -s / (a[n - 1] * abs(a[n - 1]));
  }

  const Rational lo(rng.integer(-2, 2));
  const Rational width(rng.integer(1, 3));
  const Rational hi = lo + width;
  std::vector<AffineGraphMap> maps;
  Rational left = lo;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational right = left + abs(a[i]) * width;
    const Rational e = a[i].sign() > 0 ? right - a[i] * hi : right - a[i] * lo;
    maps.push_back({a[i], d[i], e, f[i]});
    left = right;
  }
  return validate(Number(lo), Number(hi), std::move(maps));
}

}  // namespace ssde::oracle
