#ifndef SSDE_PIECEMEAL_HPP
#define SSDE_PIECEMEAL_HPP

#include "ssde/funcrep.hpp"
#include "ssde/rational.hpp"

#include <optional>
#include <span>
#include <vector>

namespace ssde {

/// Diagonal affine graph map (x, y) -> (a x + e, d y + f), a != 0.
struct AffineGraphMap {
  Number a;  // horizontal scale
  Number d;  // vertical scale
  Number e;  // horizontal shift
  Number f;  // vertical shift

  bool is_exact() const { return a.is_exact() && d.is_exact() && e.is_exact() && f.is_exact(); }
};

Interval image_interval(const AffineGraphMap& m, const Interval& domain);

/*
 * A validated piecemealing on [x_0, x_n]: map i sends the whole graph onto
 * the vertical strip over [x_{i-1}, x_i]. Breakpoints are derived from the
 * horizontal scales, never supplied.
 *
 * Exact mode holds when the domain endpoints and every map entry carry
 * rational tags; exact_breakpoints() is then populated.
 */
class Piecemealing {
 public:
  const Number& lo() const { return lo_; }
  const Number& hi() const { return hi_; }
  Interval domain() const { return {lo_.value, hi_.value}; }
  double width() const { return hi_.value - lo_.value; }

  std::span<const AffineGraphMap> maps() const { return maps_; }
  std::size_t size() const { return maps_.size(); }
  std::span<const double> breakpoints() const { return breakpoints_; }

  bool is_exact() const { return exact_breakpoints_.has_value(); }
  std::span<const Rational> exact_breakpoints() const;

 private:
  friend Piecemealing validate(const Number&, const Number&, std::vector<AffineGraphMap>);

  Number lo_;
  Number hi_;
  std::vector<AffineGraphMap> maps_;
  std::vector<double> breakpoints_;
  std::optional<std::vector<Rational>> exact_breakpoints_;
};

/// Checks tiling (sum |a_i| = 1) and the horizontal shifts against the
/// derived breakpoints. Float tolerances: 1e-12 on the tiling sum,
/// 1e-9 * width on shifts. Exact mode compares exactly.
Piecemealing validate(const Number& lo, const Number& hi, std::vector<AffineGraphMap> maps);
Piecemealing validate(const Interval& domain, std::vector<AffineGraphMap> maps);

/// P(y): on segment i, d_i * y((x - e_i) / a_i) + f_i. The result lives on
/// the piecemealing's breakpoints. When y already uses those breakpoints its
/// node counts are kept; otherwise pass them explicitly.
SegmentedFunction apply(const Piecemealing& p, const SegmentedFunction& y);
SegmentedFunction apply(const Piecemealing& p, const SegmentedFunction& y,
                        std::span<const std::size_t> intervals);

/// Uniform grid on the piecemealing's breakpoints.
SegmentedFunction sample_on(const Piecemealing& p, const Evaluator& fn,
                            std::size_t intervals_per_segment);

}  // namespace ssde

#endif  // SSDE_PIECEMEAL_HPP
