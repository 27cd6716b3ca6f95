#ifndef SSDE_FUNCREP_HPP
#define SSDE_FUNCREP_HPP

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace ssde {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  Interval() = default;
  Interval(double lo_, double hi_);

  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/*
 * Real function on [b_0, b_n] stored as one uniform sample array per segment
 * [b_{j-1}, b_j], linearly interpolated between nodes.
 *
 * Adjacent segments each own a sample at their shared breakpoint, so the
 * function may jump there. eval() resolves the tie with the left segment.
 */
class SegmentedFunction {
 public:
  SegmentedFunction(std::vector<double> breakpoints, std::vector<std::vector<double>> segments);

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::size_t segment_count() const { return segments_.size(); }
  std::span<const double> segment(std::size_t j) const { return segments_[j]; }
  /// Number of intervals M_j in segment j (samples minus one).
  std::size_t intervals(std::size_t j) const { return segments_[j].size() - 1; }
  std::vector<std::size_t> interval_counts() const;
  /// x coordinate of node k in segment j; endpoints are the breakpoints exactly.
  double node(std::size_t j, std::size_t k) const;
  double spacing(std::size_t j) const;
  Interval domain() const { return {breakpoints_.front(), breakpoints_.back()}; }

  bool is_continuous(double tol) const;
  double max_abs() const;
  bool same_shape(const SegmentedFunction& other) const;

 private:
  std::vector<double> breakpoints_;
  std::vector<std::vector<double>> segments_;
};

using Evaluator = std::function<double(double)>;

double eval(const SegmentedFunction& f, double x);

/// Composite trapezoid rule, segment by segment.
double integrate(const SegmentedFunction& f);

/// g(node) = c + integral of f from b_0 to node. g is continuous.
SegmentedFunction integrate_prefix(const SegmentedFunction& f, double c);

/// Integral over the domain of the prefix integral with zero start, exact for
/// the piecewise-linear interpolant of f.
double double_integral(const SegmentedFunction& f);

/// Max |f - g| over all nodes, both sides of every breakpoint.
double sup_distance(const SegmentedFunction& f, const SegmentedFunction& g);

SegmentedFunction make_sampled(const Evaluator& fn, std::vector<double> breakpoints,
                               std::size_t intervals_per_segment);
SegmentedFunction make_sampled(const Evaluator& fn, std::vector<double> breakpoints,
                               std::span<const std::size_t> intervals);

/// Same shape, values replaced by op(x, value).
SegmentedFunction transform(const SegmentedFunction& f,
                            const std::function<double(double, double)>& op);
/// Node-wise op(f, g) on two functions of identical shape.
SegmentedFunction combine(const SegmentedFunction& f, const SegmentedFunction& g,
                          const std::function<double(double, double)>& op);

/// CSV: header "x,y", one row per node, 17 significant digits. A shared
/// breakpoint is written once when both sides agree and twice otherwise.
void write_csv(std::ostream& out, const SegmentedFunction& f);
/// Inverse of write_csv, given the breakpoints the data was sampled on.
SegmentedFunction read_csv(std::istream& in, std::span<const double> breakpoints);

}  // namespace ssde

#endif  // SSDE_FUNCREP_HPP
