#ifndef SSDE_SOLVER_HPP
#define SSDE_SOLVER_HPP

#include "ssde/analysis.hpp"
#include "ssde/funcrep.hpp"
#include "ssde/piecemeal.hpp"
#include "ssde/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace ssde {

/// y^(order) = P(y) with y(x_0) = y0 and, for order 2, y'(x_0) = yprime0.
struct SsdeProblem {
  Piecemealing piecemealing;
  int order = 1;
  Number y0;
  Number yprime0;
  /// Integral of the sought solution. Required when the boundary system has
  /// a one-parameter family of solutions; must agree when it is unique.
  std::optional<Number> target_A;
};

/// Integral value a first-order solution must have, from the boundary system.
struct AdmissibleIntegral {
  SolutionKind kind = SolutionKind::Inconsistent;
  bool exact = false;
  double A = 0.0;
  std::optional<Rational> exact_A;
};

/// Throws Errc::NoAdmissibleA when the system is inconsistent, when a family
/// has no target_A, or when target_A contradicts a unique A.
AdmissibleIntegral admissible_integral(const SsdeProblem& problem);

struct SolveOptions {
  double tol = 1e-10;         // sup distance between successive iterates
  std::size_t max_iter = 200;
  bool force = false;         // skip the contraction gate
};

struct SolveReport {
  SegmentedFunction solution;
  std::size_t iterations = 0;
  std::vector<double> deltas;
  double residual = 0.0;
  bool converged = false;
  double A_achieved = 0.0;
  double contraction_factor = 0.0;
  /// deltas.back() * m / (1 - m), present for order 1 when m < 1.
  std::optional<double> a_posteriori_bound;
  /// Order-2 runs carry no convergence guarantee.
  bool experimental = false;
  /// Nodes skipped next to every breakpoint when computing the residual.
  std::size_t residual_exclusion = 2;
};

/// One fixed-point step: y0 + integral of P(y) (order 1), or
/// y0 + yprime0 (x - x_0) + double integral of P(y) (order 2).
SegmentedFunction picard_step(const SsdeProblem& problem, const SegmentedFunction& y);

SolveReport solve(const SsdeProblem& problem, const SegmentedFunction& initial,
                  const SolveOptions& options = {});

/// sup |D y - P(y)| over segment interiors, D the central first difference
/// (order 1) or the three-point second difference (order 2). The first
/// two nodes next to each breakpoint are skipped since P(y) may jump there.
double residual(const SsdeProblem& problem, const SegmentedFunction& y);

/// Three-point second difference at interior nodes; segment end nodes repeat
/// their neighbour's value.
SegmentedFunction second_difference(const SegmentedFunction& y);

struct IterationRecord {
  std::vector<SegmentedFunction> iterates;     // f_0..f_k
  std::optional<SegmentedFunction> image_of_last;        // order 2: P(f_k)
  std::optional<SegmentedFunction> second_diff_of_last;  // order 2: f_k''
};

/// Same gates as solve(), then k plain steps.
IterationRecord iterate_and_record(const SsdeProblem& problem, const SegmentedFunction& initial,
                                   std::size_t k, bool force = false);

// Named initial iterates, in the normalized coordinate u = (x - x_0) / w.
enum class InitialKind { Constant, Linear, OneMinusX, ClassicTransition, Polynomial };

struct InitialSpec {
  InitialKind kind = InitialKind::Constant;
  std::vector<double> coeffs;  // Polynomial: c_0 + c_1 x + ... in x itself
};

/// Constant uses A / w, which lands in the admissible integral class.
SegmentedFunction initial_iterate(const Piecemealing& p, const InitialSpec& spec,
                                  std::size_t intervals_per_segment, double A = 0.0);

// g(x) / (g(x) + g(1 - x)) with g(x) = exp(-1/x) for x > 0, 0 otherwise.
double classic_transition(double x);

/// Smooth bump with support [a, d] and plateau [b, c]:
/// S((x - a) / (b - a)) * S((d - x) / (d - c)), S the step extension of
/// `step` (0 below 0, 1 above 1). Throws Errc::Ordering unless a < b < c < d.
double bump(double x, double a, double b, double c, double d, const Evaluator& step);

/// The piecemealing of f'(x) = 2 f(2x) on [0, 1/2], 2 f(2 - 2x) on (1/2, 1].
Piecemealing transition_piecemealing();

/// Solves the transition equation with f(0) = 0 and integral 1/2, starting
/// from f(x) = x.
SolveReport solve_transition(std::size_t intervals_per_segment = 512, double tol = 1e-10);

}  // namespace ssde

#endif  // SSDE_SOLVER_HPP
