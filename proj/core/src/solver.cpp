#include "ssde/solver.hpp"

#include "ssde/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ssde {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_order(const SsdeProblem& problem) {
  if (problem.order != 1 && problem.order != 2) {
    throw Error(Errc::Parse, "order must be 1 or 2");
  }
}

// Shared gates for solve() and iterate_and_record(); returns m.
double check_preconditions(const SsdeProblem& problem, const SegmentedFunction& initial,
                           bool force) {
  check_order(problem);
  const Piecemealing& p = problem.piecemealing;
  const double m = p.is_exact() ? contraction_factor<Rational>(p).to_double()
                                : contraction_factor<double>(p);
  if (problem.order == 2) return m;

  const AdmissibleIntegral adm = admissible_integral(problem);
  if (m >= 1.0 && !force) {
    throw Error(Errc::NotContractive, "contraction factor " + fmt(m) + " >= 1");
  }
  const double have = integrate(initial);
  if (std::abs(have - adm.A) > 1e-9 * (1.0 + std::abs(adm.A))) {
    throw Error(Errc::InitialIntegralMismatch,
                "initial iterate integrates to " + fmt(have) + ", admissible A is " + fmt(adm.A));
  }
  return m;
}

}  // namespace

AdmissibleIntegral admissible_integral(const SsdeProblem& problem) {
  const Piecemealing& p = problem.piecemealing;
  AdmissibleIntegral out;
  const auto& target = problem.target_A;

  if (p.is_exact() && problem.y0.is_exact()) {
    const SystemSolution sol = solve_system(p, *problem.y0.exact);
    out.kind = sol.kind;
    out.exact = true;
    if (sol.kind == SolutionKind::Inconsistent) {
      throw Error(Errc::NoAdmissibleA, "boundary system is inconsistent (alpha = 0, beta = " +
                                           sol.beta.str() + ")");
    }
    if (sol.kind == SolutionKind::Unique) {
      if (target) {
        const bool agrees = target->exact ? *target->exact == *sol.A
                                          : std::abs(target->value - sol.A->to_double()) <=
                                                1e-9 * (1.0 + std::abs(sol.A->to_double()));
        if (!agrees) {
          throw Error(Errc::NoAdmissibleA, "requested A disagrees with the unique A = " + sol.A->str());
        }
      }
      out.exact_A = *sol.A;
      out.A = sol.A->to_double();
      return out;
    }
    if (!target) throw Error(Errc::NoAdmissibleA, "boundary system has a family of solutions; supply A");
    out.A = target->value;
    if (target->exact) out.exact_A = *target->exact;
    return out;
  }

  const NumericSystemSolution sol = solve_system(p, problem.y0.value);
  out.kind = sol.kind;
  if (sol.kind == SolutionKind::Inconsistent) {
    throw Error(Errc::NoAdmissibleA, "boundary system is inconsistent (alpha = 0, beta = " +
                                         fmt(sol.beta) + ")");
  }
  if (sol.kind == SolutionKind::Unique) {
    if (target && std::abs(target->value - *sol.A) > 1e-9 * (1.0 + std::abs(*sol.A))) {
      throw Error(Errc::NoAdmissibleA, "requested A disagrees with the unique A = " + fmt(*sol.A));
    }
    out.A = *sol.A;
    return out;
  }
  if (!target) throw Error(Errc::NoAdmissibleA, "boundary system has a family of solutions; supply A");
  out.A = target->value;
  return out;
}

SegmentedFunction picard_step(const SsdeProblem& problem, const SegmentedFunction& y) {
  check_order(problem);
  const SegmentedFunction image = apply(problem.piecemealing, y);
  if (problem.order == 1) return integrate_prefix(image, problem.y0.value);
  return integrate_prefix(integrate_prefix(image, problem.yprime0.value), problem.y0.value);
}

SolveReport solve(const SsdeProblem& problem, const SegmentedFunction& initial,
                  const SolveOptions& options) {
  const double m = check_preconditions(problem, initial, options.force);

  SegmentedFunction current = initial;
  std::vector<double> deltas;
  bool converged = false;
  for (std::size_t it = 0; it < options.max_iter; ++it) {
    SegmentedFunction next = picard_step(problem, current);
    deltas.push_back(sup_distance(next, current));
    current = std::move(next);
    if (deltas.back() <= options.tol) {
      converged = true;
      break;
    }
  }

  const std::size_t iterations = deltas.size();
  std::optional<double> bound;
  if (problem.order == 1 && m < 1.0 && !deltas.empty()) bound = deltas.back() * m / (1.0 - m);
  const double res = residual(problem, current);
  const double achieved = integrate(current);
  SolveReport report{.solution = std::move(current),
                     .iterations = iterations,
                     .deltas = std::move(deltas),
                     .residual = res,
                     .converged = converged,
                     .A_achieved = achieved,
                     .contraction_factor = m,
                     .a_posteriori_bound = bound,
                     .experimental = problem.order == 2,
                     .residual_exclusion = 2};
  return report;
}

double residual(const SsdeProblem& problem, const SegmentedFunction& y) {
  check_order(problem);
  constexpr std::size_t kSkip = 2;
  const SegmentedFunction image = apply(problem.piecemealing, y);
  double worst = 0.0;
  for (std::size_t j = 0; j < y.segment_count(); ++j) {
    const auto v = y.segment(j);
    const auto target = image.segment(j);
    const std::size_t m = y.intervals(j);
    const double h = y.spacing(j);
    for (std::size_t k = kSkip + 1; k + kSkip + 1 <= m; ++k) {
      const double derivative = problem.order == 1 ? (v[k + 1] - v[k - 1]) / (2.0 * h)
                                                   : (v[k + 1] - 2.0 * v[k] + v[k - 1]) / (h * h);
      worst = std::max(worst, std::abs(derivative - target[k]));
    }
  }
  return worst;
}

SegmentedFunction second_difference(const SegmentedFunction& y) {
  std::vector<std::vector<double>> segs;
  segs.reserve(y.segment_count());
  for (std::size_t j = 0; j < y.segment_count(); ++j) {
    const auto v = y.segment(j);
    const double h = y.spacing(j);
    std::vector<double> out(v.size());
    for (std::size_t k = 1; k + 1 < v.size(); ++k) {
      out[k] = (v[k + 1] - 2.0 * v[k] + v[k - 1]) / (h * h);
    }
    out.front() = out[1];
    out.back() = out[out.size() - 2];
    segs.push_back(std::move(out));
  }
  const auto b = y.breakpoints();
  return SegmentedFunction({b.begin(), b.end()}, std::move(segs));
}

IterationRecord iterate_and_record(const SsdeProblem& problem, const SegmentedFunction& initial,
                                   std::size_t k, bool force) {
  check_preconditions(problem, initial, force);
  IterationRecord rec;
  rec.iterates.push_back(initial);
  for (std::size_t i = 0; i < k; ++i) rec.iterates.push_back(picard_step(problem, rec.iterates.back()));
  if (problem.order == 2) {
    rec.image_of_last = apply(problem.piecemealing, rec.iterates.back());
    rec.second_diff_of_last = second_difference(rec.iterates.back());
  }
  return rec;
}

SegmentedFunction initial_iterate(const Piecemealing& p, const InitialSpec& spec,
                                  std::size_t intervals_per_segment, double A) {
  const double x0 = p.lo().value;
  const double w = p.width();
  Evaluator fn;
  switch (spec.kind) {
    case InitialKind::Constant:
      fn = [v = A / w](double) { return v; };
      break;
    case InitialKind::Linear:
      fn = [x0, w](double x) { return (x - x0) / w; };
      break;
    case InitialKind::OneMinusX:
      fn = [x0, w](double x) { return 1.0 - (x - x0) / w; };
      break;
    case InitialKind::ClassicTransition:
      fn = [x0, w](double x) { return classic_transition((x - x0) / w); };
      break;
    case InitialKind::Polynomial:
      fn = [c = spec.coeffs](double x) {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
      };
      break;
  }
  return sample_on(p, fn, intervals_per_segment);
}

double classic_transition(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  // g(x) / (g(x) + g(1-x)) = 1 / (1 + exp(1/x - 1/(1-x))), evaluated on the
  // side where the exponential cannot overflow.
  const double t = 1.0 / x - 1.0 / (1.0 - x);
  if (t > 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

double bump(double x, double a, double b, double c, double d, const Evaluator& step) {
  if (!(a < b && b < c && c < d)) throw Error(Errc::Ordering, "bump needs a < b < c < d");
  auto extended = [&step](double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return step(u);
  };
  return extended((x - a) / (b - a)) * extended((d - x) / (d - c));
}

Piecemealing transition_piecemealing() {
  return validate(Number(Rational(0)), Number(Rational(1)),
                  {AffineGraphMap{Rational(1, 2), Rational(2), Rational(0), Rational(0)},
                   AffineGraphMap{Rational(-1, 2), Rational(2), Rational(1), Rational(0)}});
}

SolveReport solve_transition(std::size_t intervals_per_segment, double tol) {
  SsdeProblem problem{.piecemealing = transition_piecemealing(),
                      .order = 1,
                      .y0 = Rational(0),
                      .yprime0 = Rational(0),
                      .target_A = Number(Rational(1, 2))};
  const SegmentedFunction initial =
      initial_iterate(problem.piecemealing, {InitialKind::Linear, {}}, intervals_per_segment);
  return solve(problem, initial, {.tol = tol, .max_iter = 200, .force = false});
}

}  // namespace ssde
