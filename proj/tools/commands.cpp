#include "commands.hpp"

#include "problem_file.hpp"

#include "ssde/analysis.hpp"
#include "ssde/error.hpp"
#include "ssde/solver.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <vector>

namespace ssde::cli {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
std::string num(const Rational& r) { return r.str(); }

template <class T>
std::string join(const std::vector<T>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ", ";
    s += num(values[i]);
  }
  return s;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::NoAdmissibleA: return kExitNoAdmissibleA;
    case Errc::NotContractive: return kExitNotContractive;
    default: return kExitInvalid;
  }
}

int report_error(const Error& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  return exit_code_for(e.code());
}

template <class T>
void print_diagnostics(std::ostream& out, const BasicDiagnostics<T>& dg) {
  out << "l_condition_sum = " << num(dg.l_condition_sum) << "\n"
      << "l_condition = " << (dg.l_condition_holds ? "holds" : "violated") << "\n"
      << "contraction_factor = " << num(dg.contraction_factor) << "\n"
      << "negative_mass = " << num(dg.negative_mass) << "\n"
      << "forcing_mass = " << num(dg.forcing_mass) << "\n"
      << "width = " << num(dg.width) << "\n";
}

template <class T>
void print_solution(std::ostream& out, const BasicSystemSolution<T>& sol) {
  out << "kind = " << kind_name(sol.kind) << "\n"
      << "alpha = " << num(sol.alpha) << "\n"
      << "beta = " << num(sol.beta) << "\n";
  std::vector<T> p, q;
  for (const auto& [pk, qk] : sol.family) {
    p.push_back(pk);
    q.push_back(qk);
  }
  if (sol.kind == SolutionKind::Unique) {
    out << "A = " << num(*sol.A) << "\n"
        << "y = " << join(sol.boundary_values) << "\n";
  } else if (sol.kind == SolutionKind::Family) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) s += ", ";
      s += num(p[i]) + " + " + num(q[i]) + "*A";
    }
    out << "y = " << s << "\n";
  }
  out << "family_p = " << join(p) << "\n"
      << "family_q = " << join(q) << "\n";
}

std::size_t grid_of(const ProblemFile& pf, const Overrides& o) { return o.grid.value_or(pf.grid); }

SegmentedFunction initial_for(const SsdeProblem& problem, const ProblemFile& pf, std::size_t grid) {
  double A = 0.0;
  const InitialSpec spec = build_initial(pf);
  if (spec.kind == InitialKind::Constant) {
    if (problem.order == 1) {
      A = admissible_integral(problem).A;
    } else if (problem.target_A) {
      A = problem.target_A->value;
    }
  }
  return initial_iterate(problem.piecemealing, spec, grid, A);
}

void write_file(const std::filesystem::path& path, const SegmentedFunction& f) {
  std::ofstream os(path);
  if (!os) throw Error(Errc::Parse, "cannot write " + path.string());
  write_csv(os, f);
}

}  // namespace

int cmd_analyze(const std::string& path, bool echo, std::ostream& out, std::ostream& err) {
  try {
    const ProblemFile pf = load_problem(path);
    const Piecemealing p = build_piecemealing(pf);
    if (echo) {
      out << echo_problem(pf);
      return kExitOk;
    }
    const bool exact = p.is_exact() && pf.y0.value.is_exact();
    out << "arithmetic = " << (exact ? "exact" : "numerical") << "\n"
        << "order = " << pf.order << "\n";
    if (exact) {
      std::vector<Rational> xs(p.exact_breakpoints().begin(), p.exact_breakpoints().end());
      out << "breakpoints = " << join(xs) << "\n";
      const Diagnostics dg = diagnostics(p);
      print_diagnostics(out, dg);
      if (pf.order != 1) {
        out << "kind = not-applicable (boundary system is first order)\n";
        return kExitOk;
      }
      if (!dg.l_condition_holds) {
        out << "kind = unavailable\n";
        err << "error: " << errc_name(Errc::LConditionViolated)
            << ": sum a_i^3 d_i / |a_i| = " << dg.l_condition_sum.str() << ", boundary system not formed\n";
        return kExitInvalid;
      }
      const SystemSolution sol = solve_system(p, *pf.y0.value.exact);
      print_solution(out, sol);
      return sol.kind == SolutionKind::Inconsistent ? kExitNoAdmissibleA : kExitOk;
    }
    std::vector<double> xs(p.breakpoints().begin(), p.breakpoints().end());
    out << "breakpoints = " << join(xs) << "\n";
    const NumericDiagnostics dg = diagnostics<double>(p);
    print_diagnostics(out, dg);
    if (pf.order != 1) {
      out << "kind = not-applicable (boundary system is first order)\n";
      return kExitOk;
    }
    if (!dg.l_condition_holds) {
      out << "kind = unavailable\n";
      err << "error: " << errc_name(Errc::LConditionViolated) << ": boundary system not formed\n";
      return kExitInvalid;
    }
    const NumericSystemSolution sol = solve_system(p, pf.y0.value.value);
    print_solution(out, sol);
    return sol.kind == SolutionKind::Inconsistent ? kExitNoAdmissibleA : kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const ProblemFile pf = load_problem(args.path);
    const SsdeProblem problem = build_problem(pf);
    const std::size_t grid = grid_of(pf, args.overrides);
    const SegmentedFunction initial = initial_for(problem, pf, grid);
    const SolveOptions options{.tol = args.overrides.tol.value_or(pf.tol),
                               .max_iter = args.overrides.max_iter.value_or(pf.max_iter),
                               .force = args.force};
    const SolveReport report = solve(problem, initial, options);

    std::ostringstream rep;
    rep << "order = " << problem.order << "\n"
        << "experimental = " << (report.experimental ? "true" : "false") << "\n";
    if (problem.order == 1) {
      const AdmissibleIntegral adm = admissible_integral(problem);
      rep << "kind = " << kind_name(adm.kind) << "\n"
          << "A_target = " << (adm.exact_A ? adm.exact_A->str() : num(adm.A)) << "\n";
    }
    rep << "grid = " << grid << "\n"
        << "tol = " << num(options.tol) << "\n"
        << "iterations = " << report.iterations << "\n"
        << "converged = " << (report.converged ? "true" : "false") << "\n"
        << "residual = " << num(report.residual) << "\n"
        << "residual_exclusion = " << report.residual_exclusion << "\n"
        << "A_achieved = " << num(report.A_achieved) << "\n"
        << "contraction_factor = " << num(report.contraction_factor) << "\n";
    if (report.a_posteriori_bound) rep << "a_posteriori_bound = " << num(*report.a_posteriori_bound) << "\n";
    std::vector<double> at_breaks;
    for (double x : problem.piecemealing.breakpoints()) at_breaks.push_back(eval(report.solution, x));
    rep << "breakpoint_values = " << join(at_breaks) << "\n"
        << "deltas = " << join(report.deltas) << "\n";

    if (args.out_csv.empty()) {
      write_csv(out, report.solution);
    } else {
      write_file(args.out_csv, report.solution);
    }
    if (!args.report_path.empty()) {
      std::ofstream os(args.report_path);
      if (!os) throw Error(Errc::Parse, "cannot write " + args.report_path);
      os << rep.str();
    } else {
      (args.out_csv.empty() ? err : out) << rep.str();
    }
    return report.converged ? kExitOk : kExitNotConverged;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_iterate(const IterateArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const ProblemFile pf = load_problem(args.path);
    const SsdeProblem problem = build_problem(pf);
    const std::size_t grid = grid_of(pf, args.overrides);
    const IterationRecord rec =
        iterate_and_record(problem, initial_for(problem, pf, grid), args.k, args.force);

    const std::filesystem::path dir(args.outdir);
    std::filesystem::create_directories(dir);
    auto emit = [&](const std::string& name, const SegmentedFunction& f) {
      write_file(dir / name, f);
      out << (dir / name).string() << "\n";
    };
    for (std::size_t i = 0; i < rec.iterates.size(); ++i) {
      emit("iterate_" + std::to_string(i) + ".csv", rec.iterates[i]);
    }
    if (rec.image_of_last) emit("image_" + std::to_string(args.k) + ".csv", *rec.image_of_last);
    if (rec.second_diff_of_last) {
      emit("second_diff_" + std::to_string(args.k) + ".csv", *rec.second_diff_of_last);
    }
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int cmd_residual(const std::string& path, const std::string& samples_csv, const Overrides& overrides,
                 std::ostream& out, std::ostream& err) {
  try {
    const ProblemFile pf = load_problem(path);
    const SsdeProblem problem = build_problem(pf);
    if (samples_csv.empty()) {
      const SegmentedFunction y = initial_iterate(problem.piecemealing, build_initial(pf),
                                                  grid_of(pf, overrides),
                                                  pf.A ? pf.A->value.value : 0.0);
      out << "residual = " << num(residual(problem, y)) << "\n";
      return kExitOk;
    }
    std::ifstream in(samples_csv);
    if (!in) throw Error(Errc::Parse, "cannot open " + samples_csv);
    const SegmentedFunction y = read_csv(in, problem.piecemealing.breakpoints());
    out << "residual = " << num(residual(problem, y)) << "\n";
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int cmd_bump(const BumpArgs& args, std::ostream& out, std::ostream& err) {
  try {
    if (!(args.a < args.b && args.b < args.c && args.c < args.d)) {
      throw Error(Errc::Ordering, "bump needs a < b < c < d");
    }
    if (args.grid < 3) throw Error(Errc::Parse, "--grid needs at least 3 nodes");
    const SolveReport transition = solve_transition();
    const SegmentedFunction& step = transition.solution;
    auto fn = [&](double x) {
      return bump(x, args.a, args.b, args.c, args.d, [&step](double u) { return eval(step, u); });
    };
    const double lo = args.a - (args.b - args.a);
    const double hi = args.d + (args.d - args.c);
    const SegmentedFunction samples = make_sampled(fn, {lo, hi}, args.grid - 1);
    if (args.out_csv.empty()) {
      write_csv(out, samples);
    } else {
      write_file(args.out_csv, samples);
    }
    return kExitOk;
  } catch (const Error& e) {
    return report_error(e, err);
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Self-similar differential equations: analyze, solve and sample"};
  app.require_subcommand(1);

  Overrides overrides;
  auto add_overrides = [&overrides](CLI::App* sub) {
    sub->add_option("--grid", overrides.grid, "Intervals per segment")->check(CLI::PositiveNumber);
    sub->add_option("--tol", overrides.tol, "Stop when successive iterates differ by at most this")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", overrides.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
  };

  std::string analyze_path;
  bool echo = false;
  auto* analyze = app.add_subcommand("analyze", "Solve the boundary system exactly and print diagnostics");
  analyze->add_option("problem", analyze_path, "Problem file (JSON)")->required();
  analyze->add_flag("--echo", echo, "Print the parsed problem back as JSON");

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Fixed-point iteration to the solution");
  solve_cmd->add_option("problem", solve_args.path, "Problem file (JSON)")->required();
  solve_cmd->add_option("--out", solve_args.out_csv, "Solution CSV (default: stdout)");
  solve_cmd->add_option("--report", solve_args.report_path, "Report file");
  solve_cmd->add_flag("--force", solve_args.force, "Iterate even when the contraction factor is >= 1");
  add_overrides(solve_cmd);

  IterateArgs iterate_args;
  auto* iterate = app.add_subcommand("iterate", "Write the first k fixed-point iterates as CSV");
  iterate->add_option("problem", iterate_args.path, "Problem file (JSON)")->required();
  iterate->add_option("k", iterate_args.k, "Number of steps")->required();
  iterate->add_option("--outdir", iterate_args.outdir, "Output directory");
  iterate->add_flag("--force", iterate_args.force, "Iterate even when the contraction factor is >= 1");
  add_overrides(iterate);

  std::string residual_path, residual_samples;
  auto* residual_cmd = app.add_subcommand("residual", "Residual of sampled data against the equation");
  residual_cmd->add_option("problem", residual_path, "Problem file (JSON)")->required();
  residual_cmd->add_option("samples", residual_samples, "Solution CSV (default: the initial iterate)");
  add_overrides(residual_cmd);

  BumpArgs bump_args;
  auto* bump_cmd = app.add_subcommand("bump", "Sample a bump function built from the solved transition");
  bump_cmd->add_option("a", bump_args.a)->required();
  bump_cmd->add_option("b", bump_args.b)->required();
  bump_cmd->add_option("c", bump_args.c)->required();
  bump_cmd->add_option("d", bump_args.d)->required();
  bump_cmd->add_option("--grid", bump_args.grid, "Number of sample nodes");
  bump_cmd->add_option("--out", bump_args.out_csv, "Output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInvalid;
  }

  if (*analyze) return cmd_analyze(analyze_path, echo, out, err);
  if (*solve_cmd) {
    solve_args.overrides = overrides;
    return cmd_solve(solve_args, out, err);
  }
  if (*iterate) {
    iterate_args.overrides = overrides;
    return cmd_iterate(iterate_args, out, err);
  }
  if (*residual_cmd) return cmd_residual(residual_path, residual_samples, overrides, out, err);
  return cmd_bump(bump_args, out, err);
}

}  // namespace ssde::cli
