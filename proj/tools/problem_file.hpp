#ifndef SSDE_TOOLS_PROBLEM_FILE_HPP
#define SSDE_TOOLS_PROBLEM_FILE_HPP

#include "ssde/piecemeal.hpp"
#include "ssde/rational.hpp"
#include "ssde/solver.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ssde::cli {

/// A scalar as written in the file. `text` is kept verbatim for --echo.
struct Scalar {
  std::string text;
  Number value;
};

struct MapRecord {
  Scalar a, d, e, f;
};

/*
 * JSON problem file:
 *
 *   {
 *     "interval": ["1", "4"],
 *     "order": 1,
 *     "y0": "1",
 *     "yprime0": "0",                  (order 2 only)
 *     "maps": [{"a": "1/3", "d": "2/3", "e": "2/3", "f": "-22/15"}, ...],
 *     "A": "9",                        (optional)
 *     "initial": {"type": "constant"}, (or linear, one-minus-x,
 *                                       classic-transition, polynomial + coeffs)
 *     "grid": 512, "tol": 1e-10, "max_iter": 200
 *   }
 *
 * Scalars are JSON numbers or strings holding "p/q", integer or decimal
 * literals; all of them are read exactly. A map may carry "c", which must be 0.
 */
struct ProblemFile {
  Scalar lo, hi;
  int order = 1;
  Scalar y0;
  std::optional<Scalar> yprime0;
  std::vector<MapRecord> maps;
  std::optional<Scalar> A;
  std::string initial_type = "constant";
  std::vector<Scalar> initial_coeffs;
  std::size_t grid = 512;
  double tol = 1e-10;
  std::size_t max_iter = 200;
};

ProblemFile parse_problem(std::string_view json_text);
ProblemFile load_problem(const std::filesystem::path& path);

/// Canonical JSON form; every scalar is emitted as its original text.
std::string echo_problem(const ProblemFile& file);

Piecemealing build_piecemealing(const ProblemFile& file);
SsdeProblem build_problem(const ProblemFile& file);
InitialSpec build_initial(const ProblemFile& file);

}  // namespace ssde::cli

#endif  // SSDE_TOOLS_PROBLEM_FILE_HPP
