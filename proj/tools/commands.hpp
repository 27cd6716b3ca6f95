#ifndef SSDE_TOOLS_COMMANDS_HPP
#define SSDE_TOOLS_COMMANDS_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace ssde::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNoAdmissibleA = 3;
inline constexpr int kExitNotConverged = 4;
inline constexpr int kExitNotContractive = 5;

/// Command-line values that override the problem file.
struct Overrides {
  std::optional<std::size_t> grid;
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
};

int cmd_analyze(const std::string& path, bool echo, std::ostream& out, std::ostream& err);

struct SolveArgs {
  std::string path;
  std::string out_csv;     // empty: CSV to stdout
  std::string report_path; // empty: report to stderr when CSV goes to stdout, else stdout
  bool force = false;
  Overrides overrides;
};
int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);

struct IterateArgs {
  std::string path;
  std::size_t k = 5;
  std::string outdir = ".";
  bool force = false;
  Overrides overrides;
};
int cmd_iterate(const IterateArgs& args, std::ostream& out, std::ostream& err);

/// Residual of `samples_csv`, or of the file's initial iterate when empty.
int cmd_residual(const std::string& path, const std::string& samples_csv, const Overrides& overrides,
                 std::ostream& out, std::ostream& err);

struct BumpArgs {
  double a = 0, b = 1, c = 2, d = 3;
  std::size_t grid = 401;  // sample nodes
  std::string out_csv;     // empty: stdout
};
int cmd_bump(const BumpArgs& args, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to a command.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ssde::cli

#endif  // SSDE_TOOLS_COMMANDS_HPP
