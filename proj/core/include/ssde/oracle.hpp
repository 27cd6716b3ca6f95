#ifndef SSDE_ORACLE_HPP
#define SSDE_ORACLE_HPP

// Brute-force numerical references for the test suites. Nothing here may use
// the closed forms from analysis.hpp; only raw evaluators and the map data.

#include "ssde/funcrep.hpp"
#include "ssde/piecemeal.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace ssde::oracle {

struct QuadratureSpec {
  std::vector<std::size_t> levels{256, 512, 1024};  // cells per piece, strictly increasing
  bool richardson = true;
};

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// A smooth piece of a piecewise integrand. The integrand may jump between
/// pieces; each piece is sampled only on its own closed interval.
struct Piece {
  Interval span;
  Evaluator fn;
};

/// Composite trapezoid per level, Richardson-extrapolated across the last two
/// levels. Throws Errc::NonConvergent when a refinement moves the value by
/// more than 10x the previous level's estimate.
Estimate brute_integral(const Evaluator& fn, const Interval& interval, const QuadratureSpec& spec = {});
Estimate brute_integral(const std::vector<Piece>& pieces, const QuadratureSpec& spec = {});

/// Integral over [lo, hi] of x -> integral from lo to x of fn, by iterated
/// trapezoid sums on each level.
Estimate brute_double_integral(const Evaluator& fn, const Interval& interval,
                               const QuadratureSpec& spec = {});
Estimate brute_double_integral(const std::vector<Piece>& pieces, const QuadratureSpec& spec = {});

/// Pieces of P(y) built straight from the map entries and a raw evaluator y.
std::vector<Piece> image_pieces(const Piecemealing& p, const Evaluator& y);

/// One piece per segment, each reading the segment's own samples.
std::vector<Piece> segment_pieces(const SegmentedFunction& f);

/// Deterministic generator: mt19937_64 with a portable uniform mapping, so
/// seeded draws match across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  /// Integer in [lo, hi].
  long integer(long lo, long hi);

 private:
  std::mt19937_64 engine_;
};

/// Seed from SSDE_SEED if set, else `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback);

/// Random continuous piecewise-linear function on `interval` (1-3 segments,
/// 8-64 cells each, values in [-1, 1]) shifted so its trapezoid integral is 0.
SegmentedFunction random_zero_mean(const Interval& interval, std::uint64_t seed);

/// Coefficients c_0..c_deg of a polynomial in u = (x - lo) / w, c_k in [-1, 1].
struct Polynomial {
  double lo = 0.0;
  double width = 1.0;
  std::vector<double> coeffs;

  double operator()(double x) const;
};

Polynomial random_polynomial(Rng& rng, const Interval& domain, int max_degree = 5);

struct PiecemealingOptions {
  std::size_t max_maps = 4;
  bool force_reversing = false;   // at least one a_i < 0
  bool l_condition = false;       // adjust the last d_i so sum a_i^3 d_i / |a_i| = 0
};

/// Exact piecemealing with small-denominator rational entries on an integer
/// domain; shifts e_i are derived so the result always validates.
Piecemealing random_piecemealing(Rng& rng, const PiecemealingOptions& options = {});

}  // namespace ssde::oracle

#endif  // SSDE_ORACLE_HPP
