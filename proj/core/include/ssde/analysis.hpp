#ifndef SSDE_ANALYSIS_HPP
#define SSDE_ANALYSIS_HPP

#include "ssde/funcrep.hpp"
#include "ssde/piecemeal.hpp"
#include "ssde/rational.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace ssde {

enum class SolutionKind { Unique, Family, Inconsistent };

std::string_view kind_name(SolutionKind kind);

/*
 * Solution set of the boundary system
 *
 *   y_k = y_0 + sum_{i<=k} (|a_i| d_i A + f_i dx_i),              k = 1..n
 *   A   = y_0 w + sum_i (y_{i-1} - y_0) dx_i
 *             + w A sum_{a_i<0} a_i^2 d_i + w^2/2 sum_i a_i^2 f_i
 *
 * after eliminating y_k = p_k + q_k A, which leaves alpha A = beta.
 */
template <class T>
struct BasicSystemSolution {
  SolutionKind kind = SolutionKind::Inconsistent;
  T y0{};
  T alpha{};
  T beta{};
  std::optional<T> A;                  // kind == Unique
  std::vector<T> boundary_values;      // y_1..y_n, kind == Unique
  std::vector<std::pair<T, T>> family; // (p_k, q_k) for k = 1..n, every kind

  /// y_1..y_n for a given integral A, from the family form.
  std::vector<T> boundary_values_at(const T& a_value) const;
};

template <class T>
struct BasicDiagnostics {
  T l_condition_sum{};     // sum a_i^3 d_i / |a_i|
  T contraction_factor{};  // w/2 * max |a_i d_i|
  T negative_mass{};       // sum over a_i < 0 of a_i^2 d_i
  T forcing_mass{};        // sum a_i^2 f_i
  T width{};               // x_n - x_0
  bool l_condition_holds = false;
};

using SystemSolution = BasicSystemSolution<Rational>;
using NumericSystemSolution = BasicSystemSolution<double>;
using Diagnostics = BasicDiagnostics<Rational>;
using NumericDiagnostics = BasicDiagnostics<double>;

// The Rational instantiations require an exact piecemealing (Errc::NotExact
// otherwise); the double instantiations read the binary64 entries.

template <class T = Rational>
T l_condition_sum(const Piecemealing& p);

template <class T = Rational>
T contraction_factor(const Piecemealing& p);

template <class T = Rational>
BasicDiagnostics<T> diagnostics(const Piecemealing& p);

/// Throws Errc::LConditionViolated unless sum a_i^3 d_i / |a_i| = 0 (exactly,
/// or within 1e-12 relative in the double version). The double version
/// treats |alpha| <= 1e-12 as zero.
SystemSolution solve_system(const Piecemealing& p, const Rational& y0);
NumericSystemSolution solve_system(const Piecemealing& p, double y0);

std::vector<Rational> predicted_boundary_values(const Piecemealing& p, const Rational& y0,
                                                const Rational& A);
std::vector<double> predicted_boundary_values(const Piecemealing& p, double y0, double A);

/// Closed-form pieces of the double integral of P(y) over the domain.
struct DoubleIntegralTerms {
  double K = 0.0;  // sum_i dx_i * integral of P(y) from x_0 to x_{i-1}
  double L = 0.0;  // (integral of Y) * sum a_i^3 d_i / |a_i|, Y' = y, Y(x_0) = 0
  double M = 0.0;  // w * (integral of y) * sum_{a_i<0} a_i^2 d_i
  double N = 0.0;  // w^2 / 2 * sum a_i^2 f_i

  double value() const { return K + L + M + N; }
};

/// Predicts the double integral of P(y) from the samples of y, which must
/// span the piecemealing's domain. The integrals of y and Y use the trapezoid
/// rule with its h^2 endpoint correction: exact when y is linear on each
/// segment, fourth order on smooth samples.
DoubleIntegralTerms double_integral_identity(const Piecemealing& p, const SegmentedFunction& y);

}  // namespace ssde

#endif  // SSDE_ANALYSIS_HPP
