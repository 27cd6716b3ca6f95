#include "ssde/analysis.hpp"

#include "ssde/error.hpp"

#include <algorithm>
#include <cmath>

namespace ssde {

namespace {

template <class T>
struct Entries {
  std::vector<T> a, d, e, f;
  std::vector<T> x;  // breakpoints x_0..x_n
  T width{};

  T dx(std::size_t i) const { return x[i + 1] - x[i]; }
};

Entries<Rational> entries_exact(const Piecemealing& p) {
  if (!p.is_exact()) throw Error(Errc::NotExact, "exact analysis needs rational map entries");
  Entries<Rational> out;
  for (const auto& m : p.maps()) {
    out.a.push_back(*m.a.exact);
    out.d.push_back(*m.d.exact);
    out.e.push_back(*m.e.exact);
    out.f.push_back(*m.f.exact);
  }
  const auto xs = p.exact_breakpoints();
  out.x.assign(xs.begin(), xs.end());
  out.width = *p.hi().exact - *p.lo().exact;
  return out;
}

Entries<double> entries_numeric(const Piecemealing& p) {
  Entries<double> out;
  for (const auto& m : p.maps()) {
    out.a.push_back(m.a.value);
    out.d.push_back(m.d.value);
    out.e.push_back(m.e.value);
    out.f.push_back(m.f.value);
  }
  const auto xs = p.breakpoints();
  out.x.assign(xs.begin(), xs.end());
  out.width = p.width();
  return out;
}

template <class T>
Entries<T> entries(const Piecemealing& p);
template <>
Entries<Rational> entries<Rational>(const Piecemealing& p) { return entries_exact(p); }
template <>
Entries<double> entries<double>(const Piecemealing& p) { return entries_numeric(p); }

// Zero test: exact for rationals, relative to `scale` for doubles.
bool is_zero(const Rational& v, const Rational&) { return v.sign() == 0; }
bool is_zero(double v, double scale) { return std::abs(v) <= 1e-12 * (1.0 + scale); }

template <class T>
T magnitude(const T& v) {
  using std::abs;
  return abs(v);
}

template <class T>
T l_sum(const Entries<T>& en) {
  T s{};
  for (std::size_t i = 0; i < en.a.size(); ++i) {
    s += en.a[i] * en.a[i] * en.a[i] * en.d[i] / magnitude(en.a[i]);
  }
  return s;
}

template <class T>
T l_scale(const Entries<T>& en) {
  T s{};
  for (std::size_t i = 0; i < en.a.size(); ++i) s += magnitude(en.a[i] * en.a[i] * en.d[i]);
  return s;
}

template <class T>
T negative_mass(const Entries<T>& en) {
  T s{};
  for (std::size_t i = 0; i < en.a.size(); ++i) {
    if (en.a[i] < T(0)) s += en.a[i] * en.a[i] * en.d[i];
  }
  return s;
}

template <class T>
T forcing_mass(const Entries<T>& en) {
  T s{};
  for (std::size_t i = 0; i < en.a.size(); ++i) s += en.a[i] * en.a[i] * en.f[i];
  return s;
}

// Trapezoid rule for the integral of weight(x) y(x), segment by segment, minus
// the h^2 endpoint term with derivatives from three-point one-sided
// differences. Exact when weight * y is quadratic on each segment, fourth order
// for smooth data.
template <class W>
double corrected_trapezoid(const SegmentedFunction& y, const W& weight) {
  double total = 0.0;
  std::vector<double> g;
  for (std::size_t j = 0; j < y.segment_count(); ++j) {
    const auto v = y.segment(j);
    const std::size_t m = v.size() - 1;
    const double h = y.spacing(j);
    g.resize(m + 1);
    for (std::size_t k = 0; k <= m; ++k) g[k] = weight(y.node(j, k)) * v[k];
    double trap = 0.5 * (g[0] + g[m]);
    for (std::size_t k = 1; k < m; ++k) trap += g[k];
    const double da = (-3.0 * g[0] + 4.0 * g[1] - g[2]) / (2.0 * h);
    const double db = (3.0 * g[m] - 4.0 * g[m - 1] + g[m - 2]) / (2.0 * h);
    total += h * trap - h * h / 12.0 * (db - da);
  }
  return total;
}

template <class T>
std::vector<std::pair<T, T>> family_form(const Entries<T>& en, const T& y0) {
  std::vector<std::pair<T, T>> out;
  T p = y0;
  T q{};
  for (std::size_t i = 0; i < en.a.size(); ++i) {
    p += en.f[i] * en.dx(i);
    q += magnitude(en.a[i]) * en.d[i];
    out.emplace_back(p, q);
  }
  return out;
}

template <class T>
BasicSystemSolution<T> solve_impl(const Piecemealing& pm, const T& y0) {
  const Entries<T> en = entries<T>(pm);
  const T lsum = l_sum(en);
  if (!is_zero(lsum, l_scale(en))) {
    throw Error(Errc::LConditionViolated,
                "sum a_i^3 d_i / |a_i| must vanish for the integral equation of the boundary system");
  }
  const std::size_t n = en.a.size();
  const T& w = en.width;

  BasicSystemSolution<T> sol;
  sol.y0 = y0;
  sol.family = family_form(en, y0);

  // alpha = 1 - sum q_{i-1} dx_i - w * neg;  beta = y0 w + sum (p_{i-1} - y0) dx_i + w^2/2 forcing
  T alpha = T(1);
  T beta = y0 * w;
  T beta_scale = magnitude(beta);
  for (std::size_t i = 0; i < n; ++i) {
    const T p_prev = i == 0 ? y0 : sol.family[i - 1].first;
    const T q_prev = i == 0 ? T(0) : sol.family[i - 1].second;
    alpha -= q_prev * en.dx(i);
    const T term = (p_prev - y0) * en.dx(i);
    beta += term;
    beta_scale += magnitude(term);
  }
  alpha -= w * negative_mass(en);
  const T forcing = w * w * forcing_mass(en) / T(2);
  beta += forcing;
  beta_scale += magnitude(forcing);

  if (is_zero(alpha, T(0))) {
    // The boundary rows are triangular in y_k, so alpha = 0 is the only rank loss.
    sol.alpha = T(0);
    const bool consistent = is_zero(beta, beta_scale);
    sol.beta = consistent ? T(0) : beta;
    sol.kind = consistent ? SolutionKind::Family : SolutionKind::Inconsistent;
    return sol;
  }
  sol.alpha = alpha;
  sol.beta = beta;
  sol.kind = SolutionKind::Unique;
  sol.A = beta / alpha;
  sol.boundary_values = sol.boundary_values_at(*sol.A);
  return sol;
}

template <class T>
std::vector<T> predicted_impl(const Piecemealing& pm, const T& y0, const T& A) {
  const Entries<T> en = entries<T>(pm);
  std::vector<T> out;
  T y = y0;
  for (std::size_t i = 0; i < en.a.size(); ++i) {
    y += magnitude(en.a[i]) * en.d[i] * A + en.f[i] * en.dx(i);
    out.push_back(y);
  }
  return out;
}

}  // namespace

std::string_view kind_name(SolutionKind kind) {
  switch (kind) {
    case SolutionKind::Unique: return "Unique";
    case SolutionKind::Family: return "Family";
    case SolutionKind::Inconsistent: return "Inconsistent";
  }
  return "?";
}

template <class T>
std::vector<T> BasicSystemSolution<T>::boundary_values_at(const T& a_value) const {
  std::vector<T> out;
  out.reserve(family.size());
  for (const auto& [p, q] : family) out.push_back(p + q * a_value);
  return out;
}

template <class T>
T l_condition_sum(const Piecemealing& p) {
  return l_sum(entries<T>(p));
}

template <class T>
T contraction_factor(const Piecemealing& p) {
  const Entries<T> en = entries<T>(p);
  T m{};
  for (std::size_t i = 0; i < en.a.size(); ++i) m = std::max(m, magnitude(en.a[i] * en.d[i]));
  return en.width * m / T(2);
}

template <class T>
BasicDiagnostics<T> diagnostics(const Piecemealing& p) {
  const Entries<T> en = entries<T>(p);
  BasicDiagnostics<T> dg;
  dg.l_condition_sum = l_sum(en);
  dg.l_condition_holds = is_zero(dg.l_condition_sum, l_scale(en));
  dg.contraction_factor = contraction_factor<T>(p);
  dg.negative_mass = negative_mass(en);
  dg.forcing_mass = forcing_mass(en);
  dg.width = en.width;
  return dg;
}

SystemSolution solve_system(const Piecemealing& p, const Rational& y0) { return solve_impl(p, y0); }
NumericSystemSolution solve_system(const Piecemealing& p, double y0) { return solve_impl(p, y0); }

std::vector<Rational> predicted_boundary_values(const Piecemealing& p, const Rational& y0,
                                                const Rational& A) {
  return predicted_impl(p, y0, A);
}

std::vector<double> predicted_boundary_values(const Piecemealing& p, double y0, double A) {
  return predicted_impl(p, y0, A);
}

DoubleIntegralTerms double_integral_identity(const Piecemealing& p, const SegmentedFunction& y) {
  const Entries<double> en = entries_numeric(p);
  const double w = en.width;
  const Interval dom = y.domain();
  if (std::abs(dom.lo - en.x.front()) > 1e-12 * w || std::abs(dom.hi - en.x.back()) > 1e-12 * w)
    throw Error(Errc::DomainMismatch, "function domain differs from the piecemealing's");

  const double xn = en.x.back();
  const double iy = corrected_trapezoid(y, [](double) { return 1.0; });
  // Integral of Y, Y(x_0) = 0, equals the integral of (x_n - t) y(t).
  const double iY = corrected_trapezoid(y, [xn](double t) { return xn - t; });

  DoubleIntegralTerms t;
  // Prefix integral of P(y) at x_{i-1}; segment j contributes |a_j| d_j (int y) + f_j dx_j.
  double prefix = 0.0;
  for (std::size_t i = 0; i < en.a.size(); ++i) {
    t.K += en.dx(i) * prefix;
    prefix += std::abs(en.a[i]) * en.d[i] * iy + en.f[i] * en.dx(i);
  }
  t.L = iY * l_sum(en);
  t.M = w * iy * negative_mass(en);
  t.N = 0.5 * w * w * forcing_mass(en);
  return t;
}

template struct BasicSystemSolution<Rational>;
template struct BasicSystemSolution<double>;
template Rational l_condition_sum<Rational>(const Piecemealing&);
template double l_condition_sum<double>(const Piecemealing&);
template Rational contraction_factor<Rational>(const Piecemealing&);
template double contraction_factor<double>(const Piecemealing&);
template BasicDiagnostics<Rational> diagnostics<Rational>(const Piecemealing&);
template BasicDiagnostics<double> diagnostics<double>(const Piecemealing&);

}  // namespace ssde
