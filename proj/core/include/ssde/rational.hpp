#ifndef SSDE_RATIONAL_HPP
#define SSDE_RATIONAL_HPP

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace ssde {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator. Thin value wrapper over GMP's mpq_class.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Accepts "p/q", integers, and decimal literals ("-1.25", "3e-2").
  /// Decimal literals are converted exactly (0.1 is 1/10).
  static Rational parse(std::string_view text);
  static std::optional<Rational> try_parse(std::string_view text);

  /// Exact value of a finite binary64.
  static Rational from_double(double v);

  std::string numerator() const { return q_.get_num().get_str(); }
  std::string denominator() const { return q_.get_den().get_str(); }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const { return q_.get_str(); }
  /// Nearest binary64 when numerator and denominator are exactly
  /// representable, GMP's truncating conversion otherwise.
  double to_double() const;

  const mpq_class& mpq() const { return q_; }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }
inline double to_double(const Rational& r) { return r.to_double(); }
inline double to_double(double v) { return v; }

/// A real input that may carry an exact rational tag. Values parsed from
/// rational or decimal literals are tagged; computed doubles are not.
struct Number {
  double value = 0.0;
  std::optional<Rational> exact;

  Number() = default;
  Number(double v) : value(v) {}  // NOLINT(google-explicit-constructor)
  Number(const Rational& r) : value(r.to_double()), exact(r) {}  // NOLINT
  Number(long num, long den) : Number(Rational(num, den)) {}

  bool is_exact() const { return exact.has_value(); }
};

}  // namespace ssde

#endif  // SSDE_RATIONAL_HPP
