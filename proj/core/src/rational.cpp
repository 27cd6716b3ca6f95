#include "ssde/rational.hpp"

#include "ssde/error.hpp"

#include <cctype>
#include <cmath>
#include <limits>

namespace ssde {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class pow10(unsigned long n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, n);
  return r;
}

// [sign] digits [. digits] [(e|E) [sign] digits]
std::optional<mpq_class> parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view exp_text = s.substr(epos + 1);
    s = s.substr(0, epos);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) return std::nullopt;
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) return std::nullopt;
  if (!int_part.empty() && !all_digits(int_part)) return std::nullopt;
  if (!frac_part.empty() && !all_digits(frac_part)) return std::nullopt;

  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class num(digits.empty() ? "0" : digits, 10);
  exponent -= static_cast<long>(frac_part.size());
  mpq_class q;
  if (exponent >= 0) {
    q = mpq_class(num * pow10(static_cast<unsigned long>(exponent)));
  } else {
    q = mpq_class(num, pow10(static_cast<unsigned long>(-exponent)));
  }
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw Error(Errc::Parse, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw std::domain_error("rational division by zero");
  q_ /= o.q_;
  return *this;
}

std::optional<Rational> Rational::try_parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = trim(text.substr(0, slash));
    std::string_view den = trim(text.substr(slash + 1));
    bool negative = false;
    if (!num.empty() && (num.front() == '-' || num.front() == '+')) {
      negative = num.front() == '-';
      num.remove_prefix(1);
    }
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) return std::nullopt;
    if (negative) n = -n;
    return Rational(mpq_class(n, d));
  }
  if (auto q = parse_decimal(text)) return Rational(*q);
  return std::nullopt;
}

Rational Rational::parse(std::string_view text) {
  if (auto r = try_parse(text)) return *r;
  throw Error(Errc::Parse, "not a rational or decimal literal: '" + std::string(text) + "'");
}

Rational Rational::from_double(double v) {
  if (!std::isfinite(v)) throw Error(Errc::Parse, "non-finite value has no rational form");
  return Rational(mpq_class(v));
}

double Rational::to_double() const {
  // 2^53: both parts exact in binary64, so one IEEE division rounds correctly.
  static const mpz_class limit = mpz_class(1) << 53;
  const mpz_class& n = q_.get_num();
  const mpz_class& d = q_.get_den();
  if (abs(n) <= limit && d <= limit) return n.get_d() / d.get_d();
  return q_.get_d();
}

}  // namespace ssde
