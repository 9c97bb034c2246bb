#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "coxeter/errors.hpp"

namespace coxeter {

using Rational = mpq_class;

namespace detail {

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string rational_text(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos || slash == 0 || slash + 1 == text.size())
    throw ParseError("malformed rational", 0, std::string(text));
  mpz_class num, den;
  if (num.set_str(std::string(text.substr(0, slash)), 10) != 0 ||
      den.set_str(std::string(text.substr(slash + 1)), 10) != 0 || den <= 0)
    throw ParseError("malformed rational", 0, std::string(text));
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace detail

/// An exact element a + b*sqrt(5) of Q(sqrt 5).
///
/// Both parts are kept in lowest terms with positive denominators (GMP's
/// canonical form). Pure rationals have b == 0, so the rational Weyl types
/// never touch the irrational part.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(Rational a) : a_(std::move(a)) { a_.canonicalize(); }  // NOLINT
  Scalar(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }

  static Scalar sqrt5() { return Scalar(Rational(0), Rational(1)); }
  /// The golden ratio (1 + sqrt 5) / 2.
  static Scalar phi() { return Scalar(detail::make_rational(1, 2), detail::make_rational(1, 2)); }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt5_part() const { return b_; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  /// Exact sign of the real number a + b*sqrt5.
  int sign() const {
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with 5 b^2
    Rational lhs = a_ * a_, rhs = 5 * b_ * b_;
    int c = cmp(lhs, rhs);
    if (c == 0) return 0;  // unreachable for sqrt5 irrational, kept total
    return c > 0 ? sa : sb;
  }

  Scalar operator-() const { return Scalar(-a_, -b_); }
  Scalar& operator+=(const Scalar& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    if (is_rational() && o.is_rational()) {
      a_ *= o.a_;
      return *this;
    }
    Rational na = a_ * o.a_ + 5 * b_ * o.b_;
    Rational nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
    return *this;
  }
  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(sqrt5)");
    if (is_rational()) return Scalar(Rational(1) / a_);
    Rational norm = a_ * a_ - 5 * b_ * b_;
    return Scalar(a_ / norm, -b_ / norm);
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_rational()) {
      if (sgn(o.a_) == 0) throw std::domain_error("division by zero in Q(sqrt5)");
      a_ /= o.a_;
      b_ /= o.a_;
      return *this;
    }
    return *this *= o.inverse();
  }

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  /// Structural total order (by rational part, then sqrt5 part). Used for
  /// map keys, not for numeric comparison; see sign() for that.
  friend bool structural_less(const Scalar& x, const Scalar& y) {
    int c = cmp(x.a_, y.a_);
    if (c != 0) return c < 0;
    return cmp(x.b_, y.b_) < 0;
  }

  /// Canonical text: "p/q" or "p/q+r/s*sqrt5".
  std::string to_string() const {
    std::string s = detail::rational_text(a_);
    if (!is_rational()) s += "+" + detail::rational_text(b_) + "*sqrt5";
    return s;
  }

  static Scalar parse(std::string_view text) {
    constexpr std::string_view suffix = "*sqrt5";
    if (text.size() > suffix.size() && text.ends_with(suffix)) {
      auto body = text.substr(0, text.size() - suffix.size());
      // the separator is the first '+' after the first rational's slash
      auto slash = body.find('/');
      auto plus = slash == std::string_view::npos ? slash : body.find('+', slash);
      if (plus == std::string_view::npos)
        throw ParseError("malformed scalar", 0, std::string(text));
      Scalar s(detail::parse_rational(body.substr(0, plus)),
               detail::parse_rational(body.substr(plus + 1)));
      if (s.is_rational())
        throw ParseError("non-canonical scalar (zero sqrt5 part)", plus, std::string(text));
      return s;
    }
    return Scalar(detail::parse_rational(text));
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
    return os << s.to_string();
  }

 private:
  Rational a_{0};
  Rational b_{0};
};

}  // namespace coxeter
