#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "fatpoints/errors.hpp"

namespace fatpoints {

/**
 * Arbitrary-precision rational number, always in lowest terms with a
 * positive denominator. Zero is 0/1. Backed by GMP; the class exists to
 * pin down the invariants, the parsing/printing format, and the bit-length
 * measure used for pivot selection.
 */
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT: implicit by design, mirrors integer literals
  Rational(long num, long den) {
    if (den == 0) throw InvalidInput("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(const mpz_class& n) : q_(n) {}
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "123", "-4/6" (reduced on input), rejects everything else.
  static Rational parse(std::string_view text) {
    if (text.empty()) throw ParseError("empty rational literal");
    std::string s(text);
    const auto slash = s.find('/');
    const std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den))
      throw ParseError("bad rational literal: '" + s + "'");
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
      throw ParseError("bad rational literal: '" + s + "'");
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
      throw ParseError("zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(std::move(q));
  }

  const mpz_class numerator() const { return q_.get_num(); }
  const mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return mpq_sgn(q_.get_mpq_t()) == 0; }
  int sign() const { return mpq_sgn(q_.get_mpq_t()); }
  bool is_integer() const { return q_.get_den() == 1; }

  /// Bits of numerator plus bits of denominator; the pivot-selection cost
  /// measure for exact elimination.
  std::size_t bit_length() const {
    if (is_zero()) return 1;
    return mpz_sizeinbase(mpq_numref(q_.get_mpq_t()), 2) +
           mpz_sizeinbase(mpq_denref(q_.get_mpq_t()), 2);
  }

  Rational reciprocal() const {
    if (is_zero()) throw InvalidInput("reciprocal of zero");
    mpq_class r;
    mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
    return Rational(std::move(r));
  }

  Rational pow(unsigned e) const {
    Rational acc(1);
    Rational base = *this;
    for (; e != 0; e >>= 1) {
      if (e & 1) acc *= base;
      if (e > 1) base *= base;
    }
    return acc;
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw InvalidInput("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// "p" when the denominator is 1, "p/q" otherwise; fully reduced.
  std::string str() const { return q_.get_str(); }

  const mpq_class& raw() const { return q_; }

 private:
  static bool is_integer_literal(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  }

  mpq_class q_;
};

}  // namespace fatpoints
