#pragma once

#include <cstdint>

#include "fatpoints/errors.hpp"
#include "fatpoints/rational.hpp"
#include "fatpoints/rng.hpp"

namespace fatpoints {

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  const auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
  };
  const auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    for (; e; e >>= 1) {
      if (e & 1) r = mulmod(r, a, m);
      a = mulmod(a, a, m);
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// Smallest admissible modulus: primes must exceed 2^30.
inline constexpr std::uint64_t kMinPrime = (1ULL << 30) + 1;

/// Draws a random prime in (2^30, 2^31); the working size for the modular
/// rank filter.
inline std::uint64_t random_prime(Rng& rng) {
  for (;;) {
    std::uint64_t c = kMinPrime + (rng.next() % (1ULL << 30));
    c |= 1;
    while (!is_prime_u64(c)) c += 2;
    if (c < (1ULL << 32)) return c;
  }
}

/**
 * Element of the prime field Z/p for a prime p > 2^30. Carries its modulus;
 * mixing moduli in one expression is a programming error and throws.
 */
class Fp {
 public:
  Fp() : v_(0), p_(0) {}
  Fp(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) {}

  static Fp zero(std::uint64_t p) { return Fp(0, p); }
  static Fp one(std::uint64_t p) { return Fp(1, p); }

  /// Reduces num/den mod p. Throws BadPrime when the denominator is
  /// divisible by p.
  static Fp from_rational(const Rational& q, std::uint64_t p) {
    const std::uint64_t den = mod_u64(q.denominator(), p);
    if (den == 0) throw BadPrime("denominator divisible by modulus");
    std::uint64_t num = mod_u64(q.numerator(), p);
    if (q.numerator() < 0 && num != 0) num = p - num;
    return Fp(mulmod(num, inverse_u64(den, p), p), p);
  }

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  Fp operator+(const Fp& o) const {
    check(o);
    std::uint64_t s = v_ + o.v_;
    if (s >= p_) s -= p_;
    return raw(s, p_);
  }
  Fp operator-(const Fp& o) const {
    check(o);
    return raw(v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_, p_);
  }
  Fp operator*(const Fp& o) const {
    check(o);
    return raw(mulmod(v_, o.v_, p_), p_);
  }
  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }

  Fp inverse() const {
    if (v_ == 0) throw InvalidInput("Fp: inverse of zero");
    return raw(inverse_u64(v_, p_), p_);
  }

  friend bool operator==(const Fp& a, const Fp& b) {
    return a.v_ == b.v_ && a.p_ == b.p_;
  }

 private:
  static Fp raw(std::uint64_t v, std::uint64_t p) {
    Fp f;
    f.v_ = v;
    f.p_ = p;
    return f;
  }
  static std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
  }
  static std::uint64_t mod_u64(const mpz_class& z, std::uint64_t p) {
    mpz_class m = abs(z) % mpz_class(static_cast<unsigned long>(p));
    return m.get_ui();
  }
  static std::uint64_t inverse_u64(std::uint64_t a, std::uint64_t p) {
    // Extended Euclid; p prime, a != 0 mod p.
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
      const std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(t);
  }
  void check(const Fp& o) const {
    if (p_ != o.p_) throw InvalidInput("Fp: mixed moduli");
  }

  std::uint64_t v_;
  std::uint64_t p_;
};

}  // namespace fatpoints
