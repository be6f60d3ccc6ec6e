#pragma once

// Exact rationals, points of P^1(Q), p-adic valuations and residues.
//
// Everything here is backed by GMP integers. Rationals are kept in lowest
// terms with a positive denominator at all times; there is no floating point
// anywhere in the library.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fricke::exactnum {

using Integer = mpz_class;

/// Input outside the domain of an operation (x = 0 for a valuation, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A parameter that is malformed or violates a precondition (p not prime, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Rational {
 public:
  Rational() = default;
  Rational(long n);  // NOLINT(google-explicit-constructor)
  explicit Rational(const Integer& n);
  Rational(const Integer& num, const Integer& den);

  /// Accepts "a/c" or "a" with optional leading sign.
  static Rational parse(std::string_view text);

  const Integer& num() const { return q_.get_num(); }
  const Integer& den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational l, const Rational& r) { return l += r; }
  friend Rational operator-(Rational l, const Rational& r) { return l -= r; }
  friend Rational operator*(Rational l, const Rational& r) { return l *= r; }
  friend Rational operator/(Rational l, const Rational& r) { return l /= r; }

  friend bool operator==(const Rational& l, const Rational& r) { return l.q_ == r.q_; }
  friend std::strong_ordering operator<=>(const Rational& l, const Rational& r) {
    const int c = cmp(l.q_, r.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Largest integer not exceeding the value.
  Integer floor() const;
  std::string str() const;

  const mpq_class& raw() const { return q_; }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

/// A point (a : c) of P^1(Q) with gcd(a, c) = 1 and canonical sign:
/// c > 0, or c = 0 and a = 1 (the point at infinity).
class ProjPoint {
 public:
  /// The point 0 = (0 : 1).
  ProjPoint() : a_(0), c_(1) {}
  explicit ProjPoint(const Rational& x) : a_(x.num()), c_(x.den()) {}

  static ProjPoint infinity();
  /// Accepts "inf" or anything Rational::parse accepts.
  static ProjPoint parse(std::string_view text);

  const Integer& a() const { return a_; }
  const Integer& c() const { return c_; }
  bool is_infinity() const { return c_ == 0; }
  /// Throws DomainError at infinity.
  Rational to_rational() const;
  std::string str() const;

  friend bool operator==(const ProjPoint& l, const ProjPoint& r) {
    return l.a_ == r.a_ && l.c_ == r.c_;
  }
  /// Arbitrary but fixed total order (by c, then a); infinity first.
  friend std::strong_ordering operator<=>(const ProjPoint& l, const ProjPoint& r);

 private:
  friend ProjPoint reduce_point(Integer a, Integer c);
  ProjPoint(Integer a, Integer c) : a_(std::move(a)), c_(std::move(c)) {}
  Integer a_;
  Integer c_;
};

/// Divides out gcd(a, c) and fixes the canonical sign. Throws DomainError for (0, 0).
ProjPoint reduce_point(Integer a, Integer c);

// ---- primes ---------------------------------------------------------------

/// Deterministic for every input below 2^64 (trial division plus BPSW in GMP).
bool is_prime(const Integer& n);
bool is_prime(long n);
/// Distinct prime divisors of |n| in increasing order; empty for |n| <= 1.
std::vector<long> prime_divisors(const Integer& n);

// ---- valuations -----------------------------------------------------------

/// v_p(n) for nonzero integer n.
long vp(const Integer& n, long p);
/// v_p(x) = v_p(num) - v_p(den). Throws DomainError for x = 0 and
/// ParameterError when p is not prime.
long vp(const Rational& x, long p);

/// num * den^{-1} mod p^k in [0, p^k). Requires v_p(x) >= 0 (DomainError otherwise).
Integer residue_mod_pk(const Rational& x, long p, unsigned k);

/// True iff (y - x) / m is an integer, i.e. y lies on the rational trace x + mZ of the
/// adelic ball x + m Zhat.
bool ball_trace_contains(const Rational& center, const Rational& modulus, const Rational& y);

Integer ipow(long base, unsigned exp);

}  // namespace fricke::exactnum
