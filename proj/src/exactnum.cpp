#include "fricke/exactnum.hpp"

#include <cctype>

namespace fricke::exactnum {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw ParameterError("malformed rational: '" + std::string(whole) + "'");
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw ParameterError("malformed rational: '" + std::string(whole) + "'");
  }
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  return Integer(s, 10);
}

void require_prime(long p) {
  if (!is_prime(p)) throw ParameterError("not a prime: " + std::to_string(p));
}

}  // namespace

Rational::Rational(long n) : q_(n) {}

Rational::Rational(const Integer& n) : q_(n) {}

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const Integer num = parse_integer(text.substr(0, slash), text);
  const std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
    throw ParameterError("malformed rational: '" + std::string(text) + "'");
  const Integer den = parse_integer(den_text, text);
  if (den == 0) throw ParameterError("zero denominator: '" + std::string(text) + "'");
  return Rational(num, den);
}

Rational Rational::operator-() const { return Rational(mpq_class(-q_)); }

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  q_ /= o.q_;
  return *this;
}

Integer Rational::floor() const {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
  return r;
}

std::string Rational::str() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

// ---- ProjPoint -------------------------------------------------------------

ProjPoint ProjPoint::infinity() { return ProjPoint(Integer(1), Integer(0)); }

ProjPoint ProjPoint::parse(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "oo") return infinity();
  return ProjPoint(Rational::parse(text));
}

Rational ProjPoint::to_rational() const {
  if (is_infinity()) throw DomainError("the point at infinity is not a rational number");
  return Rational(a_, c_);
}

std::string ProjPoint::str() const {
  if (is_infinity()) return "inf";
  if (c_ == 1) return a_.get_str();
  return a_.get_str() + "/" + c_.get_str();
}

std::strong_ordering operator<=>(const ProjPoint& l, const ProjPoint& r) {
  int k = cmp(l.c_, r.c_);
  if (k == 0) k = cmp(l.a_, r.a_);
  return k < 0 ? std::strong_ordering::less
               : (k > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

ProjPoint reduce_point(Integer a, Integer c) {
  if (a == 0 && c == 0) throw DomainError("(0 : 0) is not a point of P^1(Q)");
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  if (g != 1) {
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  if (c < 0 || (c == 0 && a < 0)) {
    a = -a;
    c = -c;
  }
  return ProjPoint(std::move(a), std::move(c));
}

// ---- primes ----------------------------------------------------------------

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 25) > 0;
}

bool is_prime(long n) { return is_prime(Integer(n)); }

std::vector<long> prime_divisors(const Integer& n) {
  Integer m = abs(n);
  std::vector<long> out;
  constexpr unsigned long kTrialLimit = 1'000'000;
  for (unsigned long p = 2; p <= kTrialLimit && m > 1; ++p) {
    if (p * p > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      out.push_back(static_cast<long>(p));
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    }
  }
  if (m > 1) {
    if (!m.fits_slong_p() || !is_prime(m))
      throw ParameterError("cannot factor " + n.get_str() + " within the trial-division bound");
    out.push_back(m.get_si());
  }
  return out;
}

// ---- valuations ------------------------------------------------------------

long vp(const Integer& n, long p) {
  if (n == 0) throw DomainError("v_p(0) is undefined");
  if (p < 2) throw ParameterError("not a prime: " + std::to_string(p));
  if (!mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) return 0;
  Integer rest;
  const Integer pz(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

long vp(const Rational& x, long p) {
  if (x.is_zero()) throw DomainError("v_p(0) is undefined");
  require_prime(p);
  return vp(x.num(), p) - vp(x.den(), p);
}

Integer ipow(long base, unsigned exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
  return r;
}

Integer residue_mod_pk(const Rational& x, long p, unsigned k) {
  require_prime(p);
  if (k == 0) throw ParameterError("residue precision must be positive");
  if (!x.is_zero() && vp(x.den(), p) > 0)
    throw DomainError(x.str() + " is not integral at " + std::to_string(p));
  const Integer mod = ipow(p, k);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), x.den().get_mpz_t(), mod.get_mpz_t());
  Integer r = x.num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
  return r;
}

bool ball_trace_contains(const Rational& center, const Rational& modulus, const Rational& y) {
  if (modulus.is_zero()) throw DomainError("ball modulus must be nonzero");
  return ((y - center) / modulus).is_integer();
}

}  // namespace fricke::exactnum
