#include "fricke/group.hpp"

#include <algorithm>
#include <set>

namespace fricke::group {

using exactnum::DomainError;
using exactnum::ParameterError;

char to_char(Letter l) {
  switch (l) {
    case Letter::G1: return 'A';
    case Letter::G1Inv: return 'a';
    case Letter::G2: return 'B';
    case Letter::G2Inv: return 'b';
  }
  return '?';
}

Letter letter_from_char(char ch) {
  switch (ch) {
    case 'A': return Letter::G1;
    case 'a': return Letter::G1Inv;
    case 'B': return Letter::G2;
    case 'b': return Letter::G2Inv;
    default: throw ParameterError(std::string("not a generator letter: '") + ch + "'");
  }
}

// ---- Parity ----------------------------------------------------------------

std::string Parity::str() const { return std::to_string(g1) + "," + std::to_string(g2); }

Parity Parity::parse(std::string_view text) {
  if (text.size() != 3 || text[1] != ',' || (text[0] != '0' && text[0] != '1') ||
      (text[2] != '0' && text[2] != '1'))
    throw ParameterError("malformed parity: '" + std::string(text) + "'");
  return Parity{static_cast<std::uint8_t>(text[0] - '0'), static_cast<std::uint8_t>(text[2] - '0')};
}

// ---- Word ------------------------------------------------------------------

Word::Word(const std::vector<Letter>& letters) {
  letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (!letters_.empty() && letters_.back() == group::inverse(l)) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> ls;
  if (text == "1") return Word();
  ls.reserve(text.size());
  for (char ch : text) ls.push_back(letter_from_char(ch));
  return Word(ls);
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(group::inverse(*it));
  return w;
}

Word Word::power(long n) const {
  const Word base = n < 0 ? inverse() : *this;
  Word out;
  for (long i = 0; i < (n < 0 ? -n : n); ++i) out = out * base;
  return out;
}

Word Word::prepend(Letter l) const {
  Word w;
  if (!letters_.empty() && letters_.front() == group::inverse(l)) {
    w.letters_.assign(letters_.begin() + 1, letters_.end());
  } else {
    w.letters_.reserve(letters_.size() + 1);
    w.letters_.push_back(l);
    w.letters_.insert(w.letters_.end(), letters_.begin(), letters_.end());
  }
  return w;
}

Parity Word::parity() const {
  Parity p;
  for (Letter l : letters_) {
    if (l == Letter::G1 || l == Letter::G1Inv) p.g1 ^= 1U;
    else p.g2 ^= 1U;
  }
  return p;
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(to_char(l));
  return s;
}

Word operator*(const Word& l, const Word& r) {
  Word w = l;
  for (Letter x : r.letters_) {
    if (!w.letters_.empty() && w.letters_.back() == group::inverse(x)) w.letters_.pop_back();
    else w.letters_.push_back(x);
  }
  return w;
}

std::strong_ordering operator<=>(const Word& l, const Word& r) {
  if (l.size() != r.size()) return l.size() <=> r.size();
  return l.letters_ <=> r.letters_;
}

Parity parity(const Word& w) { return w.parity(); }

// ---- ProjMatrix ------------------------------------------------------------

ProjMatrix::ProjMatrix(Integer a, Integer b, Integer c, Integer d)
    : e_{std::move(a), std::move(b), std::move(c), std::move(d)} {
  if (det() <= 0) throw DomainError("projective matrix needs a positive determinant");
  Integer g;
  mpz_gcd(g.get_mpz_t(), e_[0].get_mpz_t(), e_[1].get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e_[2].get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e_[3].get_mpz_t());
  const auto first_nonzero = std::find_if(e_.begin(), e_.end(), [](const Integer& x) { return x != 0; });
  if (*first_nonzero < 0) g = -g;
  if (g != 1) {
    for (auto& x : e_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
}

ProjMatrix ProjMatrix::identity() { return ProjMatrix(1, 0, 0, 1); }

ProjMatrix ProjMatrix::from_rational(const Rational& a, const Rational& b, const Rational& c,
                                     const Rational& d) {
  Integer l = 1;
  for (const Rational* x : {&a, &b, &c, &d}) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x->den().get_mpz_t());
  auto scaled = [&l](const Rational& x) { return Integer(x.num() * (l / x.den())); };
  return ProjMatrix(scaled(a), scaled(b), scaled(c), scaled(d));
}

ProjMatrix ProjMatrix::inverse() const { return ProjMatrix(e_[3], -e_[1], -e_[2], e_[0]); }

bool ProjMatrix::is_identity() const { return e_[1] == 0 && e_[2] == 0 && e_[0] == e_[3]; }

ProjPoint ProjMatrix::apply(const ProjPoint& x) const {
  Integer num = e_[0] * x.a() + e_[1] * x.c();
  Integer den = e_[2] * x.a() + e_[3] * x.c();
  return exactnum::reduce_point(std::move(num), std::move(den));
}

std::string ProjMatrix::str() const {
  return "[[" + e_[0].get_str() + "," + e_[1].get_str() + "],[" + e_[2].get_str() + "," +
         e_[3].get_str() + "]]";
}

ProjMatrix operator*(const ProjMatrix& l, const ProjMatrix& r) {
  return ProjMatrix(l.e_[0] * r.e_[0] + l.e_[1] * r.e_[2], l.e_[0] * r.e_[1] + l.e_[1] * r.e_[3],
                    l.e_[2] * r.e_[0] + l.e_[3] * r.e_[2], l.e_[2] * r.e_[1] + l.e_[3] * r.e_[3]);
}

ProjPoint apply(const ProjMatrix& m, const ProjPoint& x) { return m.apply(x); }

// ---- classification --------------------------------------------------------

std::string to_string(ElementClass c) {
  switch (c) {
    case ElementClass::Hyperbolic: return "Hyperbolic";
    case ElementClass::Parabolic: return "Parabolic";
    case ElementClass::Elliptic: return "Elliptic";
    case ElementClass::Identity: return "Identity";
  }
  return "?";
}

ElementClass classify_element(const ProjMatrix& m) {
  if (m.is_identity()) return ElementClass::Identity;
  const Integer tr = m.trace();
  const Integer disc = tr * tr - 4 * m.det();
  const int s = sgn(disc);
  if (s > 0) return ElementClass::Hyperbolic;
  if (s == 0) return ElementClass::Parabolic;
  return ElementClass::Elliptic;
}

FixedPointResult fixed_points(const ProjMatrix& m) {
  if (m.is_identity()) throw DomainError("the identity fixes every point");
  const Integer a_minus_d = m.a() - m.d();
  const Integer disc = a_minus_d * a_minus_d + 4 * m.b() * m.c();
  if (disc < 0) return IrrationalPair{disc};
  if (disc == 0) {
    if (m.c() == 0) return SingleFixedPoint{ProjPoint::infinity()};
    return SingleFixedPoint{exactnum::reduce_point(a_minus_d, 2 * m.c())};
  }
  if (!mpz_perfect_square_p(disc.get_mpz_t())) return IrrationalPair{disc};
  Integer root;
  mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
  if (m.c() == 0) {
    // Infinity plus the finite root of (d - a) x = b.
    return RationalPair{ProjPoint::infinity(), exactnum::reduce_point(m.b(), m.d() - m.a())};
  }
  return RationalPair{exactnum::reduce_point(a_minus_d + root, 2 * m.c()),
                      exactnum::reduce_point(a_minus_d - root, 2 * m.c())};
}

// ---- FrickeGroup -----------------------------------------------------------

FrickeGroup FrickeGroup::make(const Rational& u2, const Rational& two_t) {
  const Rational t = two_t / Rational(2);
  if (u2.sign() <= 0) throw InvalidParameters("violated 0 < u^2 (u^2 = " + u2.str() + ")");
  const Rational t_minus_1 = t - Rational(1);
  if (!(u2 < t_minus_1))
    throw InvalidParameters("violated u^2 < t - 1 (u^2 = " + u2.str() + ", t - 1 = " + t_minus_1.str() + ")");

  FrickeGroup g;
  g.u2_ = u2;
  g.t_ = t;
  g.two_t_ = two_t;
  const ProjMatrix g1 = ProjMatrix::from_rational(t_minus_1, u2, Rational(1), Rational(1));
  const ProjMatrix g2 = ProjMatrix::from_rational(u2, u2, Rational(1), t - u2);
  g.letters_ = {g1, g1.inverse(), g2, g2.inverse()};

  g.parabolic_word_ = Word::parse("bABa");
  const ProjMatrix p = word_matrix(g, g.parabolic_word_);
  if (p.c() != 0 || p.a() != p.d() || Rational(p.b(), p.d()) != -two_t)
    throw InternalConsistencyError("parabolic word does not translate infinity by -2t: " + p.str());
  g.support_primes_ = group::support_primes(g);
  return g;
}

std::string FrickeGroup::name() const { return "Delta(" + u2_.str() + "," + two_t_.str() + ")"; }

ProjMatrix word_matrix(const FrickeGroup& g, const Word& w) {
  ProjMatrix m = ProjMatrix::identity();
  for (Letter l : w.letters()) m = m * g.letter_matrix(l);
  return m;
}

ParabolicAtInfinity parabolic_at_infinity(const FrickeGroup& g) {
  const ProjMatrix p = word_matrix(g, g.parabolic_word());
  if (p.c() != 0 || p.a() != p.d())
    throw InternalConsistencyError("parabolic word is not upper unipotent: " + p.str());
  return {g.parabolic_word(), Rational(p.b(), p.d())};
}

std::vector<Word> lambda_generators() {
  return {Word::parse("AA"), Word::parse("BB"), Word::parse("BAba"), Word::parse("ABAb"),
          Word::parse("ABBa")};
}

std::vector<long> support_primes(const FrickeGroup& g) {
  std::set<long> primes;
  for (const Word& w : lambda_generators()) {
    const ProjMatrix m = word_matrix(g, w);
    const Integer det = m.det();
    if (!mpz_perfect_square_p(det.get_mpz_t()))
      throw InternalConsistencyError("Lambda generator " + w.str() + " has non-square determinant " +
                                     det.get_str());
    Integer scale;
    mpz_sqrt(scale.get_mpz_t(), det.get_mpz_t());
    for (const Integer* e : {&m.a(), &m.b(), &m.c(), &m.d()}) {
      const Rational entry(*e, scale);
      for (long p : exactnum::prime_divisors(entry.den())) primes.insert(p);
    }
  }
  return {primes.begin(), primes.end()};
}

Rational trace_invariant(const ProjMatrix& m) {
  const Integer tr = m.trace();
  return Rational(tr * tr, m.det());
}

ArithmeticityScreen arithmeticity_screen(const FrickeGroup& g, unsigned max_length) {
  if (max_length < 2) throw ParameterError("arithmeticity screen needs a length bound >= 2");
  ArithmeticityScreen out;
  for_each_word(g, max_length, [&](const Word& w, const ProjMatrix& m) {
    if (w.parity() != Parity{}) return true;
    ++out.words_checked;
    Rational inv = trace_invariant(m);
    if (!inv.is_integer()) {
      out.not_arithmetic = true;
      out.witness = w;
      out.value = std::move(inv);
      return false;
    }
    return true;
  });
  return out;
}

}  // namespace fricke::group
