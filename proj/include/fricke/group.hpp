#pragma once

// The Fricke groups Delta(u^2, 2t): generators, words, exact projective
// matrices and their action on P^1(Q).

#include "fricke/exactnum.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace fricke::group {

using exactnum::Integer;
using exactnum::ProjPoint;
using exactnum::Rational;

/// Generator letters. Textual form: A = g1, a = g1^-1, B = g2, b = g2^-1.
enum class Letter : std::uint8_t { G1 = 0, G1Inv = 1, G2 = 2, G2Inv = 3 };

inline constexpr std::array<Letter, 4> kLetters{Letter::G1, Letter::G1Inv, Letter::G2, Letter::G2Inv};

constexpr Letter inverse(Letter l) { return static_cast<Letter>(static_cast<std::uint8_t>(l) ^ 1U); }
char to_char(Letter l);
Letter letter_from_char(char ch);

/// Image in Z/2 + Z/2 under g1 -> (1,0), g2 -> (0,1).
struct Parity {
  std::uint8_t g1 = 0;
  std::uint8_t g2 = 0;

  Parity& operator+=(Parity o) {
    g1 ^= o.g1;
    g2 ^= o.g2;
    return *this;
  }
  friend Parity operator+(Parity l, Parity r) { return l += r; }
  friend bool operator==(Parity, Parity) = default;
  friend auto operator<=>(Parity, Parity) = default;
  std::string str() const;  // "g1,g2", e.g. "1,0"
  static Parity parse(std::string_view text);
};

/// A freely reduced word in g1, g2 and their inverses.
class Word {
 public:
  Word() = default;
  /// Freely reduces the given letter sequence.
  explicit Word(const std::vector<Letter>& letters);
  /// Parses a string over {A,a,B,b}; the result is freely reduced. An empty
  /// string or "1" is the identity.
  static Word parse(std::string_view text);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  Word inverse() const;
  Word power(long n) const;
  /// Word for L * this (left extension), freely reduced.
  Word prepend(Letter l) const;
  Parity parity() const;
  std::string str() const;

  friend Word operator*(const Word& l, const Word& r);
  friend bool operator==(const Word&, const Word&) = default;
  /// Length first, then lexicographic in the order A < a < B < b.
  friend std::strong_ordering operator<=>(const Word& l, const Word& r);

 private:
  std::vector<Letter> letters_;
};

Parity parity(const Word& w);

/// Primitive integer 2x2 matrix up to sign with positive determinant. Canonical
/// form: gcd of entries is 1 and the first nonzero entry (in order a, b, c, d) is positive.
class ProjMatrix {
 public:
  ProjMatrix(Integer a, Integer b, Integer c, Integer d);
  static ProjMatrix identity();
  /// Clears denominators of a rational matrix; the determinant must be positive.
  static ProjMatrix from_rational(const Rational& a, const Rational& b, const Rational& c,
                                  const Rational& d);

  const Integer& a() const { return e_[0]; }
  const Integer& b() const { return e_[1]; }
  const Integer& c() const { return e_[2]; }
  const Integer& d() const { return e_[3]; }
  Integer det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }
  Integer trace() const { return e_[0] + e_[3]; }

  ProjMatrix inverse() const;
  bool is_identity() const;
  ProjPoint apply(const ProjPoint& x) const;
  std::string str() const;

  friend ProjMatrix operator*(const ProjMatrix& l, const ProjMatrix& r);
  friend bool operator==(const ProjMatrix&, const ProjMatrix&) = default;

 private:
  std::array<Integer, 4> e_;
};

ProjPoint apply(const ProjMatrix& m, const ProjPoint& x);

enum class ElementClass { Hyperbolic, Parabolic, Elliptic, Identity };
std::string to_string(ElementClass c);

/// Sign of tr^2 - 4 det; Identity for scalar matrices.
ElementClass classify_element(const ProjMatrix& m);

struct RationalPair {
  ProjPoint first;
  ProjPoint second;
};
struct IrrationalPair {
  Integer discriminant;  // (a-d)^2 + 4bc, not a perfect square
};
struct SingleFixedPoint {
  ProjPoint point;
};
using FixedPointResult = std::variant<RationalPair, IrrationalPair, SingleFixedPoint>;

/// Solutions of c x^2 + (d - a) x - b = 0 on P^1. Elliptic elements report an
/// IrrationalPair with negative discriminant. Throws DomainError on the identity.
FixedPointResult fixed_points(const ProjMatrix& m);

class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Invalid (u^2, t): names the violated inequality of 0 < u^2 < t - 1.
class InvalidParameters : public exactnum::ParameterError {
 public:
  using exactnum::ParameterError::ParameterError;
};

/// Delta(u^2, 2t), immutable after construction.
class FrickeGroup {
 public:
  /// Validates 0 < u2 < t - 1 with t = two_t / 2; throws InvalidParameters otherwise.
  static FrickeGroup make(const Rational& u2, const Rational& two_t);

  const Rational& u2() const { return u2_; }
  const Rational& t() const { return t_; }
  const Rational& two_t() const { return two_t_; }
  /// Translation of the cusp at infinity (= 2t).
  const Rational& translation() const { return two_t_; }

  const ProjMatrix& gen1() const { return letters_[0]; }
  const ProjMatrix& gen2() const { return letters_[2]; }
  const ProjMatrix& letter_matrix(Letter l) const { return letters_[static_cast<std::size_t>(l)]; }

  /// G2^-1 G1 G2 G1^-1, upper triangular with translation -2t.
  const Word& parabolic_word() const { return parabolic_word_; }
  /// Primes S with Lambda(u^2,2t) inside PSL_2(Z[1/S]).
  const std::vector<long>& support_primes() const { return support_primes_; }

  std::string name() const;  // "Delta(u2,2t)"

 private:
  FrickeGroup() = default;
  Rational u2_;
  Rational t_;
  Rational two_t_;
  std::array<ProjMatrix, 4> letters_{ProjMatrix::identity(), ProjMatrix::identity(),
                                     ProjMatrix::identity(), ProjMatrix::identity()};
  Word parabolic_word_;
  std::vector<long> support_primes_;
};

ProjMatrix word_matrix(const FrickeGroup& g, const Word& w);

struct ParabolicAtInfinity {
  Word word;
  Rational translation;  // x -> x + translation
};
ParabolicAtInfinity parabolic_at_infinity(const FrickeGroup& g);

/// Free generators of the parity kernel Lambda:
/// G1^2, G2^2, G2 G1 G2^-1 G1^-1, G1 G2 G1 G2^-1, G1 G2^2 G1^-1.
std::vector<Word> lambda_generators();

std::vector<long> support_primes(const FrickeGroup& g);

/// Scale-invariant tr^2 / det.
Rational trace_invariant(const ProjMatrix& m);

struct ArithmeticityScreen {
  bool not_arithmetic = false;
  std::optional<Word> witness;
  std::optional<Rational> value;  // tr^2/det of the witness
  std::size_t words_checked = 0;
};

/// Searches Lambda-words up to length max_length (length-then-lex order) for a
/// non-integral tr^2/det. A hit proves non-arithmeticity; a miss decides nothing.
ArithmeticityScreen arithmeticity_screen(const FrickeGroup& g, unsigned max_length);

/// Calls visit(word, matrix) on every freely reduced word of length 1..max_length in
/// length-then-lex order. visit returns false to stop early.
template <typename Visit>
void for_each_word(const FrickeGroup& g, unsigned max_length, Visit&& visit);

}  // namespace fricke::group

#include "fricke/detail/word_enum.hpp"
