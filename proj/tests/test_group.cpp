#include "fricke/group.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace fricke::group;
using fricke::exactnum::Integer;
using fricke::exactnum::ProjPoint;
using fricke::exactnum::Rational;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

FrickeGroup flagship() { return FrickeGroup::make(q("6/11"), q("6")); }

Word random_word(oracle::Gen& gen, int max_len) {
  std::vector<Letter> ls;
  const int n = static_cast<int>(gen.between(0, max_len));
  for (int i = 0; i < n; ++i) ls.push_back(kLetters[static_cast<std::size_t>(gen.between(0, 3))]);
  return Word(ls);
}

// Valid (u^2, t) with numerators and denominators <= 50.
std::pair<Rational, Rational> random_parameters(oracle::Gen& gen) {
  for (;;) {
    const Rational u2(Integer(gen.between(1, 50)), Integer(gen.between(1, 50)));
    const Rational t(Integer(gen.between(1, 50)), Integer(gen.between(1, 50)));
    if (u2 < t - Rational(1)) return {u2, t};
  }
}

ProjPoint random_point(oracle::Gen& gen) {
  if (gen.between(0, 20) == 0) return ProjPoint::infinity();
  return ProjPoint(Rational(Integer(gen.between(-80, 80)), Integer(gen.between(1, 80))));
}

// Scales a matrix with square determinant to determinant 1.
std::array<Rational, 4> normalized(const ProjMatrix& m) {
  mpz_class root;
  const Integer det = m.det();
  mpz_sqrt(root.get_mpz_t(), det.get_mpz_t());
  EXPECT_EQ(root * root, det);
  return {Rational(m.a(), root), Rational(m.b(), root), Rational(m.c(), root), Rational(m.d(), root)};
}

}  // namespace

TEST(Word, ParsePrintAndFreeReduction) {
  EXPECT_EQ(Word::parse("AaBb").size(), 0U);
  EXPECT_EQ(Word::parse("ABab").str(), "ABab");
  EXPECT_EQ(Word::parse("1"), Word());
  EXPECT_EQ(Word().str(), "");
  EXPECT_EQ(Word::parse("AbBa"), Word());
  EXPECT_EQ(Word::parse("ABab").inverse().str(), "BAba");
  EXPECT_EQ(Word::parse("AB").power(-2).str(), "baba");
  EXPECT_THROW(Word::parse("AxB"), fricke::exactnum::ParameterError);
}

TEST(Word, LengthThenLexOrder) {
  EXPECT_LT(Word::parse("b"), Word::parse("AA"));
  EXPECT_LT(Word::parse("A"), Word::parse("a"));
  EXPECT_LT(Word::parse("a"), Word::parse("B"));
  EXPECT_LT(Word::parse("AB"), Word::parse("Ab"));
}

TEST(MakeGroup, Examples) {
  const FrickeGroup g = flagship();
  EXPECT_EQ(g.gen1(), ProjMatrix(22, 6, 11, 11));
  EXPECT_EQ(g.gen2(), ProjMatrix(6, 6, 11, 27));
  EXPECT_EQ(g.translation(), Rational(6));
  EXPECT_EQ(g.t(), Rational(3));
  EXPECT_NO_THROW(FrickeGroup::make(q("1/4"), q("4")));
  try {
    FrickeGroup::make(q("1"), q("4"));
    FAIL() << "expected InvalidParameters";
  } catch (const InvalidParameters& e) {
    EXPECT_NE(std::string(e.what()).find("u^2 < t - 1"), std::string::npos);
  }
  EXPECT_THROW(FrickeGroup::make(q("0"), q("8")), InvalidParameters);
  EXPECT_THROW(FrickeGroup::make(q("-1"), q("8")), InvalidParameters);
}

TEST(MakeGroup, GeneratorsAreTheRationalMatricesUpToScalar) {
  oracle::Gen gen(21);
  for (int i = 0; i < 200; ++i) {
    const auto [u2, t] = random_parameters(gen);
    const FrickeGroup g = FrickeGroup::make(u2, Rational(2) * t);
    const Rational one(1);
    EXPECT_EQ(g.gen1(), ProjMatrix::from_rational(t - one, u2, one, one));
    EXPECT_EQ(g.gen2(), ProjMatrix::from_rational(u2, u2, one, t - u2));
    EXPECT_GT(g.gen1().det(), 0);
    EXPECT_GT(g.gen2().det(), 0);
  }
}

TEST(WordMatrix, Examples) {
  const FrickeGroup g = flagship();
  EXPECT_EQ(word_matrix(g, Word::parse("A")), ProjMatrix(22, 6, 11, 11));
  EXPECT_TRUE(word_matrix(g, Word::parse("Aa")).is_identity());
  EXPECT_TRUE(word_matrix(g, Word()).is_identity());
  const ProjMatrix comm = word_matrix(g, Word::parse("ABab"));
  EXPECT_EQ(classify_element(comm), ElementClass::Parabolic);
  const auto fp = fixed_points(comm);
  ASSERT_TRUE(std::holds_alternative<SingleFixedPoint>(fp));
  EXPECT_EQ(std::get<SingleFixedPoint>(fp).point, ProjPoint(q("6/11")));
}

TEST(Apply, Examples) {
  const FrickeGroup g = flagship();
  EXPECT_EQ(apply(g.gen1(), ProjPoint::infinity()), ProjPoint(q("2")));
  EXPECT_EQ(apply(g.gen2(), ProjPoint::infinity()), ProjPoint(q("6/11")));
  EXPECT_EQ(apply(g.gen2(), ProjPoint()), ProjPoint(q("2/9")));
  // Pole of gen2^-1 is u^2.
  EXPECT_EQ(apply(g.gen2().inverse(), ProjPoint(q("6/11"))), ProjPoint::infinity());
}

TEST(ClassifyElement, Examples) {
  const FrickeGroup g = flagship();
  EXPECT_EQ(classify_element(g.gen1()), ElementClass::Hyperbolic);
  EXPECT_EQ(classify_element(word_matrix(g, Word::parse("AbaB"))), ElementClass::Parabolic);
  EXPECT_EQ(classify_element(ProjMatrix(0, -1, 1, 0)), ElementClass::Elliptic);
  EXPECT_EQ(classify_element(ProjMatrix(3, 0, 0, 3)), ElementClass::Identity);
}

TEST(FixedPoints, Examples) {
  const FrickeGroup g = flagship();
  const auto p = fixed_points(word_matrix(g, Word::parse("bABa")));
  ASSERT_TRUE(std::holds_alternative<SingleFixedPoint>(p));
  EXPECT_TRUE(std::get<SingleFixedPoint>(p).point.is_infinity());

  const auto h = fixed_points(g.gen1());
  ASSERT_TRUE(std::holds_alternative<IrrationalPair>(h));
  // (a-d)^2 + 4bc for [[22,6],[11,11]] = 121 + 264 = 385 = 11^2 * 35/11.
  EXPECT_EQ(std::get<IrrationalPair>(h).discriminant, 385);
  EXPECT_THROW(fixed_points(ProjMatrix::identity()), fricke::exactnum::DomainError);
}

TEST(ParabolicAtInfinity, Examples) {
  const auto p = parabolic_at_infinity(flagship());
  EXPECT_EQ(p.word.str(), "bABa");
  EXPECT_EQ(p.translation, Rational(-6));
  EXPECT_EQ(parabolic_at_infinity(FrickeGroup::make(q("1/4"), q("4"))).translation, Rational(-4));
}

TEST(ParabolicAtInfinity, TwoHundredRandomGroups) {
  oracle::Gen gen(22);
  for (int i = 0; i < 200; ++i) {
    const auto [u2, t] = random_parameters(gen);
    const FrickeGroup g = FrickeGroup::make(u2, Rational(2) * t);
    const ProjMatrix m = word_matrix(g, Word::parse("bABa"));
    EXPECT_EQ(classify_element(m), ElementClass::Parabolic);
    EXPECT_EQ(m.c(), 0);
    EXPECT_EQ(apply(m, ProjPoint::infinity()), ProjPoint::infinity());
    EXPECT_EQ(Rational(m.b(), m.d()), Rational(-2) * t);
    EXPECT_EQ(parabolic_at_infinity(g).translation, Rational(-2) * t);

    const ProjMatrix comm = word_matrix(g, Word::parse("ABab"));
    EXPECT_EQ(classify_element(comm), ElementClass::Parabolic);
    const auto fp = fixed_points(comm);
    ASSERT_TRUE(std::holds_alternative<SingleFixedPoint>(fp));
    EXPECT_EQ(std::get<SingleFixedPoint>(fp).point, ProjPoint(u2));

    EXPECT_EQ(classify_element(g.gen1()), ElementClass::Hyperbolic);
    EXPECT_EQ(classify_element(g.gen2()), ElementClass::Hyperbolic);
  }
}

TEST(WordMatrix, ProjectiveHomomorphismAndActionLaw) {
  oracle::Gen gen(23);
  for (int i = 0; i < 300; ++i) {
    const auto [u2, t] = random_parameters(gen);
    const FrickeGroup g = FrickeGroup::make(u2, Rational(2) * t);
    const Word w1 = random_word(gen, 8);
    const Word w2 = random_word(gen, 8);
    const ProjMatrix m1 = word_matrix(g, w1);
    const ProjMatrix m2 = word_matrix(g, w2);
    EXPECT_EQ(word_matrix(g, w1 * w2), m1 * m2);
    const ProjPoint x = random_point(gen);
    EXPECT_EQ(apply(word_matrix(g, w1 * w2), x), apply(m1, apply(m2, x)));
    EXPECT_EQ(apply(m1, apply(m1.inverse(), x)), x);
    EXPECT_EQ(parity(w1 * w2), parity(w1) + parity(w2));
  }
}

TEST(FixedPoints, ReturnedPointsAreFixed) {
  oracle::Gen gen(24);
  const FrickeGroup g = flagship();
  for (int i = 0; i < 3000; ++i) {
    const Word w = random_word(gen, 10);
    const ProjMatrix m = word_matrix(g, w);
    if (m.is_identity()) continue;
    const auto fp = fixed_points(m);
    if (const auto* r = std::get_if<RationalPair>(&fp)) {
      EXPECT_EQ(apply(m, r->first), r->first);
      EXPECT_EQ(apply(m, r->second), r->second);
    } else if (const auto* s = std::get_if<SingleFixedPoint>(&fp)) {
      EXPECT_EQ(apply(m, s->point), s->point);
    }
  }
  // aBAbbb is hyperbolic with rational fixed points.
  const auto fp = fixed_points(word_matrix(g, Word::parse("aBAbbb")));
  ASSERT_TRUE(std::holds_alternative<RationalPair>(fp));
}

TEST(Parity, Examples) {
  EXPECT_EQ(parity(Word::parse("A")), (Parity{1, 0}));
  EXPECT_EQ(parity(Word::parse("ABA")), (Parity{0, 1}));
  EXPECT_EQ(parity(Word::parse("ABab")), (Parity{0, 0}));
  EXPECT_EQ(Parity::parse("1,0"), (Parity{1, 0}));
  EXPECT_EQ((Parity{1, 1}).str(), "1,1");
}

TEST(LambdaGenerators, Examples) {
  const auto gens = lambda_generators();
  ASSERT_EQ(gens.size(), 5U);
  for (const Word& w : gens) EXPECT_EQ(parity(w), (Parity{0, 0})) << w.str();
  EXPECT_NE(std::find(gens.begin(), gens.end(), Word::parse("AA")), gens.end());
}

TEST(SupportPrimes, Examples) {
  EXPECT_TRUE(support_primes(FrickeGroup::make(q("1"), q("6"))).empty());
  EXPECT_EQ(support_primes(flagship()), (std::vector<long>{2}));
  const auto s = support_primes(FrickeGroup::make(q("1/4"), q("4")));
  EXPECT_NE(std::find(s.begin(), s.end(), 3L), s.end());
}

// Independent recomputation: normalize each Lambda generator, collect denominators.
TEST(SupportPrimes, MatchesNormalizedGenerators) {
  oracle::Gen gen(25);
  for (int i = 0; i < 60; ++i) {
    const auto [u2, t] = random_parameters(gen);
    const FrickeGroup g = FrickeGroup::make(u2, Rational(2) * t);
    std::set<long> primes;
    for (const Word& w : lambda_generators()) {
      for (const Rational& e : normalized(word_matrix(g, w))) {
        long d = e.den().get_si();
        for (long p = 2; p <= d; ++p) {
          if (d % p == 0) {
            primes.insert(p);
            while (d % p == 0) d /= p;
          }
        }
      }
    }
    EXPECT_EQ(support_primes(g), std::vector<long>(primes.begin(), primes.end()));
  }
}

TEST(ArithmeticityScreen, Examples) {
  const auto flag = arithmeticity_screen(flagship(), 2);
  EXPECT_TRUE(flag.not_arithmetic);
  ASSERT_TRUE(flag.witness);
  EXPECT_EQ(flag.witness->str(), "AA");
  EXPECT_EQ(*flag.value, q("4489/256"));

  EXPECT_FALSE(arithmeticity_screen(FrickeGroup::make(q("1"), q("6")), 6).not_arithmetic);
  EXPECT_TRUE(arithmeticity_screen(FrickeGroup::make(q("1/4"), q("4")), 2).not_arithmetic);
  EXPECT_THROW(arithmeticity_screen(flagship(), 1), fricke::exactnum::ParameterError);
}

TEST(ArithmeticityScreen, WitnessValueRecomputes) {
  const FrickeGroup g = flagship();
  const auto s = arithmeticity_screen(g, 4);
  ASSERT_TRUE(s.witness);
  const ProjMatrix m = word_matrix(g, *s.witness);
  EXPECT_EQ(Rational(m.trace() * m.trace(), m.det()), *s.value);
  EXPECT_FALSE(s.value->is_integer());
}

TEST(ForEachWord, CountsAndOrder) {
  const FrickeGroup g = flagship();
  std::size_t count = 0;
  Word prev;
  bool ordered = true;
  for_each_word(g, 5, [&](const Word& w, const ProjMatrix& m) {
    if (count > 0 && !(prev < w)) ordered = false;
    prev = w;
    ++count;
    EXPECT_EQ(m, word_matrix(g, w));
    return true;
  });
  // 4 + 12 + 36 + 108 + 324
  EXPECT_EQ(count, 484U);
  EXPECT_TRUE(ordered);
}
