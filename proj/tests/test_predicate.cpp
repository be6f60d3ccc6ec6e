#include "fricke/predicate.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using fricke::exactnum::DomainError;
using fricke::exactnum::Integer;
using fricke::exactnum::ParameterError;
using fricke::exactnum::Rational;
using fricke::obstruct::ValPredicate;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

}  // namespace

TEST(ValPredicate, ExactlyOneNegativeExamples) {
  const ValPredicate u = ValPredicate::exactly_one_negative(3, 5);
  EXPECT_EQ(u.str(), "xor(neg(v3), neg(v5))");
  EXPECT_TRUE(u.eval(q("1/3")));
  EXPECT_FALSE(u.eval(q("1/15")));
  EXPECT_FALSE(u.eval(q("2")));
  EXPECT_TRUE(u.eval(q("3/5")));
  EXPECT_THROW(u.eval(Rational(0)), DomainError);
}

TEST(ValPredicate, ParsePrintRoundTrip) {
  for (const char* text : {"xor(neg(v3), neg(v5))", "and(vp(2)<=-2, res(3,1,{0,2}))", "true", "false",
                           "or(odd(v7), even(v2), vp(5)>1)", "not(vp(3)=0)", "and(vp(2)>=-1, vp(2)<3)"}) {
    const ValPredicate p = ValPredicate::parse(text);
    EXPECT_EQ(p.str(), text);
    EXPECT_EQ(ValPredicate::parse(p.str()), p);
  }
  // Whitespace after commas is optional.
  EXPECT_EQ(ValPredicate::parse("xor(neg(v3),neg(v5))").str(), "xor(neg(v3), neg(v5))");
}

TEST(ValPredicate, ParseErrors) {
  for (const char* text : {"", "xor(neg(v3))", "vp(4)<=1", "res(3,0,{1})", "neg(v3", "maybe", "vp(3)~1"}) {
    EXPECT_THROW(ValPredicate::parse(text), ParameterError) << text;
  }
}

TEST(ValPredicate, ResidueAtomIsFalseOffTheIntegers) {
  const ValPredicate r = ValPredicate::res(3, 1, {0, 2});
  EXPECT_TRUE(r.eval(q("6/11")));
  EXPECT_TRUE(r.eval(q("1/5")));
  EXPECT_FALSE(r.eval(q("1/7")));
  EXPECT_FALSE(r.eval(q("1/3")));
  // Allowed residues are reduced mod p^k.
  EXPECT_EQ(ValPredicate::res(3, 1, {5, -1}).str(), "res(3,1,{2})");
}

TEST(ValPredicate, PrimesAreCollected) {
  EXPECT_EQ(ValPredicate::parse("and(vp(2)<=-2, or(res(3,1,{0}), neg(v11)), odd(v2))").primes(),
            (std::vector<long>{2, 3, 11}));
}

// Semantics against a direct reimplementation on machine integers.
TEST(ValPredicate, EvaluationMatchesDirectComputation) {
  const ValPredicate p = ValPredicate::parse("or(and(vp(2)<=-1, res(3,2,{1,4,7})), xor(odd(v5), vp(3)>0))");
  oracle::Gen gen(31);
  for (int i = 0; i < 5000; ++i) {
    const long n = gen.nonzero(-2000, 2000);
    const long d = gen.between(1, 2000);
    const Rational x{Integer(n), Integer(d)};
    const long rn = x.num().get_si();
    const long rd = x.den().get_si();
    const int v2 = oracle::valuation(rn, rd, 2);
    const int v3 = oracle::valuation(rn, rd, 3);
    const int v5 = oracle::valuation(rn, rd, 5);
    bool res = false;
    if (v3 >= 0) {
      const long r = oracle::residue(rn, rd, 3, 2);
      res = r == 1 || r == 4 || r == 7;
    }
    const bool expected = (v2 <= -1 && res) || ((v5 % 2 != 0) != (v3 > 0));
    EXPECT_EQ(p.eval(x), expected) << x.str();
  }
}
