#pragma once

// Valuation-and-congruence predicates on Q \ {0}.
//
// Text grammar (whitespace after commas is optional):
//
//   pred  := atom | "true" | "false"
//          | "and(" pred "," pred {"," pred} ")" | "or(" ... ")"
//          | "xor(" pred "," pred ")" | "not(" pred ")"
//   atom  := "neg(v" P ")"                    v_P(x) < 0
//          | "vp(" P ")" REL INT              REL in <=, >=, =, <, >
//          | "odd(v" P ")" | "even(v" P ")"  parity of v_P(x)
//          | "res(" P "," K ",{" r,... "})"   x mod P^K in the set (false if v_P(x) < 0)
//
// Example: "xor(neg(v3), neg(v5))", "and(vp(2)<=-2, res(3,1,{0,2}))".

#include "fricke/exactnum.hpp"

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fricke::obstruct {

using exactnum::Integer;
using exactnum::Rational;

/// Source of v_p(x) and x mod p^k for one fixed nonzero x.
class Valuator {
 public:
  virtual ~Valuator() = default;
  virtual long vp(long p) const = 0;
  /// Only called when vp(p) >= 0.
  virtual Integer residue(long p, unsigned k) const = 0;
};

/// Computes on demand from an exact rational.
class RationalValuator final : public Valuator {
 public:
  explicit RationalValuator(const Rational& x);
  long vp(long p) const override;
  Integer residue(long p, unsigned k) const override;

 private:
  const Rational& x_;
  mutable std::map<long, long> cache_;
};

class ValPredicate {
 public:
  enum class Rel { Le, Eq, Ge, Lt, Gt, Odd, Even };
  enum class Kind { True, False, Val, Res, And, Or, Xor, Not };

  static ValPredicate constant(bool value);
  static ValPredicate val(long p, Rel rel, long bound = 0);
  /// v_p(x) < 0.
  static ValPredicate negative(long p) { return val(p, Rel::Lt, 0); }
  static ValPredicate res(long p, unsigned k, std::vector<long> allowed);
  static ValPredicate all_of(std::vector<ValPredicate> parts);
  static ValPredicate any_of(std::vector<ValPredicate> parts);
  static ValPredicate exclusive_or(ValPredicate l, ValPredicate r);
  static ValPredicate negation(ValPredicate p);

  /// The invariant set of the two-prime obstruction: exactly one of v_p, v_q is negative.
  static ValPredicate exactly_one_negative(long p, long q) { return exclusive_or(negative(p), negative(q)); }

  static ValPredicate parse(std::string_view text);
  std::string str() const;

  /// Throws DomainError for x = 0.
  bool eval(const Rational& x) const;
  bool eval(const Valuator& v) const;

  Kind kind() const { return node_->kind; }
  /// Primes mentioned anywhere in the tree, sorted.
  std::vector<long> primes() const;

  friend bool operator==(const ValPredicate& l, const ValPredicate& r) { return l.str() == r.str(); }

 private:
  struct Node {
    Kind kind = Kind::True;
    long p = 0;
    Rel rel = Rel::Le;
    long bound = 0;
    unsigned k = 0;
    std::vector<long> allowed;  // sorted, reduced mod p^k
    std::vector<ValPredicate> children;
  };
  explicit ValPredicate(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace fricke::obstruct
