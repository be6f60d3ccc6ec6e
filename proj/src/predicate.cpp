#include "fricke/predicate.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace fricke::obstruct {

using exactnum::DomainError;
using exactnum::ParameterError;

RationalValuator::RationalValuator(const Rational& x) : x_(x) {
  if (x.is_zero()) throw DomainError("predicates are defined on nonzero rationals only");
}

long RationalValuator::vp(long p) const {
  auto it = cache_.find(p);
  if (it != cache_.end()) return it->second;
  const long v = exactnum::vp(x_, p);
  cache_.emplace(p, v);
  return v;
}

Integer RationalValuator::residue(long p, unsigned k) const { return exactnum::residue_mod_pk(x_, p, k); }

// ---- construction ----------------------------------------------------------

ValPredicate ValPredicate::constant(bool value) {
  auto n = std::make_shared<Node>();
  n->kind = value ? Kind::True : Kind::False;
  return ValPredicate(std::move(n));
}

ValPredicate ValPredicate::val(long p, Rel rel, long bound) {
  if (!exactnum::is_prime(p)) throw ParameterError("not a prime: " + std::to_string(p));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Val;
  n->p = p;
  n->rel = rel;
  n->bound = (rel == Rel::Odd || rel == Rel::Even) ? 0 : bound;
  return ValPredicate(std::move(n));
}

ValPredicate ValPredicate::res(long p, unsigned k, std::vector<long> allowed) {
  if (!exactnum::is_prime(p)) throw ParameterError("not a prime: " + std::to_string(p));
  if (k == 0) throw ParameterError("residue precision must be positive");
  const Integer mod = exactnum::ipow(p, k);
  if (!mod.fits_slong_p()) throw ParameterError("residue modulus too large");
  const long m = mod.get_si();
  std::set<long> reduced;
  for (long r : allowed) reduced.insert(((r % m) + m) % m);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Res;
  n->p = p;
  n->k = k;
  n->allowed.assign(reduced.begin(), reduced.end());
  return ValPredicate(std::move(n));
}

ValPredicate ValPredicate::all_of(std::vector<ValPredicate> parts) {
  if (parts.empty()) return constant(true);
  if (parts.size() == 1) return parts.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->children = std::move(parts);
  return ValPredicate(std::move(n));
}

ValPredicate ValPredicate::any_of(std::vector<ValPredicate> parts) {
  if (parts.empty()) return constant(false);
  if (parts.size() == 1) return parts.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->children = std::move(parts);
  return ValPredicate(std::move(n));
}

ValPredicate ValPredicate::exclusive_or(ValPredicate l, ValPredicate r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Xor;
  n->children = {std::move(l), std::move(r)};
  return ValPredicate(std::move(n));
}

ValPredicate ValPredicate::negation(ValPredicate p) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->children = {std::move(p)};
  return ValPredicate(std::move(n));
}

// ---- evaluation ------------------------------------------------------------

bool ValPredicate::eval(const Rational& x) const { return eval(RationalValuator(x)); }

bool ValPredicate::eval(const Valuator& v) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Val: {
      const long x = v.vp(n.p);
      switch (n.rel) {
        case Rel::Le: return x <= n.bound;
        case Rel::Eq: return x == n.bound;
        case Rel::Ge: return x >= n.bound;
        case Rel::Lt: return x < n.bound;
        case Rel::Gt: return x > n.bound;
        case Rel::Odd: return (x % 2) != 0;
        case Rel::Even: return (x % 2) == 0;
      }
      return false;
    }
    case Kind::Res: {
      if (v.vp(n.p) < 0) return false;
      const long r = v.residue(n.p, n.k).get_si();
      return std::binary_search(n.allowed.begin(), n.allowed.end(), r);
    }
    case Kind::And:
      return std::all_of(n.children.begin(), n.children.end(), [&v](const ValPredicate& c) { return c.eval(v); });
    case Kind::Or:
      return std::any_of(n.children.begin(), n.children.end(), [&v](const ValPredicate& c) { return c.eval(v); });
    case Kind::Xor: return n.children[0].eval(v) != n.children[1].eval(v);
    case Kind::Not: return !n.children[0].eval(v);
  }
  return false;
}

std::vector<long> ValPredicate::primes() const {
  std::set<long> out;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (n->kind == Kind::Val || n->kind == Kind::Res) out.insert(n->p);
    for (const auto& c : n->children) stack.push_back(c.node_.get());
  }
  return {out.begin(), out.end()};
}

// ---- printing --------------------------------------------------------------

std::string ValPredicate::str() const {
  const Node& n = *node_;
  const std::string p = std::to_string(n.p);
  auto joined = [&n](const char* head) {
    std::string s = std::string(head) + "(";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) s += ", ";
      s += n.children[i].str();
    }
    return s + ")";
  };
  switch (n.kind) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Val:
      switch (n.rel) {
        case Rel::Lt:
          if (n.bound == 0) return "neg(v" + p + ")";
          return "vp(" + p + ")<" + std::to_string(n.bound);
        case Rel::Le: return "vp(" + p + ")<=" + std::to_string(n.bound);
        case Rel::Eq: return "vp(" + p + ")=" + std::to_string(n.bound);
        case Rel::Ge: return "vp(" + p + ")>=" + std::to_string(n.bound);
        case Rel::Gt: return "vp(" + p + ")>" + std::to_string(n.bound);
        case Rel::Odd: return "odd(v" + p + ")";
        case Rel::Even: return "even(v" + p + ")";
      }
      return "?";
    case Kind::Res: {
      std::string s = "res(" + p + "," + std::to_string(n.k) + ",{";
      for (std::size_t i = 0; i < n.allowed.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(n.allowed[i]);
      }
      return s + "})";
    }
    case Kind::And: return joined("and");
    case Kind::Or: return joined("or");
    case Kind::Xor: return joined("xor");
    case Kind::Not: return joined("not");
  }
  return "?";
}

// ---- parsing ---------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  ValPredicate parse_all() {
    ValPredicate p = parse_pred();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParameterError("predicate syntax error at offset " + std::to_string(pos_) + " (" + what +
                         "): '" + std::string(s_) + "'");
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  long integer() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    const std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  std::vector<ValPredicate> args() {
    std::vector<ValPredicate> out{parse_pred()};
    while (accept(",")) out.push_back(parse_pred());
    expect(")");
    return out;
  }

  ValPredicate parse_pred() {
    if (accept("true")) return ValPredicate::constant(true);
    if (accept("false")) return ValPredicate::constant(false);
    if (accept("and(")) {
      auto a = args();
      if (a.size() < 2) fail("and() needs two or more operands");
      return ValPredicate::all_of(std::move(a));
    }
    if (accept("or(")) {
      auto a = args();
      if (a.size() < 2) fail("or() needs two or more operands");
      return ValPredicate::any_of(std::move(a));
    }
    if (accept("xor(")) {
      auto a = args();
      if (a.size() != 2) fail("xor() takes two operands");
      return ValPredicate::exclusive_or(a[0], a[1]);
    }
    if (accept("not(")) {
      auto a = args();
      if (a.size() != 1) fail("not() takes one operand");
      return ValPredicate::negation(a[0]);
    }
    if (accept("neg(v")) {
      const long p = integer();
      expect(")");
      return ValPredicate::negative(p);
    }
    if (accept("odd(v")) {
      const long p = integer();
      expect(")");
      return ValPredicate::val(p, ValPredicate::Rel::Odd);
    }
    if (accept("even(v")) {
      const long p = integer();
      expect(")");
      return ValPredicate::val(p, ValPredicate::Rel::Even);
    }
    if (accept("vp(")) {
      const long p = integer();
      expect(")");
      ValPredicate::Rel rel;
      if (accept("<=")) rel = ValPredicate::Rel::Le;
      else if (accept(">=")) rel = ValPredicate::Rel::Ge;
      else if (accept("<")) rel = ValPredicate::Rel::Lt;
      else if (accept(">")) rel = ValPredicate::Rel::Gt;
      else if (accept("=")) rel = ValPredicate::Rel::Eq;
      else fail("expected a comparison");
      return ValPredicate::val(p, rel, integer());
    }
    if (accept("res(")) {
      const long p = integer();
      expect(",");
      const long k = integer();
      if (k <= 0) fail("precision must be positive");
      expect(",");
      expect("{");
      std::vector<long> allowed;
      if (!accept("}")) {
        allowed.push_back(integer());
        while (accept(",")) allowed.push_back(integer());
        expect("}");
      }
      expect(")");
      return ValPredicate::res(p, static_cast<unsigned>(k), std::move(allowed));
    }
    fail("unknown term");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ValPredicate ValPredicate::parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace fricke::obstruct
