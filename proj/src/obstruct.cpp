#include "fricke/obstruct.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fricke::obstruct {

using exactnum::ParameterError;
using exactnum::vp;

std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::SquareObstruction: return "SquareObstruction";
    case WitnessKind::TwoPrimeObstruction: return "TwoPrimeObstruction";
    case WitnessKind::IntegerTViolation: return "IntegerTViolation";
    case WitnessKind::SpecialPoint: return "SpecialPoint";
  }
  return "?";
}

std::string to_string(Conclusion c) {
  return c == Conclusion::NotPseudomodular ? "NotPseudomodular" : "NoKnownObstruction";
}

namespace {

void require_prime(long p) {
  if (!exactnum::is_prime(p)) throw ParameterError("not a prime: " + std::to_string(p));
}

std::string v(long p, const char* what) { return "v_" + std::to_string(p) + "(" + what + ")"; }

// Branch of the square obstruction that holds at p, or 0.
int square_branch(const FrickeGroup& g, long p) {
  const long vt = vp(g.t(), p);
  const long vu = vp(g.u2(), p);
  if (vt >= 0 && vu <= -2) return 1;
  if (vt < 0 && vu <= 2 * (vt - 1)) return 2;
  return 0;
}

bool two_prime_holds(const FrickeGroup& g, long p, long q) {
  return vp(g.u2(), p) == -1 && vp(g.u2(), q) == -1 && vp(g.t(), p) >= 0 && vp(g.t(), q) >= 0;
}

bool is_zero_or_minus_one(const Integer& r, long q) { return r == 0 || r == q - 1; }

// Odd primes q | t with u^2 integral at q and u^2 not 0 or -1 mod q.
std::vector<long> clause_c_failures(const FrickeGroup& g) {
  std::vector<long> out;
  for (long q : exactnum::prime_divisors(g.t().num())) {
    if (q == 2 || vp(g.u2(), q) < 0) continue;
    if (!is_zero_or_minus_one(exactnum::residue_mod_pk(g.u2(), q, 1), q)) out.push_back(q);
  }
  return out;
}

}  // namespace

// ---- single criteria ------------------------------------------------------------

std::optional<Witness> check_square_obstruction(const FrickeGroup& g, long p) {
  require_prime(p);
  const int branch = square_branch(g, p);
  if (branch == 0) return std::nullopt;
  const long vt = vp(g.t(), p);
  const long vu = vp(g.u2(), p);
  Witness w;
  w.kind = WitnessKind::SquareObstruction;
  w.primes = {p};
  w.branch = branch;
  if (branch == 1) {
    w.detail = v(p, "t") + " = " + std::to_string(vt) + " >= 0 and " + v(p, "u^2") + " = " + std::to_string(vu) +
               " <= -2";
  } else {
    w.detail = v(p, "t") + " = " + std::to_string(vt) + " < 0 and " + v(p, "u^2") + " = " + std::to_string(vu) +
               " <= 2(" + v(p, "t") + " - 1) = " + std::to_string(2 * (vt - 1));
  }
  return w;
}

std::optional<Witness> check_two_prime_obstruction(const FrickeGroup& g, long p, long q) {
  require_prime(p);
  require_prime(q);
  if (p == q) throw ParameterError("two-prime obstruction needs distinct primes");
  if (!two_prime_holds(g, p, q)) return std::nullopt;
  Witness w;
  w.kind = WitnessKind::TwoPrimeObstruction;
  w.primes = {p, q};
  w.predicate = ValPredicate::exactly_one_negative(p, q);
  w.detail = v(p, "u^2") + " = " + v(q, "u^2") + " = -1, " + v(p, "t") + " = " + std::to_string(vp(g.t(), p)) +
             ", " + v(q, "t") + " = " + std::to_string(vp(g.t(), q));
  return w;
}

IntegerTCheck check_integer_t_conditions(const FrickeGroup& g) {
  IntegerTCheck out;
  if (!g.t().is_integer()) return out;
  out.applicable = true;
  const Integer& den = g.u2().den();
  const bool prime_or_unit = den == 1 || exactnum::is_prime(den);

  if (!prime_or_unit) {
    Witness w;
    w.kind = WitnessKind::IntegerTViolation;
    w.clause = 'a';
    w.primes = exactnum::prime_divisors(den);
    w.detail = "(a) denominator of u^2 is " + den.get_str() + ", neither 1 nor prime";
    out.violations.push_back(std::move(w));
  } else if (den != 1 && den != 2 && g.t().num() % den == 0) {
    Witness w;
    w.kind = WitnessKind::IntegerTViolation;
    w.clause = 'b';
    w.primes = {den.get_si()};
    w.detail = "(b) odd prime denominator " + den.get_str() + " of u^2 divides t = " + g.t().str();
    out.violations.push_back(std::move(w));
  }

  const std::vector<long> bad = clause_c_failures(g);
  if (!bad.empty()) {
    Witness w;
    w.kind = WitnessKind::IntegerTViolation;
    w.clause = 'c';
    w.primes = bad;
    w.detail = "(c)";
    for (long q : bad) {
      w.detail += " u^2 = " + exactnum::residue_mod_pk(g.u2(), q, 1).get_str() + " mod " + std::to_string(q) + ";";
    }
    w.detail += " expected 0 or -1";
    out.violations.push_back(std::move(w));
  }
  return out;
}

bool check_density_criterion(const FrickeGroup& g) {
  if (!g.t().is_integer() || !exactnum::is_prime(g.t().num())) return false;
  const Integer& den = g.u2().den();
  if (!exactnum::is_prime(den) || den == g.t().num()) return false;
  const long t = g.t().num().get_si();
  return is_zero_or_minus_one(exactnum::residue_mod_pk(g.u2(), t, 1), t);
}

std::vector<long> relevant_primes(const FrickeGroup& g) {
  std::set<long> s;
  for (long p : exactnum::prime_divisors(g.u2().den())) s.insert(p);
  for (long p : exactnum::prime_divisors(g.t().den())) s.insert(p);
  if (g.t().is_integer()) {
    for (long p : exactnum::prime_divisors(g.t().num())) {
      if (p != 2) s.insert(p);
    }
  }
  return {s.begin(), s.end()};
}

bool recheck_witness(const FrickeGroup& g, const Witness& w) {
  switch (w.kind) {
    case WitnessKind::SquareObstruction:
      return w.primes.size() == 1 && w.branch != 0 && square_branch(g, w.primes[0]) == w.branch;
    case WitnessKind::TwoPrimeObstruction:
      return w.primes.size() == 2 && w.primes[0] != w.primes[1] && two_prime_holds(g, w.primes[0], w.primes[1]) &&
             w.predicate && *w.predicate == ValPredicate::exactly_one_negative(w.primes[0], w.primes[1]);
    case WitnessKind::IntegerTViolation: {
      if (!g.t().is_integer()) return false;
      const Integer& den = g.u2().den();
      switch (w.clause) {
        case 'a': return den != 1 && !exactnum::is_prime(den);
        case 'b':
          return w.primes.size() == 1 && den == w.primes[0] && den != 2 && exactnum::is_prime(den) &&
                 g.t().num() % den == 0;
        case 'c': return !w.primes.empty() && w.primes == clause_c_failures(g);
        default: return false;
      }
    }
    case WitnessKind::SpecialPoint:
      return w.word && w.point && orbit::verify_special_point(g, orbit::SpecialPoint{*w.point, *w.word});
  }
  return false;
}

Verdict classify(const FrickeGroup& g, unsigned special_budget, unsigned screen_length) {
  Verdict out;
  out.screen_length = screen_length;
  out.special_budget = special_budget;
  out.arithmetic_screen = group::arithmeticity_screen(g, screen_length);
  out.primes_scanned = relevant_primes(g);

  for (long p : out.primes_scanned) {
    if (auto w = check_square_obstruction(g, p)) out.obstructions.push_back(std::move(*w));
  }
  for (std::size_t i = 0; i < out.primes_scanned.size(); ++i) {
    for (std::size_t k = i + 1; k < out.primes_scanned.size(); ++k) {
      if (auto w = check_two_prime_obstruction(g, out.primes_scanned[i], out.primes_scanned[k]))
        out.obstructions.push_back(std::move(*w));
    }
  }
  IntegerTCheck it = check_integer_t_conditions(g);
  out.integer_t_applicable = it.applicable;
  for (Witness& w : it.violations) out.obstructions.push_back(std::move(w));

  if (special_budget >= 1) {
    for (const orbit::SpecialPoint& s : orbit::special_point_scan(g, special_budget, true)) {
      Witness w;
      w.kind = WitnessKind::SpecialPoint;
      w.word = s.word;
      w.point = s.point;
      w.detail = "hyperbolic " + s.word.str() + " fixes " + s.point.str();
      out.obstructions.push_back(std::move(w));
    }
  }
  out.density_all_finite_products = check_density_criterion(g);
  out.conclusion = out.obstructions.empty() ? Conclusion::NoKnownObstruction : Conclusion::NotPseudomodular;
  return out;
}

// ---- invariance ---------------------------------------------------------------------

RationalSampler::RationalSampler(std::uint64_t seed, long bound)
    : rng_(seed), num_(-bound, bound), den_(1, bound) {
  if (bound < 1) throw ParameterError("sample bound must be positive");
}

Rational RationalSampler::next() {
  for (;;) {
    const long n = num_(rng_);
    const long d = den_(rng_);
    if (n != 0) return Rational(Integer(n), Integer(d));
  }
}

namespace {

// Draws per accepted sample before the predicate counts as empty.
constexpr std::size_t kRetryBudget = 200'000;

}  // namespace

InvarianceResult verify_invariance(const ValPredicate& U, const FrickeGroup& g, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ParameterError("verify_invariance needs at least one sample");
  InvarianceResult out;
  out.seed = seed;
  RationalSampler sampler(seed);
  for (std::size_t i = 0; i < n; ++i) {
    Rational x;
    std::size_t tries = 0;
    for (;;) {
      x = sampler.next();
      if (U.eval(x)) break;
      if (++tries >= kRetryBudget)
        throw EmptyPredicateError("no sample in " + U.str() + " after " + std::to_string(kRetryBudget) + " draws");
    }
    ++out.samples;
    const ProjPoint px(x);
    for (group::Letter l : group::kLetters) {
      const ProjPoint y = g.letter_matrix(l).apply(px);
      const bool inside = !y.is_infinity() && y.a() != 0 && U.eval(y.to_rational());
      if (!inside) {
        out.pass = false;
        out.x = x;
        out.letter = l;
        out.image = y;
        return out;
      }
    }
  }
  return out;
}

// ---- miner ----------------------------------------------------------------------------

namespace {

// Valuations and residues mod p of one data point, precomputed for the candidate primes.
class FeatureRow final : public Valuator {
 public:
  FeatureRow(const Rational& x, const std::vector<long>& primes) {
    for (long p : primes) {
      const long vx = exactnum::vp(x, p);
      vals_[p] = vx;
      if (vx >= 0) res_[p] = exactnum::residue_mod_pk(x, p, 1);
    }
  }
  long vp(long p) const override { return vals_.at(p); }
  Integer residue(long p, unsigned k) const override {
    if (k != 1) throw ParameterError("feature rows hold residues mod p only");
    return res_.at(p);
  }

 private:
  std::map<long, long> vals_;
  std::map<long, Integer> res_;
};

std::vector<ValPredicate> atoms_for(long p, const std::set<long>& seen_residues) {
  using Rel = ValPredicate::Rel;
  std::vector<ValPredicate> out;
  for (Rel rel : {Rel::Le, Rel::Ge, Rel::Eq}) {
    for (long b = -3; b <= 3; ++b) out.push_back(ValPredicate::val(p, rel, b));
  }
  out.push_back(ValPredicate::val(p, Rel::Odd));
  out.push_back(ValPredicate::val(p, Rel::Even));
  if (!seen_residues.empty() && static_cast<long>(seen_residues.size()) < p) {
    std::vector<long> in(seen_residues.begin(), seen_residues.end());
    std::vector<long> rest;
    for (long r = 0; r < p; ++r) {
      if (seen_residues.count(r) == 0) rest.push_back(r);
    }
    out.push_back(ValPredicate::res(p, 1, in));
    out.push_back(ValPredicate::res(p, 1, rest));
  }
  return out;
}

}  // namespace

MineResult mine_invariants(const FrickeGroup& g, const std::vector<ProjPoint>& seeds, const std::vector<long>& primes,
                           unsigned depth, std::uint64_t seed) {
  if (depth < 1) throw ParameterError("miner depth must be at least 1");
  if (primes.empty()) throw ParameterError("miner needs at least one prime");
  std::vector<long> ps;
  for (long p : primes) {
    require_prime(p);
    if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
  }

  // Orbit data.
  std::set<Rational> data;
  auto keep = [&](const ProjPoint& x) {
    if (!x.is_infinity() && x.a() != 0) data.insert(x.to_rational());
  };
  for (const ProjPoint& s : seeds) {
    keep(s);
    for (unsigned d = 1; d <= depth; ++d) {
      orbit::walk_exact_depth(g, s, d, SIZE_MAX, [&](const ProjPoint& x, const std::vector<group::Letter>&) {
        keep(x);
        return true;
      });
    }
  }
  MineResult out;
  out.data_points = data.size();
  if (data.empty()) return out;

  std::vector<FeatureRow> rows;
  rows.reserve(data.size());
  for (const Rational& x : data) rows.emplace_back(x, ps);

  // Candidate list in grammar order.
  std::vector<ValPredicate> atoms;
  for (long p : ps) {
    std::set<long> seen;
    for (const FeatureRow& r : rows) {
      if (r.vp(p) >= 0) seen.insert(r.residue(p, 1).get_si());
    }
    for (ValPredicate& a : atoms_for(p, seen)) atoms.push_back(std::move(a));
  }
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t k = i + 1; k < ps.size(); ++k) {
      const long p = std::min(ps[i], ps[k]), q = std::max(ps[i], ps[k]);
      atoms.push_back(ValPredicate::exactly_one_negative(p, q));
    }
  }
  std::vector<ValPredicate> candidates = atoms;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t k = i + 1; k < atoms.size(); ++k) candidates.push_back(ValPredicate::all_of({atoms[i], atoms[k]}));
  }
  out.candidates = candidates.size();

  // Shared sample pool for the properness check.
  std::vector<Rational> pool;
  RationalSampler sampler(seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t i = 0; i < kPropernessSamples; ++i) pool.push_back(sampler.next());

  for (const ValPredicate& c : candidates) {
    const bool first = c.eval(static_cast<const Valuator&>(rows.front()));
    const bool uniform = std::all_of(rows.begin(), rows.end(),
                                     [&](const FeatureRow& r) { return c.eval(static_cast<const Valuator&>(r)) == first; });
    if (!uniform) continue;
    bool any_in = false, any_out = false;
    for (const Rational& x : pool) {
      (c.eval(x) ? any_in : any_out) = true;
      if (any_in && any_out) break;
    }
    if (!any_in || !any_out) continue;
    try {
      if (!verify_invariance(c, g, kMineSamples, seed).pass) continue;
    } catch (const EmptyPredicateError&) {
      continue;
    }
    out.predicates.push_back(MinedPredicate{c, first});
  }
  return out;
}

}  // namespace fricke::obstruct
