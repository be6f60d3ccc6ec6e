#pragma once

// Obstructions to pseudomodularity, the density criterion, empirical invariance of
// valuation predicates, the predicate miner and the aggregate verdict.
//
// A Verdict never claims pseudomodularity: it is NotPseudomodular (with witnesses)
// or NoKnownObstruction.

#include "fricke/group.hpp"
#include "fricke/orbitsearch.hpp"
#include "fricke/predicate.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace fricke::obstruct {

using exactnum::ProjPoint;
using group::FrickeGroup;
using group::Word;

enum class WitnessKind { SquareObstruction, TwoPrimeObstruction, IntegerTViolation, SpecialPoint };
std::string to_string(WitnessKind k);

struct Witness {
  WitnessKind kind = WitnessKind::SquareObstruction;
  std::vector<long> primes;
  std::string detail;
  std::optional<ValPredicate> predicate;
  std::optional<Word> word;
  std::optional<ProjPoint> point;
  int branch = 0;   // square obstruction: 1 or 2
  char clause = 0;  // integer-t violation: 'a', 'b' or 'c'
};

/// Recomputes the cited valuations, residues or fixed point from scratch.
bool recheck_witness(const FrickeGroup& g, const Witness& w);

/// v_p(t) >= 0 and v_p(u^2) <= -2 (branch 1), or v_p(t) < 0 and v_p(u^2) <= 2(v_p(t) - 1) (branch 2).
std::optional<Witness> check_square_obstruction(const FrickeGroup& g, long p);

/// v_p(u^2) = v_q(u^2) = -1 with t integral at p and q. Throws ParameterError for p = q.
std::optional<Witness> check_two_prime_obstruction(const FrickeGroup& g, long p, long q);

struct IntegerTCheck {
  bool applicable = false;  // t is an integer
  std::vector<Witness> violations;
};

/// For integer t: (a) den(u^2) is 1 or prime; (b) an odd prime denominator does not
/// divide t; (c) u^2 = 0 or -1 mod q for every odd prime q | t with u^2 integral at q.
IntegerTCheck check_integer_t_conditions(const FrickeGroup& g);

/// t prime, den(u^2) a prime other than t, and u^2 = 0 or -1 mod t.
bool check_density_criterion(const FrickeGroup& g);

/// Primes dividing den(u^2) or den(t), and odd primes dividing t when t is an integer.
std::vector<long> relevant_primes(const FrickeGroup& g);

enum class Conclusion { NotPseudomodular, NoKnownObstruction };
std::string to_string(Conclusion c);

struct Verdict {
  group::ArithmeticityScreen arithmetic_screen;
  unsigned screen_length = 0;
  unsigned special_budget = 0;
  std::vector<long> primes_scanned;
  bool integer_t_applicable = false;
  std::vector<Witness> obstructions;  // special points appear as SpecialPoint witnesses
  bool density_all_finite_products = false;
  Conclusion conclusion = Conclusion::NoKnownObstruction;
};

inline constexpr unsigned kDefaultScreenLength = 6;
inline constexpr unsigned kDefaultSpecialBudget = 6;

/// The special scan lists every special point at the first word length that yields any.
Verdict classify(const FrickeGroup& g, unsigned special_budget = kDefaultSpecialBudget,
                 unsigned screen_length = kDefaultScreenLength);

// ---- invariance ---------------------------------------------------------------

/// The sampler found no point of the predicate.
class EmptyPredicateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr long kSampleBound = 10'000;

/// Uniform numerator in [-B, B], denominator in [1, B], reduced, nonzero.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed, long bound = kSampleBound);
  Rational next();

 private:
  std::mt19937_64 rng_;
  std::uniform_int_distribution<long> num_;
  std::uniform_int_distribution<long> den_;
};

struct InvarianceResult {
  bool pass = true;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<Rational> x;                // counterexample
  std::optional<group::Letter> letter;
  std::optional<ProjPoint> image;           // letter * x, not in U (or 0 / infinity)
};

/// Samples n points of U and checks that every generator letter keeps them in U.
/// Pass is evidence only. Throws EmptyPredicateError when U cannot be sampled.
InvarianceResult verify_invariance(const ValPredicate& U, const FrickeGroup& g, std::size_t n,
                                   std::uint64_t seed);

// ---- miner ----------------------------------------------------------------------

struct MinedPredicate {
  ValPredicate predicate;
  bool orbit_inside = false;  // orbit data lies inside (true) or entirely outside the set
};

struct MineResult {
  std::vector<MinedPredicate> predicates;  // grammar order
  std::size_t data_points = 0;
  std::size_t candidates = 0;
};

inline constexpr std::size_t kMineSamples = 10'000;
inline constexpr std::size_t kPropernessSamples = 2'000;

/// Fixed hypothesis space, per prime p (bounds b in [-3, 3]):
///   vp(p)<=b, vp(p)>=b, vp(p)=b, odd(vp), even(vp), res(p,1,S) and res(p,1,complement of S)
///   with S the residues seen in the orbit data;
/// per pair p < q: xor(neg(vp), neg(vq)); and conjunctions of two distinct atoms.
/// A candidate is kept when the orbit data (images of the seeds under words of length
/// <= depth, 0 and infinity dropped) lies entirely inside or entirely outside it, it is
/// proper on seeded samples, and verify_invariance passes at kMineSamples.
MineResult mine_invariants(const FrickeGroup& g, const std::vector<ProjPoint>& seeds,
                           const std::vector<long>& primes, unsigned depth, std::uint64_t seed);

}  // namespace fricke::obstruct
