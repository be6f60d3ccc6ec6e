#include "fricke/orbitsearch.hpp"

#include "fricke/orbit_cache.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace fricke::orbit {

using exactnum::ParameterError;

TranslationReduced reduce_translation(const ProjPoint& x, const Rational& s) {
  if (s.sign() <= 0) throw ParameterError("translation must be positive");
  if (x.is_infinity()) return {x, Integer(0)};
  const Rational r = x.to_rational();
  Integer k = (r / s).floor();
  return {ProjPoint(r - Rational(k) * s), std::move(k)};
}

ProjPoint translate(const ProjPoint& x, const Rational& s, const Integer& k) {
  if (x.is_infinity()) return x;
  return ProjPoint(x.to_rational() + Rational(k) * s);
}

Word word_from_applied(const std::vector<Letter>& applied) {
  return Word(std::vector<Letter>(applied.rbegin(), applied.rend()));
}

// ---- BFS ---------------------------------------------------------------------

namespace {

CuspRecord make_record(const FrickeGroup& g, const ProjPoint& exact, Word w, unsigned depth) {
  TranslationReduced red = reduce_translation(exact, g.translation());
  const Parity par = w.parity();
  return CuspRecord{std::move(red.point), std::move(red.offset), std::move(w), depth, par};
}

bool record_before(const CuspRecord& l, const CuspRecord& r) {
  if (l.depth != r.depth) return l.depth < r.depth;
  return l.witness < r.witness;
}

}  // namespace

CuspBfsResult cusp_bfs(const FrickeGroup& g, unsigned depth, std::size_t budget,
                       const std::optional<std::filesystem::path>& cache_dir) {
  CuspBfsResult out;
  std::map<ProjPoint, std::size_t> index;  // reduced point -> record

  auto note = [&](const CuspRecord& r) {
    auto it = index.find(r.point);
    if (it == index.end()) {
      index.emplace(r.point, out.records.size());
      out.records.push_back(r);
    } else if (out.records[it->second].parity_tag != r.parity_tag) {
      ++out.parity_conflicts;
    }
  };

  note(make_record(g, ProjPoint::infinity(), Word(), 0));

  std::optional<std::filesystem::path> cache_file;
  unsigned start = 1;
  if (cache_dir) {
    cache_file = cache_file_for(g, *cache_dir);
    const LoadedCache cached = load_orbit_cache(*cache_file, g);
    const unsigned usable = std::min(cached.complete_depth, depth);
    for (const CacheRecord& c : cached.records) {
      if (c.depth > usable) continue;
      CuspRecord r = make_record(g, word_matrix(g, c.word).apply(ProjPoint::infinity()), c.word, c.depth);
      if (r.point != c.point || r.parity_tag != c.parity)
        throw ParameterError("orbit cache record does not re-verify: " + c.point.str() + " " + c.word.str());
      note(r);
    }
    out.cached_depth = usable;
    start = usable + 1;
  }

  for (unsigned d = start; d <= depth; ++d) {
    // Per layer keep the least word reaching each new class so the output does not
    // depend on walk order.
    std::map<ProjPoint, CuspRecord> layer;
    const WalkOutcome w = walk_exact_depth(
        g, ProjPoint::infinity(), d, budget - out.nodes,
        [&](const ProjPoint& p, const std::vector<Letter>& applied) {
          CuspRecord r = make_record(g, p, word_from_applied(applied), d);
          auto it = index.find(r.point);
          if (it != index.end()) {
            if (out.records[it->second].parity_tag != r.parity_tag) ++out.parity_conflicts;
            return true;
          }
          auto [lit, inserted] = layer.try_emplace(r.point, r);
          if (!inserted) {
            if (lit->second.parity_tag != r.parity_tag) ++out.parity_conflicts;
            if (r.witness < lit->second.witness) lit->second = std::move(r);
          }
          return true;
        });
    out.nodes += w.nodes;
    std::vector<CuspRecord> fresh;
    fresh.reserve(layer.size());
    for (auto& [_, r] : layer) fresh.push_back(std::move(r));
    std::sort(fresh.begin(), fresh.end(), record_before);
    for (const CuspRecord& r : fresh) note(r);
    if (w.exhausted) {
      out.truncated = true;
      break;
    }
    if (cache_file) {
      std::vector<CacheRecord> rows;
      rows.reserve(fresh.size());
      for (const CuspRecord& r : fresh) rows.push_back(CacheRecord{r.point, r.witness, r.depth, r.parity_tag});
      append_orbit_layer(*cache_file, g, d, rows);
    }
  }
  std::stable_sort(out.records.begin(), out.records.end(), record_before);
  return out;
}

bool verify_record(const FrickeGroup& g, const CuspRecord& r) {
  const ProjPoint exact = word_matrix(g, r.witness).apply(ProjPoint::infinity());
  if (r.parity_tag != r.witness.parity()) return false;
  if (exact.is_infinity()) return r.point.is_infinity() && r.offset == 0;
  if (r.point.is_infinity()) return false;
  const Rational rep = r.point.to_rational();
  if (rep.sign() < 0 || !(rep < g.translation())) return false;
  return translate(r.point, g.translation(), r.offset) == exact;
}

// ---- cusp test -----------------------------------------------------------------

namespace {

// Translation words past this exponent are not followed.
constexpr long kMaxShift = 256;

struct SearchNode {
  Integer den;
  unsigned depth;
  Word word;  // word * x = point
  ProjPoint point;
};

struct LaterNode {
  bool operator()(const SearchNode& l, const SearchNode& r) const {
    if (l.den != r.den) return l.den > r.den;
    if (l.depth != r.depth) return l.depth > r.depth;
    return l.word > r.word;
  }
};

// Shift k with point + k*s in [-s/2, s/2).
Integer symmetric_shift(const Rational& y, const Rational& s) {
  const Rational half = s / Rational(2);
  return -((y + half) / s).floor();
}

}  // namespace

CuspTestResult cusp_test(const FrickeGroup& g, const ProjPoint& x, unsigned depth, std::size_t budget) {
  if (x.is_infinity()) return CuspResult{Word()};
  const Rational& s = g.translation();
  const Word& T = g.parabolic_word();  // x -> x - s

  // T^{-k} moves y to y + k s.
  auto centred = [&](const ProjPoint& y, const Word& w) -> std::optional<std::pair<ProjPoint, Word>> {
    const Integer k = symmetric_shift(y.to_rational(), s);
    if (abs(k) > kMaxShift) return std::nullopt;
    return std::pair{translate(y, s, k), T.power(-k.get_si()) * w};
  };

  std::priority_queue<SearchNode, std::vector<SearchNode>, LaterNode> open;
  std::map<ProjPoint, Word> seen;
  std::size_t nodes = 0;

  if (auto c = centred(x, Word())) {
    seen.emplace(c->first, c->second);
    open.push(SearchNode{c->first.c(), 0, c->second, c->first});
  }

  while (!open.empty() && nodes < budget) {
    SearchNode n = open.top();
    open.pop();
    ++nodes;
    const Rational y = n.point.to_rational();

    // Some letter sends a translate y + j s of y to infinity.
    for (Letter l : group::kLetters) {
      const ProjPoint pole = g.letter_matrix(group::inverse(l)).apply(ProjPoint::infinity());
      const Rational j = (pole.to_rational() - y) / s;
      if (!j.is_integer() || abs(j.num()) > kMaxShift) continue;
      const Word to_inf = Word({l}) * T.power(-j.num().get_si()) * n.word;
      return CuspResult{to_inf.inverse()};
    }
    if (n.depth >= depth) continue;

    for (Letter l : group::kLetters) {
      const ProjPoint z = g.letter_matrix(l).apply(n.point);
      auto c = centred(z, n.word.prepend(l));
      if (!c) continue;
      auto [it, inserted] = seen.try_emplace(c->first, c->second);
      if (!inserted) {
        // Both words carry x to the same point; their quotient fixes x.
        const Word fix = it->second.inverse() * c->second;
        if (!fix.empty() && group::classify_element(word_matrix(g, fix)) == group::ElementClass::Hyperbolic)
          return SpecialResult{fix};
        continue;
      }
      open.push(SearchNode{c->first.c(), n.depth + 1, c->second, c->first});
    }
  }
  return UnknownResult{depth, nodes};
}

bool verify_cusp_test(const FrickeGroup& g, const ProjPoint& x, const CuspTestResult& r) {
  if (const auto* c = std::get_if<CuspResult>(&r))
    return word_matrix(g, c->witness).apply(ProjPoint::infinity()) == x;
  if (const auto* sp = std::get_if<SpecialResult>(&r)) {
    const ProjMatrix m = word_matrix(g, sp->witness);
    return group::classify_element(m) == group::ElementClass::Hyperbolic && m.apply(x) == x;
  }
  return true;
}

// ---- special points ------------------------------------------------------------

std::vector<SpecialPoint> special_point_scan(const FrickeGroup& g, unsigned max_length, bool stop_at_first_length) {
  if (max_length < 1) throw ParameterError("special point scan needs a length bound >= 1");
  std::vector<SpecialPoint> out;
  std::set<ProjPoint> seen;
  std::size_t found_length = 0;
  group::for_each_word(g, max_length, [&](const Word& w, const ProjMatrix& m) {
    if (stop_at_first_length && found_length != 0 && w.size() > found_length) return false;
    if (w.size() >= 2 && w.front() == group::inverse(w.back())) return true;  // not cyclically reduced
    if (group::classify_element(m) != group::ElementClass::Hyperbolic) return true;
    const auto fp = group::fixed_points(m);
    const auto* pair = std::get_if<group::RationalPair>(&fp);
    if (pair == nullptr) return true;
    for (const ProjPoint* p : {&pair->first, &pair->second}) {
      if (p->is_infinity() || !seen.insert(*p).second) continue;
      out.push_back(SpecialPoint{*p, w});
      found_length = w.size();
    }
    return true;
  });
  return out;
}

bool verify_special_point(const FrickeGroup& g, const SpecialPoint& s) {
  const ProjMatrix m = word_matrix(g, s.word);
  return group::classify_element(m) == group::ElementClass::Hyperbolic && m.apply(s.point) == s.point;
}

// ---- probes ------------------------------------------------------------------------

std::optional<Integer> solve_ball_translation(const Rational& c0, const Rational& s, const Rational& x,
                                              const Rational& m) {
  if (m.is_zero()) throw ParameterError("ball modulus must be nonzero");
  // c0 + k s - x in mZ  <=>  e/f + k a/b in Z, with a/b = s/m and e/f = (c0 - x)/m.
  const Rational q = s / m;
  const Rational r = (c0 - x) / m;
  const Integer& b = q.den();
  if (b % r.den() != 0) return std::nullopt;
  if (b == 1) return Integer(0);
  Integer inv;
  mpz_invert(inv.get_mpz_t(), q.num().get_mpz_t(), b.get_mpz_t());
  Integer k = -r.num() * (b / r.den()) * inv;
  mpz_fdiv_r(k.get_mpz_t(), k.get_mpz_t(), b.get_mpz_t());
  return k;
}

std::optional<Integer> solve_padic_translation(const Rational& c0, const Rational& s, const Rational& y,
                                               const std::vector<PadicTarget>& targets) {
  std::map<long, unsigned> precision;
  for (const PadicTarget& t : targets) precision[t.p] = std::max(precision[t.p], t.precision);

  // v_p(c0 + k s - y) = v_p(s) + v_p(k - w) with w = (y - c0)/s.
  const Rational w = (y - c0) / s;
  Integer k = 0;
  Integer modulus = 1;
  for (const auto& [p, prec] : precision) {
    const long need = static_cast<long>(prec) - exactnum::vp(s, p);
    const long vw = w.is_zero() ? need : exactnum::vp(w, p);
    if (need <= 0) {
      if (vw < need) return std::nullopt;
      continue;
    }
    if (vw < 0) return std::nullopt;
    const Integer pk = exactnum::ipow(p, static_cast<unsigned>(need));
    const Integer r = w.is_zero() ? Integer(0) : exactnum::residue_mod_pk(w, p, static_cast<unsigned>(need));
    // Lift k (mod modulus) to the solution of k = r (mod pk).
    Integer inv;
    mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), pk.get_mpz_t());
    Integer step = (r - k) * inv;
    mpz_fdiv_r(step.get_mpz_t(), step.get_mpz_t(), pk.get_mpz_t());
    k += modulus * step;
    modulus *= pk;
  }
  return k;
}

namespace {

void check_depth_budget(std::size_t budget) {
  if (budget == 0) throw ParameterError("node budget must be positive");
}

// Budget for the preliminary check of the ball centre itself.
constexpr std::size_t kCentreBudget = 20'000;

template <typename Solve>
ProbeResult probe(const FrickeGroup& g, const Rational& centre, unsigned depth, std::size_t budget, Solve&& solve) {
  check_depth_budget(budget);
  ProbeResult out;
  out.depth = depth;

  // The centre lies in its own ball.
  const CuspTestResult direct = cusp_test(g, ProjPoint(centre), depth, std::min(budget, kCentreBudget));
  if (const auto* c = std::get_if<CuspResult>(&direct)) {
    out.hit = ProbeHit{centre, Integer(0), c->witness, static_cast<unsigned>(c->witness.size())};
    return out;
  }
  if (const auto* u = std::get_if<UnknownResult>(&direct)) out.nodes += u->nodes;

  for (unsigned d = 1; d <= depth && !out.hit; ++d) {
    const WalkOutcome w = walk_exact_depth(
        g, ProjPoint::infinity(), d, budget > out.nodes ? budget - out.nodes : 0,
        [&](const ProjPoint& p, const std::vector<Letter>& applied) {
          if (p.is_infinity()) return true;
          const Rational c0 = p.to_rational();
          std::optional<Integer> k = solve(c0);
          if (!k) return true;
          out.hit = ProbeHit{c0 + Rational(*k) * g.translation(), *k, word_from_applied(applied), d};
          return false;
        });
    out.nodes += w.nodes;
    if (w.exhausted) {
      out.truncated = true;
      break;
    }
  }
  return out;
}

}  // namespace

ProbeResult adelic_probe(const FrickeGroup& g, const Rational& x, const Rational& m, unsigned depth,
                         std::size_t budget) {
  if (m.is_zero()) throw ParameterError("ball modulus must be nonzero");
  return probe(g, x, depth, budget,
               [&](const Rational& c0) { return solve_ball_translation(c0, g.translation(), x, m); });
}

ProbeResult padic_probe(const FrickeGroup& g, const Rational& y, const std::vector<PadicTarget>& targets,
                        unsigned depth, std::size_t budget) {
  if (targets.empty()) throw ParameterError("p-adic probe needs at least one target");
  for (const PadicTarget& t : targets) {
    if (!exactnum::is_prime(t.p)) throw ParameterError("not a prime: " + std::to_string(t.p));
    if (t.precision < 1) throw ParameterError("target precision must be at least 1");
  }
  return probe(g, y, depth, budget,
               [&](const Rational& c0) { return solve_padic_translation(c0, g.translation(), y, targets); });
}

bool verify_probe_hit(const FrickeGroup& g, const ProbeHit& hit) {
  const ProjPoint base = word_matrix(g, hit.witness).apply(ProjPoint::infinity());
  if (base.is_infinity()) return false;
  return base.to_rational() + Rational(hit.k) * g.translation() == hit.cusp;
}

}  // namespace fricke::orbit
