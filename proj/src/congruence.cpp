#include "fricke/congruence.hpp"

#include "fricke/orbitsearch.hpp"

#include <memory>
#include <mutex>
#include <numeric>
#include <set>

namespace fricke::congruence {

using exactnum::ParameterError;

std::string to_string(Flavor f) { return f == Flavor::Gamma ? "gamma" : "gamma0"; }

Flavor flavor_from_string(const std::string& s) {
  if (s == "gamma") return Flavor::Gamma;
  if (s == "gamma0") return Flavor::Gamma0;
  throw ParameterError("unknown flavor '" + s + "' (expected gamma or gamma0)");
}

std::string OrbitLabel::str() const {
  const std::string mod = " mod " + std::to_string(level);
  switch (kind) {
    case Kind::GammaPair: return "(" + std::to_string(a) + "," + std::to_string(c) + ")" + mod;
    case Kind::Gamma0Orbit: return "orbit#" + std::to_string(orbit) + mod;
    case Kind::Cell: return "(" + std::to_string(a) + ":" + std::to_string(c) + ")" + mod;
  }
  return "?";
}

namespace {

void check_level(long N) {
  if (N < 2) throw ParameterError("congruence level must be at least 2 (got " + std::to_string(N) + ")");
}

void check_table_level(long N) {
  check_level(N);
  if (N > kMaxTableLevel)
    throw ParameterError("congruence level " + std::to_string(N) + " exceeds the table limit " +
                         std::to_string(kMaxTableLevel));
}

std::pair<long, long> reduce_mod(const ProjPoint& x, long N) {
  const auto m = static_cast<unsigned long>(N);
  Integer a, c;
  mpz_fdiv_r_ui(a.get_mpz_t(), x.a().get_mpz_t(), m);
  mpz_fdiv_r_ui(c.get_mpz_t(), x.c().get_mpz_t(), m);
  return {a.get_si(), c.get_si()};
}

std::vector<long> units_mod(long N) {
  std::vector<long> u;
  for (long x = 1; x < N; ++x) {
    if (std::gcd(x, N) == 1) u.push_back(x);
  }
  return u;
}

long inverse_mod(long x, long N) {
  Integer r;
  const Integer xx = x, nn = N;
  mpz_invert(r.get_mpz_t(), xx.get_mpz_t(), nn.get_mpz_t());
  return r.get_si();
}

OrbitLabel gamma_pair(long a, long c, long N) {
  const long na = (N - a) % N, nc = (N - c) % N;
  OrbitLabel l;
  l.kind = OrbitLabel::Kind::GammaPair;
  l.level = N;
  if (std::pair{na, nc} < std::pair{a, c}) {
    l.a = na;
    l.c = nc;
  } else {
    l.a = a;
    l.c = c;
  }
  return l;
}

struct LevelTable {
  long N = 0;
  std::vector<std::int32_t> cell_of;  // a * N + c -> cell, -1 if gcd(a, c, N) > 1
  std::vector<std::pair<long, long>> cell_rep;
  std::vector<std::int32_t> orbit_of;  // cell -> orbit
  std::vector<std::vector<std::int32_t>> orbit_cells;

  std::int32_t cell(long a, long c) const { return cell_of[static_cast<std::size_t>(a * N + c)]; }
};

std::int32_t find_root(std::vector<std::int32_t>& parent, std::int32_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

std::unique_ptr<LevelTable> build_table(long N) {
  auto t = std::make_unique<LevelTable>();
  t->N = N;
  t->cell_of.assign(static_cast<std::size_t>(N * N), -1);
  const std::vector<long> units = units_mod(N);

  // Cells: scan pairs in lexicographic order, so the first pair met is the least.
  for (long a = 0; a < N; ++a) {
    for (long c = 0; c < N; ++c) {
      if (std::gcd(std::gcd(a, c), N) != 1 || t->cell(a, c) >= 0) continue;
      const auto id = static_cast<std::int32_t>(t->cell_rep.size());
      t->cell_rep.emplace_back(a, c);
      for (long u : units) t->cell_of[static_cast<std::size_t>(((u * a) % N) * N + (u * c) % N)] = id;
    }
  }

  // Orbits of the lower-triangular group, generated by (x : y) -> (x : x + y) and
  // diag(u, u^-1).
  const auto n_cells = static_cast<std::int32_t>(t->cell_rep.size());
  std::vector<std::int32_t> parent(static_cast<std::size_t>(n_cells));
  std::iota(parent.begin(), parent.end(), 0);
  auto unite = [&](std::int32_t x, std::int32_t y) {
    x = find_root(parent, x);
    y = find_root(parent, y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };
  for (std::int32_t id = 0; id < n_cells; ++id) {
    const auto [x, y] = t->cell_rep[static_cast<std::size_t>(id)];
    unite(id, t->cell(x, (x + y) % N));
    for (long u : units) unite(id, t->cell((u * x) % N, (inverse_mod(u, N) * y) % N));
  }
  t->orbit_of.assign(static_cast<std::size_t>(n_cells), -1);
  std::vector<std::int32_t> orbit_of_root(static_cast<std::size_t>(n_cells), -1);
  for (std::int32_t id = 0; id < n_cells; ++id) {
    const std::int32_t r = find_root(parent, id);
    if (orbit_of_root[r] < 0) {
      orbit_of_root[r] = static_cast<std::int32_t>(t->orbit_cells.size());
      t->orbit_cells.emplace_back();
    }
    t->orbit_of[id] = orbit_of_root[r];
    t->orbit_cells[static_cast<std::size_t>(orbit_of_root[r])].push_back(id);
  }
  return t;
}

const LevelTable& level_table(long N) {
  static std::mutex mu;
  static std::map<long, std::unique_ptr<LevelTable>> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = tables[N];
  if (!slot) slot = build_table(N);
  return *slot;
}

OrbitLabel cell_from_index(const LevelTable& t, std::int32_t id) {
  OrbitLabel l;
  l.kind = OrbitLabel::Kind::Cell;
  l.level = t.N;
  l.a = t.cell_rep[static_cast<std::size_t>(id)].first;
  l.c = t.cell_rep[static_cast<std::size_t>(id)].second;
  return l;
}

OrbitLabel orbit_from_index(const LevelTable& t, std::int32_t orbit) {
  OrbitLabel l = cell_from_index(t, t.orbit_cells[static_cast<std::size_t>(orbit)].front());
  l.kind = OrbitLabel::Kind::Gamma0Orbit;
  l.orbit = orbit;
  return l;
}

}  // namespace

OrbitLabel gamma_label(const ProjPoint& x, long N) {
  check_level(N);
  const auto [a, c] = reduce_mod(x, N);
  return gamma_pair(a, c, N);
}

OrbitLabel cell_label(const ProjPoint& x, long N) {
  check_table_level(N);
  const LevelTable& t = level_table(N);
  const auto [a, c] = reduce_mod(x, N);
  return cell_from_index(t, t.cell(a, c));
}

OrbitLabel gamma0_label(const ProjPoint& x, long N) {
  check_table_level(N);
  const LevelTable& t = level_table(N);
  const auto [a, c] = reduce_mod(x, N);
  return orbit_from_index(t, t.orbit_of[static_cast<std::size_t>(t.cell(a, c))]);
}

std::vector<OrbitLabel> enumerate_labels(Flavor flavor, long N) {
  check_table_level(N);
  std::vector<OrbitLabel> out;
  if (flavor == Flavor::Gamma) {
    std::set<OrbitLabel> labels;
    for (long a = 0; a < N; ++a) {
      for (long c = 0; c < N; ++c) {
        if (std::gcd(std::gcd(a, c), N) == 1) labels.insert(gamma_pair(a, c, N));
      }
    }
    out.assign(labels.begin(), labels.end());
    return out;
  }
  const LevelTable& t = level_table(N);
  for (std::size_t k = 0; k < t.orbit_cells.size(); ++k) out.push_back(orbit_from_index(t, static_cast<std::int32_t>(k)));
  return out;
}

std::vector<OrbitLabel> enumerate_cells(long N) {
  check_table_level(N);
  const LevelTable& t = level_table(N);
  std::vector<OrbitLabel> out;
  for (std::size_t id = 0; id < t.cell_rep.size(); ++id) out.push_back(cell_from_index(t, static_cast<std::int32_t>(id)));
  return out;
}

std::vector<OrbitLabel> orbit_members(const OrbitLabel& orbit) {
  if (orbit.kind != OrbitLabel::Kind::Gamma0Orbit) throw ParameterError("not a Gamma0 orbit label");
  check_table_level(orbit.level);
  const LevelTable& t = level_table(orbit.level);
  if (orbit.orbit < 0 || static_cast<std::size_t>(orbit.orbit) >= t.orbit_cells.size())
    throw ParameterError("no such orbit: " + orbit.str());
  std::vector<OrbitLabel> out;
  for (std::int32_t id : t.orbit_cells[static_cast<std::size_t>(orbit.orbit)]) out.push_back(cell_from_index(t, id));
  return out;
}

Integer gamma_label_count(long N) {
  check_level(N);
  // N^2 prod (1 - p^-2) = prod p^(2e-2) (p^2 - 1).
  Integer count = 1;
  for (long p : exactnum::prime_divisors(Integer(N))) {
    const long e = exactnum::vp(Integer(N), p);
    count *= exactnum::ipow(p, static_cast<unsigned>(2 * e - 2)) * (Integer(p) * p - 1);
  }
  if (N > 2) count /= 2;
  return count;
}

Integer translate_label_period(const ProjPoint& x, const Rational& s, long L) {
  check_level(L);
  if (x.is_infinity()) return 1;
  if (s.is_integer()) {
    // (a + k n c : c): the numerator moves by n c per step.
    Integer step = s.num() * x.c();
    Integer g;
    const Integer ll = L;
    mpz_gcd(g.get_mpz_t(), step.get_mpz_t(), ll.get_mpz_t());
    return ll / g;
  }
  // x + k s = (a d + k n c) / (c d). The common factor of numerator and denominator only
  // involves primes of d and is fixed by k mod D, D the d-primary part of c d.
  const Integer& d = s.den();
  Integer M = x.c() * d;
  Integer D = 1;
  for (long p : exactnum::prime_divisors(d)) D *= exactnum::ipow(p, static_cast<unsigned>(exactnum::vp(M, p)));
  return D * L;
}

// ---- miss scan ---------------------------------------------------------------------

namespace {

// Translates examined per cusp class before the report is flagged as truncated.
constexpr unsigned long kMaxTranslates = 1UL << 20;

}  // namespace

MissReport miss_scan(const group::FrickeGroup& g, Flavor flavor, long N, unsigned j, unsigned depth,
                     std::size_t budget) {
  check_level(N);
  if (j < 1) throw ParameterError("level exponent j must be at least 1");
  const Integer big_level = exactnum::ipow(N, j);
  if (big_level > kMaxTableLevel)
    throw ParameterError("level " + big_level.get_str() + " exceeds the table limit " +
                         std::to_string(kMaxTableLevel));
  const long L = big_level.get_si();

  MissReport r;
  r.u2 = g.u2();
  r.two_t = g.two_t();
  r.flavor = flavor;
  r.N = N;
  r.j = j;
  r.level = L;
  r.depth = depth;

  const std::vector<OrbitLabel> all = flavor == Flavor::Gamma ? enumerate_labels(Flavor::Gamma, L) : enumerate_cells(L);
  const LevelTable* table = flavor == Flavor::Gamma0 ? &level_table(L) : nullptr;
  auto label_of = [&](long a, long c) {
    return table != nullptr ? cell_from_index(*table, table->cell(a, c)) : gamma_pair(a, c, L);
  };

  const Rational& s = g.translation();
  const bool integral_shift = s.is_integer();
  // With 2t integral, x + k 2t = (a + k 2t c : c) stays reduced, so the translate labels
  // depend only on (a, c) mod L. Otherwise classes modulo 2t are tracked exactly.
  std::vector<bool> seen_residue(integral_shift ? static_cast<std::size_t>(L * L) : 0);
  std::set<ProjPoint> classes;
  std::size_t n_classes = 0;
  long shift_mod = 0;
  if (integral_shift) {
    Integer sm;
    mpz_fdiv_r_ui(sm.get_mpz_t(), s.num().get_mpz_t(), static_cast<unsigned long>(L));
    shift_mod = sm.get_si();
  }

  // Returns false once every label has been hit.
  auto process = [&](const ProjPoint& p, const std::vector<group::Letter>& applied) {
    if (integral_shift) {
      const auto [a, c] = reduce_mod(p, L);
      const auto key = static_cast<std::size_t>(a * L + c);
      if (seen_residue[key]) return true;
      seen_residue[key] = true;
      ++n_classes;
      const group::Word w = orbit::word_from_applied(applied);
      const long step = (shift_mod * c) % L;
      const long n = L / std::gcd(step, L);
      long ak = a;
      for (long k = 0; k < n; ++k, ak = (ak + step) % L) {
        const OrbitLabel l = label_of(ak, c);
        if (r.hit.count(l) == 0) r.hit.emplace(l, HitWitness{orbit::translate(p, s, Integer(k)), w, Integer(k)});
      }
      return r.hit.size() < all.size();
    }
    const orbit::TranslationReduced red = orbit::reduce_translation(p, s);
    if (!classes.insert(red.point).second) return true;
    ++n_classes;
    const group::Word w = orbit::word_from_applied(applied);
    Integer period = translate_label_period(red.point, s, L);
    if (period > kMaxTranslates) {
      r.truncated = true;
      period = kMaxTranslates;
    }
    const unsigned long n = period.get_ui();
    for (unsigned long k = 0; k < n; ++k) {
      const ProjPoint xk = orbit::translate(red.point, s, Integer(k));
      const auto [a, c] = reduce_mod(xk, L);
      const OrbitLabel l = label_of(a, c);
      if (r.hit.count(l) == 0) r.hit.emplace(l, HitWitness{xk, w, Integer(k) - red.offset});
    }
    return r.hit.size() < all.size();
  };

  bool done = !process(ProjPoint::infinity(), {});
  for (unsigned d = 1; d <= depth && !done; ++d) {
    const orbit::WalkOutcome w = orbit::walk_exact_depth(
        g, ProjPoint::infinity(), d, budget > r.nodes ? budget - r.nodes : 0,
        [&](const ProjPoint& p, const std::vector<group::Letter>& applied) { return process(p, applied); });
    r.nodes += w.nodes;
    if (w.stopped) done = true;
    if (w.exhausted) {
      r.truncated = true;
      break;
    }
  }
  r.classes = n_classes;
  for (const OrbitLabel& l : all) {
    if (r.hit.count(l) == 0) r.unhit.push_back(l);
  }
  return r;
}

bool verify_hit(const group::FrickeGroup& g, const MissReport& r, const OrbitLabel& label) {
  auto it = r.hit.find(label);
  if (it == r.hit.end()) return false;
  const HitWitness& h = it->second;
  const ProjPoint base = group::word_matrix(g, h.word).apply(ProjPoint::infinity());
  if (orbit::translate(base, g.translation(), h.k) != h.cusp) return false;
  const OrbitLabel got = r.flavor == Flavor::Gamma ? gamma_label(h.cusp, r.level) : cell_label(h.cusp, r.level);
  return got == label;
}

}  // namespace fricke::congruence
