#pragma once

// Cusp orbit enumeration, cusp/special tests and density probes.
//
// All searches are three-valued: a positive answer (Cusp, Special, Found) carries
// a witness that re-verifies by direct matrix evaluation; a negative answer only
// says that the search budget ran out.

#include "fricke/group.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fricke::orbit {

using exactnum::Integer;
using exactnum::ProjPoint;
using exactnum::Rational;
using group::FrickeGroup;
using group::Letter;
using group::Parity;
using group::ProjMatrix;
using group::Word;

inline constexpr std::size_t kDefaultNodeBudget = 20'000'000;

/// x = point + offset * s with point in [0, s) (s > 0); infinity maps to itself with offset 0.
struct TranslationReduced {
  ProjPoint point;
  Integer offset;
};
TranslationReduced reduce_translation(const ProjPoint& x, const Rational& s);
/// x + k * s.
ProjPoint translate(const ProjPoint& x, const Rational& s, const Integer& k);

/// word * infinity = point + offset * 2t; parity_tag = parity(word).
struct CuspRecord {
  ProjPoint point;
  Integer offset;
  Word witness;
  unsigned depth = 0;
  Parity parity_tag;
};

struct CuspBfsResult {
  std::vector<CuspRecord> records;  // one per translation class, sorted by (depth, word)
  bool truncated = false;
  std::size_t nodes = 0;             // words evaluated in this run
  std::size_t parity_conflicts = 0;  // translation classes reached with two parities
  unsigned cached_depth = 0;         // layers taken from the cache
};

/// Walks w * seed over every freely reduced word w with |w| == depth, extending
/// words on the left. `visit(point, applied)` receives the letters in the order they
/// were applied (the word is their reverse) and returns false to stop.
struct WalkOutcome {
  std::size_t nodes = 0;
  bool exhausted = false;  // node budget ran out
  bool stopped = false;    // visit returned false
};
template <typename Visit>
WalkOutcome walk_exact_depth(const FrickeGroup& g, const ProjPoint& seed, unsigned depth, std::size_t budget,
                             Visit&& visit);

/// Word whose matrix maps the seed to the walked point.
Word word_from_applied(const std::vector<Letter>& applied);

/// Breadth-first closure of {infinity} under the generator letters up to `depth`,
/// one record per class modulo the translation 2t. With a cache directory, finished
/// layers are appended to an orbit cache file and reused on later runs.
CuspBfsResult cusp_bfs(const FrickeGroup& g, unsigned depth, std::size_t budget = kDefaultNodeBudget,
                       const std::optional<std::filesystem::path>& cache_dir = std::nullopt);

/// Re-evaluates the witness of a record.
bool verify_record(const FrickeGroup& g, const CuspRecord& r);

// ---- cusp test --------------------------------------------------------------

struct CuspResult {
  Word witness;  // witness * infinity = x
};
struct SpecialResult {
  Word witness;  // hyperbolic, witness * x = x
};
struct UnknownResult {
  unsigned depth = 0;
  std::size_t nodes = 0;
};
using CuspTestResult = std::variant<CuspResult, SpecialResult, UnknownResult>;

/// Best-first descent from x (smallest denominator first, then depth, then word).
CuspTestResult cusp_test(const FrickeGroup& g, const ProjPoint& x, unsigned depth,
                         std::size_t budget = 200'000);

bool verify_cusp_test(const FrickeGroup& g, const ProjPoint& x, const CuspTestResult& r);

// ---- special points -----------------------------------------------------------

struct SpecialPoint {
  ProjPoint point;
  Word word;
};

/// Rational fixed points of hyperbolic cyclically reduced words of length <= max_length,
/// deduplicated by point, in order of discovery (length-then-lex). With
/// stop_at_first_length the scan ends after the first length that yields any point.
std::vector<SpecialPoint> special_point_scan(const FrickeGroup& g, unsigned max_length,
                                             bool stop_at_first_length = false);

bool verify_special_point(const FrickeGroup& g, const SpecialPoint& s);

// ---- density probes -------------------------------------------------------------

struct ProbeHit {
  Rational cusp;   // = witness * infinity + k * 2t
  Integer k;
  Word witness;
  unsigned depth = 0;
};
struct ProbeResult {
  std::optional<ProbeHit> hit;  // nullopt = NotFoundAtDepth
  unsigned depth = 0;           // depth searched
  std::size_t nodes = 0;
  bool truncated = false;
};

/// Looks for a cusp in the adelic ball trace x + mZ.
ProbeResult adelic_probe(const FrickeGroup& g, const Rational& x, const Rational& m, unsigned depth,
                         std::size_t budget = kDefaultNodeBudget);

struct PadicTarget {
  long p = 2;
  unsigned precision = 1;
};

/// Looks for a cusp c with v_p(c - y) >= precision for every target.
ProbeResult padic_probe(const FrickeGroup& g, const Rational& y, const std::vector<PadicTarget>& targets,
                        unsigned depth, std::size_t budget = kDefaultNodeBudget);

/// Smallest k >= 0 with c0 + k s in x + mZ, if any.
std::optional<Integer> solve_ball_translation(const Rational& c0, const Rational& s, const Rational& x,
                                              const Rational& m);
/// Smallest k >= 0 with v_p(c0 + k s - y) >= precision for all targets, if any.
std::optional<Integer> solve_padic_translation(const Rational& c0, const Rational& s, const Rational& y,
                                               const std::vector<PadicTarget>& targets);

bool verify_probe_hit(const FrickeGroup& g, const ProbeHit& hit);

}  // namespace fricke::orbit

#include "fricke/detail/orbit_walk.hpp"
