#pragma once

// Orbit labels of P^1(Q) under Gamma(N) and Gamma^0(N), and scans of which labels
// the cusp set of a group reaches.
//
// Three kinds of label:
//   GammaPair    +-(a mod N, c mod N), lexicographically least sign choice;
//   Gamma0Orbit  orbit of (a : c) in P^1(Z/N) under matrices lower-triangular mod N,
//                named by its least point;
//   Cell         the point (a : c) of P^1(Z/N) itself. Cells are the PSL_2(Z)-translates
//                of the Gamma^0(N)-orbit of 0 and form the basis of the topology cut out
//                by the Gamma^0(N^j); Gamma0 miss scans report cells.
//
// Gamma0 orbit and cell tables are built per level on first use (N <= kMaxTableLevel).

#include "fricke/group.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fricke::congruence {

using exactnum::Integer;
using exactnum::ProjPoint;
using exactnum::Rational;

enum class Flavor { Gamma, Gamma0 };
std::string to_string(Flavor f);       // "gamma" / "gamma0"
Flavor flavor_from_string(const std::string& s);

inline constexpr long kMaxTableLevel = 4096;

struct OrbitLabel {
  enum class Kind { GammaPair, Gamma0Orbit, Cell };
  Kind kind = Kind::GammaPair;
  long level = 2;
  long a = 0;  // canonical pair / least point of the orbit / the cell
  long c = 0;
  long orbit = -1;  // Gamma0Orbit: index in enumerate_labels(Gamma0, level)

  /// "(a,c) mod N", "orbit#k mod N" or "(a:c) mod N".
  std::string str() const;
  friend bool operator==(const OrbitLabel&, const OrbitLabel&) = default;
  friend auto operator<=>(const OrbitLabel&, const OrbitLabel&) = default;
};

OrbitLabel gamma_label(const ProjPoint& x, long N);
OrbitLabel gamma0_label(const ProjPoint& x, long N);
OrbitLabel cell_label(const ProjPoint& x, long N);

/// Complete label sets in ascending order. Gamma0 gives orbits.
std::vector<OrbitLabel> enumerate_labels(Flavor flavor, long N);
std::vector<OrbitLabel> enumerate_cells(long N);

/// Points of P^1(Z/N) (as cells) making up a Gamma0 orbit.
std::vector<OrbitLabel> orbit_members(const OrbitLabel& orbit);

/// Number of Gamma(N) labels: N^2 prod_{p | N} (1 - p^-2), halved for N > 2.
Integer gamma_label_count(long N);

/// Period in k of the label of x + k s at level L (k -> k + period fixes it).
Integer translate_label_period(const ProjPoint& x, const Rational& s, long L);

struct HitWitness {
  ProjPoint cusp;   // = word * infinity + k * 2t
  group::Word word;
  Integer k;
};

struct MissReport {
  Rational u2;
  Rational two_t;
  Flavor flavor = Flavor::Gamma;
  long N = 2;
  unsigned j = 1;
  long level = 2;
  unsigned depth = 0;
  std::map<OrbitLabel, HitWitness> hit;
  std::vector<OrbitLabel> unhit;
  bool truncated = false;
  std::size_t nodes = 0;
  std::size_t classes = 0;  // distinct translate families examined
};

/// Labels at level N^j of every cusp w * infinity with |w| <= depth and all its
/// 2t-translates. Gamma flavor uses GammaPair labels, Gamma0 uses cells. Stops early
/// once every label is hit.
MissReport miss_scan(const group::FrickeGroup& g, Flavor flavor, long N, unsigned j, unsigned depth,
                     std::size_t budget = 20'000'000);

/// Re-evaluates a hit witness and checks its label.
bool verify_hit(const group::FrickeGroup& g, const MissReport& r, const OrbitLabel& label);

}  // namespace fricke::congruence
