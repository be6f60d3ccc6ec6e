#pragma once

// Append-only orbit cache. One file per group inside the cache directory:
//
//   # fricke-orbit-cache v1
//   # group u2=<u2> twot=<2t>
//   <point>\t<word>\t<depth>\t<parity>
//   ...
//   # layer <d> complete
//
// Points print as "a/c" or "inf", words over {A,a,B,b} ("1" for the empty word),
// parity as "g1,g2". Records after the last completion marker are ignored on load.

#include "fricke/group.hpp"

#include <filesystem>
#include <vector>

namespace fricke::orbit {

struct CacheRecord {
  exactnum::ProjPoint point;
  group::Word word;
  unsigned depth = 0;
  group::Parity parity;
};

struct LoadedCache {
  unsigned complete_depth = 0;
  bool present = false;
  std::vector<CacheRecord> records;
};

std::filesystem::path cache_file_for(const group::FrickeGroup& g, const std::filesystem::path& dir);

/// Missing file -> empty result. A header naming a different group -> ParameterError.
LoadedCache load_orbit_cache(const std::filesystem::path& file, const group::FrickeGroup& g);

/// Appends one finished layer (and its completion marker), writing the header first
/// when the file is new.
void append_orbit_layer(const std::filesystem::path& file, const group::FrickeGroup& g, unsigned depth,
                        const std::vector<CacheRecord>& records);

}  // namespace fricke::orbit
