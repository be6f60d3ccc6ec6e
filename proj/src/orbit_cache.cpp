#include "fricke/orbit_cache.hpp"

#include <fstream>
#include <sstream>

namespace fricke::orbit {

using exactnum::ParameterError;

namespace {

constexpr const char* kMagic = "# fricke-orbit-cache v1";

std::string group_line(const group::FrickeGroup& g) {
  return "# group u2=" + g.u2().str() + " twot=" + g.two_t().str();
}

std::string file_safe(std::string s) {
  for (char& ch : s) {
    if (ch == '/') ch = '_';
    else if (ch == '-') ch = 'm';
  }
  return s;
}

}  // namespace

std::filesystem::path cache_file_for(const group::FrickeGroup& g, const std::filesystem::path& dir) {
  return dir / ("orbit_u2_" + file_safe(g.u2().str()) + "_twot_" + file_safe(g.two_t().str()) + ".tsv");
}

LoadedCache load_orbit_cache(const std::filesystem::path& file, const group::FrickeGroup& g) {
  LoadedCache out;
  std::ifstream in(file);
  if (!in) return out;
  out.present = true;

  std::string line;
  if (!std::getline(in, line)) return out;  // empty file: header not yet written
  if (line != kMagic) throw ParameterError("not an orbit cache file: " + file.string());
  if (!std::getline(in, line) || line != group_line(g))
    throw ParameterError("orbit cache " + file.string() + " belongs to another group");

  std::vector<CacheRecord> pending;
  const std::string marker = "# layer ";
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind(marker, 0) == 0) {
      std::istringstream ls(line.substr(marker.size()));
      unsigned d = 0;
      std::string word;
      if (!(ls >> d >> word) || word != "complete" || d != out.complete_depth + 1)
        throw ParameterError("malformed layer marker in orbit cache: '" + line + "'");
      out.complete_depth = d;
      for (auto& r : pending) out.records.push_back(std::move(r));
      pending.clear();
      continue;
    }
    if (line[0] == '#') continue;
    std::istringstream ls(line);
    std::string point, word, depth, parity;
    if (!std::getline(ls, point, '\t') || !std::getline(ls, word, '\t') || !std::getline(ls, depth, '\t') ||
        !std::getline(ls, parity))
      throw ParameterError("malformed orbit cache record: '" + line + "'");
    pending.push_back(CacheRecord{exactnum::ProjPoint::parse(point), group::Word::parse(word),
                                  static_cast<unsigned>(std::stoul(depth)), group::Parity::parse(parity)});
  }
  return out;
}

void append_orbit_layer(const std::filesystem::path& file, const group::FrickeGroup& g, unsigned depth,
                        const std::vector<CacheRecord>& records) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  const bool fresh = !std::filesystem::exists(file) || std::filesystem::file_size(file) == 0;
  std::ofstream out(file, std::ios::app);
  if (!out) throw ParameterError("cannot write orbit cache " + file.string());
  if (fresh) out << kMagic << '\n' << group_line(g) << '\n';
  for (const CacheRecord& r : records) {
    out << r.point.str() << '\t' << (r.word.empty() ? std::string("1") : r.word.str()) << '\t' << r.depth << '\t'
        << r.parity.str() << '\n';
  }
  out << "# layer " << depth << " complete\n";
  if (!out) throw ParameterError("write to orbit cache " + file.string() + " failed");
}

}  // namespace fricke::orbit
