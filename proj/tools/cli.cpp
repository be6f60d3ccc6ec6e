#include "cli.hpp"

#include "report.hpp"

#include "fricke/congruence.hpp"
#include "fricke/obstruct.hpp"
#include "fricke/orbitsearch.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <set>
#include <sstream>

namespace fricke::cli {

namespace {

using exactnum::ProjPoint;
using exactnum::Rational;
using group::FrickeGroup;

struct Options {
  std::string u2;
  std::string twot;
  std::string format = "human";
  std::uint64_t seed = 42;
  std::string cache;
  std::size_t budget = orbit::kDefaultNodeBudget;

  unsigned special_budget = obstruct::kDefaultSpecialBudget;
  unsigned screen_length = obstruct::kDefaultScreenLength;

  std::string x;
  std::string m;
  std::string y = "0";
  std::string targets;
  unsigned depth = 8;

  std::string flavor = "gamma";
  long N = 2;
  unsigned j = 1;
  unsigned maxlen = 8;
  std::string primes;
  std::string seeds = "inf";
  unsigned mine_depth = 5;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

long parse_long(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != s.size()) throw exactnum::ParameterError("malformed " + what + ": '" + s + "'");
  return v;
}

std::vector<orbit::PadicTarget> parse_targets(const std::string& s) {
  std::vector<orbit::PadicTarget> out;
  for (const std::string& item : split(s, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw exactnum::ParameterError("target must be p:k, got '" + item + "'");
    const long p = parse_long(parts[0], "prime");
    const long k = parse_long(parts[1], "precision");
    if (k < 1) throw exactnum::ParameterError("precision must be at least 1 in '" + item + "'");
    out.push_back(orbit::PadicTarget{p, static_cast<unsigned>(k)});
  }
  if (out.empty()) throw exactnum::ParameterError("no p-adic targets given");
  return out;
}

Json group_json(const FrickeGroup& g) {
  Json j;
  j["name"] = g.name();
  j["u2"] = g.u2().str();
  j["twot"] = g.two_t().str();
  j["t"] = g.t().str();
  j["gen1"] = g.gen1().str();
  j["gen2"] = g.gen2().str();
  Json sp = Json::array();
  for (long p : g.support_primes()) sp.push_back(p);
  j["support_primes"] = sp;
  return j;
}

Json witness_json(const obstruct::Witness& w) {
  Json j;
  j["kind"] = obstruct::to_string(w.kind);
  Json primes = Json::array();
  for (long p : w.primes) primes.push_back(p);
  j["primes"] = primes;
  if (w.branch != 0) j["branch"] = w.branch;
  if (w.clause != 0) j["clause"] = std::string(1, w.clause);
  if (w.predicate) j["predicate"] = w.predicate->str();
  if (w.word) j["word"] = w.word->str();
  if (w.point) j["point"] = w.point->str();
  j["detail"] = w.detail;
  return j;
}

std::string word_text(const group::Word& w) { return w.empty() ? "1" : w.str(); }

// ---- commands -------------------------------------------------------------------------

Report cmd_classify(const FrickeGroup& g, const Options& o) {
  Report r;
  r.command = "classify";
  r.config["special_budget"] = o.special_budget;
  r.config["screen_length"] = o.screen_length;
  const obstruct::Verdict v = obstruct::classify(g, o.special_budget, o.screen_length);
  Json& res = r.result;
  res["conclusion"] = obstruct::to_string(v.conclusion);
  Json screen;
  screen["result"] = v.arithmetic_screen.not_arithmetic ? "NotArithmetic" : "Inconclusive";
  if (v.arithmetic_screen.witness) screen["witness"] = v.arithmetic_screen.witness->str();
  if (v.arithmetic_screen.value) screen["trace_invariant"] = v.arithmetic_screen.value->str();
  screen["words_checked"] = v.arithmetic_screen.words_checked;
  res["arithmetic_screen"] = screen;
  Json primes = Json::array();
  for (long p : v.primes_scanned) primes.push_back(p);
  res["primes_scanned"] = primes;
  res["integer_t_applicable"] = v.integer_t_applicable;
  res["density_all_finite_products"] = v.density_all_finite_products;
  Json ws = Json::array();
  for (const auto& w : v.obstructions) ws.push_back(witness_json(w));
  res["obstructions"] = ws;
  return r;
}

Json probe_json(const orbit::ProbeResult& p) {
  Json j;
  j["status"] = p.hit ? "Found" : "NotFoundAtDepth";
  if (p.hit) {
    j["cusp"] = p.hit->cusp.str();
    j["k"] = p.hit->k.get_str();
    j["witness"] = word_text(p.hit->witness);
    j["witness_depth"] = p.hit->depth;
  }
  j["nodes"] = p.nodes;
  return j;
}

Report cmd_probe_adelic(const FrickeGroup& g, const Options& o) {
  Report r;
  r.command = "probe adelic";
  const Rational x = Rational::parse(o.x);
  const Rational m = Rational::parse(o.m);
  if (m.is_zero()) throw exactnum::ParameterError("modulus m must be nonzero");
  r.config["x"] = x.str();
  r.config["m"] = m.str();
  r.config["depth"] = o.depth;
  r.config["budget"] = o.budget;
  const orbit::ProbeResult p = orbit::adelic_probe(g, x, m, o.depth, o.budget);
  r.result = probe_json(p);
  r.truncated = p.truncated;
  r.exit_code = p.hit ? kExitOk : kExitNotFound;
  return r;
}

Report cmd_probe_padic(const FrickeGroup& g, const Options& o) {
  Report r;
  r.command = "probe padic";
  const Rational y = Rational::parse(o.y);
  const auto targets = parse_targets(o.targets);
  r.config["y"] = y.str();
  Json ts = Json::array();
  for (const auto& t : targets) ts.push_back(std::to_string(t.p) + ":" + std::to_string(t.precision));
  r.config["targets"] = ts;
  r.config["depth"] = o.depth;
  r.config["budget"] = o.budget;
  const orbit::ProbeResult p = orbit::padic_probe(g, y, targets, o.depth, o.budget);
  r.result = probe_json(p);
  r.truncated = p.truncated;
  r.exit_code = p.hit ? kExitOk : kExitNotFound;
  return r;
}

Report cmd_probe_cusp(const FrickeGroup& g, const Options& o) {
  Report r;
  r.command = "probe cusp";
  const ProjPoint x = ProjPoint::parse(o.x);
  r.config["x"] = x.str();
  r.config["depth"] = o.depth;
  r.config["budget"] = o.budget;
  const orbit::CuspTestResult t = orbit::cusp_test(g, x, o.depth, o.budget);
  if (const auto* c = std::get_if<orbit::CuspResult>(&t)) {
    r.result["status"] = "Cusp";
    r.result["witness"] = word_text(c->witness);
  } else if (const auto* s = std::get_if<orbit::SpecialResult>(&t)) {
    r.result["status"] = "Special";
    r.result["witness"] = word_text(s->witness);
  } else {
    const auto& u = std::get<orbit::UnknownResult>(t);
    r.result["status"] = "Unknown";
    r.result["nodes"] = u.nodes;
    r.exit_code = kExitNotFound;
  }
  return r;
}

Report cmd_scan_congruence(const FrickeGroup& g, const Options& o) {
  Report r;
  r.command = "scan congruence";
  const congruence::Flavor flavor = congruence::flavor_from_string(o.flavor);
  r.config["flavor"] = o.flavor;
  r.config["N"] = o.N;
  r.config["j"] = o.j;
  r.config["depth"] = o.depth;
  r.config["budget"] = o.budget;
  const congruence::MissReport m = congruence::miss_scan(g, flavor, o.N, o.j, o.depth, o.budget);
  Json& res = r.result;
  res["level"] = m.level;
  res["label_kind"] = flavor == congruence::Flavor::Gamma ? "gamma pair" : "P1 cell";
  res["labels_total"] = m.hit.size() + m.unhit.size();
  res["hit_count"] = m.hit.size();
  Json unhit = Json::array();
  for (const auto& l : m.unhit) unhit.push_back(l.str());
  res["unhit"] = unhit;
  Json hits = Json::array();
  for (const auto& [label, w] : m.hit) {
    Json h;
    h["label"] = label.str();
    h["cusp"] = w.cusp.str();
    h["word"] = word_text(w.word);
    h["k"] = w.k.get_str();
    hits.push_back(h);
  }
  res["hits"] = hits;
  res["cusp_classes"] = m.classes;
  res["nodes"] = m.nodes;
  r.truncated = m.truncated;
  return r;
}

Report cmd_scan_special(const FrickeGroup& g, const Options& o) {
  Report r;
  r.command = "scan special";
  r.config["maxlen"] = o.maxlen;
  Json pts = Json::array();
  for (const auto& s : orbit::special_point_scan(g, o.maxlen)) {
    Json p;
    p["point"] = s.point.str();
    p["word"] = s.word.str();
    p["length"] = s.word.size();
    pts.push_back(p);
  }
  r.result["count"] = pts.size();
  r.result["points"] = pts;
  return r;
}

Report cmd_scan_mine(const FrickeGroup& g, const Options& o) {
  Report r;
  r.command = "scan mine";
  std::vector<long> primes;
  for (const auto& s : split(o.primes, ',')) primes.push_back(parse_long(s, "prime"));
  std::vector<ProjPoint> seeds;
  for (const auto& s : split(o.seeds, ',')) seeds.push_back(ProjPoint::parse(s));
  Json pj = Json::array();
  for (long p : primes) pj.push_back(p);
  Json sj = Json::array();
  for (const auto& s : seeds) sj.push_back(s.str());
  r.config["primes"] = pj;
  r.config["seeds"] = sj;
  r.config["depth"] = o.mine_depth;
  r.config["samples"] = obstruct::kMineSamples;
  const obstruct::MineResult m = obstruct::mine_invariants(g, seeds, primes, o.mine_depth, o.seed);
  r.result["data_points"] = m.data_points;
  r.result["candidates"] = m.candidates;
  Json ps = Json::array();
  for (const auto& p : m.predicates) {
    Json e;
    e["predicate"] = p.predicate.str();
    e["orbit_data"] = p.orbit_inside ? "inside" : "outside";
    ps.push_back(e);
  }
  r.result["predicates"] = ps;
  return r;
}

Report cmd_scan_orbit(const FrickeGroup& g, const Options& o) {
  Report r;
  r.command = "scan orbit";
  r.config["depth"] = o.depth;
  r.config["budget"] = o.budget;
  r.config["cache"] = o.cache.empty() ? Json(nullptr) : Json(o.cache);
  std::optional<std::filesystem::path> cache;
  if (!o.cache.empty()) cache = o.cache;
  const orbit::CuspBfsResult b = orbit::cusp_bfs(g, o.depth, o.budget, cache);
  std::set<group::Parity> tags;
  Json recs = Json::array();
  for (const auto& c : b.records) {
    tags.insert(c.parity_tag);
    Json e;
    e["point"] = c.point.str();
    e["offset"] = c.offset.get_str();
    e["word"] = word_text(c.witness);
    e["depth"] = c.depth;
    e["parity"] = c.parity_tag.str();
    recs.push_back(e);
  }
  Json tj = Json::array();
  for (const auto& t : tags) tj.push_back(t.str());
  r.result["classes"] = b.records.size();
  r.result["parity_tags"] = tj;
  r.result["parity_conflicts"] = b.parity_conflicts;
  r.result["cached_depth"] = b.cached_depth;
  r.result["records"] = recs;
  r.truncated = b.truncated;
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tools for the Fricke groups Delta(u^2, 2t)", "fricke"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* c) {
    c->add_option("--u2", o.u2, "u^2 as a/c")->required();
    c->add_option("--twot", o.twot, "2t as a/c")->required();
    c->add_option("--format", o.format, "human or structured")
        ->check(CLI::IsMember({"human", "structured"}));
    c->add_option("--seed", o.seed, "random seed (echoed in the report)");
    c->add_option("--budget", o.budget, "node budget for searches");
  };

  std::function<Report(const FrickeGroup&, const Options&)> handler;
  auto bind = [&handler](CLI::App* c, Report (*fn)(const FrickeGroup&, const Options&)) {
    c->callback([&handler, fn] { handler = fn; });
  };

  CLI::App* classify = app.add_subcommand("classify", "obstruction checks and verdict");
  add_common(classify);
  classify->add_option("--special-budget", o.special_budget, "word length bound for the special-point scan");
  classify->add_option("--screen-length", o.screen_length, "word length bound for the arithmeticity screen");
  bind(classify, cmd_classify);

  CLI::App* probe = app.add_subcommand("probe", "density probes");
  probe->require_subcommand(1);
  CLI::App* adelic = probe->add_subcommand("adelic", "cusp in the ball trace x + mZ");
  add_common(adelic);
  adelic->add_option("--x", o.x, "ball centre")->required();
  adelic->add_option("--m", o.m, "ball modulus")->required();
  adelic->add_option("--depth", o.depth, "word length bound");
  bind(adelic, cmd_probe_adelic);
  CLI::App* padic = probe->add_subcommand("padic", "cusp close to y at several primes");
  add_common(padic);
  padic->add_option("--y", o.y, "target point");
  padic->add_option("--targets", o.targets, "p:k[,p:k...]")->required();
  padic->add_option("--depth", o.depth, "word length bound");
  bind(padic, cmd_probe_padic);
  CLI::App* cusp = probe->add_subcommand("cusp", "cusp / special test of one point");
  add_common(cusp);
  cusp->add_option("--x", o.x, "point (a/c or inf)")->required();
  cusp->add_option("--depth", o.depth, "search depth");
  bind(cusp, cmd_probe_cusp);

  CLI::App* scan = app.add_subcommand("scan", "orbit scans");
  scan->require_subcommand(1);
  CLI::App* cong = scan->add_subcommand("congruence", "congruence labels missed by the cusp set");
  add_common(cong);
  cong->add_option("--flavor", o.flavor, "gamma or gamma0")->check(CLI::IsMember({"gamma", "gamma0"}));
  cong->add_option("--N", o.N, "base level")->required();
  cong->add_option("--j", o.j, "level exponent");
  cong->add_option("--depth", o.depth, "word length bound");
  bind(cong, cmd_scan_congruence);
  CLI::App* special = scan->add_subcommand("special", "special points of short words");
  add_common(special);
  special->add_option("--maxlen", o.maxlen, "word length bound");
  bind(special, cmd_scan_special);
  CLI::App* mine = scan->add_subcommand("mine", "search invariant valuation predicates");
  add_common(mine);
  mine->add_option("--primes", o.primes, "comma-separated primes")->required();
  mine->add_option("--seeds", o.seeds, "comma-separated seed points");
  mine->add_option("--depth", o.mine_depth, "word length bound");
  bind(mine, cmd_scan_mine);
  CLI::App* orbit_scan = scan->add_subcommand("orbit", "cusp classes modulo 2t with witnesses");
  add_common(orbit_scan);
  orbit_scan->add_option("--depth", o.depth, "word length bound");
  orbit_scan->add_option("--cache", o.cache, "orbit cache directory")->envname("FRICKE_CACHE");
  bind(orbit_scan, cmd_scan_orbit);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  const auto start = std::chrono::steady_clock::now();
  Report report;
  try {
    const FrickeGroup g = FrickeGroup::make(Rational::parse(o.u2), Rational::parse(o.twot));
    report = handler(g, o);
    Json config;
    config["group"] = group_json(g);
    config["seed"] = o.seed;
    for (const auto& [k, v] : report.config.items()) config[k] = v;
    report.config = config;
  } catch (const std::invalid_argument& e) {  // parameter and parse errors
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  out << (o.format == "structured" ? report.dump() : report.human());
  return report.exit_code;
}

}  // namespace fricke::cli
