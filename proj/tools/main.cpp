// polytriple: classification, sieving, symbol and square-class queries for
// ternary generalized-polygonal sums. JSON envelopes on stdout, logs on
// stderr. Exit codes: 0 success, 2 usage/domain error, 3 tension under
// --strict, 4 resource refusal.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "polytriple/classifier.hpp"
#include "polytriple/exceptional.hpp"
#include "polytriple/factor.hpp"
#include "polytriple/localfield.hpp"
#include "polytriple/oracles.hpp"
#include "polytriple/polynum.hpp"
#include "polytriple/search.hpp"

using nlohmann::json;
using namespace polytriple;

namespace {

constexpr const char* kSchemaVersion = "1";

json int_json(const Int& v) { return v.str(); }

std::vector<Int> parse_int_list(const std::string& text, size_t expected, const char* what) {
  std::vector<Int> out;
  std::string tok;
  std::istringstream ss(text);
  while (std::getline(ss, tok, ',')) {
    try {
      out.emplace_back(tok);
    } catch (const std::exception&) {
      throw DomainError(std::string("cannot parse ") + what + ": '" + tok + "'");
    }
  }
  if (expected != 0 && out.size() != expected)
    throw DomainError(std::string(what) + " needs " + std::to_string(expected) +
                      " comma-separated integers");
  return out;
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Int(text), 1);
    return Rational(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
  } catch (const DomainError&) {
    throw;
  } catch (const std::exception&) {
    throw DomainError("cannot parse rational: '" + text + "'");
  }
}

json envelope(const std::string& command, json inputs, json result, json provenance = {}) {
  json env;
  env["schemaVersion"] = kSchemaVersion;
  env["command"] = command;
  env["inputs"] = std::move(inputs);
  env["result"] = std::move(result);
  env["provenance"] = std::move(provenance);
  return env;
}

json exclusion_json(const SquareClassExclusion& ex) {
  json j;
  j["oddPrimesClean"] = ex.odd_primes_clean;
  j["mod3"] = ex.mod3 == Mod3Exclusion::Always   ? "always"
              : ex.mod3 == Mod3Exclusion::OnClass ? "on-class"
                                                  : "never";
  j["classResidue"] = ex.class_residue ? json(*ex.class_residue) : json(nullptr);
  j["ord2Excludes2r2"] = ex.ord2_excludes_2r2;
  j["constantOrd2"] = ex.constant_ord2 ? json(*ex.constant_ord2) : json(nullptr);
  return j;
}

json witness_json(const WitnessChain& w) {
  json j;
  j["notAllDivisibleBy4"] = w.not_all_divisible_by_4;
  j["pairwiseGcdPowerOfTwo"] = w.pairwise_gcd_power_of_two;
  j["conditionPrime"] = w.condition_i ? int_json(w.condition_i->prime) : json(nullptr);
  j["conditionPrimeAxis"] = w.condition_i ? json(w.condition_i->axis) : json(nullptr);
  j["conditionTwo"] = w.condition_ii == ConditionTwoState::Vacuous  ? "vacuous"
                      : w.condition_ii == ConditionTwoState::Found  ? "found"
                                                                    : "not-found";
  j["conditionTwoPrime"] =
      w.condition_ii_witness ? int_json(w.condition_ii_witness->prime) : json(nullptr);
  j["conditionTwoAxis"] =
      w.condition_ii_witness ? json(w.condition_ii_witness->axis) : json(nullptr);
  j["parityPattern"] = w.parity_pattern ? json(*w.parity_pattern) : json(nullptr);
  j["distinctMod3"] = w.distinct_mod3;
  j["sharedMod3"] = w.shared_mod3 ? json(*w.shared_mod3) : json(nullptr);
  j["exclusion"] = w.exclusion ? exclusion_json(*w.exclusion) : json(nullptr);
  return j;
}

json triple_json(const TripleInvariants& t) {
  json j;
  json orders = json::array();
  for (const Int& v : t.original()) orders.push_back(int_json(v));
  j["orders"] = orders;
  j["delta"] = t.delta();
  j["lCoeff"] = int_json(t.l_coefficient());
  j["shift"] = int_json(t.shift());
  j["level"] = int_json(t.level());
  return j;
}

json obstruction_json(const ResidueObstruction& o) {
  json j;
  j["modulus"] = o.modulus;
  j["attained"] = o.attained;
  j["missing"] = o.missing;
  return j;
}

json classification_json(const ClassificationResult& r) {
  json j;
  j["verdict"] = to_string(r.verdict);
  j["classResidue"] = r.class_residue ? json(*r.class_residue) : json(nullptr);
  j["matchedStatement"] = r.matched_statement;
  j["triple"] = triple_json(r.triple);
  j["witnesses"] = witness_json(r.witnesses);
  j["obstruction"] = r.obstruction ? obstruction_json(*r.obstruction) : json(nullptr);
  json classes = json::array();
  for (const Int& d : r.surviving_classes) classes.push_back(int_json(d));
  j["survivingSquareClasses"] = classes;
  j["notes"] = r.notes;
  j["replayed"] = replay_witnesses(r);
  return j;
}

void emit(const json& env, bool csv_mode, const std::vector<std::string>& csv_lines) {
  if (csv_mode) {
    for (const auto& line : csv_lines) std::cout << line << "\n";
  } else {
    std::cout << env.dump(2) << "\n";
  }
}

struct RunConfig {
  u64 memory_cap_bytes = u64(512) << 20;
  unsigned workers = 0;
};

RunConfig load_config() {
  RunConfig cfg;
  const char* path = std::getenv("POLYTRIPLE_CONFIG");
  if (!path) return cfg;
  std::ifstream in(path);
  if (!in) throw DomainError(std::string("cannot open config file: ") + path);
  json j = json::parse(in, nullptr, /*allow_exceptions=*/true);
  if (j.contains("memory_cap_bytes")) cfg.memory_cap_bytes = j["memory_cap_bytes"].get<u64>();
  if (j.contains("workers")) cfg.workers = j["workers"].get<unsigned>();
  return cfg;
}

// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string triple, power, fermat, mersenne;
  long long consecutive = -1;
  bool json_out = false, csv_out = false;
};

int run_classify(const ClassifyArgs& a) {
  int modes = (!a.triple.empty()) + (a.consecutive >= 0) + (!a.power.empty()) +
              (!a.fermat.empty()) + (!a.mersenne.empty());
  if (modes != 1)
    throw DomainError("classify needs exactly one of --triple, --consecutive, --power-family, "
                      "--fermat, --mersenne");
  json inputs;
  std::optional<ClassificationResult> res;
  if (!a.triple.empty()) {
    auto v = parse_int_list(a.triple, 3, "--triple");
    inputs["triple"] = json::array({int_json(v[0]), int_json(v[1]), int_json(v[2])});
    res = classify(v[0], v[1], v[2]);
  } else if (a.consecutive >= 0) {
    inputs["consecutive"] = a.consecutive;
    res = classify_consecutive(a.consecutive);
  } else if (!a.power.empty()) {
    auto v = parse_int_list(a.power, 6, "--power-family");
    inputs["powerFamily"] = json::array({int_json(v[0]), int_json(v[1]), int_json(v[2]),
                                         int_json(v[3]), int_json(v[4]), int_json(v[5])});
    res = classify_power_family(v[3], v[4], v[5], v[0].convert_to<unsigned>(),
                                v[1].convert_to<unsigned>(), v[2].convert_to<unsigned>());
  } else if (!a.fermat.empty()) {
    auto v = parse_int_list(a.fermat, 3, "--fermat");
    inputs["fermat"] = json::array({int_json(v[0]), int_json(v[1]), int_json(v[2])});
    res = fermat_mersenne_guarantee(SpecialFamily::Fermat, v[0], v[1], v[2]);
  } else {
    auto v = parse_int_list(a.mersenne, 3, "--mersenne");
    inputs["mersenne"] = json::array({int_json(v[0]), int_json(v[1]), int_json(v[2])});
    res = fermat_mersenne_guarantee(SpecialFamily::Mersenne, v[0], v[1], v[2]);
  }
  json rj = classification_json(*res);
  json prov;
  prov["matchedStatement"] = res->matched_statement;
  prov["witnessChain"] = rj["witnesses"];
  std::vector<std::string> csv{
      "verdict,matchedStatement,classResidue,conditionPrime,conditionTwoPrime",
      std::string(to_string(res->verdict)) + "," + res->matched_statement + "," +
          (res->class_residue ? std::to_string(*res->class_residue) : "") + "," +
          (res->witnesses.condition_i ? res->witnesses.condition_i->prime.str() : "") + "," +
          (res->witnesses.condition_ii_witness ? res->witnesses.condition_ii_witness->prime.str()
                                               : "")};
  emit(envelope("classify", inputs, rj, prov), a.csv_out, csv);
  return 0;
}

struct SearchArgs {
  std::string triple, gaps_out;
  u64 bound = 0;
  u64 window = 1000;
  bool strict = false, json_out = false, csv_out = false;
  long long workers = -1;
  long long memory_cap = -1;
};

int run_search(const SearchArgs& a) {
  auto v = parse_int_list(a.triple, 3, "--triple");
  RunConfig rc = load_config();
  SieveConfig cfg;
  cfg.memory_cap_bytes = a.memory_cap >= 0 ? static_cast<u64>(a.memory_cap) : rc.memory_cap_bytes;
  cfg.workers = a.workers >= 0 ? static_cast<unsigned>(a.workers) : rc.workers;

  TripleInvariants t(v[0], v[1], v[2]);
  RepresentationReport rep = gap_report(t, a.bound, a.window, cfg);

  json inputs;
  inputs["triple"] = json::array({int_json(v[0]), int_json(v[1]), int_json(v[2])});
  inputs["bound"] = a.bound;
  inputs["window"] = a.window;
  inputs["strict"] = a.strict;

  constexpr size_t kEmbedCap = 500;
  json gaps = json::array();
  for (size_t i = 0; i < rep.gaps.size() && i < kEmbedCap; ++i) {
    const auto& g = rep.gaps[i];
    json gj;
    gj["n"] = g.n;
    json ws = json::array();
    for (const auto& w : g.witnesses)
      ws.push_back(json{{"t", int_json(w.t)}, {"r", int_json(w.r)}});
    gj["witnesses"] = ws;
    gj["residueMissed"] = g.residue_missed;
    gj["tension"] = g.tension;
    gaps.push_back(gj);
  }
  json rj;
  rj["bound"] = rep.bound;
  rj["windowStart"] = rep.window_start;
  rj["representedCount"] = rep.represented;
  rj["gapCount"] = rep.gaps.size();
  rj["largestGap"] = rep.largest_gap ? json(*rep.largest_gap) : json(nullptr);
  rj["tensionCount"] = rep.tension_count;
  rj["obstruction"] = rep.obstruction ? obstruction_json(*rep.obstruction) : json(nullptr);
  rj["gaps"] = gaps;
  rj["gapsTruncated"] = rep.gaps.size() > kEmbedCap;
  rj["elapsedMs"] = rep.elapsed_ms;

  if (!a.gaps_out.empty()) {
    std::ofstream out(a.gaps_out);
    if (!out) throw DomainError("cannot open gap file: " + a.gaps_out);
    out << "n,in_S,witness_t,witness_r,tension\n";
    for (const auto& g : rep.gaps) {
      out << g.n << "," << (g.witnesses.empty() ? 0 : 1) << ",";
      if (!g.witnesses.empty()) out << g.witnesses.front().t.str();
      out << ",";
      if (!g.witnesses.empty()) out << g.witnesses.front().r.str();
      out << "," << (g.tension ? 1 : 0) << "\n";
    }
  }

  std::vector<std::string> csv{
      "bound,representedCount,gapCount,largestGap,tensionCount",
      std::to_string(rep.bound) + "," + std::to_string(rep.represented) + "," +
          std::to_string(rep.gaps.size()) + "," +
          (rep.largest_gap ? std::to_string(*rep.largest_gap) : "") + "," +
          std::to_string(rep.tension_count)};
  emit(envelope("search", inputs, rj), a.csv_out, csv);
  return (a.strict && rep.tension_count > 0) ? 3 : 0;
}

struct SymbolsArgs {
  std::string kind, form, triple;
  std::vector<std::string> positional;
  std::string place;
  bool verify = false, json_out = false, csv_out = false;
};

int run_symbols(const SymbolsArgs& a) {
  json inputs, rj;
  inputs["kind"] = a.kind;
  if (a.kind == "hilbert") {
    if (a.positional.size() != 3)
      throw DomainError("symbols hilbert needs: X Y P (P a prime or 'real')");
    Rational x = parse_rational(a.positional[0]);
    Rational y = parse_rational(a.positional[1]);
    Place v = a.positional[2] == "real" ? Place::real() : Place::finite(Int(a.positional[2]));
    int val = hilbert_symbol(x, y, v);
    inputs["x"] = a.positional[0];
    inputs["y"] = a.positional[1];
    inputs["place"] = a.positional[2];
    rj["value"] = val;
    if (a.verify) {
      int oracle_val = v.is_real()
                           ? ((x.num < 0 && y.num < 0) ? -1 : 1)
                           : oracle::hilbert_by_search(x.num * x.den, y.num * y.den, v.prime());
      rj["oracleAgrees"] = (oracle_val == val);
    }
  } else if (a.kind == "hasse" || a.kind == "isotropic") {
    auto fv = parse_int_list(a.form, 3, "--form");
    if (a.place.empty()) throw DomainError("--p PRIME is required");
    Place v = Place::finite(Int(a.place));
    PadicDiagForm f(v, {fv[0], fv[1], fv[2]});
    inputs["form"] = json::array({int_json(fv[0]), int_json(fv[1]), int_json(fv[2])});
    inputs["p"] = a.place;
    if (a.kind == "hasse") {
      rj["value"] = hasse_symbol(f);
      if (a.verify) {
        int by_search = oracle::hilbert_by_search(fv[0], fv[1], v.prime()) *
                        oracle::hilbert_by_search(fv[0], fv[2], v.prime()) *
                        oracle::hilbert_by_search(fv[1], fv[2], v.prime());
        rj["oracleAgrees"] = (by_search == hasse_symbol(f));
      }
    } else {
      bool iso = is_isotropic_ternary(f);
      rj["isotropic"] = iso;
      if (a.verify)
        rj["oracleAgrees"] =
            (oracle::isotropic_by_search({fv[0], fv[1], fv[2]}, v.prime()) == iso);
    }
  } else if (a.kind == "aniso-primes") {
    auto tv = parse_int_list(a.triple, 3, "--triple");
    TripleInvariants t(tv[0], tv[1], tv[2]);
    auto primes = anisotropic_primes(t);
    inputs["triple"] = json::array({int_json(tv[0]), int_json(tv[1]), int_json(tv[2])});
    json arr = json::array();
    for (const Int& p : primes) arr.push_back(int_json(p));
    rj["primes"] = arr;
    if (a.verify) {
      bool ok = true;
      std::array<Int, 3> form{tv[0] - 2, tv[1] - 2, tv[2] - 2};
      for (const Int& p : primes) ok &= !oracle::isotropic_by_search(form, p);
      rj["oracleAgrees"] = ok;
    }
  } else {
    throw DomainError("symbols kind must be hilbert, hasse, isotropic or aniso-primes");
  }
  std::vector<std::string> csv{"kind,value", a.kind + "," + rj.dump()};
  emit(envelope("symbols", inputs, rj), a.csv_out, csv);
  return 0;
}

struct ExceptionalArgs {
  std::string triple, range;
  long long n = -1;
  long long t_div = -1;
  bool json_out = false, csv_out = false;
};

int run_exceptional(const ExceptionalArgs& a) {
  auto v = parse_int_list(a.triple, 3, "--triple");
  TripleInvariants t(v[0], v[1], v[2]);
  u64 lo = 0, hi = 0;
  if (a.n >= 0 && !a.range.empty()) throw DomainError("use --n or --range, not both");
  if (a.n >= 0) {
    lo = hi = static_cast<u64>(a.n);
  } else if (!a.range.empty()) {
    auto colon = a.range.find(':');
    if (colon == std::string::npos) throw DomainError("--range needs LO:HI");
    lo = std::stoull(a.range.substr(0, colon));
    hi = std::stoull(a.range.substr(colon + 1));
    if (hi < lo) throw DomainError("--range needs LO <= HI");
  } else {
    throw DomainError("exceptional needs --n or --range");
  }
  json inputs;
  inputs["triple"] = json::array({int_json(v[0]), int_json(v[1]), int_json(v[2])});
  inputs["lo"] = lo;
  inputs["hi"] = hi;
  if (a.t_div >= 0) inputs["t"] = a.t_div;

  json entries = json::array();
  for (u64 n = lo; n <= hi; ++n) {
    std::vector<ExceptionalWitness> ws;
    if (a.t_div >= 0) {
      if (auto w = exceptional_membership(t, Int(a.t_div), Int(n))) ws.push_back(*w);
    } else {
      ws = exceptional_union(t, Int(n));
    }
    json wj = json::array();
    for (const auto& w : ws) wj.push_back(json{{"t", int_json(w.t)}, {"r", int_json(w.r)}});
    entries.push_back(json{{"n", n}, {"witnesses", wj}});
  }
  json rj;
  rj["entries"] = entries;
  std::vector<std::string> csv{"n,witness_t,witness_r"};
  for (const auto& e : entries)
    for (const auto& w : e["witnesses"])
      csv.push_back(e["n"].dump() + "," + w["t"].get<std::string>() + "," +
                    w["r"].get<std::string>());
  emit(envelope("exceptional", inputs, rj), a.csv_out, csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ternary generalized-polygonal sums: classification and verification"};
  app.require_subcommand(1);

  ClassifyArgs ca;
  auto* cl = app.add_subcommand("classify", "classify a sum by the arithmetic criteria");
  cl->add_option("--triple", ca.triple, "orders a,b,c");
  cl->add_option("--consecutive", ca.consecutive, "first order m of (m, m+1, m+2)");
  cl->add_option("--power-family", ca.power, "k,l,m,alpha,beta,gamma");
  cl->add_option("--fermat", ca.fermat, "three distinct indices");
  cl->add_option("--mersenne", ca.mersenne, "three distinct odd primes");
  cl->add_flag("--json", ca.json_out, "JSON envelope (default)");
  cl->add_flag("--csv", ca.csv_out, "CSV summary");

  SearchArgs sa;
  auto* se = app.add_subcommand("search", "sieve represented values and annotate the gaps");
  se->add_option("--triple", sa.triple, "orders a,b,c")->required();
  se->add_option("--bound", sa.bound, "sieve bound")->required();
  se->add_option("--window", sa.window, "ignore gaps below this when flagging tension");
  se->add_option("--gaps-out", sa.gaps_out, "write the gap list as CSV");
  se->add_flag("--strict", sa.strict, "exit 3 when any tension item is found");
  se->add_option("--workers", sa.workers, "worker threads (default from config/hardware)");
  se->add_option("--memory-cap", sa.memory_cap, "bit-set memory cap in bytes");
  se->add_flag("--json", sa.json_out, "JSON envelope (default)");
  se->add_flag("--csv", sa.csv_out, "CSV summary");

  SymbolsArgs ya;
  auto* sy = app.add_subcommand("symbols", "hilbert/hasse/isotropy/anisotropic-prime queries");
  sy->add_option("kind", ya.kind, "hilbert | hasse | isotropic | aniso-primes")->required();
  sy->add_option("args", ya.positional, "positional arguments (hilbert: X Y P)");
  sy->add_option("--form", ya.form, "diagonal entries d1,d2,d3");
  sy->add_option("--p", ya.place, "finite prime");
  sy->add_option("--triple", ya.triple, "orders a,b,c (aniso-primes)");
  sy->add_flag("--verify", ya.verify, "add an oracle-agreement flag");
  sy->add_flag("--json", ya.json_out, "JSON envelope (default)");
  sy->add_flag("--csv", ya.csv_out, "CSV summary");

  ExceptionalArgs ea;
  auto* ex = app.add_subcommand("exceptional", "square-class membership of targets");
  ex->add_option("--triple", ea.triple, "orders a,b,c")->required();
  ex->add_option("--n", ea.n, "single index");
  ex->add_option("--range", ea.range, "index range LO:HI");
  ex->add_option("--t", ea.t_div, "restrict to one squarefree divisor");
  ex->add_flag("--json", ea.json_out, "JSON envelope (default)");
  ex->add_flag("--csv", ea.csv_out, "CSV rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (cl->parsed()) return run_classify(ca);
    if (se->parsed()) return run_search(sa);
    if (sy->parsed()) return run_symbols(ya);
    if (ex->parsed()) return run_exceptional(ea);
  } catch (const ResourceError& e) {
    std::cerr << "resource refusal: " << e.what() << "\n";
    return 4;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
