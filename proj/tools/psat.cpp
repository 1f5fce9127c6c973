// SPDX-License-Identifier: Apache-2.0
//
// psat: classify, check and random subcommands.
// Exit status 0 on success, 2 when some query ran out of budget, 1 on error.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "psat/classification.hpp"
#include "psat/hardness.hpp"
#include "psat/io.hpp"
#include "psat/poly_engine.hpp"
#include "psat/tractability.hpp"

using namespace psat;
using nlohmann::json;

namespace {

constexpr int kInconclusive = 2;

int cmd_classify(int k, const std::string& mode_text, bool audit, int jobs, int ell_budget,
                 const std::string& out_dir, std::string cache, bool quiet) {
  const auto mode = parse_mode(mode_text);
  if (!mode) throw std::invalid_argument("unknown mode " + mode_text);
  SweepOptions opt;
  opt.audit = audit;
  opt.jobs = jobs;
  opt.ell_budget = ell_budget;
  opt.cache_dir = cache.empty() ? cache_dir_from_env() : cache;
  if (!quiet) opt.progress = [](const std::string& s) { std::cerr << s << '\n'; };
  const auto t0 = std::chrono::steady_clock::now();
  const auto s = classify_all(k, *mode, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto sum = s.summary();
  const auto e = minimal_maximal(s);

  std::filesystem::create_directories(out_dir);
  const std::string stem = out_dir + "/k" + std::to_string(k) + "_" + mode_name(*mode);
  write_records(stem + "_records.csv", s);
  write_text(stem + "_summary.json", sum.json(k, *mode) + "\n");
  write_text(stem + "_maximal.csv", maximal_csv(e, *mode));
  write_text(stem + "_minimal.csv", minimal_csv(e, *mode));
  write_text(stem + "_extremal.json", extremal_json(e, *mode) + "\n");
  write_text(stem + "_histogram.csv", histogram_csv(s));
  if (*mode == Mode::FiPcsp) {
    nlohmann::json audit_json;
    audit_json["families"] = json::parse(family_audit(s).json());
    if (audit) audit_json["theorems"] = json::parse(hardness_audit(s).json());
    write_text(stem + "_audit.json", audit_json.dump(1) + "\n");
  }

  std::cout << sum.json(k, *mode) << '\n';
  if (!quiet) std::cerr << "done in " << secs << " s, files under " << out_dir << '\n';
  if (sum.inconclusive > 0) {
    std::cerr << sum.inconclusive << " records hit a budget\n";
    return kInconclusive;
  }
  return 0;
}

json tri_json(Tri t) { return tri_name(t); }

json bound_json(const BoundResult& b) {
  json j;
  j["t"] = b.t ? json(*b.t) : json(nullptr);
  j["inconclusive"] = b.inconclusive;
  j["queries"] = b.queries;
  return j;
}

FunctionTable family_member(Family f, int ell) {
  switch (f) {
    case Family::Maj: return make_maj(ell);
    case Family::Par: return make_par(ell);
    case Family::AT: return make_at(ell);
    case Family::IdMaj: return make_idmaj(ell);
    case Family::IdPar: return make_idpar(ell);
    default: break;
  }
  throw std::invalid_argument("no member construction for this family");
}

// Present: the family witness. Absent: an obstruction for the first odd-arity
// member that fails.
json family_check(const Predicate& a, Family fam) {
  const auto screen = five_family_screen(a);
  json j;
  j["verdict"] = screen.has(fam) ? "present" : "absent";
  for (const auto& w : screen.witnesses)
    if (w.family == fam) j["witness"] = json::parse(w.json());
  if (!screen.has(fam)) {
    for (int ell = 3; ell <= 9; ell += 2) {
      const auto v = verify_polymorphism(a, family_member(fam, ell));
      if (!v.ok && v.obstruction) {
        j["obstruction"] = {{"function", std::string(family_name(fam)) + std::to_string(ell)},
                            {"rows", v.obstruction->row_strings()}};
        break;
      }
    }
  }
  return j;
}

std::vector<std::pair<Point, bool>> parse_pins(const std::string& text) {
  // "0110=1;1000=0"
  std::vector<std::pair<Point, bool>> pins;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ';');) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("pin needs <point>=<0|1>: " + item);
    const auto v = item.substr(eq + 1);
    if (v != "0" && v != "1") throw std::invalid_argument("pin value must be 0 or 1: " + item);
    pins.emplace_back(parse_point(item.substr(0, eq)), v == "1");
  }
  return pins;
}

json query_result_json(const PolymorphismQuery& q, const QueryResult& r) {
  json j;
  j["verdict"] = status_name(r.status);
  j["query"] = json::parse(query_json(q));
  if (r.witness) j["witness"] = json::parse(witness_json(q, *r.witness));
  if (r.forced_obstruction) j["forced_obstruction"] = r.forced_obstruction->row_strings();
  j["nodes"] = r.stats.nodes;
  j["clauses"] = r.stats.clauses;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

struct CheckArgs {
  std::string predicate, test;
  int t = 0, ell = 1, arity = 0;
  std::string reading = "m0", pins;
  bool no_fold = false, no_idem = false;
};

int cmd_check(const CheckArgs& in) {
  const auto a = parse_predicate(in.predicate);
  const auto budgets = HardnessBudgets::defaults(a.arity());
  const auto& cfg = budgets.engine;
  json j;
  j["predicate"] = a.to_string();
  j["test"] = in.test;
  bool inconclusive = false;
  auto need_t = [&](int def) { return in.t > 0 ? in.t : def; };

  static const std::map<std::string, Family> families = {
      {"maj", Family::Maj}, {"par", Family::Par}, {"at", Family::AT},
      {"idmaj", Family::IdMaj}, {"idpar", Family::IdPar}};
  if (const auto it = families.find(in.test); it != families.end()) {
    j.update(family_check(a, it->second));
  } else if (in.test == "blocksym") {
    const auto r = block_symmetric_exists(a, in.ell);
    j["ell"] = in.ell;
    j["verdict"] = r.status == BlockSymmetricResult::Status::Present  ? "present"
                   : r.status == BlockSymmetricResult::Status::Absent ? "absent"
                                                                      : "inconclusive";
    if (r.table) j["table"] = r.table->value;
    j["pairs"] = r.pairs;
    inconclusive = r.status == BlockSymmetricResult::Status::Inconclusive;
  } else if (in.test == "unate") {
    const auto t = unate_minion(a, cfg);
    j["verdict"] = tri_json(t);
    inconclusive = t == Tri::Inconclusive;
  } else if (in.test == "matching" || in.test == "invmatching" || in.test == "uncada" ||
             in.test == "undada" || in.test == "ada") {
    BoundResult b;
    if (in.test == "matching") b = matching_bound(a, need_t(budgets.matching), cfg);
    if (in.test == "invmatching") b = inverted_matching_bound(a, need_t(budgets.inv_matching), cfg);
    if (in.test == "uncada") b = uncada_free(a, need_t(budgets.uncada), cfg);
    if (in.test == "undada") b = undada_free(a, need_t(budgets.undada), cfg);
    if (in.test == "ada") {
      if (in.reading != "m0" && in.reading != "m") throw std::invalid_argument("--reading is m0 or m");
      b = ada_free(a, need_t(budgets.ada), cfg, in.reading == "m0");
      j["reading"] = in.reading;
    }
    j.update(bound_json(b));
    j["verdict"] = b.t ? "holds" : (b.inconclusive ? "inconclusive" : "not_within_budget");
    inconclusive = b.inconclusive;
  } else if (in.test == "and0" || in.test == "xnor0") {
    Obstruction o;
    const bool in_pol = in.test == "and0" ? and_in_pol0(a, &o) : xnor_in_pol0(a, &o);
    j["verdict"] = in_pol ? "present" : "absent";
    if (!in_pol) j["obstruction"] = o.row_strings();
    const auto t = in.test == "and0" ? smallest_and_free(a) : smallest_xnor_free(a);
    j["smallest_free_t"] = t ? json(*t) : json(nullptr);
  } else if (in.test == "polyquery") {
    if (in.arity < 1) throw std::invalid_argument("polyquery needs --arity");
    PolymorphismQuery q;
    q.predicate = a;
    q.arity = in.arity;
    q.folded = !in.no_fold;
    q.idempotent = !in.no_idem;
    q.pins = parse_pins(in.pins);
    const auto r = exists_polymorphism(q, cfg);
    j.update(query_result_json(q, r));
    inconclusive = r.status == QueryStatus::Inconclusive;
  } else {
    throw std::invalid_argument("unknown test " + in.test);
  }
  std::cout << j.dump() << '\n';
  return inconclusive ? kInconclusive : 0;
}

int cmd_random(int k, const std::vector<double>& ps, int n, std::uint64_t seed) {
  RandomConfig cfg;
  cfg.k = k;
  cfg.densities = ps;
  cfg.samples = n;
  cfg.seed = seed;
  const auto stats = random_experiment(cfg);
  std::cout << random_json(cfg, stats) << '\n';
  for (const auto& s : stats)
    if (s.inconclusive) return kInconclusive;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Promise-SAT classifier"};
  app.require_subcommand(1);

  int k = 3, jobs = 1, ell_budget = 9;
  std::string mode = "fipcsp", out = "psat_out", cache;
  bool audit = false, quiet = false;
  auto* classify = app.add_subcommand("classify", "classify every canonical predicate of one arity");
  classify->add_option("--arity", k, "k")->check(CLI::Range(2, 5));
  classify->add_option("--mode", mode, "fipcsp, fpcsp or usefulness");
  classify->add_flag("--audit", audit, "decide every theorem on every predicate");
  classify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  classify->add_option("--ell-budget", ell_budget, "largest ℓ for the block-symmetric scan")
      ->check(CLI::NonNegativeNumber);
  classify->add_option("--out", out, "output directory");
  classify->add_option("--cache", cache, "cache directory (default $PSAT_CACHE_DIR)");
  classify->add_flag("--quiet", quiet);

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "run one test on one predicate");
  check->add_option("--predicate", ca.predicate, "e.g. 001,011 or 3:0x0a")->required();
  check->add_option("--test", ca.test)->required();
  check->add_option("--t", ca.t, "bound for matching/invmatching/ada/uncada/undada");
  check->add_option("--ell", ca.ell, "block size for blocksym");
  check->add_option("--reading", ca.reading, "ada: m0 or m");
  check->add_option("--arity", ca.arity, "polyquery arity");
  check->add_option("--pins", ca.pins, "polyquery pins, e.g. 0110=1;1000=0");
  check->add_flag("--no-fold", ca.no_fold);
  check->add_flag("--no-idem", ca.no_idem);

  int rk = 6, rn = 0;
  std::vector<double> ps{1.0};
  std::uint64_t seed = 1;
  auto* random = app.add_subcommand("random", "random predicate harness");
  random->add_option("--k", rk)->check(CLI::Range(2, 6));
  random->add_option("--p", ps, "densities")->delimiter(',')->check(CLI::Range(0.0, 1.0));
  random->add_option("--n", rn, "samples")->check(CLI::NonNegativeNumber);
  random->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*classify) return cmd_classify(k, mode, audit, jobs, ell_budget, out, cache, quiet);
    if (*check) return cmd_check(ca);
    if (*random) return cmd_random(rk, ps, rn, seed);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 1;
}
