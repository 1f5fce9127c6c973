// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, details indented above
// it. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "psat/classification.hpp"
#include "psat/function_table.hpp"
#include "psat/hardness.hpp"
#include "psat/io.hpp"
#include "psat/poly_engine.hpp"
#include "psat/symmetry.hpp"
#include "psat/tractability.hpp"

using namespace psat;

namespace {

const std::string kGolden = PSAT_GOLDEN_DIR;
int failures = 0;

void detail(const std::string& s) { std::cout << "    " << s << '\n'; }

void report(int id, bool ok, const std::string& what, double secs) {
  if (!ok) ++failures;
  std::ostringstream t;
  t.setf(std::ios::fixed);
  t.precision(1);
  t << secs;
  std::cout << (ok ? "PASS " : "FAIL ") << id << ": " << what << " (" << t.str() << " s)\n" << std::flush;
}

template <class F>
void criterion(int id, const std::string& what, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    detail(std::string("exception: ") + e.what());
  }
  report(id, ok, what, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
}

std::string tuple_string(const Summary& s) {
  return "(" + std::to_string(s.total) + ", " + std::to_string(s.positive) + ", " +
         std::to_string(s.negative) + ", " + std::to_string(s.unknown) + ")";
}

bool expect_summary(const std::string& label, const Summary& s, std::array<int, 4> want) {
  const bool ok = s.total == want[0] && s.positive == want[1] && s.negative == want[2] &&
                  s.unknown == want[3] && s.inconclusive == 0;
  detail(label + " " + tuple_string(s) + (ok ? "" : " expected (" + std::to_string(want[0]) + ", " +
                                                        std::to_string(want[1]) + ", " +
                                                        std::to_string(want[2]) + ", " +
                                                        std::to_string(want[3]) + ")"));
  return ok;
}

// Sweeps shared across criteria.
std::map<int, Sweep> fi_sweeps;
const Sweep& fi(int k) {
  auto it = fi_sweeps.find(k);
  if (it == fi_sweeps.end()) it = fi_sweeps.emplace(k, classify_all(k, Mode::FiPcsp)).first;
  return it->second;
}

struct Table {
  std::string header;
  std::vector<std::vector<std::string>> rows;
};

Table read_table(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  std::getline(in, t.header);
  while (std::getline(in, line))
    if (!line.empty()) t.rows.push_back(csv_split(line));
  return t;
}

// Predicates replaced by their canonical form, rows sorted.
std::vector<std::string> normalized(const Table& t, Group g) {
  std::vector<std::string> out;
  for (auto row : t.rows) {
    row[0] = canonical_form(parse_predicate(row[0]), g).to_string();
    std::string line = csv_quote(row[0]);
    for (std::size_t i = 1; i < row.size(); ++i) line += "," + row[i];
    out.push_back(line);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool compare_golden(const std::string& file, const std::string& emitted, Group g) {
  const auto want = read_table(read_text(kGolden + "/" + file));
  const auto got = read_table(emitted);
  if (want.header != got.header) {
    detail(file + ": header differs: " + got.header);
    return false;
  }
  const auto w = normalized(want, g), e = normalized(got, g);
  std::vector<std::string> missing, extra;
  std::set_difference(w.begin(), w.end(), e.begin(), e.end(), std::back_inserter(missing));
  std::set_difference(e.begin(), e.end(), w.begin(), w.end(), std::back_inserter(extra));
  detail(file + ": " + std::to_string(w.size()) + " rows, " + std::to_string(missing.size()) +
         " differ");
  for (const auto& m : missing) detail("  expected " + m);
  for (const auto& x : extra) detail("  emitted  " + x);
  return missing.empty() && extra.empty();
}

unsigned marks_of(const std::vector<std::string>& row, std::size_t first, std::size_t n) {
  unsigned m = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (row[first + i] == "x") m |= 1u << i;
  return m;
}

FunctionTable named_function(const std::string& name) {
  const auto digits = name.find_first_of("0123456789");
  const std::string fam = name.substr(0, digits);
  const int ell = std::stoi(name.substr(digits));
  if (fam == "Maj") return make_maj(ell);
  if (fam == "Par") return make_par(ell);
  if (fam == "AT") return make_at(ell);
  if (fam == "IdMaj") return make_idmaj(ell);
  if (fam == "IdPar") return make_idpar(ell);
  throw std::invalid_argument("unknown function " + name);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string x; std::getline(ss, x, sep);) out.push_back(x);
  return out;
}

// Largest ℓ with an (ℓ, ℓ+1)-block-symmetric polymorphism but none at ℓ+1,
// over predicates the screen leaves open.
std::optional<int> block_symmetric_maximum(int k, int budget, int* open) {
  int best = -1;
  *open = 0;
  for (const auto& a : enumerate_canonical(k, Group::Perm)) {
    if (five_family_screen(a).tractable()) continue;
    ++*open;
    const auto v = block_symmetric_scan(a, budget);
    if (v.kind != BlpAipVerdict::Kind::RefutedAt || v.inconclusive) return std::nullopt;
    best = std::max(best, v.ell - 1);
  }
  return best;
}

// Hardness-module queries whose free points the exhaustive oracle can
// enumerate, parameters up to 3.
std::vector<PolymorphismQuery> oracle_queries(const Predicate& a) {
  std::vector<PolymorphismQuery> qs{unate_query(a)};
  for (int t = 1; t <= 3; ++t) qs.push_back(matching_query(a, t));
  for (int t = 1; t <= 2; ++t) qs.push_back(inverted_matching_query(a, t));
  for (int t = 2; t <= 3; ++t)
    for (int d = 1; d < t; ++d) {
      qs.push_back(ada_query(a, t - d, d, true));
      qs.push_back(ada_query(a, t - d, d, false));
    }
  return qs;
}

Predicate or_predicate(int k) {
  std::vector<Point> pts;
  for (Point x = 1; x <= all_ones(k); ++x) pts.push_back(x);
  return Predicate::from_points(k, pts);
}

}  // namespace

int main() {
  std::cout << "acceptance run\n" << std::flush;

  criterion(1, "fiPCSP counts k=2,3,4", [] {
    bool ok = expect_summary("k=2", fi(2).summary(), {5, 5, 0, 0});
    ok &= expect_summary("k=3", fi(3).summary(), {39, 33, 6, 0});
    ok &= expect_summary("k=4", fi(4).summary(), {1991, 956, 1035, 0});
    return ok;
  });

  criterion(2, "fPCSP counts k=3,4", [] {
    bool ok = expect_summary("k=3", derive_fpcsp(fi(3)).summary(), {32, 28, 4, 0});
    ok &= expect_summary("k=4", derive_fpcsp(fi(4)).summary(), {1549, 848, 701, 0});
    return ok;
  });

  criterion(3, "usefulness counts k=2,3,4", [] {
    bool ok = expect_summary("k=2", derive_usefulness(fi(2)).summary(), {4, 4, 0, 0});
    ok &= expect_summary("k=3", derive_usefulness(fi(3)).summary(), {20, 16, 4, 0});
    ok &= expect_summary("k=4", derive_usefulness(fi(4)).summary(), {400, 230, 170, 0});
    return ok;
  });

  criterion(4, "family and hardness audit k=4", [] {
    SweepOptions opt;
    opt.audit = true;
    const auto s = classify_all(4, Mode::FiPcsp, opt);
    auto check = [](const ColumnAudit& a, const std::vector<std::pair<int, int>>& want) {
      bool ok = true;
      for (std::size_t i = 0; i < want.size(); ++i) {
        const bool same = a.exclusive[i] == want[i].first && a.total[i] == want[i].second;
        ok &= same;
        detail(a.names[i] + " " + std::to_string(a.exclusive[i]) + "/" + std::to_string(a.total[i]) +
               (same ? "" : "  expected " + std::to_string(want[i].first) + "/" +
                                std::to_string(want[i].second)));
      }
      return ok;
    };
    bool ok = check(family_audit(s), {{720, 915}, {31, 219}, {0, 172}, {1, 163}, {0, 162}});
    ok &= check(hardness_audit(s), {{2, 1029}, {0, 1031}, {0, 1030}, {1, 1032}});
    return ok;
  });

  criterion(5, "extremal tables k=3,4 against goldens", [] {
    bool ok = true;
    for (int k : {3, 4}) {
      const auto e = minimal_maximal(fi(k));
      const auto ks = std::to_string(k);
      ok &= compare_golden("fipcsp_k" + ks + "_maximal.csv", maximal_csv(e, Mode::FiPcsp), Group::Perm);
      ok &= compare_golden("fipcsp_k" + ks + "_minimal.csv", minimal_csv(e, Mode::FiPcsp), Group::Perm);
      const auto u = minimal_maximal(derive_usefulness(fi(k)));
      ok &= compare_golden("usefulness_k" + ks + "_maximal.csv", maximal_csv(u, Mode::Usefulness),
                           Group::PermShift);
      ok &= compare_golden("usefulness_k" + ks + "_minimal.csv", minimal_csv(u, Mode::Usefulness),
                           Group::PermShift);
    }
    return ok;
  });

  criterion(6, "screen quintet and printed obstructions", [] {
    const std::pair<const char*, int> quintet[] = {{"01,10,11", 0},
                                                   {"001,010,100,111", 1},
                                                   {"00011,00101,00110,01000,10000", 2},
                                                   {"0011,0100,0110,1000,1001", 3},
                                                   {"00111,01010,01101,10000,10011", 4}};
    bool ok = true;
    for (const auto& [p, fam] : quintet) {
      const unsigned bits = five_family_screen(parse_predicate(p)).screen_bits();
      if (bits != 1u << fam) {
        ok = false;
        detail(std::string(p) + " screens to bits " + std::to_string(bits));
      }
    }
    const auto t = read_table(read_text(kGolden + "/quintet_obstructions.csv"));
    int genuine = 0;
    for (const auto& row : t.rows) {
      const auto a = parse_predicate(row[0]);
      const auto f = named_function(row[1]);
      const auto o = Obstruction::from_rows(split(row[2], ';'));
      if (is_obstruction(a, f, o) && !verify_polymorphism(a, f).ok)
        ++genuine;
      else
        detail("not an obstruction: " + row[0] + " " + row[1] + " " + row[2]);
    }
    detail(std::to_string(genuine) + "/" + std::to_string(t.rows.size()) + " obstructions genuine");
    return ok && genuine == 20 && t.rows.size() == 20;
  });

  criterion(7, "block-symmetric maxima k=3 -> 1, k=4 -> 3, k=5 predicate -> 7", [] {
    bool ok = true;
    for (auto [k, want] : {std::pair{3, 1}, std::pair{4, 3}}) {
      int open = 0;
      const auto m = block_symmetric_maximum(k, 8, &open);
      detail("k=" + std::to_string(k) + ": " + std::to_string(open) + " open predicates, maximum " +
             (m ? std::to_string(*m) : std::string("undetermined")));
      ok &= m == want;
    }
    const auto a = parse_predicate("00111,01011,01100,10001,10010,10100");
    const auto r7 = block_symmetric_exists(a, 7), r8 = block_symmetric_exists(a, 8);
    const bool seven = r7.status == BlockSymmetricResult::Status::Present && r7.table &&
                       verify_two_block(a, *r7.table);
    detail("k=5 {00111,01011,01100,10001,10010,10100}: l=7 " + std::string(seven ? "present" : "missing") +
           ", l=8 " + (r8.status == BlockSymmetricResult::Status::Absent ? "absent" : "not refuted"));
    return ok && seven && r8.status == BlockSymmetricResult::Status::Absent;
  });

  criterion(8, "k=5 spot checks", [] {
    const auto b = HardnessBudgets::defaults(5);
    bool ok = true;
    const auto maxi = read_table(read_text(kGolden + "/fipcsp_k5_maximal.csv"));
    int screen_ok = 0;
    for (const auto& row : maxi.rows) {
      const auto a = parse_predicate(row[0]);
      if (five_family_screen(a).screen_bits() == marks_of(row, 1, 5))
        ++screen_ok;
      else
        detail("maximal tractable screen mismatch: " + row[0]);
    }
    detail(std::to_string(screen_ok) + "/" + std::to_string(maxi.rows.size()) +
           " maximal tractable predicates screen to the marked families");
    ok &= screen_ok == 32 && maxi.rows.size() == 32;

    const auto mini = read_table(read_text(kGolden + "/fipcsp_k5_min_unknown.csv"));
    int unknown_ok = 0, flags_ok = 0;
    double uncada_secs = 0;
    for (std::size_t i = 0; i < mini.rows.size(); ++i) {
      const auto& row = mini.rows[i];
      const auto a = canonical_form(parse_predicate(row[0]), Group::Perm);
      const auto r = classify_promise_sat(a, b, false, 0);
      unsigned got = 0;
      if (unate_minion(a, b.engine) == Tri::Yes) got |= 1;
      if (ada_free(a, b.ada, b.engine).t) got |= 2;
      const auto t0 = std::chrono::steady_clock::now();
      const auto uc = uncada_free(a, b.uncada, b.engine);
      uncada_secs += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (uc.t) got |= 4;
      if (undada_free(a, b.undada, b.engine).t) got |= 8;
      const unsigned want = marks_of(row, 1, 4);
      const bool unknown = r.status == Status::Unknown && !r.inconclusive;
      unknown_ok += unknown;
      flags_ok += got == want;
      if (!unknown || got != want) {
        std::string line = "row " + std::to_string(i + 1) + " " + row[0] + ": " + status_name(r.status);
        if (r.certificate) line += " " + r.certificate->json();
        line += ", flags " + std::to_string(got) + " expected " + std::to_string(want);
        if (uc.t) line += ", UnCADA-free at t=" + std::to_string(*uc.t);
        detail(line);
        const auto ref = HardnessBudgets::reference(5);
        const auto rr = classify_promise_sat(a, ref, false, 0);
        detail("  with the reference parameters (no slack step): " + std::string(status_name(rr.status)));
      }
    }
    detail(std::to_string(unknown_ok) + "/" + std::to_string(mini.rows.size()) +
           " minimal unknown predicates stay Unknown, " + std::to_string(flags_ok) + "/" +
           std::to_string(mini.rows.size()) + " flag patterns match, UnCADA checks " +
           std::to_string(static_cast<int>(uncada_secs)) + " s");
    ok &= unknown_ok == 25 && flags_ok == 25 && mini.rows.size() == 25;
    return ok;
  });

  criterion(9, "engine agrees with the exhaustive oracle, k <= 3", [] {
    int queries = 0, mismatches = 0, witness_errors = 0;
    for (int k = 2; k <= 3; ++k)
      for (const auto& a : enumerate_canonical(k, Group::Perm))
        for (const auto& q : oracle_queries(a)) {
          ++queries;
          const auto r = exists_polymorphism(q);
          const auto bf = brute_force_exists(q);
          if (r.status == QueryStatus::Inconclusive || (r.status == QueryStatus::Present) != bf.has_value()) {
            ++mismatches;
            detail("mismatch: " + query_json(q));
          }
          if (r.witness && !(satisfies_constraints(q, *r.witness) && verify_polymorphism(a, *r.witness).ok))
            ++witness_errors;
        }
    detail(std::to_string(queries) + " queries, " + std::to_string(mismatches) + " discrepancies, " +
           std::to_string(witness_errors) + " bad witnesses");
    return queries > 0 && mismatches == 0 && witness_errors == 0;
  });

  criterion(10, "invariants on k <= 4", [] {
    int closure = 0, and_claim = 0, and_cases = 0, at_sub = 0, at_cases = 0, witness = 0, witnesses = 0;
    for (int k = 2; k <= 4; ++k) {
      // No negative record lies below a positive one, in any mode.
      for (const auto& s : {fi(k), derive_fpcsp(fi(k)), derive_usefulness(fi(k))}) {
        const Group g = group_for(s.mode);
        std::vector<const ClassificationRecord*> pos;
        for (const auto& r : s.records)
          if (r.status == Status::Tractable || r.status == Status::Useful) pos.push_back(&r);
        for (const auto& r : s.records) {
          if (r.status != Status::NPHard && r.status != Status::Useless) continue;
          const auto orb = orbit(r.predicate, g);
          for (const auto* p : pos)
            if (orbit_subset(orb, p->predicate.mask())) {
              ++closure;
              detail("closure: " + r.predicate.to_string() + " below " + p->predicate.to_string());
            }
        }
      }
      for (const auto& a : enumerate_canonical(k, Group::Perm)) {
        if (!and_in_pol0(a)) {
          ++and_cases;
          const auto b = ada_free(a, k - 1);
          if (!b.t || *b.t > k - 1) {
            ++and_claim;
            detail("AND_t outside M0 but no ADA bound: " + a.to_string());
          }
        }
        if (test_at(a)) {
          ++at_cases;
          if (!test_maj(a) && !test_inv_maj(a)) {
            ++at_sub;
            detail("AT without Maj or InvMaj: " + a.to_string());
          }
        }
      }
      for (const auto& r : fi(k).records)
        for (const auto& w : r.witnesses) {
          ++witnesses;
          if (!check_witness(r.predicate, w)) ++witness;
        }
    }
    detail("closure violations " + std::to_string(closure) + ", AND/ADA failures " +
           std::to_string(and_claim) + "/" + std::to_string(and_cases) + ", AT subsumption failures " +
           std::to_string(at_sub) + "/" + std::to_string(at_cases) + ", witness failures " +
           std::to_string(witness) + "/" + std::to_string(witnesses));
    return closure == 0 && and_claim == 0 && at_sub == 0 && witness == 0 && witnesses > 0;
  });

  criterion(11, "random harness k=6: nested monotonicity, p=1, determinism", [] {
    RandomConfig cfg;
    cfg.k = 6;
    cfg.densities = {0.1, 0.2, 0.3, 0.5, 1.0};
    cfg.samples = 8;
    cfg.seed = 20240611;
    const auto stats = random_experiment(cfg);
    bool ok = true;
    std::string fractions;
    for (std::size_t d = 0; d < stats.size(); ++d) {
      fractions += " p=" + std::to_string(stats[d].p).substr(0, 4) + ":" +
                   std::to_string(stats[d].non_dictator) + "/" + std::to_string(stats[d].samples);
      ok &= stats[d].inconclusive == 0;
      if (d > 0 && stats[d].non_dictator > stats[d - 1].non_dictator) ok = false;
    }
    detail("non-dictator admissions" + fractions);
    int nesting = 0;
    for (int s = 0; s < cfg.samples; ++s)
      for (std::size_t d = 1; d < stats.size(); ++d) {
        const auto& lo = stats[d - 1].verdicts[static_cast<std::size_t>(s)];
        const auto& hi = stats[d].verdicts[static_cast<std::size_t>(s)];
        if (lo.predicate && hi.predicate && !lo.predicate->mask().subset_of(hi.predicate->mask()))
          ++nesting;
        if (lo.predicate && hi.non_dictator == QueryStatus::Present && lo.non_dictator != QueryStatus::Present)
          ++nesting;
      }
    detail("nesting violations " + std::to_string(nesting));
    const auto& top = stats.back();
    const auto h = small_fixing_assignments(or_predicate(6), HardnessBudgets::defaults(6));
    detail("p=1: " + std::to_string(top.non_dictator) + " admissions, OR_6 certificate " +
           (h.certificate ? h.certificate->json() : std::string("none")));
    ok &= nesting == 0 && top.non_dictator == 0 && h.certificate.has_value();

    RandomConfig small = cfg;
    small.samples = 3;
    small.densities = {0.2, 1.0};
    const bool same = random_json(small, random_experiment(small)) == random_json(small, random_experiment(small));
    detail(std::string("repeat with the same seed ") + (same ? "byte-identical" : "differs"));
    return ok && same;
  });

  std::cout << (failures ? std::to_string(failures) + " criteria failed\n" : "all criteria passed\n");
  return failures ? 1 : 0;
}
