// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <json.hpp>
#include <random>

#include "psat/classification.hpp"
#include "psat/symmetry.hpp"

using namespace psat;

namespace {

const Sweep& fi3() {
  static const Sweep s = classify_all(3, Mode::FiPcsp);
  return s;
}

// Every predicate of arity k (0 allowed), as masks.
std::vector<Predicate> all_predicates(int k) {
  std::vector<Predicate> out;
  const std::uint64_t n = std::uint64_t{1} << (1u << k);
  for (std::uint64_t m = 1; m + 1 < n; ++m) out.emplace_back(k, Mask::from_u64(m));
  return out;
}

Status fi_status(const Sweep& fi, const Predicate& a) {
  const auto* r = fi.find(a);
  REQUIRE(r != nullptr);
  return r->status;
}

}  // namespace

TEST_CASE("single predicate verdicts") {
  const auto b2 = HardnessBudgets::defaults(2);
  const auto maj = classify_promise_sat(parse_predicate("01,10,11"), b2);
  CHECK(maj.status == Status::Tractable);
  REQUIRE(!maj.witnesses.empty());
  CHECK(maj.witnesses.front().family == Family::Maj);

  const auto hard = classify_promise_sat(parse_predicate("001,010,011,100"), HardnessBudgets::defaults(3));
  CHECK(hard.status == Status::NPHard);
  REQUIRE(hard.certificate);
  CHECK(!hard.inconclusive);

  // 1-in-3 with the promise of OR: Par is a polymorphism.
  CHECK(classify_promise_sat(parse_predicate("001,010,100"), HardnessBudgets::defaults(3)).status ==
        Status::Tractable);
}

TEST_CASE("k=3 counts") {
  const auto s = fi3().summary();
  CHECK(s.total == 39);
  CHECK(s.positive == 33);
  CHECK(s.negative == 6);
  CHECK(s.unknown == 0);
  CHECK(s.inconclusive == 0);
  const auto j = nlohmann::json::parse(s.json(3, Mode::FiPcsp));
  CHECK(j["total"] == 39);

  const auto f = derive_fpcsp(fi3()).summary();
  CHECK(f.total == 32);
  CHECK(f.positive == 28);
  CHECK(f.negative == 4);

  const auto u = derive_usefulness(fi3()).summary();
  CHECK(u.total == 20);
  CHECK(u.positive == 16);
  CHECK(u.negative == 4);
}

TEST_CASE("direct verdicts agree with the sweep under permutation") {
  const auto b = HardnessBudgets::defaults(3);
  std::mt19937_64 rng(3);
  for (const auto& a : all_predicates(3)) {
    if (a.contains_zero()) continue;
    if (rng() % 3) continue;
    CHECK(classify_promise_sat(a, b).status == fi_status(fi3(), a));
  }
}

TEST_CASE("fPCSP and usefulness agree with their definitions on k=3") {
  const Sweep f = derive_fpcsp(fi3());
  const Sweep u = derive_usefulness(fi3());
  const Point top = all_ones(3);
  for (const auto& a : all_predicates(3)) {
    if (!a.contains_zero()) {
      // Without 1^k the non-idempotent problem is tractable iff A or its
      // complement-shift is.
      Status want = fi_status(fi3(), a);
      if (!a.contains(top)) {
        const Status inv = fi_status(fi3(), xor_shift(a, top));
        if (inv == Status::Tractable) want = Status::Tractable;
        if (want == Status::NPHard && inv != Status::NPHard) want = Status::Unknown;
      }
      CHECK(f.find(a)->status == want);
    }
    // Useful iff some b ∉ A shifts A to a tractable predicate.
    bool useful = false, all_hard = true;
    for (Point x = 0; x <= top; ++x) {
      if (a.contains(x)) continue;
      const Status s = fi_status(fi3(), xor_shift(a, x));
      useful |= s == Status::Tractable;
      all_hard &= s == Status::NPHard;
    }
    const Status got = u.find(a)->status;
    CHECK(got == (useful ? Status::Useful : all_hard ? Status::Useless : Status::Unknown));
    const auto screen = usefulness_screen(a);
    if (screen.bits) CHECK(got == Status::Useful);
  }
}

TEST_CASE("records come in canonical predicate order") {
  for (const Sweep* s : {&fi3()}) {
    for (std::size_t i = 0; i < s->records.size(); ++i) {
      const auto& r = s->records[i];
      CHECK(canonical_form(r.predicate, Group::Perm) == r.predicate);
      if (i) CHECK(s->records[i - 1].predicate < r.predicate);
    }
  }
}

TEST_CASE("extremal tables k=3") {
  const auto e = minimal_maximal(fi3());
  CHECK(e.maximal_positive.size() == 2);
  REQUIRE(e.minimal_negative.size() == 1);
  CHECK(e.minimal_negative.front().predicate.size() == 4);
  const auto u = minimal_maximal(derive_usefulness(fi3()));
  CHECK(u.maximal_positive.size() == 2);
  CHECK(u.minimal_negative.size() == 2);

  Sweep partial = fi3();
  partial.records.pop_back();
  partial.complete = false;
  partial.reindex();
  CHECK_THROWS_AS(minimal_maximal(partial), std::invalid_argument);
}

TEST_CASE("arity bounds and audit guard") {
  CHECK_THROWS(classify_all(1, Mode::FiPcsp));
  CHECK_THROWS(classify_all(6, Mode::FiPcsp));
  // Non-audit sweeps do not decide every theorem on hard records.
  const Sweep s = classify_all(3, Mode::FiPcsp);
  bool all_complete = true;
  for (const auto& r : s.records)
    if (r.status == Status::NPHard) all_complete &= r.theorems_complete;
  if (!all_complete) CHECK_THROWS_AS(hardness_audit(s), std::invalid_argument);
  SweepOptions opt;
  opt.audit = true;
  CHECK_NOTHROW(hardness_audit(classify_all(3, Mode::FiPcsp, opt)));
}

TEST_CASE("mode and status names round trip") {
  for (Mode m : {Mode::FiPcsp, Mode::FPcsp, Mode::Usefulness}) CHECK(parse_mode(mode_name(m)) == m);
  for (Status s : {Status::Tractable, Status::NPHard, Status::Useful, Status::Useless, Status::Unknown})
    CHECK(parse_status(status_name(s)) == s);
  CHECK(!parse_mode("sat"));
}

TEST_CASE("random harness is nested and reproducible") {
  RandomConfig cfg;
  cfg.k = 4;
  cfg.densities = {0.2, 0.5, 1.0};
  cfg.samples = 4;
  cfg.seed = 99;
  const auto a = random_experiment(cfg);
  const auto b = random_experiment(cfg);
  CHECK(random_json(cfg, a) == random_json(cfg, b));
  for (int s = 0; s < cfg.samples; ++s)
    for (std::size_t d = 1; d < a.size(); ++d) {
      const auto& lo = a[d - 1].verdicts[static_cast<std::size_t>(s)];
      const auto& hi = a[d].verdicts[static_cast<std::size_t>(s)];
      if (lo.predicate && hi.predicate) CHECK(lo.predicate->mask().subset_of(hi.predicate->mask()));
      if (lo.screened) CHECK(lo.non_dictator == QueryStatus::Present);
    }
  CHECK(a.back().non_dictator == 0);
  CHECK(a.back().verdicts.front().predicate->size() == 15);

  cfg.samples = 0;
  const auto none = random_experiment(cfg);
  CHECK(none.size() == 3);
  CHECK(none.front().samples == 0);
}
