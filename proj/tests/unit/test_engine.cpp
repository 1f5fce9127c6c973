// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "psat/block_symmetric.hpp"
#include "psat/function_table.hpp"
#include "psat/hardness.hpp"
#include "psat/poly_engine.hpp"
#include "psat/symmetry.hpp"

using namespace psat;

namespace {

const Predicate kHard3 = parse_predicate("001,010,011,100");

// Every hardness query whose free points fit the exhaustive oracle, t <= 3.
std::vector<PolymorphismQuery> small_hardness_queries(const Predicate& a) {
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

void check_against_oracle(const PolymorphismQuery& q) {
  const auto r = exists_polymorphism(q);
  REQUIRE(r.status != QueryStatus::Inconclusive);
  const auto b = brute_force_exists(q);
  INFO(query_json(q));
  CHECK((r.status == QueryStatus::Present) == b.has_value());
  if (r.witness) {
    CHECK(satisfies_constraints(q, *r.witness));
    CHECK(verify_polymorphism(q.predicate, *r.witness).ok);
  }
}

}  // namespace

TEST_CASE("engine examples") {
  const auto u = unate_query(kHard3);
  CHECK(exists_polymorphism(u).status == QueryStatus::Absent);
  CHECK(!brute_force_exists(u));

  PolymorphismQuery id;
  id.predicate = kHard3;
  id.arity = 1;
  const auto r = exists_polymorphism(id);
  REQUIRE(r.witness);
  CHECK(*r.witness == make_dictator(1, 1));
  CHECK(*brute_force_exists(id) == make_dictator(1, 1));

  PolymorphismQuery all;
  all.predicate = parse_predicate("11");
  all.arity = 6;
  const auto s = exists_polymorphism(all);
  REQUIRE(s.witness);
  CHECK(s.witness->is_folded());
  CHECK(s.witness->is_idempotent());
}

TEST_CASE("verify examples") {
  const auto a = parse_predicate("01,10,11");
  const auto v = verify_polymorphism(a, make_par(3));
  CHECK(!v.ok);
  REQUIRE(v.obstruction);
  CHECK(is_obstruction(a, make_par(3), *v.obstruction));
  CHECK(is_obstruction(a, make_par(3), Obstruction::from_rows({"011", "101"})));
  CHECK(verify_polymorphism(a, make_maj(3)).ok);
}

TEST_CASE("dictators are polymorphisms") {
  for (int k = 2; k <= 3; ++k)
    for (const auto& a : enumerate_canonical(k, Group::Perm))
      for (int ell = 1; ell <= 4; ++ell)
        for (int i = 1; i <= ell; ++i) CHECK(verify_polymorphism(a, make_dictator(ell, i)).ok);
}

TEST_CASE("engine agrees with the exhaustive oracle on hardness queries, k <= 3") {
  for (int k = 2; k <= 3; ++k)
    for (const auto& a : enumerate_canonical(k, Group::Perm))
      for (const auto& q : small_hardness_queries(a)) check_against_oracle(q);
}

TEST_CASE("engine agrees with the oracle on random pinned queries") {
  std::mt19937_64 rng(7);
  for (int k = 2; k <= 3; ++k)
    for (const auto& a : enumerate_canonical(k, Group::Perm))
      for (int rep = 0; rep < 6; ++rep) {
        PolymorphismQuery q;
        q.predicate = a;
        q.arity = 2 + static_cast<int>(rng() % 3);
        q.folded = rng() % 4 != 0;
        q.idempotent = rng() % 3 != 0;
        const int npins = static_cast<int>(rng() % 4);
        for (int i = 0; i < npins; ++i)
          q.pins.emplace_back(static_cast<Point>(rng() % (1u << q.arity)), rng() % 2);
        if (rng() % 2) {
          q.signs.assign(static_cast<std::size_t>(q.arity), Sign::Free);
          for (auto& s : q.signs) s = static_cast<Sign>(rng() % 3);
        }
        check_against_oracle(q);
      }
}

TEST_CASE("adding a pin never creates a polymorphism") {
  std::mt19937_64 rng(11);
  for (const auto& a : enumerate_canonical(3, Group::Perm)) {
    PolymorphismQuery q;
    q.predicate = a;
    q.arity = 5;
    bool present = true;
    for (int i = 0; i < 6; ++i) {
      q.pins.emplace_back(static_cast<Point>(rng() % 32), rng() % 2);
      const bool now = exists_polymorphism(q).status == QueryStatus::Present;
      CHECK((present || !now));
      present = now;
    }
  }
}

TEST_CASE("excluded tables are avoided") {
  PolymorphismQuery q;
  q.predicate = parse_predicate("01,10,11");
  q.arity = 3;
  for (int i = 1; i <= 3; ++i) q.excluded.push_back(make_dictator(3, i));
  const auto r = exists_polymorphism(q);
  REQUIRE(r.witness);
  CHECK(*r.witness == make_maj(3));
  q.excluded.push_back(make_maj(3));
  CHECK(exists_polymorphism(q).status == QueryStatus::Absent);
  CHECK(!brute_force_exists(q));
}

TEST_CASE("folded half round trip") {
  for (const auto& f : {make_maj(5), make_par(3), make_at(4), make_dictator(6, 2)}) {
    if (!f.is_folded()) continue;
    CHECK(FunctionTable::from_folded_half(f.arity(), f.folded_half()) == f);
  }
  const auto g = make_maj(7);
  CHECK(FunctionTable::from_hex(7, g.hex()) == g);
}

TEST_CASE("block symmetric search") {
  CHECK(block_symmetric_exists(kHard3, 2).status == BlockSymmetricResult::Status::Absent);
  for (int k = 2; k <= 3; ++k)
    for (const auto& a : enumerate_canonical(k, Group::Perm)) {
      const auto r = block_symmetric_exists(a, 1);
      REQUIRE(r.status == BlockSymmetricResult::Status::Present);
      CHECK(verify_two_block(a, *r.table));
      CHECK(verify_polymorphism(a, r.table->expand()).ok);
      const auto r2 = block_symmetric_exists(a, 2);
      if (r2.table) CHECK(verify_polymorphism(a, r2.table->expand()).ok);
      // Absence at ℓ = 2 means no folded idempotent table of block weights
      // survives the function-level check either.
      if (r2.status == BlockSymmetricResult::Status::Absent) {
        bool any = false;
        for (std::uint64_t m = 0; m < (1u << 12) && !any; ++m) {
          TwoBlockTable g{2, std::vector<std::uint8_t>(12)};
          bool ok = true;
          for (int s1 = 0; s1 <= 2 && ok; ++s1)
            for (int s2 = 0; s2 <= 3 && ok; ++s2) {
              const auto v = static_cast<std::uint8_t>((m >> (s1 * 4 + s2)) & 1u);
              g.value[static_cast<std::size_t>(s1 * 4 + s2)] = v;
              const auto mirror = (m >> ((2 - s1) * 4 + 3 - s2)) & 1u;
              ok = v != mirror;
            }
          if (!ok || g(0, 0) || !g(2, 3)) continue;
          any = verify_polymorphism(a, g.expand()).ok;
        }
        CHECK(!any);
      }
    }
}
