// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "psat/function_table.hpp"
#include "psat/hardness.hpp"
#include "psat/symmetry.hpp"

using namespace psat;

namespace {

const Predicate kHard3 = parse_predicate("001,010,011,100");
const Predicate kSplit4 = parse_predicate("0011,0101,0110,1000,1001");

// AND_{k-1} (resp. xNOR_k) lies in M⁰ iff its determined lift is a polymorphism.
bool and_direct(const Predicate& a) { return verify_polymorphism(a, make_and_pol0(a.arity() - 1)).ok; }
bool xnor_direct(const Predicate& a) { return verify_polymorphism(a, make_xnor_pol0(a.arity())).ok; }

}  // namespace

TEST_CASE("unate minion examples") {
  CHECK(unate_minion(kHard3) == Tri::Yes);
  CHECK(unate_minion(parse_predicate("001,010,100,111")) == Tri::No);
  CHECK(unate_minion(parse_predicate("00011,00111,01001,01010,01100,10000")) == Tri::Yes);
}

TEST_CASE("matching bounds") {
  CHECK(matching_bound(kHard3, 3).t == 1);
  const auto m4 = matching_bound(parse_predicate("0001,0010,0011,0100"), 4);
  REQUIRE(m4.t);
  CHECK(*m4.t <= 3);
  CHECK(!matching_bound(parse_predicate("11"), 4).t);

  // The parameter table bounds this by 2; the oracle shows t = 1 already suffices.
  const auto i3 = inverted_matching_bound(kHard3, 3);
  REQUIRE(i3.t);
  CHECK(*i3.t <= 2);
  CHECK(!brute_force_exists(inverted_matching_query(kHard3, 1)));
  CHECK(*i3.t == 1);
  const auto i4 = inverted_matching_bound(parse_predicate("0001,0010,0011,0100"), 4);
  REQUIRE(i4.t);
  CHECK(*i4.t <= 2);
  CHECK(!inverted_matching_bound(parse_predicate("11"), 3).t);
}

TEST_CASE("ADA family bounds") {
  CHECK(ada_free(kHard3, 5).t == 2);
  CHECK(!ada_free(parse_predicate("11"), 4).t);
  CHECK(uncada_free(kHard3, 4).t == 2);
  const auto u4 = uncada_free(kSplit4, 4);
  REQUIRE(u4.t);
  CHECK(*u4.t <= 3);
  CHECK(!uncada_free(parse_predicate("11"), 3).t);
  CHECK(undada_free(kHard3, 5).t == 3);
  const auto d4 = undada_free(kSplit4, 5);
  REQUIRE(d4.t);
  CHECK(*d4.t <= 4);
  CHECK(!undada_free(parse_predicate("11"), 4).t);
}

TEST_CASE("cover tests") {
  Obstruction o;
  CHECK(!and_in_pol0(kHard3, &o));
  CHECK(o.columns == std::vector<Point>{parse_point("001"), parse_point("010"), parse_point("100")});
  CHECK(is_obstruction(kHard3, make_and_pol0(2), o));
  CHECK(and_in_pol0(parse_predicate("011,101,110")));
  CHECK(and_in_pol0(parse_predicate("11")));

  CHECK(!xnor_in_pol0(kHard3, &o));
  CHECK(o.columns[0] == parse_point("001"));
  CHECK(o.columns[1] == parse_point("010"));
  CHECK(o.columns[2] == parse_point("011"));
  CHECK(is_obstruction(kHard3, make_xnor_pol0(3), o));
  CHECK(xnor_in_pol0(parse_predicate("11")));
  CHECK(xnor_in_pol0(parse_predicate("011,101,110")) == xnor_direct(parse_predicate("011,101,110")));
}

TEST_CASE("cover tests agree with determined tables on all canonical k <= 4") {
  for (int k = 2; k <= 4; ++k)
    for (const auto& a : enumerate_canonical(k, Group::Perm)) {
      Obstruction o;
      const bool and0 = and_in_pol0(a, &o);
      CHECK(and0 == and_direct(a));
      if (!and0) CHECK(is_obstruction(a, make_and_pol0(k - 1), o));
      const bool x0 = xnor_in_pol0(a, &o);
      CHECK(x0 == xnor_direct(a));
      if (!x0) CHECK(is_obstruction(a, make_xnor_pol0(k), o));
    }
}

TEST_CASE("combinator examples") {
  const auto b3 = HardnessBudgets::defaults(3);
  const auto r = small_fixing_assignments(kHard3, b3, true);
  for (const auto& o : r.outcomes) CHECK(o.holds);
  REQUIRE(r.certificate);
  CHECK(r.certificate->theorem == Theorem::MatchADA);
  CHECK(r.certificate->size_bound == 1);

  const auto s = small_fixing_assignments(kSplit4, HardnessBudgets::defaults(4), true);
  CHECK(!s.outcomes[0].holds);
  CHECK(!s.outcomes[1].holds);
  CHECK(!s.outcomes[2].holds);
  CHECK(s.outcomes[3].holds);
  REQUIRE(s.certificate);
  CHECK(s.certificate->theorem == Theorem::Split);

  const auto t = small_fixing_assignments(parse_predicate("01,10,11"), HardnessBudgets::defaults(2), true);
  CHECK(!t.certificate);
  CHECK(!t.any_inconclusive());
}
