// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "psat/function_table.hpp"
#include "psat/poly_engine.hpp"
#include "psat/symmetry.hpp"
#include "psat/tractability.hpp"

using namespace psat;

namespace {

struct Quintet {
  const char* predicate;
  Family family;
};
const Quintet kQuintet[] = {
    {"01,10,11", Family::Maj},
    {"001,010,100,111", Family::Par},
    {"00011,00101,00110,01000,10000", Family::AT},
    {"0011,0100,0110,1000,1001", Family::IdMaj},
    {"00111,01010,01101,10000,10011", Family::IdPar},
};

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
  std::stringstream in(s);
  for (std::string part; std::getline(in, part, sep);) out.push_back(part);
  return out;
}

}  // namespace

TEST_CASE("family test examples") {
  CHECK(test_maj(parse_predicate("01,10,11")) == std::vector<long long>{1, 1});
  CHECK(!test_maj(parse_predicate("001,010,100,111")));
  CHECK(test_maj(parse_predicate("11")));

  CHECK(test_par(parse_predicate("001,010,100,111")) == parse_point("111"));
  CHECK(!test_par(parse_predicate("01,10,11")));
  CHECK(test_par(parse_predicate("11")));

  const auto at = test_at(parse_predicate("00011,00101,00110,01000,10000"));
  REQUIRE(at);
  CHECK(at->c == std::vector<long long>{2, 2, 1, 1, 1});
  CHECK(at->value == 2);
  CHECK(!test_at(parse_predicate("01,10,11")));
  const auto at11 = test_at(parse_predicate("11"));
  REQUIRE(at11);

  CHECK(test_id_maj(parse_predicate("0011,0100,0110,1000,1001")).present);
  const auto im = test_id_maj(parse_predicate("01,10,11"));
  CHECK(!im.present);
  CHECK(im.failing_s == parse_point("11"));
  CHECK(test_id_maj(parse_predicate("11")).present);
  CHECK(test_id_maj(parse_predicate("11")).admissible == 0);

  CHECK(test_id_par(parse_predicate("00111,01010,01101,10000,10011")).present);
  CHECK(!test_id_par(parse_predicate("001,010,100,111")).present);
  CHECK(test_id_par(parse_predicate("11")).present);
}

TEST_CASE("screen examples") {
  for (const auto& q : kQuintet) {
    const auto s = five_family_screen(parse_predicate(q.predicate));
    INFO(q.predicate);
    for (Family f : kScreenFamilies) CHECK(s.has(f) == (f == q.family));
  }
  const auto all = five_family_screen(parse_predicate("11"));
  for (Family f : kScreenFamilies) CHECK(all.has(f));
  CHECK(!five_family_screen(parse_predicate("001,010,011,100")).tractable());
}

TEST_CASE("printed obstructions are genuine") {
  std::ifstream in(std::string(PSAT_GOLDEN_DIR) + "/quintet_obstructions.csv");
  REQUIRE(in);
  std::string line;
  std::getline(in, line);
  int n = 0;
  while (std::getline(in, line)) {
    const auto close = line.find('"', 1);
    const auto a = parse_predicate(line.substr(1, close - 1));
    const auto rest = split(line.substr(close + 2), ',');
    const auto f = named_function(rest[0]);
    const auto o = Obstruction::from_rows(split(rest[1], ';'));
    INFO(line);
    CHECK(is_obstruction(a, f, o));
    CHECK(!verify_polymorphism(a, f).ok);
    ++n;
  }
  CHECK(n == 20);
}

TEST_CASE("family tests agree with explicit members") {
  // Present means every member passes; absent means all members of large
  // enough arity fail, so one of the tested arities must already fail.
  auto check = [](const Predicate& a, bool present, FunctionTable (*make)(int)) {
    bool all = true;
    for (int ell : {3, 5, 7, 9}) all = all && verify_polymorphism(a, make(ell)).ok;
    CHECK(all == present);
  };
  for (int k = 2; k <= 3; ++k)
    for (const auto& a : enumerate_canonical(k, Group::Perm)) {
      INFO(a.to_string());
      check(a, test_maj(a).has_value(), make_maj);
      check(a, test_par(a).has_value(), make_par);
      check(a, test_at(a).has_value(), make_at);
      check(a, test_id_maj(a).present, make_idmaj);
      check(a, test_id_par(a).present, make_idpar);
    }
}

TEST_CASE("shift duality and AT subsumption") {
  for (int k = 2; k <= 4; ++k)
    for (const auto& a : enumerate_canonical(k, Group::Perm)) {
      const auto inv = xor_shift(a, all_ones(k));
      if (!inv.contains_zero()) {
        CHECK(test_inv_maj(a).has_value() == test_maj(inv).has_value());
        CHECK(test_inv_par(a).has_value() == test_par(inv).has_value());
      }
      if (test_at(a)) CHECK((test_maj(a) || test_inv_maj(a)));
    }
  // ¬Maj(x) = Maj(¬x) for odd arity.
  const auto a = parse_predicate("001,010,100,111");
  CHECK(test_inv_maj(a).has_value() == verify_polymorphism(a, make_maj_neg(5)).ok);
}

TEST_CASE("blp aip status") {
  const auto s = blp_aip_status(parse_predicate("01,10,11"));
  CHECK(s.kind == BlpAipVerdict::Kind::Solvable);
  CHECK(s.screen.has(Family::Maj));
  const auto r = blp_aip_status(parse_predicate("001,010,011,100"), 4);
  CHECK(r.kind == BlpAipVerdict::Kind::RefutedAt);
  CHECK(r.ell == 2);
  CHECK(r.witnesses.size() == 1);
}
