// SPDX-License-Identifier: Apache-2.0
//
// Fixing-assignment hardness conditions. Every condition reduces to the
// absence of a pinned polymorphism of small arity, or to a cover test.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "psat/poly_engine.hpp"
#include "psat/predicate.hpp"

namespace psat {

// Query builders. M⁰ queries carry one extra leading variable pinned to 0.
PolymorphismQuery unate_query(const Predicate& a);
PolymorphismQuery matching_query(const Predicate& a, int t);
PolymorphismQuery inverted_matching_query(const Predicate& a, int t);
PolymorphismQuery ada_query(const Predicate& a, int c, int d, bool in_pol0 = true);
PolymorphismQuery uncada_query(const Predicate& a, int c, int d);
PolymorphismQuery undada_query(const Predicate& a, int t);

enum class Tri { Yes, No, Inconclusive };
const char* tri_name(Tri t);

// Yes iff every polymorphism is unate.
Tri unate_minion(const Predicate& a, const EngineConfig& cfg = {});

struct BoundResult {
  std::optional<int> t;       // smallest t <= t_max at which the condition holds
  bool inconclusive = false;  // some query below the answer hit a budget
  int queries = 0;
};

BoundResult matching_bound(const Predicate& a, int t_max, const EngineConfig& cfg = {});
BoundResult inverted_matching_bound(const Predicate& a, int t_max, const EngineConfig& cfg = {});
// t-ADA-freeness of M⁰ (or of M when in_pol0 is false), t >= 2.
BoundResult ada_free(const Predicate& a, int t_max, const EngineConfig& cfg = {},
                     bool in_pol0 = true);
BoundResult uncada_free(const Predicate& a, int t_max, const EngineConfig& cfg = {});
BoundResult undada_free(const Predicate& a, int t_max, const EngineConfig& cfg = {});

// Cover tests. When the answer is false, `obstruction` receives a matrix for
// AND_{k-1} (k columns) or xNOR_k (k+1 columns) with the leading column being
// the 0-fixed variable.
bool and_in_pol0(const Predicate& a, Obstruction* obstruction = nullptr);
bool xnor_in_pol0(const Predicate& a, Obstruction* obstruction = nullptr);

// Smallest t with AND_t (resp. xNOR_t) outside M⁰, by verifying the
// determined table of its (t+1)-ary lift; nullopt when none below the
// cover-test bound.
std::optional<int> smallest_and_free(const Predicate& a);
std::optional<int> smallest_xnor_free(const Predicate& a);

enum class Theorem { MatchADA, InvMatchADA, UnateXnorADA, Split };
inline constexpr Theorem kTheorems[] = {Theorem::MatchADA, Theorem::InvMatchADA,
                                        Theorem::UnateXnorADA, Theorem::Split};
const char* theorem_name(Theorem t);

struct HardnessBudgets {
  int matching = 4, inv_matching = 3, ada = 4, uncada = 4, undada = 5;
  EngineConfig engine;
  // Smallest parameters known to suffice for every hard predicate of arity k.
  static HardnessBudgets reference(int k);
  // reference(k) plus one slack step.
  static HardnessBudgets defaults(int k);
};

struct TheoremOutcome {
  bool evaluated = false;
  bool holds = false;
  bool inconclusive = false;
  int t1 = 0, t2 = 0;  // Split uses t1 only
  int size_bound = 0;
};

struct HardnessCertificate {
  Theorem theorem = Theorem::MatchADA;
  int t1 = 0, t2 = 0;
  int size_bound = 0;
  std::string json() const;
  static HardnessCertificate from_json(const std::string& text);
};

struct HardnessReport {
  std::array<TheoremOutcome, 4> outcomes{};
  Tri unate = Tri::Inconclusive;
  BoundResult ada, matching, inv_matching, uncada, undada;
  std::optional<int> xnor_t;
  bool evaluated_ada = false, evaluated_matching = false, evaluated_inv = false,
       evaluated_uncada = false, evaluated_undada = false, evaluated_unate = false,
       evaluated_xnor = false;
  // Split fails on M⁰ ADA-freeness but would hold if freeness were read on M.
  bool split_reading_differs = false;
  std::optional<HardnessCertificate> certificate;  // first theorem that holds
  bool any_inconclusive() const;
  std::string json() const;
};

// audit = true evaluates all four theorems; otherwise stops at the first
// theorem that holds.
HardnessReport small_fixing_assignments(const Predicate& a, const HardnessBudgets& b,
                                        bool audit = false);

}  // namespace psat
