// SPDX-License-Identifier: Apache-2.0
//
// Existence of constrained polymorphisms of fiPCSP(A, OR).
//
// f: {0,1}^ℓ -> {0,1} is a polymorphism when for every M ∈ A^ℓ (k rows,
// ℓ columns, each column in A) applying f to the rows gives a nonzero string.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psat/function_table.hpp"
#include "psat/predicate.hpp"

namespace psat {

enum class Sign { Free, Positive, Negative };

struct PolymorphismQuery {
  Predicate predicate;
  int arity = 1;
  bool folded = true;
  bool idempotent = true;
  std::vector<Sign> signs;                   // empty means all free
  std::vector<std::pair<Point, bool>> pins;  // point over ℓ bits, value
  std::vector<FunctionTable> excluded;
  std::string label;                         // audit only
};

struct EngineConfig {
  // Search-tree nodes (matrix prefixes) visited across generation and
  // counterexample search; exceeding it yields Inconclusive.
  std::uint64_t tuple_budget = 2'000'000'000ull;
  // Nodes spent on eager clause generation before switching to
  // counterexample-guided refinement.
  std::uint64_t eager_limit = 20'000'000ull;
  // Obstructions added per refinement round.
  int batch = 256;
  std::int64_t conflict_budget = 50'000'000;
};

struct Obstruction {
  int k = 0;
  int arity = 0;
  std::vector<Point> columns;  // each column is a point of A (k bits)

  Point row(int i) const;  // 0-indexed row as an ℓ-bit point
  std::vector<std::string> row_strings() const;

  // From k row strings of equal length ℓ.
  static Obstruction from_rows(const std::vector<std::string>& rows);
};

// Whether every column of o lies in A and f maps every row to 0.
bool is_obstruction(const Predicate& a, const FunctionTable& f, const Obstruction& o);

enum class QueryStatus { Present, Absent, Inconclusive };
const char* status_name(QueryStatus s);

struct QueryStats {
  std::uint64_t nodes = 0;
  std::uint64_t clauses = 0;
  std::uint64_t rounds = 0;
  std::int64_t conflicts = 0;
  int free_vars = 0;
  bool eager_complete = false;
};

struct QueryResult {
  QueryStatus status = QueryStatus::Inconclusive;
  std::optional<FunctionTable> witness;
  // For Absent by pin propagation alone: a matrix all of whose rows are
  // forced to 0.
  std::optional<Obstruction> forced_obstruction;
  QueryStats stats;
  std::string note;
};

QueryResult exists_polymorphism(const PolymorphismQuery& q,
                                const EngineConfig& cfg = {});

struct VerifyResult {
  bool ok = false;
  bool inconclusive = false;
  std::optional<Obstruction> obstruction;
};

// Pruned search for an obstruction of f. node_budget 0 means unlimited.
VerifyResult verify_polymorphism(const Predicate& a, const FunctionTable& f,
                                 std::uint64_t node_budget = 0);

// Whether every pin, sign, folding, idempotence and exclusion of q holds.
bool satisfies_constraints(const PolymorphismQuery& q, const FunctionTable& f);

// Exhaustive enumeration of the points left free by pins, idempotence and
// folding (at most 22 of them); arity <= 12.
std::optional<FunctionTable> brute_force_exists(const PolymorphismQuery& q);

// Query JSON for audit dumps.
std::string query_json(const PolymorphismQuery& q);
std::string witness_json(const PolymorphismQuery& q, const FunctionTable& f);

// Builds a query whose function lives in M⁰: given pins on ℓ-bit points for
// the M⁰ function, returns an (ℓ+1)-ary query with the leading variable
// fixed to 0.
PolymorphismQuery lift_pol0(const Predicate& a, int arity,
                            const std::vector<std::pair<Point, bool>>& pins);

}  // namespace psat
