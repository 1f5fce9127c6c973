// SPDX-License-Identifier: Apache-2.0
//
// Per-predicate verdicts, exhaustive sweeps with monotone propagation, the
// non-idempotent and usefulness liftings, extremal tables and the random
// predicate harness.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psat/hardness.hpp"
#include "psat/predicate.hpp"
#include "psat/symmetry.hpp"
#include "psat/tractability.hpp"

namespace psat {

enum class Mode { FiPcsp, FPcsp, Usefulness };
const char* mode_name(Mode m);
std::optional<Mode> parse_mode(const std::string& s);
Group group_for(Mode m);

enum class Status { Tractable, NPHard, Useful, Useless, Unknown };
const char* status_name(Status s);
std::optional<Status> parse_status(const std::string& s);

// Bits of the usefulness screen.
inline constexpr unsigned kUsefulMaj = 1, kUsefulPar = 2;

struct ClassificationRecord {
  Predicate predicate;  // canonical under group_for(mode)
  Mode mode = Mode::FiPcsp;
  Status status = Status::Unknown;
  std::vector<FamilyWitness> witnesses;
  std::optional<HardnessCertificate> certificate;
  // Usefulness: the shift b with A ⊕ b tractable. fPCSP: 1^k when the
  // verdict comes from A ⊕ 1^k.
  std::optional<Point> shift;
  unsigned family_bits = 0;   // screen families (fiPCSP) or usefulness screen bits
  unsigned theorem_bits = 0;  // theorems that hold, bit i for kTheorems[i]
  bool theorems_complete = false;  // all four decided (audit)
  bool inconclusive = false;
  bool split_reading_differs = false;
  std::string note;  // budget report for Unknown, BLP+AIP status
  std::optional<Predicate> from;  // propagated or derived from this record

  bool direct() const { return !from.has_value(); }
  // Certificate or witness payload as compact JSON.
  std::string certificate_json() const;
};

struct SweepOptions {
  bool audit = false;
  int jobs = 1;
  int ell_budget = 9;
  std::optional<HardnessBudgets> budgets;  // defaults(k) when unset
  // Directory for the resumable cache of direct evaluations; empty disables.
  std::string cache_dir;
  std::function<void(const std::string&)> progress;
};

// ell_budget 0 skips the block-symmetric scan for Unknown verdicts.
ClassificationRecord classify_promise_sat(const Predicate& a, const HardnessBudgets& b,
                                          bool audit = false, int ell_budget = 9);

struct Summary {
  int total = 0, positive = 0, negative = 0, unknown = 0;  // tractable/useful, hard/useless
  int inconclusive = 0;
  std::string json(int k, Mode m) const;
};

struct Sweep {
  int k = 0;
  Mode mode = Mode::FiPcsp;
  std::vector<ClassificationRecord> records;  // increasing predicate_id

  Summary summary() const;
  // Record of the orbit containing a (any member).
  const ClassificationRecord* find(const Predicate& a) const;

  bool complete = false;  // one record per canonical predicate
  std::map<Mask, std::size_t> index;  // canonical mask -> record
  void reindex();
};

Sweep classify_all(int k, Mode mode, const SweepOptions& opt = {});

// Liftings from a completed fiPCSP sweep of the same arity.
Sweep derive_fpcsp(const Sweep& fi);
Sweep derive_usefulness(const Sweep& fi, bool audit = false);

// Standalone verdicts; both classify the needed fiPCSP instances directly.
ClassificationRecord classify_fpcsp(const Predicate& a, const HardnessBudgets& b);
ClassificationRecord classify_usefulness(const Predicate& a, const HardnessBudgets& b);

// Sufficient usefulness conditions: a nonzero α with Σ αᵢ(aᵢ − 1/2) ≥ 0,
// or a parity constant on A. Returns the screen bits and a shift b ∉ A for
// which A ⊕ b admits Maj (resp. Par).
struct UsefulnessScreen {
  unsigned bits = 0;
  std::optional<Point> maj_shift, par_shift;
};
UsefulnessScreen usefulness_screen(const Predicate& a);

struct ExtremalRow {
  Predicate predicate;
  unsigned marks = 0;  // family_bits or theorem_bits
  int exclusive = 0, total = 0;
};

struct Extremal {
  std::vector<ExtremalRow> maximal_positive;  // maximal tractable / useful
  std::vector<ExtremalRow> minimal_negative;  // minimal hard / useless
};

// Requires a complete sweep; throws std::invalid_argument otherwise.
Extremal minimal_maximal(const Sweep& s);

// Per column: how many records have the mark (total) and how many have no
// other mark (exclusive).
struct ColumnAudit {
  std::vector<std::string> names;
  std::vector<int> exclusive, total;
  std::string json() const;
};
// Screen families over tractable fiPCSP records.
ColumnAudit family_audit(const Sweep& s);
// Theorems over hard fiPCSP records; every one must be decided in full
// (an audit sweep), otherwise std::invalid_argument.
ColumnAudit hardness_audit(const Sweep& s);

struct RandomVerdict {
  std::optional<Predicate> predicate;  // the sample as drawn; nullopt when empty
  QueryStatus non_dictator = QueryStatus::Absent;
  bool screened = false;  // passes the five-family screen
};

struct RandomStats {
  double p = 0;
  int samples = 0, empty = 0;
  int non_dictator = 0, screened = 0, inconclusive = 0;
  std::vector<RandomVerdict> verdicts;  // one per sample
};

struct RandomConfig {
  int k = 6;
  std::vector<double> densities;  // coupled: one uniform per string and sample
  int samples = 0;
  std::uint64_t seed = 1;
  EngineConfig engine;
};

// Uses one U[0,1) draw per nonzero string and sample, so the predicates for
// increasing densities are nested.
std::vector<RandomStats> random_experiment(const RandomConfig& cfg);
std::string random_json(const RandomConfig& cfg, const std::vector<RandomStats>& stats);

// Arity-6 folded idempotent query with all six dictators excluded.
PolymorphismQuery non_dictator_query(const Predicate& a, int arity = 6);

}  // namespace psat
