// SPDX-License-Identifier: Apache-2.0
//
// Small deterministic CDCL solver: two watched literals, first-UIP learning,
// VSIDS, phase saving, Luby restarts. Clauses may be added between calls.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace psat {

class SatSolver {
 public:
  enum class Result { Sat, Unsat, Unknown };

  // Variables are 1-based; literal v or -v.
  int new_var();
  void ensure_vars(int n);
  int num_vars() const { return static_cast<int>(assigns_.size()); }

  // Returns false once the formula is known unsatisfiable.
  bool add_clause(std::span<const int> lits);
  bool add_clause(std::initializer_list<int> lits) {
    return add_clause(std::span<const int>(lits.begin(), lits.size()));
  }

  // conflict_limit < 0 means unlimited.
  Result solve(std::int64_t conflict_limit = -1);

  // Model value after Sat.
  bool model_value(int var) const { return model_[static_cast<std::size_t>(var - 1)]; }

  std::int64_t conflicts() const { return conflicts_; }
  std::int64_t decisions() const { return decisions_; }
  std::int64_t propagations() const { return propagations_; }
  std::size_t num_clauses() const { return num_original_; }
  bool okay() const { return ok_; }

 private:
  using Lit = std::uint32_t;
  static constexpr int kUndef = 2;
  static Lit mk(int ext) {
    return ext > 0 ? static_cast<Lit>(2 * (ext - 1)) : static_cast<Lit>(2 * (-ext - 1) + 1);
  }
  static std::uint32_t var(Lit l) { return l >> 1; }
  static Lit neg(Lit l) { return l ^ 1u; }

  struct ClauseHdr {
    std::uint32_t start;
    std::uint32_t size;
    float activity;
    bool learnt;
    bool deleted;
  };
  struct Watcher {
    std::uint32_t cref;
    Lit blocker;
  };

  int value(Lit l) const {
    const int a = assigns_[var(l)];
    return a == kUndef ? kUndef : (a ^ static_cast<int>(l & 1u));
  }
  int level() const { return static_cast<int>(trail_lim_.size()); }

  std::uint32_t alloc_clause(const std::vector<Lit>& lits, bool learnt);
  void attach(std::uint32_t cr);
  void enqueue(Lit l, std::int64_t reason);
  std::int64_t propagate();
  void analyze(std::uint32_t confl, std::vector<Lit>& out, int& bt_level);
  void cancel_until(int lvl);
  Lit pick_branch();
  void bump_var(std::uint32_t v);
  void bump_clause(std::uint32_t cr);
  void reduce_db();
  bool locked(std::uint32_t cr) const;

  // heap of variables by activity
  void heap_insert(std::uint32_t v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  std::uint32_t heap_pop();
  bool heap_less(std::uint32_t a, std::uint32_t b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }

  bool ok_ = true;
  std::vector<Lit> arena_;
  std::vector<ClauseHdr> clauses_;
  std::vector<std::uint32_t> learnts_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::uint8_t> assigns_;
  std::vector<std::uint8_t> phase_;
  std::vector<std::uint8_t> model_;
  std::vector<std::int64_t> reason_;
  std::vector<int> levels_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  float cla_inc_ = 1.0f;
  std::vector<std::uint32_t> heap_;
  std::vector<int> heap_pos_;
  std::vector<std::uint8_t> seen_;
  std::int64_t conflicts_ = 0, decisions_ = 0, propagations_ = 0;
  std::size_t num_original_ = 0;
  double max_learnts_ = 0;
};

}  // namespace psat
