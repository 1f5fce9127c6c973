// SPDX-License-Identifier: Apache-2.0

#include "psat/sat_solver.hpp"

#include <algorithm>
#include <cstdlib>

namespace psat {

namespace {

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

}  // namespace

int SatSolver::new_var() {
  const auto v = static_cast<std::uint32_t>(assigns_.size());
  assigns_.push_back(kUndef);
  phase_.push_back(0);
  reason_.push_back(-1);
  levels_.push_back(0);
  activity_.push_back(0.0);
  seen_.push_back(0);
  heap_pos_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return static_cast<int>(v) + 1;
}

void SatSolver::ensure_vars(int n) {
  while (num_vars() < n) new_var();
}

void SatSolver::heap_insert(std::uint32_t v) {
  if (heap_pos_[v] >= 0) return;
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void SatSolver::heap_up(std::size_t i) {
  const std::uint32_t v = heap_[i];
  while (i > 0) {
    const std::size_t p = (i - 1) / 2;
    if (!heap_less(v, heap_[p])) break;
    heap_[i] = heap_[p];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = p;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void SatSolver::heap_down(std::size_t i) {
  const std::uint32_t v = heap_[i];
  const std::size_t n = heap_.size();
  for (;;) {
    std::size_t c = 2 * i + 1;
    if (c >= n) break;
    if (c + 1 < n && heap_less(heap_[c + 1], heap_[c])) ++c;
    if (!heap_less(heap_[c], v)) break;
    heap_[i] = heap_[c];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = c;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

std::uint32_t SatSolver::heap_pop() {
  const std::uint32_t top = heap_[0];
  heap_pos_[top] = -1;
  const std::uint32_t last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

void SatSolver::bump_var(std::uint32_t v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void SatSolver::bump_clause(std::uint32_t cr) {
  auto& c = clauses_[cr];
  c.activity += cla_inc_;
  if (c.activity > 1e20f) {
    for (auto l : learnts_) clauses_[l].activity *= 1e-20f;
    cla_inc_ *= 1e-20f;
  }
}

std::uint32_t SatSolver::alloc_clause(const std::vector<Lit>& lits, bool learnt) {
  ClauseHdr h{static_cast<std::uint32_t>(arena_.size()),
              static_cast<std::uint32_t>(lits.size()), 0.0f, learnt, false};
  arena_.insert(arena_.end(), lits.begin(), lits.end());
  clauses_.push_back(h);
  return static_cast<std::uint32_t>(clauses_.size() - 1);
}

void SatSolver::attach(std::uint32_t cr) {
  const auto& c = clauses_[cr];
  const Lit* l = &arena_[c.start];
  watches_[l[0]].push_back({cr, l[1]});
  watches_[l[1]].push_back({cr, l[0]});
}

void SatSolver::enqueue(Lit l, std::int64_t reason) {
  const auto v = var(l);
  assigns_[v] = (l & 1u) ? 0 : 1;
  levels_[v] = level();
  reason_[v] = reason;
  trail_.push_back(l);
}

bool SatSolver::add_clause(std::span<const int> ext) {
  if (!ok_) return false;
  std::vector<Lit> lits;
  for (int e : ext) {
    ensure_vars(std::abs(e));
    lits.push_back(mk(e));
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && lits[i + 1] == neg(lits[i])) return true;
    const int val = value(lits[i]);
    if (val == 1) return true;
    if (val == 0) continue;
    kept.push_back(lits[i]);
  }
  ++num_original_;
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], -1);
    if (propagate() >= 0) ok_ = false;
    return ok_;
  }
  attach(alloc_clause(kept, false));
  return true;
}

std::int64_t SatSolver::propagate() {
  std::int64_t confl = -1;
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = neg(p);
    auto& ws = watches_[false_lit];
    ++propagations_;
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const Watcher w = ws[i];
      if (value(w.blocker) == 1) {
        ws[j++] = ws[i++];
        continue;
      }
      auto& c = clauses_[w.cref];
      if (c.deleted) {
        ++i;
        continue;
      }
      Lit* l = &arena_[c.start];
      if (l[0] == false_lit) std::swap(l[0], l[1]);
      ++i;
      const Lit first = l[0];
      if (first != w.blocker && value(first) == 1) {
        ws[j++] = {w.cref, first};
        continue;
      }
      bool moved = false;
      for (std::uint32_t k = 2; k < c.size; ++k)
        if (value(l[k]) != 0) {
          std::swap(l[1], l[k]);
          watches_[l[1]].push_back({w.cref, first});
          moved = true;
          break;
        }
      if (moved) continue;
      ws[j++] = {w.cref, first};
      if (value(first) == 0) {
        confl = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (confl >= 0) break;
  }
  return confl;
}

void SatSolver::analyze(std::uint32_t confl, std::vector<Lit>& out, int& bt_level) {
  int path = 0;
  Lit p = 0;
  bool have_p = false;
  out.clear();
  out.push_back(0);
  std::size_t idx = trail_.size();
  std::int64_t cr = confl;
  do {
    auto& c = clauses_[static_cast<std::size_t>(cr)];
    if (c.learnt) bump_clause(static_cast<std::uint32_t>(cr));
    const Lit* l = &arena_[c.start];
    for (std::uint32_t j = have_p ? 1 : 0; j < c.size; ++j) {
      const Lit q = l[j];
      const auto v = var(q);
      if (seen_[v] || levels_[v] == 0) continue;
      bump_var(v);
      seen_[v] = 1;
      if (levels_[v] >= level())
        ++path;
      else
        out.push_back(q);
    }
    do {
      --idx;
    } while (!seen_[var(trail_[idx])]);
    p = trail_[idx];
    have_p = true;
    cr = reason_[var(p)];
    seen_[var(p)] = 0;
    --path;
  } while (path > 0);
  out[0] = neg(p);

  bt_level = 0;
  std::size_t max_i = 1;
  for (std::size_t i = 1; i < out.size(); ++i)
    if (levels_[var(out[i])] > bt_level) {
      bt_level = levels_[var(out[i])];
      max_i = i;
    }
  if (out.size() > 1) std::swap(out[1], out[max_i]);
  for (Lit q : out) seen_[var(q)] = 0;
}

void SatSolver::cancel_until(int lvl) {
  if (level() <= lvl) return;
  for (std::size_t c = trail_.size(); c > trail_lim_[static_cast<std::size_t>(lvl)]; --c) {
    const auto v = var(trail_[c - 1]);
    phase_[v] = assigns_[v];
    assigns_[v] = kUndef;
    reason_[v] = -1;
    heap_insert(v);
  }
  trail_.resize(trail_lim_[static_cast<std::size_t>(lvl)]);
  trail_lim_.resize(static_cast<std::size_t>(lvl));
  qhead_ = trail_.size();
}

SatSolver::Lit SatSolver::pick_branch() {
  while (!heap_.empty()) {
    const auto v = heap_pop();
    if (assigns_[v] == kUndef) return static_cast<Lit>(2 * v + (phase_[v] ? 0 : 1));
  }
  return ~Lit{0};
}

bool SatSolver::locked(std::uint32_t cr) const {
  const auto& c = clauses_[cr];
  const Lit l0 = arena_[c.start];
  return reason_[var(l0)] == static_cast<std::int64_t>(cr) && value(l0) == 1;
}

void SatSolver::reduce_db() {
  std::vector<std::uint32_t> ls = learnts_;
  std::sort(ls.begin(), ls.end(), [&](std::uint32_t a, std::uint32_t b) {
    const auto& ca = clauses_[a];
    const auto& cb = clauses_[b];
    if (ca.activity != cb.activity) return ca.activity < cb.activity;
    return a < b;
  });
  std::vector<std::uint32_t> keep;
  const std::size_t half = ls.size() / 2;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    auto& c = clauses_[ls[i]];
    if (i < half && c.size > 2 && !locked(ls[i]))
      c.deleted = true;
    else
      keep.push_back(ls[i]);
  }
  std::sort(keep.begin(), keep.end());
  learnts_ = std::move(keep);
  // Watch lists drop deleted clauses lazily during propagation; a full sweep
  // keeps them from growing without bound.
  for (auto& ws : watches_)
    ws.erase(std::remove_if(ws.begin(), ws.end(),
                            [&](const Watcher& w) { return clauses_[w.cref].deleted; }),
             ws.end());
}

SatSolver::Result SatSolver::solve(std::int64_t conflict_limit) {
  model_.clear();
  if (!ok_) return Result::Unsat;
  if (propagate() >= 0) {
    ok_ = false;
    return Result::Unsat;
  }
  if (max_learnts_ < 1) max_learnts_ = static_cast<double>(num_original_) / 3.0 + 5000.0;
  const std::int64_t start_conflicts = conflicts_;
  std::vector<Lit> learnt;
  for (int restart = 0;; ++restart) {
    const auto budget = static_cast<std::int64_t>(luby(2.0, restart) * 100.0);
    std::int64_t local = 0;
    for (;;) {
      const std::int64_t confl = propagate();
      if (confl >= 0) {
        ++conflicts_;
        ++local;
        if (level() == 0) {
          ok_ = false;
          return Result::Unsat;
        }
        int bt = 0;
        analyze(static_cast<std::uint32_t>(confl), learnt, bt);
        cancel_until(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], -1);
        } else {
          const auto cr = alloc_clause(learnt, true);
          learnts_.push_back(cr);
          attach(cr);
          bump_clause(cr);
          enqueue(learnt[0], cr);
        }
        var_inc_ /= 0.95;
        cla_inc_ /= 0.999f;
        if (conflict_limit >= 0 && conflicts_ - start_conflicts >= conflict_limit) {
          cancel_until(0);
          return Result::Unknown;
        }
        if (local >= budget) {
          cancel_until(0);
          break;
        }
      } else {
        if (static_cast<double>(learnts_.size()) >= max_learnts_ + static_cast<double>(trail_.size())) {
          reduce_db();
          max_learnts_ *= 1.1;
        }
        const Lit next = pick_branch();
        if (next == ~Lit{0}) {
          model_.assign(assigns_.size(), 0);
          for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v] = assigns_[v] == 1;
          cancel_until(0);
          return Result::Sat;
        }
        ++decisions_;
        trail_lim_.push_back(trail_.size());
        enqueue(next, -1);
      }
    }
  }
}

}  // namespace psat
