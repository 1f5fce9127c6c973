// SPDX-License-Identifier: Apache-2.0

#include "psat/poly_engine.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <json.hpp>
#include <stdexcept>
#include <unordered_set>

#include "psat/sat_solver.hpp"

namespace psat {

const char* status_name(QueryStatus s) {
  switch (s) {
    case QueryStatus::Present: return "present";
    case QueryStatus::Absent: return "absent";
    case QueryStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

Point Obstruction::row(int i) const {
  Point r = 0;
  for (Point c : columns) r = (r << 1) | static_cast<Point>(coord(c, i + 1, k));
  return r;
}

std::vector<std::string> Obstruction::row_strings() const {
  std::vector<std::string> out;
  for (int i = 0; i < k; ++i) out.push_back(point_string(row(i), arity));
  return out;
}

Obstruction Obstruction::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty() || rows.size() > static_cast<std::size_t>(kMaxArity))
    throw std::invalid_argument("obstruction needs 1..8 rows");
  Obstruction o;
  o.k = static_cast<int>(rows.size());
  o.arity = static_cast<int>(rows[0].size());
  o.columns.assign(static_cast<std::size_t>(o.arity), 0);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != o.arity) throw std::invalid_argument("ragged obstruction rows");
    for (int j = 0; j < o.arity; ++j) {
      if (r[static_cast<std::size_t>(j)] != '0' && r[static_cast<std::size_t>(j)] != '1')
        throw std::invalid_argument("bad obstruction row");
      auto& c = o.columns[static_cast<std::size_t>(j)];
      c = (c << 1) | static_cast<Point>(r[static_cast<std::size_t>(j)] == '1');
    }
  }
  return o;
}

bool is_obstruction(const Predicate& a, const FunctionTable& f, const Obstruction& o) {
  if (o.k != a.arity() || o.arity != f.arity()) return false;
  for (Point c : o.columns)
    if (!a.contains(c)) return false;
  for (int i = 0; i < o.k; ++i)
    if (f(o.row(i))) return false;
  return true;
}

namespace {

// Per-depth flags over row prefixes: bit 0 = every completion is fixed to 1,
// bit 1 = every completion is fixed to 0.
struct PrefixFlags {
  std::vector<std::vector<std::uint8_t>> f;

  void build(int ell, const std::vector<std::int8_t>& vals) {
    f.assign(static_cast<std::size_t>(ell) + 1, {});
    auto& leaf = f[static_cast<std::size_t>(ell)];
    leaf.resize(vals.size());
    for (std::size_t x = 0; x < vals.size(); ++x)
      leaf[x] = static_cast<std::uint8_t>((vals[x] == 1 ? 1 : 0) | (vals[x] == 0 ? 2 : 0));
    for (int d = ell - 1; d >= 0; --d) {
      auto& cur = f[static_cast<std::size_t>(d)];
      const auto& nxt = f[static_cast<std::size_t>(d) + 1];
      cur.resize(std::size_t{1} << d);
      for (std::size_t p = 0; p < cur.size(); ++p) cur[p] = nxt[2 * p] & nxt[2 * p + 1];
    }
  }
  bool all_one(int d, Point p) const { return f[static_cast<std::size_t>(d)][p] & 1u; }
  bool all_zero(int d, Point p) const { return f[static_cast<std::size_t>(d)][p] & 2u; }
};

struct ClauseKey {
  std::array<int, kMaxArity> l{};
  std::uint8_t n = 0;
  friend bool operator==(const ClauseKey& a, const ClauseKey& b) {
    return a.n == b.n && std::equal(a.l.begin(), a.l.begin() + a.n, b.l.begin());
  }
};

struct ClauseKeyHash {
  std::size_t operator()(const ClauseKey& c) const {
    std::uint64_t h = 0xcbf29ce484222325ull ^ c.n;
    for (int i = 0; i < c.n; ++i)
      h = (h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.l[i]))) * 0x100000001b3ull;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Column enumeration over A^ℓ, pruning prefixes where some row can no
// longer reach a point with the rejected property.
class MatrixSearch {
 public:
  MatrixSearch(const std::vector<Point>& pts, int k, int ell)
      : pts_(pts), k_(k), ell_(ell) {
    for (Point a : pts) {
      std::array<std::uint8_t, kMaxArity> bits{};
      for (int i = 0; i < k; ++i) bits[i] = static_cast<std::uint8_t>(coord(a, i + 1, k));
      colbits_.push_back(bits);
    }
  }

  // prune(depth, row_prefix) -> true to cut; leaf(rows, cols) -> false to stop.
  template <class Prune, class Leaf>
  bool run(Prune&& prune, Leaf&& leaf, std::uint64_t& nodes, std::uint64_t budget) {
    std::array<Point, kMaxArity> rows{};
    std::vector<int> cols(static_cast<std::size_t>(ell_), 0);
    stopped_ = false;
    exhausted_ = false;
    rec(0, rows, cols, prune, leaf, nodes, budget);
    return !stopped_ && !exhausted_;
  }
  bool exhausted() const { return exhausted_; }
  bool stopped() const { return stopped_; }

 private:
  template <class Prune, class Leaf>
  void rec(int depth, std::array<Point, kMaxArity>& rows, std::vector<int>& cols, Prune& prune,
           Leaf& leaf, std::uint64_t& nodes, std::uint64_t budget) {
    if (depth == ell_) {
      if (!leaf(rows, cols)) stopped_ = true;
      return;
    }
    for (std::size_t c = 0; c < pts_.size(); ++c) {
      if (budget && nodes >= budget) {
        exhausted_ = true;
        return;
      }
      ++nodes;
      std::array<Point, kMaxArity> next{};
      bool cut = false;
      for (int i = 0; i < k_; ++i) {
        next[i] = (rows[i] << 1) | colbits_[c][i];
        if (prune(depth + 1, next[i])) {
          cut = true;
          break;
        }
      }
      if (cut) continue;
      cols[static_cast<std::size_t>(depth)] = static_cast<int>(c);
      rec(depth + 1, next, cols, prune, leaf, nodes, budget);
      if (stopped_ || exhausted_) return;
    }
  }

  const std::vector<Point>& pts_;
  int k_, ell_;
  std::vector<std::array<std::uint8_t, kMaxArity>> colbits_;
  bool stopped_ = false, exhausted_ = false;
};

Obstruction make_obstruction(const std::vector<Point>& pts, int k, const std::vector<int>& cols) {
  Obstruction o;
  o.k = k;
  o.arity = static_cast<int>(cols.size());
  for (int c : cols) o.columns.push_back(pts[static_cast<std::size_t>(c)]);
  return o;
}

struct Prepared {
  int ell = 0, k = 0;
  Point n = 0;
  std::vector<Point> pts;
  std::vector<std::int8_t> fixed;
  std::vector<int> lit;
  int nvars = 0;
  bool conflict = false;
};

void assign_fixed(Prepared& p, const PolymorphismQuery& q) {
  const Point top = all_ones(p.ell);
  std::deque<Point> queue;
  auto put = [&](Point x, bool v) {
    const std::int8_t want = v ? 1 : 0;
    if (p.fixed[x] == want) return;
    if (p.fixed[x] != -1) {
      p.conflict = true;
      return;
    }
    p.fixed[x] = want;
    queue.push_back(x);
  };
  for (const auto& [x, v] : q.pins) {
    if (x > top) throw std::invalid_argument("pin outside {0,1}^ℓ");
    put(x, v);
  }
  if (q.idempotent) {
    put(0, false);
    put(top, true);
  }
  while (!queue.empty() && !p.conflict) {
    const Point x = queue.front();
    queue.pop_front();
    const bool v = p.fixed[x] == 1;
    if (q.folded) put(top ^ x, !v);
    for (int i = 1; i <= static_cast<int>(q.signs.size()); ++i) {
      const Sign s = q.signs[static_cast<std::size_t>(i) - 1];
      if (s == Sign::Free) continue;
      const Point e = Point{1} << (p.ell - i);
      const bool up = x & e;
      // Positive: f(x) <= f(x + e). Negative: f(x) >= f(x + e).
      if (s == Sign::Positive) {
        if (v && !up) put(x | e, true);
        if (!v && up) put(x & ~e, false);
      } else {
        if (v && up) put(x & ~e, true);
        if (!v && !up) put(x | e, false);
      }
    }
  }
}

Prepared prepare(const PolymorphismQuery& q) {
  if (q.arity < 1 || q.arity > 20) throw std::invalid_argument("query arity out of range");
  if (!q.signs.empty() && static_cast<int>(q.signs.size()) != q.arity)
    throw std::invalid_argument("sign vector length mismatch");
  Prepared p;
  p.ell = q.arity;
  p.k = q.predicate.arity();
  p.n = Point{1} << q.arity;
  p.pts = q.predicate.points();
  p.fixed.assign(p.n, -1);
  p.lit.assign(p.n, 0);
  assign_fixed(p, q);
  if (p.conflict) return p;
  const Point top = all_ones(p.ell);
  for (Point x = 0; x < p.n; ++x) {
    if (p.fixed[x] != -1) continue;
    if (q.folded) {
      if (x < p.n / 2) {
        p.lit[x] = ++p.nvars;
        p.lit[top ^ x] = -p.lit[x];
      }
    } else {
      p.lit[x] = ++p.nvars;
    }
  }
  return p;
}

enum class Emit { Satisfied, Clause, Empty };

Emit clause_of(const Prepared& p, const std::array<Point, kMaxArity>& rows, ClauseKey& key) {
  key.n = 0;
  for (int i = 0; i < p.k; ++i) {
    const Point x = rows[static_cast<std::size_t>(i)];
    const auto v = p.fixed[x];
    if (v == 1) return Emit::Satisfied;
    if (v == 0) continue;
    key.l[key.n++] = p.lit[x];
  }
  std::sort(key.l.begin(), key.l.begin() + key.n);
  key.n = static_cast<std::uint8_t>(std::unique(key.l.begin(), key.l.begin() + key.n) - key.l.begin());
  for (int i = 0; i < key.n; ++i)
    for (int j = i + 1; j < key.n; ++j)
      if (key.l[i] == -key.l[j]) return Emit::Satisfied;
  return key.n == 0 ? Emit::Empty : Emit::Clause;
}

FunctionTable table_from(const Prepared& p, const SatSolver* s) {
  FunctionTable f(p.ell);
  for (Point x = 0; x < p.n; ++x) {
    bool v;
    if (p.fixed[x] != -1)
      v = p.fixed[x] == 1;
    else {
      const int l = p.lit[x];
      v = s->model_value(std::abs(l));
      if (l < 0) v = !v;
    }
    f.set(x, v);
  }
  return f;
}

void add_key(SatSolver& s, const ClauseKey& key) {
  s.add_clause(std::span<const int>(key.l.data(), key.n));
}

}  // namespace

QueryResult exists_polymorphism(const PolymorphismQuery& q, const EngineConfig& cfg) {
  QueryResult res;
  Prepared p = prepare(q);
  if (p.conflict) {
    res.status = QueryStatus::Absent;
    res.note = "pins inconsistent";
    return res;
  }
  res.stats.free_vars = p.nvars;
  SatSolver solver;
  solver.ensure_vars(p.nvars);

  std::unordered_set<ClauseKey, ClauseKeyHash> seen;
  auto insert = [&](const ClauseKey& key) {
    if (seen.insert(key).second) {
      add_key(solver, key);
      ++res.stats.clauses;
    }
  };

  // Sign edges between free points.
  for (int i = 1; i <= static_cast<int>(q.signs.size()); ++i) {
    const Sign sg = q.signs[static_cast<std::size_t>(i) - 1];
    if (sg == Sign::Free) continue;
    const Point e = Point{1} << (p.ell - i);
    for (Point x = 0; x < p.n; ++x) {
      if (x & e) continue;
      const Point y = x | e;
      if (p.fixed[x] != -1 || p.fixed[y] != -1) continue;
      ClauseKey key;
      key.n = 2;
      key.l[0] = sg == Sign::Positive ? -p.lit[x] : p.lit[x];
      key.l[1] = sg == Sign::Positive ? p.lit[y] : -p.lit[y];
      std::sort(key.l.begin(), key.l.begin() + 2);
      if (key.l[0] == -key.l[1]) continue;
      insert(key);
    }
  }

  // Blocking clauses for excluded tables.
  for (const auto& t : q.excluded) {
    if (t.arity() != p.ell) throw std::invalid_argument("excluded table arity mismatch");
    bool clash = false;
    std::vector<int> lits;
    for (Point x = 0; x < p.n; ++x) {
      if (p.fixed[x] != -1) {
        if ((p.fixed[x] == 1) != t(x)) clash = true;
        continue;
      }
      if (q.folded && x >= p.n / 2) continue;
      lits.push_back(t(x) ? -p.lit[x] : p.lit[x]);
    }
    if (clash) continue;
    solver.add_clause(lits);
    ++res.stats.clauses;
  }

  PrefixFlags fixed_flags;
  fixed_flags.build(p.ell, p.fixed);
  MatrixSearch search(p.pts, p.k, p.ell);

  std::optional<Obstruction> forced;
  auto eager_leaf = [&](const std::array<Point, kMaxArity>& rows, const std::vector<int>& cols) {
    ClauseKey key;
    switch (clause_of(p, rows, key)) {
      case Emit::Satisfied: return true;
      case Emit::Empty:
        forced = make_obstruction(p.pts, p.k, cols);
        return false;
      case Emit::Clause: insert(key); return true;
    }
    return true;
  };
  auto eager_prune = [&](int d, Point prefix) { return fixed_flags.all_one(d, prefix); };
  const std::uint64_t eager_cap = std::min(cfg.eager_limit, cfg.tuple_budget);
  const bool complete = search.run(eager_prune, eager_leaf, res.stats.nodes, eager_cap);
  if (forced) {
    res.status = QueryStatus::Absent;
    res.forced_obstruction = forced;
    res.note = "pins force an all-zero matrix";
    return res;
  }
  res.stats.eager_complete = complete;

  auto finish_present = [&](FunctionTable f) {
    if (!satisfies_constraints(q, f))
      throw std::logic_error("engine witness violates query constraints");
    res.status = QueryStatus::Present;
    res.witness = std::move(f);
  };

  if (complete) {
    const auto r = solver.solve(cfg.conflict_budget);
    res.stats.conflicts = solver.conflicts();
    res.stats.rounds = 1;
    if (r == SatSolver::Result::Unsat) {
      res.status = QueryStatus::Absent;
      return res;
    }
    if (r == SatSolver::Result::Unknown) {
      res.note = "conflict budget exhausted";
      return res;
    }
    FunctionTable f = table_from(p, &solver);
    const auto v = verify_polymorphism(q.predicate, f, 0);
    if (!v.ok) throw std::logic_error("engine witness is not a polymorphism");
    finish_present(std::move(f));
    return res;
  }

  // Counterexample-guided refinement: solve, search for obstructions of the
  // candidate, add their clauses, repeat.
  for (;;) {
    ++res.stats.rounds;
    const std::int64_t left = cfg.conflict_budget - solver.conflicts();
    if (left <= 0) {
      res.note = "conflict budget exhausted";
      res.stats.conflicts = solver.conflicts();
      return res;
    }
    const auto r = solver.solve(left);
    res.stats.conflicts = solver.conflicts();
    if (r == SatSolver::Result::Unsat) {
      res.status = QueryStatus::Absent;
      return res;
    }
    if (r == SatSolver::Result::Unknown) {
      res.note = "conflict budget exhausted";
      return res;
    }
    FunctionTable f = table_from(p, &solver);
    std::vector<std::int8_t> vals(p.n);
    for (Point x = 0; x < p.n; ++x) vals[x] = f(x) ? 1 : 0;
    PrefixFlags cand;
    cand.build(p.ell, vals);
    int found = 0;
    auto prune = [&](int d, Point prefix) { return cand.all_one(d, prefix); };
    auto leaf = [&](const std::array<Point, kMaxArity>& rows, const std::vector<int>& cols) {
      ClauseKey key;
      switch (clause_of(p, rows, key)) {
        case Emit::Satisfied: return true;  // cannot happen: every row is 0
        case Emit::Empty:
          forced = make_obstruction(p.pts, p.k, cols);
          return false;
        case Emit::Clause:
          if (seen.insert(key).second) {
            add_key(solver, key);
            ++res.stats.clauses;
            ++found;
          }
          return found < cfg.batch;
      }
      return true;
    };
    search.run(prune, leaf, res.stats.nodes, cfg.tuple_budget);
    if (forced) {
      res.status = QueryStatus::Absent;
      res.forced_obstruction = forced;
      return res;
    }
    if (search.exhausted()) {
      res.note = "tuple budget exhausted";
      return res;
    }
    if (found == 0) {
      finish_present(std::move(f));
      return res;
    }
  }
}

VerifyResult verify_polymorphism(const Predicate& a, const FunctionTable& f,
                                 std::uint64_t node_budget) {
  VerifyResult vr;
  const int ell = f.arity();
  std::vector<std::int8_t> vals(f.size());
  for (Point x = 0; x < f.size(); ++x) vals[x] = f(x) ? 1 : 0;
  PrefixFlags flags;
  flags.build(ell, vals);
  const auto pts = a.points();
  MatrixSearch search(pts, a.arity(), ell);
  std::uint64_t nodes = 0;
  auto prune = [&](int d, Point prefix) { return flags.all_one(d, prefix); };
  auto leaf = [&](const std::array<Point, kMaxArity>&, const std::vector<int>& cols) {
    vr.obstruction = make_obstruction(pts, a.arity(), cols);
    return false;
  };
  search.run(prune, leaf, nodes, node_budget);
  if (vr.obstruction) return vr;
  if (search.exhausted()) {
    vr.inconclusive = true;
    return vr;
  }
  vr.ok = true;
  return vr;
}

bool satisfies_constraints(const PolymorphismQuery& q, const FunctionTable& f) {
  if (f.arity() != q.arity) return false;
  for (const auto& [x, v] : q.pins)
    if (f(x) != v) return false;
  if (q.idempotent && !f.is_idempotent()) return false;
  if (q.folded && !f.is_folded()) return false;
  for (int i = 1; i <= static_cast<int>(q.signs.size()); ++i) {
    const Sign s = q.signs[static_cast<std::size_t>(i) - 1];
    if (s == Sign::Free) continue;
    const Point e = Point{1} << (q.arity - i);
    for (Point x = 0; x < f.size(); ++x) {
      if (x & e) continue;
      const bool lo = f(x), hi = f(x | e);
      if (s == Sign::Positive && lo && !hi) return false;
      if (s == Sign::Negative && !lo && hi) return false;
    }
  }
  for (const auto& t : q.excluded)
    if (t == f) return false;
  return true;
}

namespace {

// Plain enumeration of A^ℓ with no pruning; used only by the oracle.
bool naive_is_polymorphism(const std::vector<Point>& pts, int k, const FunctionTable& f) {
  const int ell = f.arity();
  std::vector<std::size_t> idx(static_cast<std::size_t>(ell), 0);
  for (;;) {
    bool some_one = false;
    for (int i = 1; i <= k && !some_one; ++i) {
      Point row = 0;
      for (int j = 0; j < ell; ++j)
        row = (row << 1) | static_cast<Point>(coord(pts[idx[static_cast<std::size_t>(j)]], i, k));
      some_one = f(row);
    }
    if (!some_one) return false;
    int j = ell - 1;
    while (j >= 0 && ++idx[static_cast<std::size_t>(j)] == pts.size()) idx[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) return true;
  }
}

}  // namespace

std::optional<FunctionTable> brute_force_exists(const PolymorphismQuery& q) {
  if (q.arity < 1 || q.arity > 12) throw std::invalid_argument("brute force supports arity <= 12");
  const auto pts = q.predicate.points();
  const std::uint64_t n = std::uint64_t{1} << q.arity;
  const Point top = all_ones(q.arity);
  // Only pins, idempotence and folding are applied up front; signs and
  // exclusions are checked on complete tables.
  std::vector<int> fixed(n, -1);
  auto fix = [&](Point x, bool v) {
    if (fixed[x] == !v) return false;
    fixed[x] = v;
    if (q.folded) {
      if (fixed[top ^ x] == v) return false;
      fixed[top ^ x] = !v;
    }
    return true;
  };
  bool ok = true;
  if (q.idempotent) ok = fix(0, false) && fix(top, true);
  for (const auto& [x, v] : q.pins) ok = ok && fix(x, v);
  if (!ok) return std::nullopt;
  std::vector<Point> free;
  for (Point x = 0; x < n; ++x)
    if (fixed[x] < 0 && (!q.folded || x < (top ^ x))) free.push_back(x);
  if (free.size() > 22) throw std::invalid_argument("brute force: too many free points");
  FunctionTable f(q.arity);
  for (Point x = 0; x < n; ++x) f.set(x, fixed[x] == 1);
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << free.size()); ++t) {
    for (std::size_t i = 0; i < free.size(); ++i) {
      const bool v = (t >> i) & 1u;
      f.set(free[i], v);
      if (q.folded) f.set(top ^ free[i], !v);
    }
    if (!satisfies_constraints(q, f)) continue;
    if (naive_is_polymorphism(pts, q.predicate.arity(), f)) return f;
  }
  return std::nullopt;
}

std::string query_json(const PolymorphismQuery& q) {
  nlohmann::json j;
  j["predicate"] = q.predicate.to_string();
  j["arity"] = q.arity;
  j["folded"] = q.folded;
  j["idempotent"] = q.idempotent;
  std::string signs;
  for (Sign s : q.signs) signs += s == Sign::Free ? '.' : (s == Sign::Positive ? '+' : '-');
  j["signs"] = signs;
  nlohmann::json pins = nlohmann::json::array();
  for (const auto& [x, v] : q.pins) pins.push_back({point_string(x, q.arity), v ? 1 : 0});
  j["pins"] = pins;
  j["excluded"] = q.excluded.size();
  if (!q.label.empty()) j["label"] = q.label;
  return j.dump();
}

std::string witness_json(const PolymorphismQuery& q, const FunctionTable& f) {
  nlohmann::json j;
  j["arity"] = f.arity();
  j["table"] = f.hex();
  j["query"] = nlohmann::json::parse(query_json(q));
  return j.dump();
}

PolymorphismQuery lift_pol0(const Predicate& a, int arity,
                            const std::vector<std::pair<Point, bool>>& pins) {
  PolymorphismQuery q;
  q.predicate = a;
  q.arity = arity + 1;
  q.folded = true;
  q.idempotent = true;
  q.pins = pins;  // leading coordinate 0 leaves the index unchanged
  return q;
}

}  // namespace psat
