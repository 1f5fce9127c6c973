// SPDX-License-Identifier: Apache-2.0

#include "psat/block_symmetric.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "psat/sat_solver.hpp"

namespace psat {

namespace {

using WeightVec = std::vector<std::uint8_t>;

struct VecHash {
  std::size_t operator()(const WeightVec& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

// Every vector Σ_{columns} a over multisets of `count` columns from A.
std::vector<WeightVec> reachable_sums(const std::vector<Point>& pts, int k, int count) {
  std::unordered_set<WeightVec, VecHash> cur{WeightVec(static_cast<std::size_t>(k), 0)};
  for (int step = 0; step < count; ++step) {
    std::unordered_set<WeightVec, VecHash> next;
    for (const auto& v : cur)
      for (Point a : pts) {
        WeightVec w = v;
        for (int i = 0; i < k; ++i) w[static_cast<std::size_t>(i)] += static_cast<std::uint8_t>(coord(a, i + 1, k));
        next.insert(std::move(w));
      }
    cur = std::move(next);
  }
  std::vector<WeightVec> out(cur.begin(), cur.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FunctionTable TwoBlockTable::expand() const {
  const int n = 2 * ell + 1;
  FunctionTable f(n);
  const Point low = all_ones(ell + 1);
  for (Point x = 0; x < f.size(); ++x)
    f.set(x, (*this)(weight(x >> (ell + 1)), weight(x & low)));
  return f;
}

BlockSymmetricResult block_symmetric_exists(const Predicate& a, int ell,
                                            const BlockSymmetricConfig& cfg) {
  if (ell < 1) throw std::invalid_argument("block size must be positive");
  BlockSymmetricResult res;
  const int k = a.arity();
  const auto pts = a.points();
  const int w2 = ell + 2;
  const int cells = (ell + 1) * w2;
  auto cell = [&](int s1, int s2) { return s1 * w2 + s2; };
  auto mirror = [&](int c) { return cell(ell - c / w2, ell + 1 - c % w2); };

  // Literal for each cell: a variable on one side of the folding pairs.
  std::vector<int> lit(static_cast<std::size_t>(cells), 0);
  int nv = 0;
  for (int c = 0; c < cells; ++c) {
    const int m = mirror(c);
    if (c < m) {
      lit[static_cast<std::size_t>(c)] = ++nv;
      lit[static_cast<std::size_t>(m)] = -nv;
    }
  }
  SatSolver solver;
  solver.ensure_vars(nv);
  solver.add_clause({-lit[static_cast<std::size_t>(cell(0, 0))]});  // g(0,0) = 0, hence g(ℓ,ℓ+1) = 1

  const auto v1 = reachable_sums(pts, k, ell);
  const auto v2 = reachable_sums(pts, k, ell + 1);
  std::set<std::vector<int>> seen;
  std::vector<int> clause;
  for (const auto& p : v1)
    for (const auto& q : v2) {
      if (++res.pairs > cfg.pair_budget) return res;
      clause.clear();
      bool taut = false;
      for (int i = 0; i < k; ++i)
        clause.push_back(lit[static_cast<std::size_t>(cell(p[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(i)]))]);
      std::sort(clause.begin(), clause.end());
      clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
      for (std::size_t i = 0; i + 1 < clause.size() && !taut; ++i)
        for (std::size_t j = i + 1; j < clause.size(); ++j)
          if (clause[i] == -clause[j]) taut = true;
      if (taut || !seen.insert(clause).second) continue;
      solver.add_clause(clause);
    }
  const auto r = solver.solve(cfg.conflict_budget);
  if (r == SatSolver::Result::Unknown) return res;
  if (r == SatSolver::Result::Unsat) {
    res.status = BlockSymmetricResult::Status::Absent;
    return res;
  }
  TwoBlockTable g;
  g.ell = ell;
  g.value.resize(static_cast<std::size_t>(cells));
  for (int c = 0; c < cells; ++c) {
    const int l = lit[static_cast<std::size_t>(c)];
    bool v = solver.model_value(std::abs(l));
    g.value[static_cast<std::size_t>(c)] = (l > 0 ? v : !v) ? 1 : 0;
  }
  if (!verify_two_block(a, g)) throw std::logic_error("two-block witness fails re-verification");
  res.status = BlockSymmetricResult::Status::Present;
  res.table = std::move(g);
  return res;
}

bool verify_two_block(const Predicate& a, const TwoBlockTable& g) {
  const int ell = g.ell;
  if (g(0, 0) || !g(ell, ell + 1)) return false;
  for (int s1 = 0; s1 <= ell; ++s1)
    for (int s2 = 0; s2 <= ell + 1; ++s2)
      if (g(s1, s2) == g(ell - s1, ell + 1 - s2)) return false;
  const int k = a.arity();
  const auto pts = a.points();
  const auto v1 = reachable_sums(pts, k, ell);
  const auto v2 = reachable_sums(pts, k, ell + 1);
  for (const auto& p : v1)
    for (const auto& q : v2) {
      bool ok = false;
      for (int i = 0; i < k && !ok; ++i) ok = g(p[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(i)]);
      if (!ok) return false;
    }
  return true;
}

}  // namespace psat
