// SPDX-License-Identifier: Apache-2.0

#include "psat/hardness.hpp"

#include <algorithm>
#include <json.hpp>
#include <map>
#include <stdexcept>

#include "psat/function_table.hpp"

namespace psat {

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Inconclusive: return "inconclusive";
  }
  return "?";
}

const char* theorem_name(Theorem t) {
  switch (t) {
    case Theorem::MatchADA: return "MatchADA";
    case Theorem::InvMatchADA: return "InvMatchADA";
    case Theorem::UnateXnorADA: return "UnateXnorADA";
    case Theorem::Split: return "Split";
  }
  return "?";
}

namespace {

// Concatenates blocks (value, width) with the first block most significant.
Point cat(std::initializer_list<std::pair<Point, int>> blocks) {
  Point p = 0;
  for (const auto& [v, w] : blocks) p = (p << w) | (v & all_ones(w));
  return p;
}

PolymorphismQuery base_query(const Predicate& a, int arity, std::string label) {
  PolymorphismQuery q;
  q.predicate = a;
  q.arity = arity;
  q.folded = true;
  q.idempotent = true;
  q.label = std::move(label);
  return q;
}

}  // namespace

PolymorphismQuery unate_query(const Predicate& a) {
  auto q = base_query(a, 5, "unate");
  q.pins = {{parse_point("00011"), false},
            {parse_point("00101"), true},
            {parse_point("10011"), true},
            {parse_point("10101"), false}};
  return q;
}

PolymorphismQuery matching_query(const Predicate& a, int t) {
  const int n = t + 2;
  auto q = base_query(a, n, "matching:" + std::to_string(t));
  for (int i = 1; i <= t + 1; ++i) q.pins.emplace_back(Point{1} << (n - i), true);
  return q;
}

PolymorphismQuery inverted_matching_query(const Predicate& a, int t) {
  const int n = t + 3;
  auto q = base_query(a, n, "invmatching:" + std::to_string(t));
  q.pins.emplace_back(Point{1}, true);
  for (int i = 1; i <= t + 1; ++i) q.pins.emplace_back((Point{1} << (n - i)) | 1u, false);
  return q;
}

PolymorphismQuery ada_query(const Predicate& a, int c, int d, bool in_pol0) {
  const int n = c + 2 * d;
  std::vector<std::pair<Point, bool>> pins;
  const Point ones_d = all_ones(d), ones_c = all_ones(c);
  for (Point p = 0; p < (Point{1} << n); ++p) {
    const Point x = p >> (c + d), y = (p >> d) & ones_c, z = p & ones_d;
    const int full = (x == ones_d) + (y == ones_c) + (z == ones_d);
    if (weight(p) < c + d || full < 2) pins.emplace_back(p, false);
  }
  pins.emplace_back(cat({{ones_d, d}, {ones_c, c}, {0, d}}), true);
  pins.emplace_back(cat({{0, d}, {ones_c, c}, {ones_d, d}}), true);
  const std::string label = "ada:" + std::to_string(c) + "," + std::to_string(d);
  if (in_pol0) {
    auto q = lift_pol0(a, n, pins);
    q.label = label;
    return q;
  }
  auto q = base_query(a, n, label + ":M");
  q.pins = std::move(pins);
  return q;
}

PolymorphismQuery uncada_query(const Predicate& a, int c, int d) {
  const int px = c + 2 * d + 1;
  const int n = px + 3;
  auto q = base_query(a, n, "uncada:" + std::to_string(c) + "," + std::to_string(d));
  q.signs.assign(static_cast<std::size_t>(n), Sign::Positive);
  for (int i = px; i < n; ++i) q.signs[static_cast<std::size_t>(i)] = Sign::Negative;
  const Point ones_d = all_ones(d), ones_c = all_ones(c);
  q.pins.emplace_back(cat({{ones_d, d}, {ones_c, c}, {0, d}, {0, 1}, {0b011, 3}}), true);
  q.pins.emplace_back(cat({{0, d}, {ones_c, c}, {ones_d, d}, {0, 1}, {0b101, 3}}), true);
  for (Point x = 0; x < (Point{1} << (c + 2 * d)); ++x) {
    if (weight(x) > c + d - 1) continue;
    for (Point y = 1; y < 4; ++y) q.pins.emplace_back(cat({{x, c + 2 * d}, {0, 1}, {y, 2}, {1, 1}}), false);
  }
  return q;
}

PolymorphismQuery undada_query(const Predicate& a, int t) {
  if (t < 3) throw std::invalid_argument("UnDADA needs t >= 3");
  const int n = t + 4;
  auto q = base_query(a, n, "undada:" + std::to_string(t));
  q.signs.assign(static_cast<std::size_t>(n), Sign::Positive);
  for (int i = t; i < n; ++i) q.signs[static_cast<std::size_t>(i)] = Sign::Negative;
  const Point head = all_ones(t - 1);
  q.pins.emplace_back(cat({{head, t - 1}, {0, 1}, {0b0011, 4}}), true);
  q.pins.emplace_back(cat({{0, 1}, {head, t - 1}, {0b1001, 4}}), true);
  for (Point x = 0; x < (Point{1} << t); ++x) {
    if (weight(x) > t - 1) continue;
    for (Point y = 0; y < 8; ++y)
      if (weight(y) >= 2) q.pins.emplace_back(cat({{x, t}, {y, 3}, {1, 1}}), false);
  }
  return q;
}

Tri unate_minion(const Predicate& a, const EngineConfig& cfg) {
  const auto r = exists_polymorphism(unate_query(a), cfg);
  if (r.status == QueryStatus::Absent) return Tri::Yes;
  if (r.status == QueryStatus::Present) return Tri::No;
  return Tri::Inconclusive;
}

namespace {

// Runs a family of queries for one t; Absent only if all are absent.
template <class Gen>
QueryStatus all_absent(const std::vector<PolymorphismQuery>& qs, const EngineConfig& cfg,
                       int& count, Gen&&) {
  bool inconclusive = false;
  for (const auto& q : qs) {
    ++count;
    const auto r = exists_polymorphism(q, cfg);
    if (r.status == QueryStatus::Present) return QueryStatus::Present;
    if (r.status == QueryStatus::Inconclusive) inconclusive = true;
  }
  return inconclusive ? QueryStatus::Inconclusive : QueryStatus::Absent;
}

template <class Builder>
BoundResult scan_bound(int t_min, int t_max, const EngineConfig& cfg, Builder build) {
  BoundResult res;
  for (int t = t_min; t <= t_max; ++t) {
    const auto qs = build(t);
    const auto s = all_absent(qs, cfg, res.queries, 0);
    if (s == QueryStatus::Absent) {
      res.t = t;
      return res;
    }
    if (s == QueryStatus::Inconclusive) res.inconclusive = true;
  }
  return res;
}

}  // namespace

BoundResult matching_bound(const Predicate& a, int t_max, const EngineConfig& cfg) {
  return scan_bound(1, t_max, cfg, [&](int t) { return std::vector{matching_query(a, t)}; });
}

BoundResult inverted_matching_bound(const Predicate& a, int t_max, const EngineConfig& cfg) {
  return scan_bound(1, t_max, cfg,
                    [&](int t) { return std::vector{inverted_matching_query(a, t)}; });
}

BoundResult ada_free(const Predicate& a, int t_max, const EngineConfig& cfg, bool in_pol0) {
  // Absence of a (c, d)-ADA implies absence of every (c', d)-ADA with c' >= c.
  std::map<int, int> absent_from;  // d -> smallest c known absent
  BoundResult res;
  for (int t = 2; t <= t_max; ++t) {
    bool present = false, inconclusive = false;
    for (int d = 1; d <= t - 1 && !present; ++d) {
      const int c = t - d;
      if (auto it = absent_from.find(d); it != absent_from.end() && it->second <= c) continue;
      ++res.queries;
      const auto r = exists_polymorphism(ada_query(a, c, d, in_pol0), cfg);
      if (r.status == QueryStatus::Present)
        present = true;
      else if (r.status == QueryStatus::Absent)
        absent_from[d] = absent_from.count(d) ? std::min(absent_from[d], c) : c;
      else
        inconclusive = true;
    }
    if (!present && !inconclusive) {
      res.t = t;
      return res;
    }
    if (!present) res.inconclusive = true;
  }
  return res;
}

BoundResult uncada_free(const Predicate& a, int t_max, const EngineConfig& cfg) {
  return scan_bound(2, t_max, cfg, [&](int t) {
    std::vector<PolymorphismQuery> qs;
    for (int d = 1; d <= t - 1; ++d) qs.push_back(uncada_query(a, t - d, d));
    return qs;
  });
}

BoundResult undada_free(const Predicate& a, int t_max, const EngineConfig& cfg) {
  return scan_bound(3, t_max, cfg, [&](int t) { return std::vector{undada_query(a, t)}; });
}

namespace {

Obstruction pad_columns(int k, std::vector<Point> cols, std::size_t total) {
  while (cols.size() < total) cols.push_back(cols.back());
  Obstruction o;
  o.k = k;
  o.arity = static_cast<int>(cols.size());
  o.columns = std::move(cols);
  return o;
}

// Greedy cover of `target` by the selected sets; returns chosen indices or
// nullopt when the union misses a row.
std::optional<std::vector<std::size_t>> cover(Point target, const std::vector<Point>& sets) {
  Point uni = 0;
  for (Point s : sets) uni |= s;
  if ((uni & target) != target) return std::nullopt;
  std::vector<std::size_t> chosen;
  Point left = target;
  while (left) {
    std::size_t best = 0;
    int gain = -1;
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (weight(sets[i] & left) > gain) {
        gain = weight(sets[i] & left);
        best = i;
      }
    chosen.push_back(best);
    left &= ~sets[best];
  }
  return chosen;
}

}  // namespace

bool and_in_pol0(const Predicate& a, Obstruction* obstruction) {
  const int k = a.arity();
  const Point full = all_ones(k);
  const auto pts = a.points();
  for (Point first : pts) {
    std::vector<Point> cand, zero_sets;
    for (Point b : pts)
      if ((b & first) == 0) {
        cand.push_back(b);
        zero_sets.push_back(full & ~b);
      }
    if (cand.empty()) continue;
    const auto chosen = cover(full & ~first, zero_sets);
    if (!chosen) continue;
    if (obstruction) {
      std::vector<Point> cols{first};
      for (auto i : *chosen) cols.push_back(cand[i]);
      if (cols.size() == 1) cols.push_back(cand.front());
      *obstruction = pad_columns(k, std::move(cols), static_cast<std::size_t>(k));
    }
    return false;
  }
  return true;
}

bool xnor_in_pol0(const Predicate& a, Obstruction* obstruction) {
  const int k = a.arity();
  const auto pts = a.points();
  for (Point first : pts)
    for (Point second : pts) {
      if (first & second) continue;  // no row may start with 11
      const Point ten = first & ~second, zero_one = ~first & second & all_ones(k);
      std::vector<Point> cand;
      for (Point c : pts)
        if ((c & ten) == ten) cand.push_back(c);
      if (cand.empty()) continue;
      const auto chosen = cover(zero_one, cand);
      if (!chosen) continue;
      if (obstruction) {
        std::vector<Point> cols{first, second};
        for (auto i : *chosen) cols.push_back(cand[i]);
        if (cols.size() == 2) cols.push_back(cand.front());
        *obstruction = pad_columns(k, std::move(cols), static_cast<std::size_t>(k) + 1);
      }
      return false;
    }
  return true;
}

std::optional<int> smallest_and_free(const Predicate& a) {
  for (int t = 1; t <= std::max(1, a.arity() - 1); ++t)
    if (!verify_polymorphism(a, make_and_pol0(t)).ok) return t;
  return std::nullopt;
}

std::optional<int> smallest_xnor_free(const Predicate& a) {
  for (int t = 1; t <= a.arity(); ++t)
    if (!verify_polymorphism(a, make_xnor_pol0(t)).ok) return t;
  return std::nullopt;
}

HardnessBudgets HardnessBudgets::reference(int k) {
  HardnessBudgets b;
  if (k <= 3) {
    b.matching = 1; b.inv_matching = 2; b.ada = 2; b.uncada = 2; b.undada = 3;
  } else if (k == 4) {
    b.matching = 3; b.inv_matching = 2; b.ada = 3; b.uncada = 3; b.undada = 4;
  } else {
    b.matching = 3; b.inv_matching = 3; b.ada = 5; b.uncada = 4; b.undada = 4;
  }
  return b;
}

HardnessBudgets HardnessBudgets::defaults(int k) {
  auto b = reference(k);
  b.matching += 1; b.inv_matching += 1; b.ada += 1; b.uncada += 1; b.undada += 1;
  return b;
}

std::string HardnessCertificate::json() const {
  nlohmann::json j;
  j["theorem"] = theorem_name(theorem);
  j["t1"] = t1;
  if (theorem != Theorem::Split) j["t2"] = t2;
  j["fixing_size_bound"] = size_bound;
  return j.dump();
}

HardnessCertificate HardnessCertificate::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  HardnessCertificate c;
  const auto name = j.at("theorem").get<std::string>();
  bool found = false;
  for (Theorem t : kTheorems)
    if (name == theorem_name(t)) {
      c.theorem = t;
      found = true;
    }
  if (!found) throw std::invalid_argument("unknown theorem " + name);
  c.t1 = j.at("t1").get<int>();
  if (j.contains("t2")) c.t2 = j["t2"].get<int>();
  c.size_bound = j.at("fixing_size_bound").get<int>();
  return c;
}

bool HardnessReport::any_inconclusive() const {
  for (const auto& o : outcomes)
    if (o.inconclusive) return true;
  return false;
}

std::string HardnessReport::json() const {
  nlohmann::json j;
  nlohmann::json th = nlohmann::json::object();
  for (int i = 0; i < 4; ++i) {
    const auto& o = outcomes[static_cast<std::size_t>(i)];
    if (!o.evaluated) continue;
    nlohmann::json e;
    e["holds"] = o.holds;
    if (o.inconclusive) e["inconclusive"] = true;
    if (o.holds) {
      e["t1"] = o.t1;
      if (kTheorems[i] != Theorem::Split) e["t2"] = o.t2;
      e["bound"] = o.size_bound;
    }
    th[theorem_name(kTheorems[i])] = e;
  }
  j["theorems"] = th;
  auto put = [&](const char* name, bool done, const BoundResult& r) {
    if (!done) return;
    j[name] = r.t ? nlohmann::json(*r.t) : nlohmann::json(nullptr);
  };
  if (evaluated_unate) j["unate"] = tri_name(unate);
  put("ada", evaluated_ada, ada);
  put("matching", evaluated_matching, matching);
  put("inv_matching", evaluated_inv, inv_matching);
  put("uncada", evaluated_uncada, uncada);
  put("undada", evaluated_undada, undada);
  if (evaluated_xnor) j["xnor"] = xnor_t ? nlohmann::json(*xnor_t) : nlohmann::json(nullptr);
  if (split_reading_differs) j["split_reading_differs"] = true;
  if (certificate) j["certificate"] = nlohmann::json::parse(certificate->json());
  return j.dump();
}

HardnessReport small_fixing_assignments(const Predicate& a, const HardnessBudgets& b, bool audit) {
  HardnessReport r;
  const auto& cfg = b.engine;
  auto ada = [&]() -> const BoundResult& {
    if (!r.evaluated_ada) {
      r.ada = ada_free(a, b.ada, cfg);
      r.evaluated_ada = true;
    }
    return r.ada;
  };
  auto matching = [&]() -> const BoundResult& {
    if (!r.evaluated_matching) {
      r.matching = matching_bound(a, b.matching, cfg);
      r.evaluated_matching = true;
    }
    return r.matching;
  };
  auto inv = [&]() -> const BoundResult& {
    if (!r.evaluated_inv) {
      r.inv_matching = inverted_matching_bound(a, b.inv_matching, cfg);
      r.evaluated_inv = true;
    }
    return r.inv_matching;
  };
  auto unate = [&]() {
    if (!r.evaluated_unate) {
      r.unate = unate_minion(a, cfg);
      r.evaluated_unate = true;
    }
    return r.unate;
  };
  auto xnor = [&]() {
    if (!r.evaluated_xnor) {
      r.xnor_t = smallest_xnor_free(a);
      r.evaluated_xnor = true;
    }
    return r.xnor_t;
  };
  auto uncada = [&]() -> const BoundResult& {
    if (!r.evaluated_uncada) {
      r.uncada = uncada_free(a, b.uncada, cfg);
      r.evaluated_uncada = true;
    }
    return r.uncada;
  };
  auto undada = [&]() -> const BoundResult& {
    if (!r.evaluated_undada) {
      r.undada = undada_free(a, b.undada, cfg);
      r.evaluated_undada = true;
    }
    return r.undada;
  };

  for (int i = 0; i < 4; ++i) {
    auto& o = r.outcomes[static_cast<std::size_t>(i)];
    o.evaluated = true;
    const auto& ad = ada();
    if (!ad.t) {
      o.inconclusive = ad.inconclusive;
    } else {
      const int t1 = *ad.t;
      switch (kTheorems[i]) {
        case Theorem::MatchADA: {
          const auto& m = matching();
          if (m.t) {
            o.holds = true;
            o.t1 = t1;
            o.t2 = *m.t;
            o.size_bound = (t1 - 1) * o.t2;
          } else {
            o.inconclusive = m.inconclusive;
          }
          break;
        }
        case Theorem::InvMatchADA: {
          const auto& m = inv();
          if (m.t) {
            o.holds = true;
            o.t1 = t1;
            o.t2 = *m.t;
            o.size_bound = t1 - 1 + o.t2 * o.t2;
          } else {
            o.inconclusive = m.inconclusive;
          }
          break;
        }
        case Theorem::UnateXnorADA: {
          const Tri u = unate();
          if (u != Tri::Yes) {
            o.inconclusive = u == Tri::Inconclusive;
            break;
          }
          if (const auto x = xnor()) {
            o.holds = true;
            o.t1 = t1;
            o.t2 = *x;
            o.size_bound = t1 + o.t2 - 3;
          }
          break;
        }
        case Theorem::Split: {
          const Tri u = unate();
          if (u != Tri::Yes) {
            o.inconclusive = u == Tri::Inconclusive;
            break;
          }
          const auto& uc = uncada();
          if (!uc.t) {
            o.inconclusive = uc.inconclusive;
            break;
          }
          const auto& ud = undada();
          if (!ud.t) {
            o.inconclusive = ud.inconclusive;
            break;
          }
          o.holds = true;
          o.t1 = std::max({t1, *uc.t, *ud.t});
          o.size_bound = o.t1;
          break;
        }
      }
    }
    if (o.holds && !r.certificate)
      r.certificate = HardnessCertificate{kTheorems[i], o.t1, o.t2, o.size_bound};
    if (!audit && (r.certificate || !ad.t)) break;
  }

  if (audit && !r.outcomes[3].holds && !ada().t && unate() == Tri::Yes && uncada().t &&
      undada().t) {
    const auto m = ada_free(a, b.ada, cfg, false);
    r.split_reading_differs = m.t.has_value();
  }
  return r;
}

}  // namespace psat
