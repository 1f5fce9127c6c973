// SPDX-License-Identifier: Apache-2.0

#include "psat/tractability.hpp"

#include <json.hpp>
#include <numeric>

#include "psat/exact.hpp"

namespace psat {

const char* family_name(Family f) {
  switch (f) {
    case Family::Maj: return "Maj";
    case Family::Par: return "Par";
    case Family::AT: return "AT";
    case Family::IdMaj: return "IdMaj";
    case Family::IdPar: return "IdPar";
    case Family::InvMaj: return "InvMaj";
    case Family::InvPar: return "InvPar";
  }
  return "?";
}

std::optional<std::vector<long long>> maj_coefficients(std::span<const Point> pts, int k) {
  RationalLinearSystem sys(k);
  sys.add(std::vector<Rational>(static_cast<std::size_t>(k), 1), Relation::EQ, 1);
  for (Point a : pts) {
    std::vector<Rational> row;
    for (int i = 1; i <= k; ++i) row.emplace_back(2 * coord(a, i, k) - 1);
    sys.add(std::move(row), Relation::GE, 0);
  }
  auto x = lp_feasible(sys);
  if (!x) return std::nullopt;
  return to_int64(scale_to_integers(*x));
}

std::optional<Point> odd_parity_set(std::span<const Point> pts, int k) {
  Gf2AffineSystem sys;
  sys.width = k;
  for (Point a : pts) {
    sys.rows.push_back(a);
    sys.rhs.push_back(1);
  }
  auto b = gf2_affine_solve(sys);
  if (!b) return std::nullopt;
  return static_cast<Point>(*b);
}

namespace {

std::vector<Point> complemented(const Predicate& a) {
  auto pts = a.points();
  return shift_points(pts, all_ones(a.arity()));
}

}  // namespace

std::optional<std::vector<long long>> test_maj(const Predicate& a) {
  const auto pts = a.points();
  return maj_coefficients(pts, a.arity());
}

std::optional<Point> test_par(const Predicate& a) {
  const auto pts = a.points();
  return odd_parity_set(pts, a.arity());
}

std::optional<std::vector<long long>> test_inv_maj(const Predicate& a) {
  const auto pts = complemented(a);
  return maj_coefficients(pts, a.arity());
}

std::optional<Point> test_inv_par(const Predicate& a) {
  const auto pts = complemented(a);
  return odd_parity_set(pts, a.arity());
}

std::optional<AtWitness> test_at(const Predicate& a) {
  const int k = a.arity();
  const auto pts = a.points();
  // The common value must be positive: a c supported on always-zero
  // coordinates gives value 0 and no AT member beyond arity 1.
  RationalLinearSystem sys(k);
  const Point ref = pts.front();
  {
    std::vector<Rational> row;
    for (int i = 1; i <= k; ++i) row.emplace_back(coord(ref, i, k));
    sys.add(std::move(row), Relation::EQ, 1);
  }
  for (std::size_t j = 1; j < pts.size(); ++j) {
    std::vector<Rational> row;
    for (int i = 1; i <= k; ++i) row.emplace_back(coord(pts[j], i, k) - coord(ref, i, k));
    sys.add(std::move(row), Relation::EQ, 0);
  }
  auto x = lp_feasible(sys);
  if (!x) return std::nullopt;
  AtWitness w;
  w.c = to_int64(scale_to_integers(*x));
  for (int i = 1; i <= k; ++i) w.value += w.c[static_cast<std::size_t>(i) - 1] * coord(ref, i, k);
  return w;
}

namespace {

template <class Inverted>
IdResult id_family(const Predicate& a, Inverted inverted_test) {
  IdResult r;
  const int k = a.arity();
  const auto pts = a.points();
  for (Point s = 1; s <= all_ones(k); ++s) {
    const auto proj = project_zero_points(pts, k, s);
    if (proj.empty()) continue;
    const int m = weight(s);
    if (forced_one_mask(proj, m) != 0) continue;
    ++r.admissible;
    const auto shifted = shift_points(proj, all_ones(m));
    if (!inverted_test(shifted, m)) {
      r.failing_s = s;
      return r;
    }
  }
  r.present = true;
  return r;
}

}  // namespace

IdResult test_id_maj(const Predicate& a) {
  return id_family(a, [](const std::vector<Point>& p, int m) {
    return maj_coefficients(p, m).has_value();
  });
}

IdResult test_id_par(const Predicate& a) {
  return id_family(a, [](const std::vector<Point>& p, int m) {
    return odd_parity_set(p, m).has_value();
  });
}

std::string FamilyWitness::json() const {
  nlohmann::json j;
  j["family"] = family_name(family);
  switch (family) {
    case Family::Maj:
    case Family::InvMaj: j["c"] = coeffs; break;
    case Family::AT:
      j["c"] = coeffs;
      j["value"] = value;
      break;
    case Family::Par:
    case Family::InvPar: j["beta_mask"] = beta; break;
    case Family::IdMaj:
    case Family::IdPar: j["admissible_sets"] = admissible; break;
  }
  return j.dump();
}

FamilyWitness FamilyWitness::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  FamilyWitness w;
  const auto name = j.at("family").get<std::string>();
  bool found = false;
  for (Family f : {Family::Maj, Family::Par, Family::AT, Family::IdMaj, Family::IdPar,
                   Family::InvMaj, Family::InvPar})
    if (name == family_name(f)) {
      w.family = f;
      found = true;
    }
  if (!found) throw std::invalid_argument("unknown family " + name);
  if (j.contains("c")) w.coeffs = j["c"].get<std::vector<long long>>();
  if (j.contains("value")) w.value = j["value"].get<long long>();
  if (j.contains("beta_mask")) w.beta = j["beta_mask"].get<Point>();
  if (j.contains("admissible_sets")) w.admissible = j["admissible_sets"].get<int>();
  return w;
}

bool ScreenResult::has(Family f) const {
  for (const auto& w : witnesses)
    if (w.family == f) return true;
  return false;
}

bool ScreenResult::tractable() const { return screen_bits() != 0; }

unsigned ScreenResult::screen_bits() const {
  unsigned b = 0;
  for (int i = 0; i < 5; ++i)
    if (has(kScreenFamilies[i])) b |= 1u << i;
  return b;
}

ScreenResult five_family_screen(const Predicate& a) {
  ScreenResult s;
  if (auto c = test_maj(a)) s.witnesses.push_back({Family::Maj, *c, 0, 0, 0});
  if (auto b = test_par(a)) s.witnesses.push_back({Family::Par, {}, *b, 0, 0});
  if (auto w = test_at(a)) s.witnesses.push_back({Family::AT, w->c, 0, w->value, 0});
  if (auto r = test_id_maj(a); r.present) s.witnesses.push_back({Family::IdMaj, {}, 0, 0, r.admissible});
  if (auto r = test_id_par(a); r.present) s.witnesses.push_back({Family::IdPar, {}, 0, 0, r.admissible});
  if (auto c = test_inv_maj(a)) s.witnesses.push_back({Family::InvMaj, *c, 0, 0, 0});
  if (auto b = test_inv_par(a)) s.witnesses.push_back({Family::InvPar, {}, *b, 0, 0});
  for (const auto& w : s.witnesses)
    if (!check_witness(a, w)) throw std::logic_error("family witness fails re-verification");
  return s;
}

namespace {

bool maj_ok(std::span<const Point> pts, int k, const std::vector<long long>& c) {
  if (static_cast<int>(c.size()) != k) return false;
  long long total = 0;
  for (long long v : c) {
    if (v < 0) return false;
    total += v;
  }
  if (total <= 0) return false;
  for (Point a : pts) {
    long long s = 0;
    for (int i = 1; i <= k; ++i) s += c[static_cast<std::size_t>(i) - 1] * coord(a, i, k);
    if (2 * s < total) return false;
  }
  return true;
}

bool par_ok(std::span<const Point> pts, Point beta) {
  if (beta == 0) return false;
  for (Point a : pts)
    if ((weight(a & beta) & 1) != 1) return false;
  return true;
}

}  // namespace

bool check_witness(const Predicate& a, const FamilyWitness& w) {
  const int k = a.arity();
  const auto pts = a.points();
  switch (w.family) {
    case Family::Maj: return maj_ok(pts, k, w.coeffs);
    case Family::InvMaj: {
      const auto sh = complemented(a);
      return maj_ok(sh, k, w.coeffs);
    }
    case Family::Par: return par_ok(pts, w.beta);
    case Family::InvPar: {
      const auto sh = complemented(a);
      return par_ok(sh, w.beta);
    }
    case Family::AT: {
      if (static_cast<int>(w.coeffs.size()) != k) return false;
      bool nonzero = false;
      for (long long v : w.coeffs) {
        if (v < 0) return false;
        nonzero |= v != 0;
      }
      if (!nonzero || w.value <= 0) return false;
      for (Point p : pts) {
        long long s = 0;
        for (int i = 1; i <= k; ++i) s += w.coeffs[static_cast<std::size_t>(i) - 1] * coord(p, i, k);
        if (s != w.value) return false;
      }
      return true;
    }
    case Family::IdMaj: return test_id_maj(a).present;
    case Family::IdPar: return test_id_par(a).present;
  }
  return false;
}

BlpAipVerdict block_symmetric_scan(const Predicate& a, int ell_budget,
                                   const BlockSymmetricConfig& cfg) {
  BlpAipVerdict v;
  for (int ell = 1; ell <= ell_budget; ++ell) {
    auto r = block_symmetric_exists(a, ell, cfg);
    if (r.status == BlockSymmetricResult::Status::Absent) {
      v.kind = BlpAipVerdict::Kind::RefutedAt;
      v.ell = ell;
      return v;
    }
    if (r.status == BlockSymmetricResult::Status::Present)
      v.witnesses.push_back(std::move(*r.table));
    else
      v.inconclusive = true;
  }
  v.kind = BlpAipVerdict::Kind::Exhausted;
  v.ell = ell_budget;
  return v;
}

BlpAipVerdict blp_aip_status(const Predicate& a, int ell_budget, const BlockSymmetricConfig& cfg) {
  auto screen = five_family_screen(a);
  if (screen.tractable()) {
    BlpAipVerdict v;
    v.kind = BlpAipVerdict::Kind::Solvable;
    v.screen = std::move(screen);
    return v;
  }
  auto v = block_symmetric_scan(a, ell_budget, cfg);
  v.screen = std::move(screen);
  return v;
}

}  // namespace psat
