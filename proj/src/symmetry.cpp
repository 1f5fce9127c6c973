// SPDX-License-Identifier: Apache-2.0

#include "psat/symmetry.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace psat {

const char* group_name(Group g) {
  switch (g) {
    case Group::Perm: return "perm";
    case Group::PermComplement: return "perm_complement";
    case Group::PermShift: return "perm_shift";
  }
  return "?";
}

namespace {

std::vector<std::vector<Point>> build_perm_maps(int k) {
  std::vector<int> sigma(static_cast<std::size_t>(k));
  std::iota(sigma.begin(), sigma.end(), 1);
  std::vector<std::vector<Point>> maps;
  const Point n = Point{1} << k;
  do {
    std::vector<Point> m(n);
    for (Point x = 0; x < n; ++x) {
      Point y = 0;
      for (int i = 1; i <= k; ++i)
        y = (y << 1) | static_cast<Point>(coord(x, sigma[i - 1], k));
      m[x] = y;
    }
    maps.push_back(std::move(m));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return maps;
}

Mask apply_map(const Mask& a, const std::vector<Point>& map, Point shift) {
  Mask out;
  const Point n = static_cast<Point>(map.size());
  for (Point x = 0; x < n; ++x)
    if (a.test(x)) out.set(map[x] ^ shift);
  return out;
}

}  // namespace

const std::vector<std::vector<Point>>& permutation_maps(int k) {
  if (k < 1 || k > kMaxArity) throw std::invalid_argument("arity out of range");
  static std::mutex mu;
  static std::array<std::unique_ptr<std::vector<std::vector<Point>>>, kMaxArity + 1>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache[k])
    cache[k] = std::make_unique<std::vector<std::vector<Point>>>(build_perm_maps(k));
  return *cache[k];
}

bool valid_for(const Predicate& a, Group g) {
  return g == Group::PermShift || !a.contains_zero();
}

std::vector<Mask> orbit(const Predicate& a, Group g) {
  if (!valid_for(a, g))
    throw std::invalid_argument("predicate outside the group's universe");
  const int k = a.arity();
  const auto& maps = permutation_maps(k);
  std::vector<Point> shifts{0};
  if (g == Group::PermComplement && !a.contains(all_ones(k)))
    shifts.push_back(all_ones(k));
  if (g == Group::PermShift) {
    shifts.clear();
    for (Point b = 0; b < (Point{1} << k); ++b) shifts.push_back(b);
  }
  std::vector<Mask> out;
  out.reserve(maps.size() * shifts.size());
  for (Point b : shifts)
    for (const auto& m : maps) out.push_back(apply_map(a.mask(), m, b));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Predicate canonical_form(const Predicate& a, Group g) {
  const auto orb = orbit(a, g);
  return Predicate(a.arity(), orb.front());
}

std::uint64_t orbit_size(const Predicate& a, Group g) {
  return orbit(a, g).size();
}

bool orbit_subset(const std::vector<Mask>& b_orbit, const Mask& a) {
  for (const Mask& m : b_orbit)
    if (m.subset_of(a)) return true;
  return false;
}

namespace {

// Byte lookup tables for one group element acting on masks of k <= 5.
struct FastElement {
  int bytes = 0;
  bool needs_top_absent = false;  // complement elements of PermComplement
  std::vector<std::array<std::uint32_t, 256>> table;

  std::uint32_t apply(std::uint32_t m) const {
    std::uint32_t out = 0;
    for (int j = 0; j < bytes; ++j) out |= table[j][(m >> (8 * j)) & 0xffu];
    return out;
  }
};

FastElement make_fast(const std::vector<Point>& map, Point shift, int k) {
  FastElement e;
  const int n = 1 << k;
  e.bytes = std::max(1, n / 8);
  e.table.assign(static_cast<std::size_t>(e.bytes), {});
  for (int j = 0; j < e.bytes; ++j)
    for (int v = 0; v < 256; ++v) {
      std::uint32_t out = 0;
      for (int b = 0; b < 8; ++b) {
        const int x = 8 * j + b;
        if (x >= n || !((v >> b) & 1)) continue;
        out |= std::uint32_t{1} << (map[static_cast<std::size_t>(x)] ^ shift);
      }
      e.table[static_cast<std::size_t>(j)][static_cast<std::size_t>(v)] = out;
    }
  return e;
}

}  // namespace

void enumerate_canonical_range(int k, Group g, std::uint64_t begin,
                               std::uint64_t end,
                               const std::function<void(const Predicate&)>& out) {
  if (k < 1 || k > 5)
    throw std::invalid_argument("exhaustive enumeration supports 1 <= k <= 5");
  const auto& maps = permutation_maps(k);
  std::vector<FastElement> elems;
  const Point top = all_ones(k);
  // Identity is skipped; non-identity elements reject almost every mask
  // after a couple of probes.
  for (std::size_t p = 1; p < maps.size(); ++p) elems.push_back(make_fast(maps[p], 0, k));
  if (g == Group::PermComplement)
    for (const auto& m : maps) {
      elems.push_back(make_fast(m, top, k));
      elems.back().needs_top_absent = true;
    }
  if (g == Group::PermShift)
    for (Point b = 1; b <= top; ++b)
      for (const auto& m : maps) elems.push_back(make_fast(m, b, k));

  const std::uint64_t n = std::uint64_t{1} << (1 << k);
  const std::uint64_t full = n - 1;
  end = std::min(end, n);
  for (std::uint64_t raw = begin; raw < end; ++raw) {
    if (raw == 0) continue;
    if (g == Group::PermShift) {
      if (raw == full) continue;
    } else if (raw & 1u) {
      continue;
    }
    const auto m = static_cast<std::uint32_t>(raw);
    const bool top_absent = !((raw >> top) & 1u);
    bool canon = true;
    for (const auto& e : elems) {
      if (e.needs_top_absent && !top_absent) continue;
      if (e.apply(m) < m) {
        canon = false;
        break;
      }
    }
    if (canon) out(Predicate(k, Mask::from_u64(raw)));
  }
}

std::vector<Predicate> enumerate_canonical(int k, Group g) {
  std::vector<Predicate> out;
  enumerate_canonical_range(k, g, 0, ~std::uint64_t{0},
                            [&](const Predicate& p) { out.push_back(p); });
  return out;
}

}  // namespace psat
