// SPDX-License-Identifier: Apache-2.0
//
// Boolean predicates A ⊆ {0,1}^k stored as 2^k-bit masks.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace psat {

// A point of {0,1}^k. Coordinate 1 is the most significant of the k bits.
using Point = std::uint32_t;

inline constexpr int kMaxArity = 8;

inline int coord(Point x, int i, int k) { return (x >> (k - i)) & 1u; }
inline int weight(Point x) { return __builtin_popcount(x); }
inline Point all_ones(int k) { return (Point{1} << k) - 1; }

// 256-bit set indexed by points. Numeric order equals predicate_id order.
struct Mask {
  std::array<std::uint64_t, 4> w{};

  bool test(Point x) const { return (w[x >> 6] >> (x & 63)) & 1u; }
  void set(Point x) { w[x >> 6] |= std::uint64_t{1} << (x & 63); }
  void reset(Point x) { w[x >> 6] &= ~(std::uint64_t{1} << (x & 63)); }
  int count() const;
  bool empty() const { return (w[0] | w[1] | w[2] | w[3]) == 0; }
  bool subset_of(const Mask& o) const;

  static Mask from_u64(std::uint64_t v) {
    Mask m;
    m.w[0] = v;
    return m;
  }
  std::uint64_t low() const { return w[0]; }

  friend bool operator==(const Mask&, const Mask&) = default;
  friend std::strong_ordering operator<=>(const Mask& a, const Mask& b) {
    for (int i = 3; i >= 0; --i)
      if (a.w[i] != b.w[i]) return a.w[i] <=> b.w[i];
    return std::strong_ordering::equal;
  }
  friend Mask operator&(Mask a, const Mask& b) {
    for (int i = 0; i < 4; ++i) a.w[i] &= b.w[i];
    return a;
  }
  friend Mask operator|(Mask a, const Mask& b) {
    for (int i = 0; i < 4; ++i) a.w[i] |= b.w[i];
    return a;
  }
};

struct MaskHash {
  std::size_t operator()(const Mask& m) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (auto v : m.w) h = (h ^ v) * 0xff51afd7ed558ccdull;
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

// Full mask of {0,1}^k.
Mask full_mask(int k);

class Predicate {
 public:
  Predicate() = default;
  // Throws std::invalid_argument unless 1 <= k <= 8 and mask is nonempty,
  // not full, and has no bits beyond 2^k.
  Predicate(int k, const Mask& mask);

  static Predicate from_points(int k, std::span<const Point> pts);

  int arity() const { return k_; }
  const Mask& mask() const { return mask_; }
  bool contains(Point x) const { return mask_.test(x); }
  bool contains_zero() const { return mask_.test(0); }
  int size() const { return mask_.count(); }
  std::vector<Point> points() const;

  // "001,011" form, strings in increasing b(x).
  std::string to_string() const;
  // "k:0x<hex>" form.
  std::string hex() const;
  // Hex digits of the mask (no prefix), i.e. predicate_id in base 16.
  std::string id_hex() const;

  friend bool operator==(const Predicate&, const Predicate&) = default;
  friend std::strong_ordering operator<=>(const Predicate& a,
                                          const Predicate& b) {
    if (a.k_ != b.k_) return a.k_ <=> b.k_;
    return a.mask_ <=> b.mask_;
  }

 private:
  int k_ = 0;
  Mask mask_{};
};

// Accepts "001,011" or "3:0x0a". Throws std::invalid_argument on malformed
// input, mixed lengths, and empty or full predicates.
Predicate parse_predicate(const std::string& text);

// Parses a single bitstring of length k into a point.
Point parse_point(const std::string& bits);
std::string point_string(Point x, int k);

Predicate xor_shift(const Predicate& a, Point p);
Predicate xor_shift(const Predicate& a, const std::string& p);

// A_S^0 with S given as a bitmask over coordinates (bit k-i set iff i ∈ S,
// i.e. the same layout as a point). Empty result is std::nullopt.
std::optional<Predicate> project_zero(const Predicate& a, Point s);
// Same on a raw point list; result arity |S|. Points may include 0.
std::vector<Point> project_zero_points(std::span<const Point> pts, int k,
                                       Point s);

// Positions (1-indexed) equal to 1 in every accepted string.
std::vector<int> forced_one_bits(const Predicate& a);
// Same as a point mask.
Point forced_one_mask(std::span<const Point> pts, int k);

std::vector<Point> shift_points(std::span<const Point> pts, Point p);

}  // namespace psat
