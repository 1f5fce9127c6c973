// SPDX-License-Identifier: Apache-2.0
//
// Tests for infinitely many polymorphisms from the block-symmetric families,
// and the BLP+AIP applicability verdict.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "psat/block_symmetric.hpp"
#include "psat/predicate.hpp"

namespace psat {

enum class Family { Maj, Par, AT, IdMaj, IdPar, InvMaj, InvPar };
const char* family_name(Family f);

// The five families of the screen, in table order.
inline constexpr Family kScreenFamilies[] = {Family::Maj, Family::Par, Family::AT, Family::IdMaj,
                                             Family::IdPar};

struct AtWitness {
  std::vector<long long> c;
  long long value = 0;
};

// Raw point-list versions accept 0^k (used on shifted and projected sets).
std::optional<std::vector<long long>> maj_coefficients(std::span<const Point> pts, int k);
std::optional<Point> odd_parity_set(std::span<const Point> pts, int k);

std::optional<std::vector<long long>> test_maj(const Predicate& a);
std::optional<Point> test_par(const Predicate& a);  // β as a point mask
std::optional<AtWitness> test_at(const Predicate& a);
std::optional<std::vector<long long>> test_inv_maj(const Predicate& a);
std::optional<Point> test_inv_par(const Predicate& a);

struct IdResult {
  bool present = false;
  std::optional<Point> failing_s;  // smallest failing S, coordinate-mask layout
  int admissible = 0;              // number of S that were tested
};
IdResult test_id_maj(const Predicate& a);
IdResult test_id_par(const Predicate& a);

struct FamilyWitness {
  Family family = Family::Maj;
  std::vector<long long> coeffs;  // Maj, InvMaj, AT
  Point beta = 0;                 // Par, InvPar
  long long value = 0;            // AT
  int admissible = 0;             // IdMaj, IdPar
  std::string json() const;
  static FamilyWitness from_json(const std::string& text);
};

struct ScreenResult {
  std::vector<FamilyWitness> witnesses;  // screen families first, then Inv*
  bool has(Family f) const;
  // Whether any of the five screen families is present.
  bool tractable() const;
  unsigned screen_bits() const;  // bit i for kScreenFamilies[i]
};

ScreenResult five_family_screen(const Predicate& a);

// Re-verifies a witness by direct arithmetic against every a ∈ A.
bool check_witness(const Predicate& a, const FamilyWitness& w);

struct BlpAipVerdict {
  enum class Kind { Solvable, RefutedAt, Exhausted } kind = Kind::Exhausted;
  ScreenResult screen;
  int ell = 0;  // RefutedAt: smallest refuted ℓ; Exhausted: the budget
  // (ℓ, ℓ+1) witnesses found below the refutation point, for audit.
  std::vector<TwoBlockTable> witnesses;
  bool inconclusive = false;
};

BlpAipVerdict blp_aip_status(const Predicate& a, int ell_budget = 9,
                             const BlockSymmetricConfig& cfg = {});

// Block-symmetric search alone (skips the screen).
BlpAipVerdict block_symmetric_scan(const Predicate& a, int ell_budget,
                                   const BlockSymmetricConfig& cfg = {});

}  // namespace psat
