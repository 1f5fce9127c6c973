// SPDX-License-Identifier: Apache-2.0
//
// Orbits and canonical representatives under the three symmetry groups.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "psat/predicate.hpp"

namespace psat {

enum class Group {
  Perm,            // coordinate permutations
  PermComplement,  // plus A -> A xor 1^k when 1^k not in A
  PermShift,       // plus A -> A xor b for b not in A
};

const char* group_name(Group g);

// All k! coordinate permutations as point maps, identity first.
const std::vector<std::vector<Point>>& permutation_maps(int k);

// Whether a predicate lies in the universe of g (0^k excluded except for
// PermShift).
bool valid_for(const Predicate& a, Group g);

// Every distinct orbit member, sorted by predicate_id.
std::vector<Mask> orbit(const Predicate& a, Group g);

Predicate canonical_form(const Predicate& a, Group g);

std::uint64_t orbit_size(const Predicate& a, Group g);

// Canonical representatives of arity k in increasing predicate_id order. The
// universe is every nonempty subset of OR for Perm/PermComplement, and every
// nonempty proper subset of {0,1}^k for PermShift. Masks are restricted to
// the half-open range [begin, end) of raw mask values when k <= 5 (sharding).
std::vector<Predicate> enumerate_canonical(int k, Group g);
void enumerate_canonical_range(int k, Group g, std::uint64_t begin,
                               std::uint64_t end,
                               const std::function<void(const Predicate&)>& out);

// True iff some orbit member of b (under g) is a subset of a.
bool orbit_subset(const std::vector<Mask>& b_orbit, const Mask& a);

}  // namespace psat
