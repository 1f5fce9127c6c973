// SPDX-License-Identifier: Apache-2.0
//
// (ℓ, ℓ+1)-block-symmetric polymorphisms: g(s1, s2) of the block weights,
// s1 in [0..ℓ], s2 in [0..ℓ+1], folded and idempotent.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "psat/function_table.hpp"
#include "psat/predicate.hpp"

namespace psat {

struct TwoBlockTable {
  int ell = 0;
  std::vector<std::uint8_t> value;  // index s1 * (ell + 2) + s2

  bool operator()(int s1, int s2) const {
    return value[static_cast<std::size_t>(s1 * (ell + 2) + s2)] != 0;
  }
  // The (2ℓ+1)-ary function, first ℓ variables in block 1.
  FunctionTable expand() const;
};

struct BlockSymmetricResult {
  enum class Status { Present, Absent, Inconclusive } status = Status::Inconclusive;
  std::optional<TwoBlockTable> table;
  std::uint64_t pairs = 0;  // (v1, v2) weight-vector pairs examined
};

struct BlockSymmetricConfig {
  std::uint64_t pair_budget = 4'000'000'000ull;
  std::int64_t conflict_budget = 50'000'000;
};

BlockSymmetricResult block_symmetric_exists(const Predicate& a, int ell,
                                            const BlockSymmetricConfig& cfg = {});

// Direct check of a two-block table against every pair of column multisets.
bool verify_two_block(const Predicate& a, const TwoBlockTable& g);

}  // namespace psat
