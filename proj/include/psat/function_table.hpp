// SPDX-License-Identifier: Apache-2.0
//
// Explicit truth tables of Boolean functions {0,1}^ℓ -> {0,1} and the named
// block-symmetric families.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "psat/predicate.hpp"

namespace psat {

class FunctionTable {
 public:
  FunctionTable() = default;
  explicit FunctionTable(int arity);

  int arity() const { return arity_; }
  std::uint64_t size() const { return std::uint64_t{1} << arity_; }
  bool operator()(Point x) const { return (bits_[x >> 6] >> (x & 63)) & 1u; }
  void set(Point x, bool v) {
    if (v)
      bits_[x >> 6] |= std::uint64_t{1} << (x & 63);
    else
      bits_[x >> 6] &= ~(std::uint64_t{1} << (x & 63));
  }

  bool is_folded() const;
  bool is_idempotent() const;

  // Hex of the full table, bit b(x) = f(x), most significant digit first.
  std::string hex() const;
  static FunctionTable from_hex(int arity, const std::string& hex);

  // Half storage of a folded table: values on points with x_1 = 0.
  std::vector<bool> folded_half() const;
  static FunctionTable from_folded_half(int arity, const std::vector<bool>& half);

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;

 private:
  int arity_ = 0;
  std::vector<std::uint64_t> bits_;
};

FunctionTable make_dictator(int arity, int i);  // i is 1-indexed
FunctionTable make_maj(int arity);              // [w(x) >= ℓ/2]
FunctionTable make_par(int arity);              // xor of all bits
FunctionTable make_at(int arity);               // [x1 - x2 + x3 - ... > 0]
FunctionTable make_idmaj(int arity);            // not-Maj, idempotized
FunctionTable make_idpar(int arity);            // not-Par, idempotized
FunctionTable make_maj_neg(int arity);          // Maj(¬x)
// (t+1)-ary f with f(0x) = AND_t(x), extended by folding.
FunctionTable make_and_pol0(int t);
// (t+1)-ary f with f(0x) = x1 ∧ ¬x2 ∧ ... ∧ ¬x_t, extended by folding.
FunctionTable make_xnor_pol0(int t);

// Sets f(0^ℓ) = 0 and f(1^ℓ) = 1, keeps every other value.
FunctionTable idempotize(FunctionTable f);

}  // namespace psat
