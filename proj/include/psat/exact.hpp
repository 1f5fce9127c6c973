// SPDX-License-Identifier: Apache-2.0
//
// Exact feasibility kernels: rational LP (phase-1 simplex, Bland's rule) and
// GF(2) affine systems.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

namespace psat {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class Relation { GE, EQ, LE };

struct LinearRow {
  std::vector<Rational> coeffs;
  Relation rel = Relation::GE;
  Rational rhs = 0;
};

struct RationalLinearSystem {
  int variables = 0;
  std::vector<LinearRow> rows;
  std::vector<bool> nonneg;  // size == variables; false means free

  explicit RationalLinearSystem(int n = 0)
      : variables(n), nonneg(static_cast<std::size_t>(n), true) {}
  void add(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
    rows.push_back({std::move(coeffs), rel, std::move(rhs)});
  }
};

// Exact feasible point, or nullopt when infeasible. The returned point is
// re-substituted into every row; a mismatch throws std::logic_error.
std::optional<std::vector<Rational>> lp_feasible(const RationalLinearSystem& sys);

bool satisfies(const RationalLinearSystem& sys, const std::vector<Rational>& x);

// Clears denominators and divides by the gcd of the numerators.
std::vector<BigInt> scale_to_integers(const std::vector<Rational>& x);
std::vector<long long> to_int64(const std::vector<BigInt>& v);

// Nonzero point of the cone {x : rows hold}, all rows homogeneous (rhs 0),
// variables free. Tries the normalizations x_i >= 1 then -x_i >= 1 for
// i = 1..n in order.
std::optional<std::vector<Rational>> cone_nonzero_point(
    int n, const std::vector<LinearRow>& rows);

// GF(2) system: row i is a bitmask over `width` unknowns (bit width-1-j is
// unknown j, matching the point layout), rhs bit i.
struct Gf2AffineSystem {
  int width = 0;
  std::vector<std::uint64_t> rows;
  std::vector<int> rhs;
};

// A solution with free unknowns set to 0, or nullopt.
std::optional<std::uint64_t> gf2_affine_solve(const Gf2AffineSystem& sys);

// Basis of the solution space of the homogeneous system (rows, rhs ignored).
std::vector<std::uint64_t> gf2_kernel(const Gf2AffineSystem& sys);

}  // namespace psat
