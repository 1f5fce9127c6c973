// SPDX-License-Identifier: Apache-2.0

#include "psat/exact.hpp"

#include <stdexcept>

namespace psat {

namespace {

struct Tableau {
  int m = 0, cols = 0;  // cols excludes the rhs column
  std::vector<std::vector<Rational>> t;  // m rows, cols + 1 entries
  std::vector<Rational> obj;             // reduced costs, cols + 1 entries
  std::vector<int> basis;

  void pivot(int r, int c) {
    const Rational p = t[r][c];
    for (auto& v : t[r]) v /= p;
    for (int i = 0; i < m; ++i) {
      if (i == r || t[i][c] == 0) continue;
      const Rational f = t[i][c];
      for (int j = 0; j <= cols; ++j)
        if (t[r][j] != 0) t[i][j] -= f * t[r][j];
    }
    if (obj[c] != 0) {
      const Rational f = obj[c];
      for (int j = 0; j <= cols; ++j)
        if (t[r][j] != 0) obj[j] -= f * t[r][j];
    }
    basis[r] = c;
  }
};

}  // namespace

bool satisfies(const RationalLinearSystem& sys, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != sys.variables) return false;
  for (int j = 0; j < sys.variables; ++j)
    if (sys.nonneg[j] && x[j] < 0) return false;
  for (const auto& row : sys.rows) {
    Rational s = 0;
    for (int j = 0; j < sys.variables; ++j) s += row.coeffs[j] * x[j];
    switch (row.rel) {
      case Relation::GE: if (s < row.rhs) return false; break;
      case Relation::LE: if (s > row.rhs) return false; break;
      case Relation::EQ: if (s != row.rhs) return false; break;
    }
  }
  return true;
}

std::optional<std::vector<Rational>> lp_feasible(const RationalLinearSystem& sys) {
  const int n = sys.variables;
  for (const auto& row : sys.rows)
    if (static_cast<int>(row.coeffs.size()) != n)
      throw std::invalid_argument("row width mismatch");
  if (sys.rows.empty()) return std::vector<Rational>(static_cast<std::size_t>(n), 0);

  // Column layout: structural columns (free variables split in two), then
  // one slack/surplus per inequality row, then one artificial per row.
  std::vector<int> pos_col(n), neg_col(n, -1);
  int c = 0;
  for (int j = 0; j < n; ++j) {
    pos_col[j] = c++;
    if (!sys.nonneg[j]) neg_col[j] = c++;
  }
  const int structural = c;
  const int m = static_cast<int>(sys.rows.size());
  std::vector<int> slack_col(m, -1);
  for (int i = 0; i < m; ++i)
    if (sys.rows[i].rel != Relation::EQ) slack_col[i] = c++;
  const int art0 = c;
  const int cols = c + m;

  Tableau tb;
  tb.m = m;
  tb.cols = cols;
  tb.t.assign(m, std::vector<Rational>(cols + 1, 0));
  tb.basis.assign(m, 0);
  for (int i = 0; i < m; ++i) {
    const auto& row = sys.rows[i];
    auto& r = tb.t[i];
    for (int j = 0; j < n; ++j) {
      r[pos_col[j]] = row.coeffs[j];
      if (neg_col[j] >= 0) r[neg_col[j]] = -row.coeffs[j];
    }
    if (row.rel == Relation::GE) r[slack_col[i]] = -1;
    if (row.rel == Relation::LE) r[slack_col[i]] = 1;
    r[cols] = row.rhs;
    if (r[cols] < 0)
      for (int j = 0; j < art0; ++j) r[j] = -r[j];
    if (r[cols] < 0) r[cols] = -r[cols];
    r[art0 + i] = 1;
    tb.basis[i] = art0 + i;
  }
  tb.obj.assign(cols + 1, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= cols; ++j)
      if (j < art0 || j == cols) tb.obj[j] -= tb.t[i][j];

  // Bland's rule: lowest-index improving column, lowest-index leaving basic.
  for (;;) {
    int enter = -1;
    for (int j = 0; j < cols; ++j)
      if (tb.obj[j] < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (tb.t[i][enter] <= 0) continue;
      Rational ratio = tb.t[i][cols] / tb.t[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && tb.basis[i] < tb.basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase 1
    tb.pivot(leave, enter);
  }
  if (tb.obj[cols] != 0) return std::nullopt;  // -(sum of artificials) < 0

  std::vector<Rational> col_val(cols, 0);
  for (int i = 0; i < m; ++i) col_val[tb.basis[i]] = tb.t[i][cols];
  (void)structural;
  std::vector<Rational> x(n, 0);
  for (int j = 0; j < n; ++j) {
    x[j] = col_val[pos_col[j]];
    if (neg_col[j] >= 0) x[j] -= col_val[neg_col[j]];
  }
  if (!satisfies(sys, x)) throw std::logic_error("LP witness failed re-substitution");
  return x;
}

std::vector<BigInt> scale_to_integers(const std::vector<Rational>& x) {
  BigInt l = 1;
  for (const auto& v : x) {
    const BigInt d = boost::multiprecision::denominator(v);
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  std::vector<BigInt> out;
  BigInt g = 0;
  for (const auto& v : x) {
    BigInt z = boost::multiprecision::numerator(v) * (l / boost::multiprecision::denominator(v));
    out.push_back(z);
    g = boost::multiprecision::gcd(g, z < 0 ? BigInt(-z) : z);
  }
  if (g > 1)
    for (auto& z : out) z /= g;
  return out;
}

std::vector<long long> to_int64(const std::vector<BigInt>& v) {
  std::vector<long long> out;
  for (const auto& z : v) out.push_back(z.convert_to<long long>());
  return out;
}

std::optional<std::vector<Rational>> cone_nonzero_point(
    int n, const std::vector<LinearRow>& rows) {
  for (int sign : {1, -1})
    for (int i = 0; i < n; ++i) {
      RationalLinearSystem sys(n);
      sys.nonneg.assign(n, false);
      sys.rows = rows;
      std::vector<Rational> norm(n, 0);
      norm[i] = sign;
      sys.add(norm, Relation::GE, 1);
      if (auto x = lp_feasible(sys)) return x;
    }
  return std::nullopt;
}

namespace {

// Reduced row echelon form over GF(2) with an augmented rhs bit at
// position `width`. Returns pivot columns per row (as bit positions).
std::vector<int> rref(std::vector<std::uint64_t>& aug, int width) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int j = 0; j < width && r < aug.size(); ++j) {
    const int bit = width - 1 - j;  // unknown j
    std::size_t p = r;
    while (p < aug.size() && !((aug[p] >> (bit + 1)) & 1u)) ++p;
    if (p == aug.size()) continue;
    std::swap(aug[p], aug[r]);
    for (std::size_t i = 0; i < aug.size(); ++i)
      if (i != r && ((aug[i] >> (bit + 1)) & 1u)) aug[i] ^= aug[r];
    pivots.push_back(j);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<std::uint64_t> gf2_affine_solve(const Gf2AffineSystem& sys) {
  if (sys.width < 0 || sys.width > 62) throw std::invalid_argument("width out of range");
  // Layout: bit 0 is the rhs, bits 1..width hold the row.
  std::vector<std::uint64_t> aug;
  for (std::size_t i = 0; i < sys.rows.size(); ++i)
    aug.push_back((sys.rows[i] << 1) | static_cast<std::uint64_t>(sys.rhs[i] & 1));
  const auto piv = rref(aug, sys.width);
  for (std::size_t i = piv.size(); i < aug.size(); ++i)
    if (aug[i] & 1u) return std::nullopt;
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < piv.size(); ++i)
    if (aug[i] & 1u) x |= std::uint64_t{1} << (sys.width - 1 - piv[i]);
  for (std::size_t i = 0; i < sys.rows.size(); ++i)
    if ((__builtin_popcountll(sys.rows[i] & x) & 1) != (sys.rhs[i] & 1))
      throw std::logic_error("GF(2) witness failed re-substitution");
  return x;
}

std::vector<std::uint64_t> gf2_kernel(const Gf2AffineSystem& sys) {
  std::vector<std::uint64_t> aug;
  for (auto r : sys.rows) aug.push_back(r << 1);
  const auto piv = rref(aug, sys.width);
  std::vector<bool> is_piv(sys.width, false);
  for (int j : piv) is_piv[j] = true;
  std::vector<std::uint64_t> basis;
  for (int f = 0; f < sys.width; ++f) {
    if (is_piv[f]) continue;
    std::uint64_t v = std::uint64_t{1} << (sys.width - 1 - f);
    for (std::size_t i = 0; i < piv.size(); ++i)
      if ((aug[i] >> (sys.width - f)) & 1u)
        v |= std::uint64_t{1} << (sys.width - 1 - piv[i]);
    basis.push_back(v);
  }
  return basis;
}

}  // namespace psat
