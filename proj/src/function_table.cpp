// SPDX-License-Identifier: Apache-2.0

#include "psat/function_table.hpp"

#include <stdexcept>

namespace psat {

FunctionTable::FunctionTable(int arity) : arity_(arity) {
  if (arity < 0 || arity > 24) throw std::invalid_argument("function arity out of range");
  bits_.assign(std::max<std::size_t>(1, (std::size_t{1} << arity) / 64), 0);
}

bool FunctionTable::is_folded() const {
  const Point top = all_ones(arity_);
  for (Point x = 0; x < size(); ++x)
    if ((*this)(x) == (*this)(top ^ x)) return false;
  return true;
}

bool FunctionTable::is_idempotent() const {
  return !(*this)(0) && (*this)(all_ones(arity_));
}

std::string FunctionTable::hex() const {
  static const char* digits = "0123456789abcdef";
  const std::uint64_t n = size();
  const std::uint64_t nibbles = n < 4 ? 1 : n / 4;
  std::string s;
  for (std::uint64_t i = nibbles; i-- > 0;) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      const std::uint64_t x = 4 * i + static_cast<std::uint64_t>(b);
      if (x < n && (*this)(static_cast<Point>(x))) v |= 1 << b;
    }
    s += digits[v];
  }
  return s;
}

FunctionTable FunctionTable::from_hex(int arity, const std::string& hex) {
  FunctionTable f(arity);
  std::uint64_t bit = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, bit += 4) {
    const char c = *it;
    int v;
    if (c >= '0' && c <= '9')
      v = c - '0';
    else if (c >= 'a' && c <= 'f')
      v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F')
      v = c - 'A' + 10;
    else
      throw std::invalid_argument("bad hex digit in table");
    for (int b = 0; b < 4; ++b)
      if ((v >> b) & 1) {
        if (bit + static_cast<std::uint64_t>(b) >= f.size())
          throw std::invalid_argument("hex table too long");
        f.set(static_cast<Point>(bit + static_cast<std::uint64_t>(b)), true);
      }
  }
  return f;
}

std::vector<bool> FunctionTable::folded_half() const {
  std::vector<bool> h(size() / 2);
  for (Point x = 0; x < size() / 2; ++x) h[x] = (*this)(x);
  return h;
}

FunctionTable FunctionTable::from_folded_half(int arity, const std::vector<bool>& half) {
  FunctionTable f(arity);
  if (arity < 1 || half.size() != f.size() / 2)
    throw std::invalid_argument("half table size mismatch");
  const Point top = all_ones(arity);
  for (Point x = 0; x < f.size() / 2; ++x) {
    f.set(x, half[x]);
    f.set(top ^ x, !half[x]);
  }
  return f;
}

namespace {

template <class F>
FunctionTable tabulate(int arity, F fn) {
  FunctionTable f(arity);
  for (Point x = 0; x < f.size(); ++x) f.set(x, fn(x));
  return f;
}

}  // namespace

FunctionTable make_dictator(int arity, int i) {
  return tabulate(arity, [&](Point x) { return coord(x, i, arity) != 0; });
}

FunctionTable make_maj(int arity) {
  return tabulate(arity, [&](Point x) { return 2 * weight(x) >= arity; });
}

FunctionTable make_maj_neg(int arity) {
  return tabulate(arity, [&](Point x) { return 2 * (arity - weight(x)) >= arity; });
}

FunctionTable make_par(int arity) {
  return tabulate(arity, [&](Point x) { return (weight(x) & 1) != 0; });
}

FunctionTable make_at(int arity) {
  return tabulate(arity, [&](Point x) {
    int s = 0;
    for (int i = 1; i <= arity; ++i)
      if (coord(x, i, arity)) s += (i & 1) ? 1 : -1;
    return s > 0;
  });
}

FunctionTable idempotize(FunctionTable f) {
  f.set(0, false);
  f.set(all_ones(f.arity()), true);
  return f;
}

FunctionTable make_idmaj(int arity) {
  return idempotize(tabulate(arity, [&](Point x) { return !(2 * weight(x) >= arity); }));
}

FunctionTable make_idpar(int arity) {
  return idempotize(tabulate(arity, [&](Point x) { return (weight(x) & 1) == 0; }));
}

FunctionTable make_and_pol0(int t) {
  const Point rest = all_ones(t);
  return tabulate(t + 1, [&](Point x) {
    const Point y = x & rest;
    return (x >> t) ? y != 0 : y == rest;  // folding turns AND into OR
  });
}

FunctionTable make_xnor_pol0(int t) {
  const Point rest = all_ones(t);
  auto xnor = [&](Point y) { return y == (Point{1} << (t - 1)); };  // x1=1, rest 0
  return tabulate(t + 1, [&](Point x) {
    const Point y = x & rest;
    return (x >> t) ? !xnor(rest ^ y) : xnor(y);
  });
}

}  // namespace psat
