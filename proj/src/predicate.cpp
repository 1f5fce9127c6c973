// SPDX-License-Identifier: Apache-2.0

#include "psat/predicate.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace psat {

int Mask::count() const {
  int c = 0;
  for (auto v : w) c += __builtin_popcountll(v);
  return c;
}

bool Mask::subset_of(const Mask& o) const {
  for (int i = 0; i < 4; ++i)
    if (w[i] & ~o.w[i]) return false;
  return true;
}

Mask full_mask(int k) {
  Mask m;
  const int n = 1 << k;
  for (int i = 0; i < 4; ++i) {
    const int lo = i * 64;
    if (n >= lo + 64)
      m.w[i] = ~std::uint64_t{0};
    else if (n > lo)
      m.w[i] = (std::uint64_t{1} << (n - lo)) - 1;
  }
  return m;
}

Predicate::Predicate(int k, const Mask& mask) : k_(k), mask_(mask) {
  if (k < 1 || k > kMaxArity)
    throw std::invalid_argument("arity out of range [1,8]");
  const Mask full = full_mask(k);
  if (!mask.subset_of(full))
    throw std::invalid_argument("mask has bits beyond 2^k");
  if (mask.empty()) throw std::invalid_argument("empty predicate");
  if (mask == full) throw std::invalid_argument("full predicate");
}

Predicate Predicate::from_points(int k, std::span<const Point> pts) {
  Mask m;
  for (Point x : pts) {
    if (k < 1 || k > kMaxArity || x >= (Point{1} << k))
      throw std::invalid_argument("point out of range");
    m.set(x);
  }
  return Predicate(k, m);
}

std::vector<Point> Predicate::points() const {
  std::vector<Point> out;
  const Point n = Point{1} << k_;
  for (Point x = 0; x < n; ++x)
    if (mask_.test(x)) out.push_back(x);
  return out;
}

std::string point_string(Point x, int k) {
  std::string s(static_cast<std::size_t>(k), '0');
  for (int i = 1; i <= k; ++i)
    if (coord(x, i, k)) s[i - 1] = '1';
  return s;
}

std::string Predicate::to_string() const {
  std::string out;
  for (Point x : points()) {
    if (!out.empty()) out += ',';
    out += point_string(x, k_);
  }
  return out;
}

std::string Predicate::id_hex() const {
  static const char* digits = "0123456789abcdef";
  const int nibbles = std::max(1, (1 << k_) / 4);
  std::string s;
  for (int i = nibbles - 1; i >= 0; --i) {
    int v = 0;
    for (int b = 0; b < 4; ++b) {
      const Point x = static_cast<Point>(i * 4 + b);
      if (x < (Point{1} << k_) && mask_.test(x)) v |= 1 << b;
    }
    s += digits[v];
  }
  return s;
}

std::string Predicate::hex() const {
  return std::to_string(k_) + ":0x" + id_hex();
}

Point parse_point(const std::string& bits) {
  if (bits.empty() || bits.size() > static_cast<std::size_t>(kMaxArity))
    throw std::invalid_argument("bad bitstring length: '" + bits + "'");
  Point x = 0;
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("malformed bitstring: '" + bits + "'");
    x = (x << 1) | static_cast<Point>(c - '0');
  }
  return x;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

Predicate parse_hex(const std::string& text, std::size_t colon) {
  const int k = std::stoi(text.substr(0, colon));
  std::string h = text.substr(colon + 1);
  if (h.size() > 2 && h[0] == '0' && (h[1] == 'x' || h[1] == 'X'))
    h = h.substr(2);
  if (k < 1 || k > kMaxArity || h.empty())
    throw std::invalid_argument("malformed hex predicate: '" + text + "'");
  Mask m;
  int bit = 0;
  for (auto it = h.rbegin(); it != h.rend(); ++it, bit += 4) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(*it)));
    int v;
    if (c >= '0' && c <= '9')
      v = c - '0';
    else if (c >= 'a' && c <= 'f')
      v = c - 'a' + 10;
    else
      throw std::invalid_argument("malformed hex digit in '" + text + "'");
    for (int b = 0; b < 4; ++b) {
      if (!((v >> b) & 1)) continue;
      if (bit + b >= (1 << k))
        throw std::invalid_argument("hex mask exceeds 2^k bits");
      m.set(static_cast<Point>(bit + b));
    }
  }
  return Predicate(k, m);
}

}  // namespace

Predicate parse_predicate(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw std::invalid_argument("empty predicate text");
  if (auto colon = text.find(':'); colon != std::string::npos)
    return parse_hex(text, colon);
  std::string body = text;
  if (body.front() == '{' && body.back() == '}')
    body = body.substr(1, body.size() - 2);
  std::vector<Point> pts;
  int k = -1;
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) throw std::invalid_argument("empty token");
    const int len = static_cast<int>(tok.size());
    if (k == -1) k = len;
    if (len != k) throw std::invalid_argument("mixed bitstring lengths");
    pts.push_back(parse_point(tok));
  }
  if (k < 1) throw std::invalid_argument("no bitstrings");
  return Predicate::from_points(k, pts);
}

Predicate xor_shift(const Predicate& a, Point p) {
  if (p >= (Point{1} << a.arity()))
    throw std::invalid_argument("shift length mismatch");
  Mask m;
  for (Point x : a.points()) m.set(x ^ p);
  return Predicate(a.arity(), m);
}

Predicate xor_shift(const Predicate& a, const std::string& p) {
  if (static_cast<int>(p.size()) != a.arity())
    throw std::invalid_argument("shift length mismatch");
  return xor_shift(a, parse_point(p));
}

std::vector<Point> project_zero_points(std::span<const Point> pts, int k,
                                       Point s) {
  std::vector<Point> out;
  const Point outside = all_ones(k) & ~s;
  for (Point a : pts) {
    if (a & outside) continue;
    Point y = 0;
    for (int i = 1; i <= k; ++i) {
      if (!coord(s, i, k)) continue;
      y = (y << 1) | static_cast<Point>(coord(a, i, k));
    }
    out.push_back(y);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Predicate> project_zero(const Predicate& a, Point s) {
  const int m = weight(s);
  const auto pts = project_zero_points(a.points(), a.arity(), s);
  if (pts.empty() || m == 0) return std::nullopt;
  Mask mk;
  for (Point y : pts) mk.set(y);
  // Only possible when 0^k ∈ A; callers in that setting use
  // project_zero_points.
  if (mk == full_mask(m))
    throw std::domain_error("projection is the full cube");
  return Predicate(m, mk);
}

Point forced_one_mask(std::span<const Point> pts, int k) {
  Point acc = all_ones(k);
  for (Point a : pts) acc &= a;
  return pts.empty() ? 0 : acc;
}

std::vector<int> forced_one_bits(const Predicate& a) {
  const Point f = forced_one_mask(a.points(), a.arity());
  std::vector<int> out;
  for (int i = 1; i <= a.arity(); ++i)
    if (coord(f, i, a.arity())) out.push_back(i);
  return out;
}

std::vector<Point> shift_points(std::span<const Point> pts, Point p) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (Point a : pts) out.push_back(a ^ p);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace psat
