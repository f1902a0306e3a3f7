#include "degree_lab/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace degree_lab {

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

std::string strip_plus(std::string_view s) {
  if (!s.empty() && s[0] == '+') s.remove_prefix(1);
  return std::string(s);
}

}  // namespace

Rat parse_rat(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den[0] == '-') {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  Int p(strip_plus(num));
  Int q(strip_plus(den));
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rat r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& value) { return value.get_str(); }
std::string to_string(const Int& value) { return value.get_str(); }

std::string to_decimal(const Rat& value, int digits) {
  Int scale = pow(Int(10), static_cast<unsigned>(digits));
  Rat scaled = abs(value) * scale;
  Int rounded = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string s = rounded.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  if (value < 0 && rounded != 0) s.insert(0, "-");
  return s;
}

Int gcd_of(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

IntVec primitive(const RatVec& v) {
  Int den = 1;
  for (const auto& x : v) den = lcm(den, x.get_den());
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_num() * (den / v[i].get_den());
  return primitive(out);
}

IntVec primitive(const IntVec& v) {
  Int g = gcd_of(v);
  if (g == 0) throw std::invalid_argument("primitive(): zero vector");
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

RatVec to_rat(const IntVec& v) { return RatVec(v.begin(), v.end()); }

bool overlaps(const Interval& a, const Interval& b, const Rat& slack) {
  return a.lo <= b.hi + slack && b.lo <= a.hi + slack;
}

Interval operator*(const Interval& a, const Interval& b) {
  Rat c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(c, c + 4), *std::max_element(c, c + 4)};
}

Rat pow(const Rat& base, unsigned exponent) {
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  return Rat(num, den);
}

Int pow(const Int& base, unsigned exponent) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

Int binomial(unsigned n, unsigned k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Int factorial(unsigned n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Interval root_bounds(const Rat& x, unsigned m, const Rat& width) {
  if (x < 0) throw std::invalid_argument("root_bounds: negative radicand");
  if (m == 0) throw std::invalid_argument("root_bounds: zeroth root");
  if (width <= 0) throw std::invalid_argument("root_bounds: width must be positive");
  if (x == 0 || x == 1 || m == 1) return {x, x};
  // Exact rational root when numerator and denominator are perfect powers.
  Int rn, rd;
  if (mpz_root(rn.get_mpz_t(), x.get_num_mpz_t(), m) != 0 &&
      mpz_root(rd.get_mpz_t(), x.get_den_mpz_t(), m) != 0) {
    Rat r(rn, rd);
    return {r, r};
  }
  Rat lo = 0;
  Rat hi = x > 1 ? x : Rat(1);
  while (hi - lo > width) {
    Rat mid = (lo + hi) / 2;
    if (pow(mid, m) <= x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace degree_lab
