#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace degree_lab {

using Int = mpz_class;

// GMP keeps mpq_class canonical after every arithmetic operation but not after
// construction from a numerator/denominator pair; that constructor normalizes
// here so a Rat is always in lowest terms with a positive denominator.
class Rat : public mpq_class {
 public:
  using mpq_class::mpq_class;
  using mpq_class::operator=;
  Rat() = default;
  Rat(const Rat&) = default;
  Rat(Rat&&) = default;
  Rat& operator=(const Rat&) = default;
  Rat& operator=(Rat&&) = default;
  Rat(const mpq_class& q) : mpq_class(q) {}  // NOLINT(google-explicit-constructor)
  Rat(const Int& num, const Int& den) : mpq_class(num, den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    canonicalize();
  }
};

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rat parse_rat(std::string_view text);

/// Canonical text form: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rat& value);
std::string to_string(const Int& value);

/// Decimal approximation for human-readable tables only.
std::string to_decimal(const Rat& value, int digits = 6);

Int gcd_of(const IntVec& v);
Int lcm(const Int& a, const Int& b);

/// Scales a nonzero rational vector to the primitive integer vector on the same
/// ray (positive multiple).
IntVec primitive(const RatVec& v);
IntVec primitive(const IntVec& v);

RatVec to_rat(const IntVec& v);

/// Closed interval with rational endpoints.
struct Interval {
  Rat lo;
  Rat hi;

  Rat width() const { return hi - lo; }
  Rat midpoint() const { return (lo + hi) / 2; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool is_point() const { return lo == hi; }
};

/// True when the intervals intersect after widening both by `slack`.
bool overlaps(const Interval& a, const Interval& b, const Rat& slack = Rat(0));

Interval operator*(const Interval& a, const Interval& b);

/// Bracket x^(1/m) for x >= 0 by dyadic bisection: lo^m <= x <= hi^m and
/// hi - lo <= width.
Interval root_bounds(const Rat& x, unsigned m, const Rat& width);

Rat pow(const Rat& base, unsigned exponent);
Int pow(const Int& base, unsigned exponent);
Int binomial(unsigned n, unsigned k);
Int factorial(unsigned n);

}  // namespace degree_lab
