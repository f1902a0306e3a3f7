#pragma once

#include <string>

#include "degree_lab/matrix.hpp"
#include "degree_lab/rational.hpp"

namespace degree_lab {

/// Univariate polynomial over Q, coefficients lowest degree first. Trailing
/// zeros are trimmed so the leading coefficient is nonzero (or the list is empty
/// for the zero polynomial).
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(RatVec coeffs);

  static UniPoly monomial(const Rat& c, std::size_t degree);

  const RatVec& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rat& leading() const { return coeffs_.back(); }
  Rat coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rat(0); }

  Rat operator()(const Rat& t) const;
  RatMat operator()(const RatMat& m) const;

  UniPoly monic() const;
  /// p(-t).
  UniPoly reflected() const;

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  bool operator==(const UniPoly& other) const = default;

  std::string to_string(char var = 't') const;

 private:
  void trim();
  RatVec coeffs_;
};

/// Quotient and remainder of polynomial division.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);

/// det(tI - M) by Faddeev-LeVerrier; exact and monic.
UniPoly char_poly(const RatMat& m);
UniPoly char_poly(const IntMat& m);

/// Certified enclosure of the largest root modulus of p (the spectral radius of
/// any matrix whose characteristic polynomial is p). Width <= tol; collapses to a
/// point when that modulus is a rational root dominating every other root.
///
/// Bisection on the radius with the exact Schur-Cohn disc test, starting from
/// [0, Cauchy bound]; smaller tol refines along the same bisection path.
Interval perron_radius(const UniPoly& p, const Rat& tol);

/// True iff every root of p has modulus < r (r > 0).
bool roots_inside_disc(const UniPoly& p, const Rat& r);

/// Simplest rational (smallest denominator) in [lo, hi], 0 <= lo <= hi.
Rat simplest_between(const Rat& lo, const Rat& hi);

}  // namespace degree_lab
