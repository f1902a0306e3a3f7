#include "degree_lab/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace degree_lab {

UniPoly::UniPoly(RatVec coeffs) : coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(const Rat& c, std::size_t degree) {
  RatVec v(degree + 1, Rat(0));
  v[degree] = c;
  return UniPoly(std::move(v));
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rat UniPoly::operator()(const Rat& t) const {
  Rat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

RatMat UniPoly::operator()(const RatMat& m) const {
  if (!m.is_square()) throw std::invalid_argument("UniPoly: evaluation at non-square matrix");
  RatMat acc(m.rows(), m.cols());
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * m;
    for (std::size_t i = 0; i < m.rows(); ++i) acc(i, i) += *it;
  }
  return acc;
}

UniPoly UniPoly::monic() const {
  if (is_zero()) throw std::domain_error("UniPoly::monic of zero polynomial");
  RatVec v = coeffs_;
  const Rat lead = leading();
  for (auto& c : v) c /= lead;
  return UniPoly(std::move(v));
}

UniPoly UniPoly::reflected() const {
  RatVec v = coeffs_;
  for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
  return UniPoly(std::move(v));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RatVec v(a.coeffs_.size() + b.coeffs_.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UniPoly(std::move(v));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  RatVec v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rat(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] += b.coeffs_[i];
  return UniPoly(std::move(v));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
  RatVec v(std::max(a.coeffs_.size(), b.coeffs_.size()), Rat(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) v[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) v[i] -= b.coeffs_[i];
  return UniPoly(std::move(v));
}

std::string UniPoly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rat c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    Rat a = abs(c);
    if (a != 1 || i == 0) os << degree_lab::to_string(a);
    if (i >= 1) os << var;
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
  RatVec rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UniPoly(), a};
  RatVec quot(static_cast<std::size_t>(a.degree() - db + 1), Rat(0));
  for (int i = a.degree(); i >= db; --i) {
    Rat f = rem[static_cast<std::size_t>(i)] / b.leading();
    quot[static_cast<std::size_t>(i - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

UniPoly char_poly(const RatMat& m) {
  if (!m.is_square()) throw std::invalid_argument("char_poly: non-square matrix");
  const std::size_t n = m.rows();
  RatVec c(n + 1, Rat(0));
  c[n] = 1;
  RatMat mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    RatMat amk = m * mk;
    Rat tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    c[n - k] = -tr / static_cast<long>(k);
  }
  return UniPoly(std::move(c));
}

UniPoly char_poly(const IntMat& m) { return char_poly(to_rat(m)); }

Rat simplest_between(const Rat& lo, const Rat& hi) {
  if (lo < 0 || hi < lo) throw std::invalid_argument("simplest_between: need 0 <= lo <= hi");
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rat(fl) == lo) return lo;
  if (Rat(fl + 1) <= hi) return Rat(fl + 1);
  return Rat(fl) + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl));
}

namespace {

UniPoly strip_zero_roots(const UniPoly& p) {
  std::size_t z = 0;
  while (z < p.coeffs().size() && p.coeffs()[z] == 0) ++z;
  return UniPoly(RatVec(p.coeffs().begin() + static_cast<std::ptrdiff_t>(z), p.coeffs().end()));
}

Rat cauchy_bound(const UniPoly& monic) {
  Rat m = 0;
  for (int i = 0; i < monic.degree(); ++i) m = std::max(m, Rat(abs(monic.coeff(static_cast<std::size_t>(i)))));
  return 1 + m;
}

}  // namespace

bool roots_inside_disc(const UniPoly& p, const Rat& r) {
  if (r <= 0) throw std::invalid_argument("roots_inside_disc: radius must be positive");
  const int d = p.degree();
  if (d < 1) return true;
  // Schur-Cohn: with b_k = a_k r^k, all roots of sum b_k z^k lie in |z| < 1 iff
  // A A^T - B B^T is positive definite, where A and B are the lower-triangular
  // Toeplitz matrices with first columns (b_d .. b_1) and (b_0 .. b_{d-1}).
  RatVec b(static_cast<std::size_t>(d) + 1);
  Rat rk = 1;
  for (int k = 0; k <= d; ++k) {
    b[static_cast<std::size_t>(k)] = p.coeff(static_cast<std::size_t>(k)) * rk;
    rk *= r;
  }
  const auto n = static_cast<std::size_t>(d);
  RatMat a(n, n), bm(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      a(i, j) = b[n - (i - j)];
      bm(i, j) = b[i - j];
    }
  RatMat m = a * transpose(a);
  RatMat m2 = bm * transpose(bm);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) -= m2(i, j);
  // Positive definite iff every pivot of symmetric elimination is positive.
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rat f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return true;
}

Interval perron_radius(const UniPoly& p, const Rat& tol) {
  if (tol <= 0) throw std::invalid_argument("perron_radius: tol must be positive");
  if (p.degree() < 1) throw std::invalid_argument("perron_radius: constant polynomial");
  UniPoly q = strip_zero_roots(p);
  if (q.degree() < 1) return {Rat(0), Rat(0)};
  q = q.monic();

  // Invariant: some root has modulus >= lo, all roots have modulus < hi.
  Rat lo = 0;
  Rat hi = cauchy_bound(q);
  while (hi - lo > tol) {
    Rat mid = (lo + hi) / 2;
    if (roots_inside_disc(q, mid)) hi = mid;
    else lo = mid;
  }

  // Collapse to an exact rational modulus when one is a root and every other
  // root is strictly smaller.
  Rat c = simplest_between(lo, hi);
  if (c == 0) return {lo, hi};
  UniPoly rest = q;
  bool is_root = false;
  for (const Rat& r : {c, Rat(-c)}) {
    const UniPoly lin(RatVec{-r, Rat(1)});
    while (rest.degree() >= 1 && rest(r) == 0) {
      rest = divmod(rest, lin).first;
      is_root = true;
    }
  }
  if (is_root && roots_inside_disc(rest, c)) return {c, c};
  return {lo, hi};
}

}  // namespace degree_lab
