#include "degree_lab/lp.hpp"

#include <optional>
#include <stdexcept>

namespace degree_lab {

namespace {

// Dense tableau over Q for A' x + I a = b' with b' >= 0 (rows sign-flipped).
// Columns [0, n) are structural, [n, n + m) artificial, column n + m is the RHS.
class Tableau {
 public:
  Tableau(const RatMat& a, const RatVec& b) : m_(a.rows()), n_(a.cols()), t_(a.rows(), a.cols() + a.rows() + 1) {
    sign_.assign(m_, Rat(1));
    for (std::size_t i = 0; i < m_; ++i) {
      if (b[i] < 0) sign_[i] = -1;
      for (std::size_t j = 0; j < n_; ++j) t_(i, j) = sign_[i] * a(i, j);
      t_(i, n_ + i) = 1;
      t_(i, n_ + m_) = sign_[i] * b[i];
      basis_.push_back(n_ + i);
    }
  }

  // Minimizes cost over the current feasible basis. Columns >= `allowed` never
  // enter. Returns false when unbounded.
  bool optimize(const RatVec& cost, std::size_t allowed) {
    while (true) {
      RatVec y = duals(cost);
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (is_basic(j)) continue;
        Rat reduced = cost[j];
        for (std::size_t i = 0; i < m_; ++i) reduced -= y[i] * original(i, j);
        if (reduced < 0) {
          entering = j;  // Bland: lowest index
          break;
        }
      }
      if (!entering) return true;
      const std::size_t col = *entering;
      std::optional<std::size_t> leave;
      Rat best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_(i, col) <= 0) continue;
        Rat ratio = t_(i, n_ + m_) / t_(i, col);
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, col);
    }
  }

  // y^T = c_B^T B^{-1} for the sign-flipped system.
  RatVec duals(const RatVec& cost) const {
    RatVec y(m_, Rat(0));
    for (std::size_t r = 0; r < m_; ++r) {
      const Rat& cb = cost[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t i = 0; i < m_; ++i) y[i] += cb * t_(r, n_ + i);
    }
    return y;
  }

  // Column j of the initial tableau [A' | I].
  Rat original(std::size_t i, std::size_t j) const {
    if (j < n_) return a_orig_(i, j);
    return j - n_ == i ? Rat(1) : Rat(0);
  }

  void set_original(const RatMat& a) {
    a_orig_ = RatMat(m_, n_);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j) a_orig_(i, j) = sign_[i] * a(i, j);
  }

  // Pivots artificial variables out of the basis where a structural column is
  // available; rows with none are redundant and keep their artificial at zero.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!is_basic(j) && t_(r, j) != 0) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  RatVec primal() const {
    RatVec x(n_, Rat(0));
    for (std::size_t r = 0; r < m_; ++r)
      if (basis_[r] < n_) x[basis_[r]] = t_(r, n_ + m_);
    return x;
  }

  Rat objective(const RatVec& cost) const {
    Rat v = 0;
    for (std::size_t r = 0; r < m_; ++r) v += cost[basis_[r]] * t_(r, n_ + m_);
    return v;
  }

  // Undo the row sign flips on a dual vector.
  RatVec unflip(const RatVec& y) const {
    RatVec out(m_);
    for (std::size_t i = 0; i < m_; ++i) out[i] = sign_[i] * y[i];
    return out;
  }

  std::size_t rows() const { return m_; }
  std::size_t structural() const { return n_; }

 private:
  bool is_basic(std::size_t j) const {
    for (auto b : basis_)
      if (b == j) return true;
    return false;
  }

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t w = t_.cols();
    Rat inv = 1 / t_(r, c);
    for (std::size_t j = 0; j < w; ++j) t_(r, j) *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || t_(i, c) == 0) continue;
      Rat f = t_(i, c);
      for (std::size_t j = 0; j < w; ++j) t_(i, j) -= f * t_(r, j);
    }
    basis_[r] = c;
  }

  std::size_t m_;
  std::size_t n_;
  RatMat t_;
  RatMat a_orig_;
  RatVec sign_;
  std::vector<std::size_t> basis_;
};

void check_dims(const RatMat& a, const RatVec& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("lp: dimension mismatch between A and b");
}

RatVec phase_one_cost(std::size_t n, std::size_t m) {
  RatVec cost(n + m, Rat(0));
  for (std::size_t i = 0; i < m; ++i) cost[n + i] = 1;
  return cost;
}

}  // namespace

bool verify_witness(const RatMat& a, const RatVec& b, const LpFeasible& w) {
  if (w.x.size() != a.cols()) return false;
  for (const auto& v : w.x)
    if (v < 0) return false;
  return a * w.x == b;
}

bool verify_certificate(const RatMat& a, const RatVec& b, const LpInfeasible& cert) {
  if (cert.y.size() != a.rows()) return false;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += cert.y[i] * a(i, j);
    if (s < 0) return false;
  }
  return dot(cert.y, b) < 0;
}

FeasibilityResult lp_feasible(const RatMat& a, const RatVec& b) {
  check_dims(a, b);
  Tableau t(a, b);
  t.set_original(a);
  const RatVec cost = phase_one_cost(a.cols(), a.rows());
  t.optimize(cost, a.cols());
  if (t.objective(cost) == 0) {
    LpFeasible w{t.primal()};
    if (!verify_witness(a, b, w)) throw std::logic_error("lp_feasible: witness failed verification");
    return w;
  }
  RatVec y = t.unflip(t.duals(cost));
  for (auto& v : y) v = -v;
  LpInfeasible cert{std::move(y)};
  if (!verify_certificate(a, b, cert)) throw std::logic_error("lp_feasible: certificate failed verification");
  return cert;
}

LpResult lp_minimize(const RatVec& c, const RatMat& a, const RatVec& b) {
  check_dims(a, b);
  if (c.size() != a.cols()) throw std::invalid_argument("lp_minimize: cost dimension mismatch");
  Tableau t(a, b);
  t.set_original(a);
  const RatVec p1 = phase_one_cost(a.cols(), a.rows());
  t.optimize(p1, a.cols());
  if (t.objective(p1) != 0) {
    RatVec y = t.unflip(t.duals(p1));
    for (auto& v : y) v = -v;
    return LpInfeasible{std::move(y)};
  }
  t.drive_out_artificials();
  RatVec cost(a.cols() + a.rows(), Rat(0));
  for (std::size_t j = 0; j < c.size(); ++j) cost[j] = c[j];
  if (!t.optimize(cost, a.cols())) return LpUnbounded{};
  LpOptimal opt{t.primal(), t.objective(cost), t.unflip(t.duals(cost))};
  return opt;
}

}  // namespace degree_lab
