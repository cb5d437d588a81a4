#pragma once

// Exact linear programming over the rationals.
//
// A small dense two-phase tableau simplex with Bland's anti-cycling rule.
// Problems are stated with free variables and mixed equality/inequality
// constraints; the solver converts to standard form (split free variables,
// slack columns) internally.  Everything is exact, so a reported optimum or
// infeasibility is a certificate, not an approximation.  Degenerate optima
// (for instance minimum coefficient 0 in lp_min_coeff) are meaningful
// answers here, encoding boundary containment.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "chroma/linalg.hpp"
#include "chroma/rational.hpp"

namespace chroma {

enum class LpStatus { OPTIMAL, INFEASIBLE, UNBOUNDED };

struct LPResult {
  LpStatus status = LpStatus::INFEASIBLE;
  Rat optimum;               // meaningful when OPTIMAL
  std::vector<Rat> witness;  // primal solution when OPTIMAL
};

enum class Cmp { EQ, GE, LE };

struct LinConstraint {
  QVec a;
  Cmp cmp = Cmp::EQ;
  Rat rhs;
};

namespace detail {

// Standard-form tableau: maximize c x subject to A x = b, x >= 0, b >= 0.
class SimplexTableau {
 public:
  SimplexTableau(const std::vector<std::vector<Rat>>& a,
                 const std::vector<Rat>& b)
      : m_(a.size()), n_(m_ ? a[0].size() : 0), t_(m_, std::vector<Rat>(n_ + 1)),
        basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      bool flip = b[i].sgn() < 0;
      for (std::size_t j = 0; j < n_; ++j) t_[i][j] = flip ? -a[i][j] : a[i][j];
      t_[i][n_] = flip ? -b[i] : b[i];
    }
  }

  // Phase 1: appends one artificial column per row and minimizes their sum.
  bool feasible() {
    std::size_t n0 = n_;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t k = 0; k < m_; ++k) t_[k].insert(t_[k].end() - 1, Rat(i == k ? 1 : 0));
      basis_[i] = n_ + i;
    }
    n_ += m_;
    std::vector<Rat> cost(n_);
    for (std::size_t j = n0; j < n_; ++j) cost[j] = Rat(-1);
    run(cost);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= n0 && !t_[i][n_].is_zero()) return false;
    // pivot leftover artificials out of the basis, or drop redundant rows
    for (std::size_t i = 0; i < m_;) {
      if (basis_[i] < n0) { ++i; continue; }
      std::size_t j = 0;
      while (j < n0 && t_[i][j].is_zero()) ++j;
      if (j < n0) {
        pivot(i, j);
        ++i;
      } else {
        t_.erase(t_.begin() + long(i));
        basis_.erase(basis_.begin() + long(i));
        --m_;
      }
    }
    for (std::size_t k = 0; k < m_; ++k) t_[k].erase(t_[k].begin() + long(n0), t_[k].end() - 1);
    n_ = n0;
    return true;
  }

  // Phase 2 with the real objective; returns false when unbounded.
  bool optimize(const std::vector<Rat>& cost) { return run(cost); }

  std::vector<Rat> solution(std::size_t nvars) const {
    std::vector<Rat> x(nvars);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < nvars) x[basis_[i]] = t_[i][n_];
    return x;
  }

 private:
  // Reduced cost of column j under the given cost vector.
  Rat reduced(const std::vector<Rat>& cost, std::size_t j) const {
    Rat r = j < cost.size() ? cost[j] : Rat(0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= cost.size()) continue;
      const Rat& cb = cost[basis_[i]];
      if (!cb.is_zero() && !t_[i][j].is_zero()) r -= cb * t_[i][j];
    }
    return r;
  }

  bool run(const std::vector<Rat>& cost) {
    for (;;) {
      // Bland: entering variable is the smallest index with positive
      // reduced cost
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (reduced(cost, j).sgn() > 0) { enter = j; break; }
      }
      if (enter == n_) return true;
      std::size_t leave = m_;
      Rat best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][enter].sgn() <= 0) continue;
        Rat ratio = t_[i][n_] / t_[i][enter];
        if (leave == m_ || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave]))
          { leave = i; best = ratio; }
      }
      if (leave == m_) return false;  // unbounded direction
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rat inv = Rat(1) / t_[r][c];
    for (Rat& x : t_[r]) x *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || t_[i][c].is_zero()) continue;
      Rat f = t_[i][c];
      for (std::size_t j = 0; j <= n_; ++j) t_[i][j] -= f * t_[r][j];
    }
    basis_[r] = c;
  }

  std::size_t m_, n_;
  std::vector<std::vector<Rat>> t_;  // m rows of n coefficients plus rhs
  std::vector<std::size_t> basis_;
};

}  // namespace detail

// Maximize objective . x over free variables x subject to the constraints.
// Set maximize = false to minimize.
inline LPResult lp_solve(std::size_t nvars, const QVec& objective,
                         const std::vector<LinConstraint>& cons,
                         bool maximize = true) {
  if (objective.dim() != nvars)
    throw std::invalid_argument("lp_solve: objective dimension mismatch");
  // standard form: x = u - v with u, v >= 0, slack per inequality
  std::size_t nslack = 0;
  for (const LinConstraint& c : cons)
    if (c.cmp != Cmp::EQ) ++nslack;
  std::size_t ncols = 2 * nvars + nslack;
  std::vector<std::vector<Rat>> a(cons.size(), std::vector<Rat>(ncols));
  std::vector<Rat> b(cons.size());
  std::size_t s = 0;
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const LinConstraint& c = cons[i];
    if (c.a.dim() != nvars)
      throw std::invalid_argument("lp_solve: constraint dimension mismatch");
    for (std::size_t j = 0; j < nvars; ++j) {
      a[i][2 * j] = c.a[j];
      a[i][2 * j + 1] = -c.a[j];
    }
    if (c.cmp != Cmp::EQ)
      a[i][2 * nvars + s++] = Rat(c.cmp == Cmp::GE ? -1 : 1);
    b[i] = c.rhs;
  }

  detail::SimplexTableau tab(a, b);
  LPResult res;
  if (!tab.feasible()) {
    res.status = LpStatus::INFEASIBLE;
    return res;
  }
  std::vector<Rat> cost(ncols);
  for (std::size_t j = 0; j < nvars; ++j) {
    cost[2 * j] = maximize ? objective[j] : -objective[j];
    cost[2 * j + 1] = -cost[2 * j];
  }
  if (!tab.optimize(cost)) {
    res.status = LpStatus::UNBOUNDED;
    return res;
  }
  std::vector<Rat> raw = tab.solution(2 * nvars);
  res.status = LpStatus::OPTIMAL;
  res.witness.resize(nvars);
  for (std::size_t j = 0; j < nvars; ++j)
    res.witness[j] = raw[2 * j] - raw[2 * j + 1];
  for (std::size_t j = 0; j < nvars; ++j)
    res.optimum += objective[j] * res.witness[j];
  return res;
}

// Feasibility of a constraint system over free variables.
inline bool lp_feasible(std::size_t nvars,
                        const std::vector<LinConstraint>& cons) {
  return lp_solve(nvars, QVec(nvars), cons).status == LpStatus::OPTIMAL;
}

// max eps subject to sum lambda_p p = 0, sum lambda_p = 1, lambda_p >= eps.
//
// INFEASIBLE        <=>  0 not in conv(points)
// OPTIMAL, eps > 0  <=>  0 in relint conv(points)
// OPTIMAL, eps = 0  <=>  0 in conv minus relint
//
// The witness is the lambda vector; its minimum equals the optimum.  A
// negative LP optimum means 0 lies in the affine hull but outside the
// convex hull, which is reported as INFEASIBLE.
inline LPResult lp_min_coeff(const std::vector<QVec>& points) {
  LPResult res;
  if (points.empty()) return res;  // INFEASIBLE
  std::size_t n = points.size(), d = points[0].dim();
  for (const QVec& p : points)
    if (p.dim() != d)
      throw std::invalid_argument("lp_min_coeff: mixed dimensions");

  // variables: lambda_1..lambda_n, eps
  std::vector<LinConstraint> cons;
  for (std::size_t j = 0; j < d; ++j) {
    LinConstraint c;
    c.a = QVec(n + 1);
    for (std::size_t p = 0; p < n; ++p) c.a[p] = points[p][j];
    cons.push_back(std::move(c));  // = 0
  }
  {
    LinConstraint c;
    c.a = QVec(n + 1);
    for (std::size_t p = 0; p < n; ++p) c.a[p] = Rat(1);
    c.rhs = Rat(1);
    cons.push_back(std::move(c));
  }
  for (std::size_t p = 0; p < n; ++p) {
    LinConstraint c;
    c.a = QVec(n + 1);
    c.a[p] = Rat(1);
    c.a[n] = Rat(-1);
    c.cmp = Cmp::GE;
    cons.push_back(std::move(c));
  }
  QVec obj(n + 1);
  obj[n] = Rat(1);

  LPResult lp = lp_solve(n + 1, obj, cons);
  if (lp.status != LpStatus::OPTIMAL) {
    res.status = lp.status;
    return res;
  }
  if (lp.optimum.sgn() < 0) return res;  // 0 outside the hull: INFEASIBLE
  res.status = LpStatus::OPTIMAL;
  res.optimum = lp.optimum;
  res.witness.assign(lp.witness.begin(), lp.witness.begin() + long(points.size()));
  return res;
}

}  // namespace chroma
