#pragma once

// Dense two-phase primal simplex on explicit tableaus, templated over the
// scalar so the same pivoting code runs in exact rational arithmetic
// (eps = 0) and in double (eps > 0).  Bland's rule throughout, so cycling is
// impossible and results are deterministic.  Problem sizes here are tiny
// (tens of rows, up to ~10^6 columns only in pathological caps), so no
// revised simplex or sparsity is warranted.

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace qframe::lp {

enum class Status { optimal, infeasible, unbounded };

template <class T>
struct FeasibilityResult {
  bool feasible = false;
  std::vector<T> x;         // a feasible point when feasible
  std::vector<T> farkas_y;  // row certificate when infeasible:
                            // y^T A <= 0 (componentwise), y^T b > 0
};

template <class T>
struct MaximizeResult {
  Status status = Status::optimal;
  T value{};
  std::vector<T> x;
};

namespace detail {

template <class T>
class Tableau {
 public:
  // columns: n structural + m artificial/slack + 1 rhs
  Tableau(int rows, int cols, T eps) : m_(rows), n_(cols), eps_(eps) {
    t_.assign(m_ + 1, std::vector<T>(n_ + 1, T(0)));
    basis_.assign(m_, -1);
  }

  std::vector<std::vector<T>> t_;  // t_[0] = reduced-cost row; rows 1..m
  std::vector<int> basis_;         // basic variable per row (0-based rows)
  int m_, n_;
  T eps_;

  bool pos(const T& v) const { return v > eps_; }
  bool neg(const T& v) const { return v < -eps_; }

  void pivot(int row, int col) {
    T p = t_[row][col];
    for (int j = 0; j <= n_; ++j) t_[row][j] /= p;
    for (int i = 0; i <= m_; ++i) {
      if (i == row) continue;
      T f = t_[i][col];
      if (f == T(0)) continue;
      for (int j = 0; j <= n_; ++j) t_[i][j] -= f * t_[row][j];
    }
    basis_[row - 1] = col;
  }

  // Bland: entering = smallest column index with negative reduced cost;
  // leaving = smallest ratio, ties by smallest basis label.
  Status run(std::int64_t max_pivots = 1000000) {
    while (max_pivots-- > 0) {
      int enter = -1;
      for (int j = 0; j < n_; ++j)
        if (neg(t_[0][j])) {
          enter = j;
          break;
        }
      if (enter < 0) return Status::optimal;
      int leave = -1;
      T best{};
      for (int i = 1; i <= m_; ++i) {
        if (!pos(t_[i][enter])) continue;
        T ratio = t_[i][n_] / t_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i - 1] < basis_[leave - 1])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return Status::unbounded;
      pivot(leave, enter);
    }
    throw std::runtime_error("simplex pivot budget exhausted");
  }
};

}  // namespace detail

// Feasibility of { x >= 0 : A x = b } via phase-1 artificials.  On success x
// is a basic feasible point; on failure farkas_y certifies infeasibility.
// feas_tol separates "phase-1 optimum is zero" from "positive" (0 for exact).
template <class T>
FeasibilityResult<T> equality_feasibility(std::vector<std::vector<T>> A,
                                          std::vector<T> b, T eps = T(0),
                                          T feas_tol = T(0)) {
  int m = static_cast<int>(A.size());
  int n = m == 0 ? 0 : static_cast<int>(A[0].size());
  std::vector<int> sign(m, 1);
  for (int i = 0; i < m; ++i)
    if (b[i] < T(0)) {
      sign[i] = -1;
      b[i] = -b[i];
      for (auto& v : A[i]) v = -v;
    }

  detail::Tableau<T> tab(m, n + m, eps);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab.t_[i + 1][j] = A[i][j];
    tab.t_[i + 1][n + i] = T(1);
    tab.t_[i + 1][n + m] = b[i];
    tab.basis_[i] = n + i;
  }
  // Minimize sum of artificials: reduced costs r_j = c_j - sum_i A_ij.
  for (int j = 0; j < n; ++j) {
    T s(0);
    for (int i = 0; i < m; ++i) s += tab.t_[i + 1][j];
    tab.t_[0][j] = -s;
  }
  T rhs(0);
  for (int i = 0; i < m; ++i) rhs += tab.t_[i + 1][n + m];
  tab.t_[0][n + m] = -rhs;  // objective value stored negated

  auto st = tab.run();
  if (st != Status::optimal)
    throw std::runtime_error("phase-1 cannot be unbounded");

  FeasibilityResult<T> res;
  T objective = -tab.t_[0][n + m];
  if (objective > feas_tol) {
    res.feasible = false;
    // y = c_B B^{-1}; with artificial costs 1 this is 1 - (reduced cost of
    // the artificial column); undo row flips.
    res.farkas_y.assign(m, T(0));
    for (int i = 0; i < m; ++i) {
      T yi = T(1) - tab.t_[0][n + i];
      res.farkas_y[i] = sign[i] == 1 ? yi : -yi;
    }
    return res;
  }
  res.feasible = true;
  res.x.assign(n, T(0));
  for (int i = 0; i < m; ++i)
    if (tab.basis_[i] < n) res.x[tab.basis_[i]] = tab.t_[i + 1][n + m];
  // Clamp tiny negatives introduced by floating pivots.
  for (auto& v : res.x)
    if (v < T(0)) v = T(0);
  return res;
}

// max c.x subject to A x <= b, x >= 0, with b >= 0 (slack basis is feasible).
template <class T>
MaximizeResult<T> maximize_leq(const std::vector<std::vector<T>>& A,
                               const std::vector<T>& b, const std::vector<T>& c,
                               T eps = T(0)) {
  int m = static_cast<int>(A.size());
  int n = m == 0 ? static_cast<int>(c.size()) : static_cast<int>(A[0].size());
  for (const auto& v : b)
    if (v < T(0)) throw std::invalid_argument("maximize_leq requires b >= 0");

  detail::Tableau<T> tab(m, n + m, eps);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab.t_[i + 1][j] = A[i][j];
    tab.t_[i + 1][n + i] = T(1);
    tab.t_[i + 1][n + m] = b[i];
    tab.basis_[i] = n + i;
  }
  for (int j = 0; j < n; ++j) tab.t_[0][j] = -c[j];  // maximize

  MaximizeResult<T> res;
  auto st = tab.run();
  res.status = st;
  if (st != Status::optimal) return res;
  res.value = tab.t_[0][n + m];
  res.x.assign(n, T(0));
  for (int i = 0; i < m; ++i)
    if (tab.basis_[i] < n) res.x[tab.basis_[i]] = tab.t_[i + 1][n + m];
  for (auto& v : res.x)
    if (v < T(0)) v = T(0);
  return res;
}

}  // namespace qframe::lp
