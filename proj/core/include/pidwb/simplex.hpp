#pragma once

#include "pidwb/rational.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pidwb {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

template <class T>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<T> x;
  T objective{};
  int pivots = 0;
};

template <class T>
struct LpTraits;

template <>
struct LpTraits<Rational> {
  static bool negative(const Rational& v) { return sgn(v) < 0; }
  static bool positive(const Rational& v) { return sgn(v) > 0; }
  static bool zero(const Rational& v) { return sgn(v) == 0; }
  static constexpr bool exact = true;
};

template <>
struct LpTraits<double> {
  static constexpr double eps = 1e-10;
  static bool negative(double v) { return v < -eps; }
  static bool positive(double v) { return v > eps; }
  static bool zero(double v) { return std::abs(v) <= eps; }
  static constexpr bool exact = false;
};

// Two-phase dense tableau simplex for  min c.x  s.t.  A x = b, x >= 0.
// An empty `c` asks for feasibility only. Exact scalars use Bland's rule throughout; floating
// point starts with Dantzig pricing and falls back to Bland's rule if it stalls.
template <class T>
LpResult<T> solve_lp(std::vector<std::vector<T>> A, std::vector<T> b, const std::vector<T>& c,
                     int max_pivots = 50000) {
  using Tr = LpTraits<T>;
  const std::size_t m = A.size();
  const std::size_t n = m ? A[0].size() : c.size();
  if (b.size() != m) throw std::invalid_argument("solve_lp: b has the wrong length");
  if (!c.empty() && c.size() != n) throw std::invalid_argument("solve_lp: c has the wrong length");
  for (std::size_t i = 0; i < m; ++i) {
    if (A[i].size() != n) throw std::invalid_argument("solve_lp: ragged constraint matrix");
    if (Tr::negative(b[i]) || (!Tr::exact && b[i] < T(0))) {
      for (auto& v : A[i]) v = -v;
      b[i] = -b[i];
    }
  }

  // Tableau columns: n structural, m artificial, 1 rhs.
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<T>> tab(m + 1, std::vector<T>(cols, T(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) tab[i][j] = A[i][j];
    tab[i][n + i] = T(1);
    tab[i][cols - 1] = b[i];
    basis[i] = n + i;
  }

  LpResult<T> res;
  auto pivot = [&](std::size_t r, std::size_t col) {
    T pv = tab[r][col];
    for (auto& v : tab[r]) v /= pv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == r || Tr::zero(tab[i][col])) {
        if (!Tr::exact && i != r) tab[i][col] = T(0);
        continue;
      }
      T f = tab[i][col];
      for (std::size_t j = 0; j < cols; ++j)
        if (!Tr::zero(tab[r][j])) tab[i][j] -= f * tab[r][j];
      tab[i][col] = T(0);
    }
    basis[r] = col;
    ++res.pivots;
  };

  // Objective row holds reduced costs; rhs entry holds minus the objective value.
  auto run = [&](std::size_t allowed_cols) -> LpStatus {
    int stall = 0;
    while (true) {
      if (res.pivots >= max_pivots) return LpStatus::IterationLimit;
      bool bland = Tr::exact || stall > 50;
      std::size_t enter = allowed_cols;
      T best = T(0);
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (!Tr::negative(tab[m][j])) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (enter == allowed_cols || tab[m][j] < best) {
          best = tab[m][j];
          enter = j;
        }
      }
      if (enter == allowed_cols) return LpStatus::Optimal;
      std::size_t leave = m;
      T ratio{};
      for (std::size_t i = 0; i < m; ++i) {
        if (!Tr::positive(tab[i][enter])) continue;
        T r = tab[i][cols - 1] / tab[i][enter];
        if (leave == m || r < ratio || (!(ratio < r) && basis[i] < basis[leave])) {
          leave = i;
          ratio = r;
        }
      }
      if (leave == m) return LpStatus::Unbounded;
      if (Tr::zero(ratio)) ++stall;
      else stall = 0;
      pivot(leave, enter);
    }
  };

  // Phase 1: minimize the sum of artificials.
  for (std::size_t j = 0; j < cols; ++j) {
    T s = T(0);
    for (std::size_t i = 0; i < m; ++i)
      if (j < n || j == cols - 1) s += tab[i][j];
    tab[m][j] = j < n || j == cols - 1 ? T(-s) : T(0);
  }
  LpStatus st = run(n + m);
  if (st == LpStatus::IterationLimit) {
    res.status = st;
    return res;
  }
  T infeas = -tab[m][cols - 1];
  if (Tr::positive(infeas) || (Tr::exact && !Tr::zero(infeas))) {
    res.status = LpStatus::Infeasible;
    return res;
  }

  // Drive remaining artificials out of the basis; rows with no structural entry are redundant.
  std::vector<bool> dead(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) continue;
    std::size_t col = n;
    for (std::size_t j = 0; j < n; ++j)
      if (!Tr::zero(tab[i][j])) {
        col = j;
        break;
      }
    if (col == n) dead[i] = true;
    else pivot(i, col);
  }

  res.x.assign(n, T(0));
  if (!c.empty()) {
    // Phase 2 over structural columns only; dead rows are inert (all structural entries zero).
    for (std::size_t j = 0; j < cols; ++j) tab[m][j] = j < n ? c[j] : T(0);
    for (std::size_t i = 0; i < m; ++i) {
      if (dead[i] || basis[i] >= n) continue;
      T f = tab[m][basis[i]];
      if (Tr::zero(f)) continue;
      for (std::size_t j = 0; j < cols; ++j) tab[m][j] -= f * tab[i][j];
    }
    for (std::size_t i = 0; i < m; ++i)
      if (dead[i]) tab[i][cols - 1] = T(0);
    st = run(n);
    if (st != LpStatus::Optimal) {
      res.status = st;
      return res;
    }
  }
  for (std::size_t i = 0; i < m; ++i)
    if (!dead[i] && basis[i] < n) res.x[basis[i]] = tab[i][cols - 1];
  T obj = T(0);
  if (!c.empty())
    for (std::size_t j = 0; j < n; ++j) obj += c[j] * res.x[j];
  res.objective = obj;
  res.status = LpStatus::Optimal;
  return res;
}

}  // namespace pidwb
