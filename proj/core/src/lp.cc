// Copyright 2026 The dsp-pack Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dsp/lp.h"

#include <cmath>
#include <string>

namespace dsp {
namespace {

constexpr int kDegenerateBeforeBland = 50;

template <typename T>
struct Tolerance {
  static bool positive(const T& v) { return v > 1e-9; }
  static bool negative(const T& v) { return v < -1e-9; }
};

template <>
struct Tolerance<Rational> {
  static bool positive(const Rational& v) { return v > 0; }
  static bool negative(const Rational& v) { return v < 0; }
};

// Column layout: structural, slack per <= row, artificial per = row.
struct Layout {
  int n = 0;
  int m = 0;
  int cols = 0;
  std::vector<int> initial_basis;
  std::vector<bool> artificial;
};

Layout make_layout(const LpProblem& p) {
  Layout l;
  l.n = p.num_vars;
  l.m = static_cast<int>(p.rows.size());
  l.cols = l.n + l.m;
  l.initial_basis.resize(l.m);
  l.artificial.assign(l.cols, false);
  for (int i = 0; i < l.m; ++i) {
    l.initial_basis[i] = l.n + i;
    l.artificial[l.n + i] = p.rows[i].sense == RowSense::kEqual;
  }
  return l;
}

template <typename T>
struct Tableau {
  // Row-major (m + 1) x (cols + 1); last row is the phase-I cost row, last
  // column the right-hand side.
  std::vector<T> a;
  int m = 0;
  int cols = 0;
  std::vector<int> basis;

  T& at(int r, int c) { return a[static_cast<size_t>(r) * (cols + 1) + c]; }
};

template <typename T>
Tableau<T> build(const LpProblem& p, const Layout& l) {
  Tableau<T> t;
  t.m = l.m;
  t.cols = l.cols;
  t.a.assign(static_cast<size_t>(l.m + 1) * (l.cols + 1), T(0));
  t.basis = l.initial_basis;
  for (int i = 0; i < l.m; ++i) {
    for (const auto& [v, c] : p.rows[i].coeffs) t.at(i, v) += T(c);
    t.at(i, l.n + i) = T(1);
    t.at(i, l.cols) = T(p.rows[i].rhs);
    if (l.artificial[l.n + i]) {
      for (int c = 0; c <= l.cols; ++c) {
        if (c == l.n + i) continue;
        t.at(l.m, c) -= t.at(i, c);
      }
    }
  }
  return t;
}

template <typename T>
void pivot(Tableau<T>& t, int r, int c) {
  const T inv = T(1) / t.at(r, c);
  for (int k = 0; k <= t.cols; ++k) t.at(r, k) *= inv;
  t.at(r, c) = T(1);
  for (int i = 0; i <= t.m; ++i) {
    if (i == r) continue;
    const T f = t.at(i, c);
    if (f == T(0)) continue;
    for (int k = 0; k <= t.cols; ++k) {
      if (t.at(r, k) != T(0)) t.at(i, k) -= f * t.at(r, k);
    }
    t.at(i, c) = T(0);
  }
  t.basis[r] = c;
}

// Phase I. Returns true when the artificial cost reaches zero.
template <typename T>
bool phase_one(Tableau<T>& t, const Layout& l, std::int64_t* pivots) {
  using Tol = Tolerance<T>;
  int degenerate = 0;
  const std::int64_t limit = 50LL * (t.m + t.cols) + 10'000;
  for (std::int64_t iter = 0; iter < limit; ++iter) {
    const bool bland = degenerate >= kDegenerateBeforeBland;
    int enter = -1;
    for (int c = 0; c < t.cols; ++c) {
      if (l.artificial[c]) continue;
      if (!Tol::negative(t.at(t.m, c))) continue;
      if (enter < 0 || (!bland && t.at(t.m, c) < t.at(t.m, enter))) enter = c;
      if (bland) break;
    }
    if (enter < 0) return !Tol::positive(-t.at(t.m, t.cols));
    int leave = -1;
    T best(0);
    for (int r = 0; r < t.m; ++r) {
      if (!Tol::positive(t.at(r, enter))) continue;
      const T ratio = t.at(r, t.cols) / t.at(r, enter);
      if (leave < 0 || ratio < best ||
          (ratio == best && t.basis[r] < t.basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave < 0) throw DefectError("phase-I objective is unbounded");
    degenerate = Tol::positive(best) ? 0 : degenerate + 1;
    pivot(t, leave, enter);
    ++*pivots;
  }
  throw DefectError("simplex iteration limit reached");
}

// Solves B x_B = b exactly for the given basis and expands to structural x.
// Returns an empty vector when the basis is singular.
std::vector<Rational> basic_solution(const LpProblem& p, const Layout& l,
                                     const std::vector<int>& basis) {
  const int m = l.m;
  std::vector<std::vector<Rational>> b(m, std::vector<Rational>(m + 1));
  for (int i = 0; i < m; ++i) {
    for (const auto& [v, c] : p.rows[i].coeffs) {
      for (int j = 0; j < m; ++j) {
        if (basis[j] == v) b[i][j] += c;
      }
    }
    for (int j = 0; j < m; ++j) {
      if (basis[j] == l.n + i) b[i][j] += 1;
    }
    b[i][m] = p.rows[i].rhs;
  }
  for (int col = 0; col < m; ++col) {
    int piv = -1;
    for (int r = col; r < m; ++r) {
      if (b[r][col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) return {};
    std::swap(b[piv], b[col]);
    const Rational inv = 1 / b[col][col];
    for (int k = col; k <= m; ++k) {
      if (b[col][k] != 0) b[col][k] *= inv;
    }
    for (int r = 0; r < m; ++r) {
      if (r == col || b[r][col] == 0) continue;
      const Rational f = b[r][col];
      for (int k = col; k <= m; ++k) {
        if (b[col][k] != 0) b[r][k] -= f * b[col][k];
      }
    }
  }
  std::vector<Rational> x(l.n);
  for (int j = 0; j < m; ++j) {
    const int v = basis[j];
    if (l.artificial[v] && b[j][m] != 0) return {};
    if (v < l.n) x[v] = b[j][m];
  }
  return x;
}

// Reads a Farkas ray y (y^T A >= 0, y >= 0 on <= rows, y^T b < 0) off the
// final phase-I cost row and checks it exactly after rounding.
bool certify_infeasible(const LpProblem& p, const Layout& l,
                        Tableau<double>& t) {
  constexpr double kScale = 1 << 24;
  std::vector<Rational> y(l.m);
  for (int i = 0; i < l.m; ++i) {
    const int c = l.n + i;
    double v = t.at(l.m, c) - (l.artificial[c] ? 1.0 : 0.0);
    if (!l.artificial[c] && v < 0) v = 0;
    y[i] = Rational(static_cast<Int>(std::llround(v * kScale)),
                    static_cast<Int>(kScale));
  }
  std::vector<Rational> z(l.n);
  Rational yb = 0;
  for (int i = 0; i < l.m; ++i) {
    if (y[i] == 0) continue;
    for (const auto& [v, c] : p.rows[i].coeffs) z[v] += y[i] * c;
    yb += y[i] * p.rows[i].rhs;
  }
  if (yb >= 0) return false;
  for (const Rational& v : z) {
    if (v < 0) return false;
  }
  return true;
}

}  // namespace

bool is_feasible(const LpProblem& problem, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != problem.num_vars) return false;
  for (const Rational& v : x) {
    if (v < 0) return false;
  }
  for (const LpRow& row : problem.rows) {
    Rational lhs = 0;
    for (const auto& [v, c] : row.coeffs) lhs += c * x[v];
    if (row.sense == RowSense::kEqual ? lhs != row.rhs : lhs > row.rhs) {
      return false;
    }
  }
  return true;
}

LpResult solve_feasibility(const LpProblem& problem, std::int64_t max_cells) {
  for (const LpRow& row : problem.rows) {
    if (row.rhs < 0) throw PreconditionError("lp: negative right-hand side");
    for (const auto& [v, c] : row.coeffs) {
      if (v < 0 || v >= problem.num_vars) {
        throw PreconditionError("lp: variable index out of range");
      }
    }
  }
  const Layout l = make_layout(problem);
  const std::int64_t cells =
      static_cast<std::int64_t>(l.m + 1) * (l.cols + 1);
  if (cells > max_cells) {
    throw PreconditionError("lp: tableau of " + std::to_string(cells) +
                            " cells exceeds the limit");
  }
  LpResult result;
  Tableau<double> fast = build<double>(problem, l);
  const bool fast_feasible = phase_one(fast, l, &result.pivots);
  if (fast_feasible) {
    std::vector<Rational> x = basic_solution(problem, l, fast.basis);
    if (!x.empty() && is_feasible(problem, x)) {
      result.status = LpStatus::kFeasible;
      result.x = std::move(x);
      return result;
    }
  } else if (certify_infeasible(problem, l, fast)) {
    return result;
  }
  // The floating-point answer could not be certified; decide exactly.
  result.rational_fallback = true;
  Tableau<Rational> exact = build<Rational>(problem, l);
  if (!phase_one(exact, l, &result.pivots)) return result;
  std::vector<Rational> x = basic_solution(problem, l, exact.basis);
  if (x.empty() || !is_feasible(problem, x)) {
    throw DefectError("lp: exact basis failed verification");
  }
  result.status = LpStatus::kFeasible;
  result.x = std::move(x);
  return result;
}

}  // namespace dsp
