#include "nmat/core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace nmat {

namespace detail {

double lu_determinant(std::vector<double>& work, int m) {
  if (m == 0) return 1.0;
  double det = 1.0;
  for (int k = 0; k < m; ++k) {
    int piv = k;
    double best = std::fabs(work[static_cast<std::size_t>(k) * m + k]);
    for (int r = k + 1; r < m; ++r) {
      const double v = std::fabs(work[static_cast<std::size_t>(r) * m + k]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != k) {
      for (int j = k; j < m; ++j)
        std::swap(work[static_cast<std::size_t>(k) * m + j],
                  work[static_cast<std::size_t>(piv) * m + j]);
      det = -det;
    }
    const double pivot = work[static_cast<std::size_t>(k) * m + k];
    det *= pivot;
    for (int r = k + 1; r < m; ++r) {
      const double f = work[static_cast<std::size_t>(r) * m + k] / pivot;
      if (f == 0.0) continue;
      for (int j = k + 1; j < m; ++j)
        work[static_cast<std::size_t>(r) * m + j] -= f * work[static_cast<std::size_t>(k) * m + j];
    }
  }
  return det;
}

namespace {

// LU-factor an m x m block in place with row pivoting; returns false when a
// column collapses to exact zero. perm records the row order.
bool lu_factor(std::vector<double>& a, int m, std::vector<int>& perm, double& det) {
  perm.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i;
  det = 1.0;
  for (int k = 0; k < m; ++k) {
    int piv = k;
    double best = std::fabs(a[static_cast<std::size_t>(k) * m + k]);
    for (int r = k + 1; r < m; ++r) {
      const double v = std::fabs(a[static_cast<std::size_t>(r) * m + k]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) {
      det = 0.0;
      return false;
    }
    if (piv != k) {
      for (int j = 0; j < m; ++j)
        std::swap(a[static_cast<std::size_t>(k) * m + j], a[static_cast<std::size_t>(piv) * m + j]);
      std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(piv)]);
      det = -det;
    }
    const double pivot = a[static_cast<std::size_t>(k) * m + k];
    det *= pivot;
    for (int r = k + 1; r < m; ++r) {
      const double f = a[static_cast<std::size_t>(r) * m + k] / pivot;
      a[static_cast<std::size_t>(r) * m + k] = f;
      if (f == 0.0) continue;
      for (int j = k + 1; j < m; ++j)
        a[static_cast<std::size_t>(r) * m + j] -= f * a[static_cast<std::size_t>(k) * m + j];
    }
  }
  return true;
}

// Solve LU x = b for one right-hand side, b permuted by perm first.
void lu_solve(const std::vector<double>& lu, int m, const std::vector<int>& perm,
              const double* b, int stride, double* x) {
  std::vector<double> y(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    double s = b[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)]) * stride];
    for (int k = 0; k < i; ++k) s -= lu[static_cast<std::size_t>(i) * m + k] * y[static_cast<std::size_t>(k)];
    y[static_cast<std::size_t>(i)] = s;
  }
  for (int i = m - 1; i >= 0; --i) {
    double s = y[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < m; ++k) s -= lu[static_cast<std::size_t>(i) * m + k] * x[static_cast<std::size_t>(k) * stride];
    x[static_cast<std::size_t>(i) * stride] = s / lu[static_cast<std::size_t>(i) * m + i];
  }
}

}  // namespace
}  // namespace detail

SquareMatrix principal_submatrix(const SquareMatrix& a, const IndexSubset& alpha) {
  if (alpha.universe() != a.order())
    throw ContractViolation("subset universe does not match matrix order");
  if (alpha.empty()) throw ContractViolation("principal submatrix needs a nonempty subset");
  const auto& m = alpha.members();
  const int k = alpha.size();
  SquareMatrix out(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) out(i, j) = a(m[static_cast<std::size_t>(i)] - 1, m[static_cast<std::size_t>(j)] - 1);
  return out;
}

double determinant(const SquareMatrix& a, const Tolerance&) {
  std::vector<double> work = a.entries();
  return detail::lu_determinant(work, a.order());
}

SquareMatrix schur_complement(const SquareMatrix& a, const IndexSubset& alpha,
                              const Tolerance& tol) {
  if (alpha.universe() != a.order())
    throw ContractViolation("subset universe does not match matrix order");
  if (alpha.empty()) throw ContractViolation("Schur complement needs a nonempty pivot subset");
  const IndexSubset beta = alpha.complement();
  if (beta.empty())
    throw ContractViolation("Schur complement with the full subset is rejected");

  const auto& am = alpha.members();
  const auto& bm = beta.members();
  const int k = alpha.size();
  const int r = beta.size();

  std::vector<double> block(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      block[static_cast<std::size_t>(i) * k + j] = a(am[static_cast<std::size_t>(i)] - 1, am[static_cast<std::size_t>(j)] - 1);

  const double scale = [&] {
    double m = 0.0;
    for (double v : block) m = std::max(m, std::fabs(v));
    return std::max(1.0, m);
  }();

  std::vector<int> perm;
  double det = 0.0;
  const bool ok = detail::lu_factor(block, k, perm, det);
  if (!ok || std::fabs(det) <= tol.pivot_eps * scale)
    throw SingularPivot("singular pivot block A" + alpha.to_string(), alpha.members());

  // X = A[alpha]^{-1} A[alpha, beta], column by column.
  std::vector<double> rhs(static_cast<std::size_t>(k) * r);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < r; ++j)
      rhs[static_cast<std::size_t>(i) * r + j] = a(am[static_cast<std::size_t>(i)] - 1, bm[static_cast<std::size_t>(j)] - 1);
  std::vector<double> x(static_cast<std::size_t>(k) * r);
  for (int j = 0; j < r; ++j)
    detail::lu_solve(block, k, perm, rhs.data() + j, r, x.data() + j);

  SquareMatrix out(r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      double s = a(bm[static_cast<std::size_t>(i)] - 1, bm[static_cast<std::size_t>(j)] - 1);
      for (int l = 0; l < k; ++l)
        s -= a(bm[static_cast<std::size_t>(i)] - 1, am[static_cast<std::size_t>(l)] - 1) * x[static_cast<std::size_t>(l) * r + j];
      out(i, j) = s;
    }
  }
  return out;
}

SquareMatrix rank_one_update(const SquareMatrix& a, const std::vector<double>& x,
                             const std::vector<double>& y, double t) {
  const int n = a.order();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw ContractViolation("rank-one update vectors must have the matrix order");
  SquareMatrix out = a;
  if (t == 0.0) return out;
  for (int i = 0; i < n; ++i) {
    const double f = t * x[static_cast<std::size_t>(i)];
    if (f == 0.0) continue;
    for (int j = 0; j < n; ++j) out(i, j) += f * y[static_cast<std::size_t>(j)];
  }
  return out;
}

SquareMatrix inverse(const SquareMatrix& a, const Tolerance& tol) {
  const int n = a.order();
  const double scale = sign_scale(a);

  std::vector<double> lu = a.entries();
  std::vector<int> perm;
  double det = 0.0;
  const bool ok = detail::lu_factor(lu, n, perm, det);
  double gate = tol.pivot_eps;
  for (int i = 0; i < n; ++i) gate *= scale;  // pivot_eps * scale^n
  if (!ok || std::fabs(det) <= gate) throw SingularMatrix("matrix is numerically singular");

  SquareMatrix out(n);
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  std::vector<double> col(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    e[static_cast<std::size_t>(j)] = 1.0;
    detail::lu_solve(lu, n, perm, e.data(), 1, col.data());
    for (int i = 0; i < n; ++i) out(i, j) = col[static_cast<std::size_t>(i)];
    e[static_cast<std::size_t>(j)] = 0.0;
  }
  return out;
}

SquareMatrix permutation_similarity(const SquareMatrix& a, const std::vector<int>& pi) {
  const int n = a.order();
  if (static_cast<int>(pi.size()) != n)
    throw ContractViolation("permutation length must equal the matrix order");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int v : pi) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v - 1)])
      throw ContractViolation("permutation must be a bijection on {1..n}");
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
  SquareMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(pi[static_cast<std::size_t>(i)] - 1, pi[static_cast<std::size_t>(j)] - 1) = a(i, j);
  return out;
}

}  // namespace nmat
