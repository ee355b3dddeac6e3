#pragma once

#include <vector>

#include "nmat/types.hpp"

namespace nmat {

/// A[alpha]: rows and columns of A indexed by the (nonempty) subset alpha.
SquareMatrix principal_submatrix(const SquareMatrix& a, const IndexSubset& alpha);

/// det(A) by row reduction with partial pivoting.
double determinant(const SquareMatrix& a, const Tolerance& tol = {});

/// A/A[alpha] = A[~alpha] - A[~alpha,alpha] A[alpha]^{-1} A[alpha,~alpha].
/// Requires A[alpha] invertible (|det| > pivot_eps * scale) and ~alpha nonempty.
SquareMatrix schur_complement(const SquareMatrix& a, const IndexSubset& alpha,
                              const Tolerance& tol = {});

/// A + t * x * y^T.
SquareMatrix rank_one_update(const SquareMatrix& a, const std::vector<double>& x,
                             const std::vector<double>& y, double t);

/// Gauss-Jordan inverse with partial pivoting.
SquareMatrix inverse(const SquareMatrix& a, const Tolerance& tol = {});

/// P A P^T for the permutation pi of {1..n}: entry (pi(i), pi(j)) of the
/// result equals A(i, j). pi holds 1-based images, pi[i-1] = pi(i).
SquareMatrix permutation_similarity(const SquareMatrix& a, const std::vector<int>& pi);

namespace detail {

/// In-place LU determinant of an m x m row-major block. Empty input (m = 0)
/// returns 1 by the vacuous-minor convention.
double lu_determinant(std::vector<double>& work, int m);

}  // namespace detail

}  // namespace nmat
