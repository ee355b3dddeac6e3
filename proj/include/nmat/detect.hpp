#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmat/types.hpp"

namespace nmat {

enum class MatrixClass { P, NCategory1, NCategory2, AlmostP, NotClassified };

const char* to_string(MatrixClass c);

/// Three-valued verdict. Indeterminate means a sign test landed in the
/// dead zone; it is a first-class outcome, never an error.
enum class Tri { Yes, No, Indeterminate };

const char* to_string(Tri v);

/// Kleene conjunction: No dominates, then Indeterminate.
Tri tri_and(Tri a, Tri b);

struct DetectOptions {
  /// When false (diagnostics mode) the recursion expands the full binary
  /// tree of subproblems regardless of sign-test outcomes, so schur_count
  /// reaches 2^{n-1} - 1 on any input with nonzero pivots.
  bool early_exit = true;
};

struct DetectReport {
  Tri verdict = Tri::Indeterminate;
  MatrixClass klass = MatrixClass::NotClassified;
  std::uint64_t schur_count = 0;  // Schur complements formed
  int max_depth = 0;              // recursion depth reached (root = 0)
  std::optional<std::string> fail_witness;
};

/// Recursive P-matrix test. At each node: test the (1,1) entry, split off
/// the trailing principal submatrix b and the Schur complement
/// c = b - (column 1 / a11) * (row 1 tail), and require both to be P.
DetectReport is_p_matrix(const SquareMatrix& a, const Tolerance& tol = {},
                         const DetectOptions& opt = {});

/// Recursive N-matrix test: reject unless a11 < 0, require the Schur
/// complement A/a11 to be a P-matrix, recurse on the trailing submatrix.
DetectReport is_n_matrix(const SquareMatrix& a, const Tolerance& tol = {},
                         const DetectOptions& opt = {});

/// A is almost-P iff det(A) < 0 and A^{-1} is an N-matrix; one inversion
/// plus one N-test instead of n P-tests on the proper (n-1)-subsets.
DetectReport is_almost_p_matrix(const SquareMatrix& a, const Tolerance& tol = {},
                                const DetectOptions& opt = {});

struct Classification {
  MatrixClass tag = MatrixClass::NotClassified;
  /// Set when some sign test hit the dead zone, making the tag unreliable.
  bool indeterminate = false;
};

/// P, then N (category by entrywise sign scan), then almost-P, else none.
Classification classify(const SquareMatrix& a, const Tolerance& tol = {});

/// Entrywise category of an N-matrix: 2 when every entry is negative,
/// 1 when some entry is positive. nullopt when an entry sits in the dead zone.
std::optional<int> entry_category(const SquareMatrix& a, const Tolerance& tol = {});

struct SignPartition {
  enum class Status { Found, Absent, Indeterminate };
  Status status = Status::Absent;
  std::optional<IndexSubset> s;     // block containing index 1
  std::vector<int> pi;              // permutation sorting s first (1-based images)
};

/// For a first-category N-matrix: the unique candidate split with 1 in the
/// first block is S = {1} u {j : A(1,j) < 0}; every entry is then checked
/// against the block sign pattern (diagonal blocks negative, off-diagonal
/// blocks positive). Degenerate S = {1..n} is rejected as Absent.
SignPartition sign_partition(const SquareMatrix& a, const Tolerance& tol = {});

}  // namespace nmat
