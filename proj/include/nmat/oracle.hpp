#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmat/detect.hpp"
#include "nmat/types.hpp"

namespace nmat {

/// Size guards for the exhaustive routines. Configuration, not hard limits.
struct OracleLimits {
  int minors_cap = 20;
  int eigen_cap = 8;
};

/// All 2^n - 1 principal minors, keyed by subset mask (bit i-1 <=> index i).
struct MinorTable {
  int n = 0;
  std::vector<double> by_mask;  // size 2^n; slot 0 holds the vacuous minor 1

  double value(std::uint64_t mask) const { return by_mask[mask]; }
  double value(const IndexSubset& s) const { return by_mask[s.mask()]; }
};

/// det(A[alpha]) for every nonempty alpha, each computed independently by
/// row reduction. The deliberately dumb baseline.
MinorTable all_principal_minors(const SquareMatrix& a, const Tolerance& tol = {},
                                const OracleLimits& limits = {});

/// Definitional classification straight off the minor table. Any minor in
/// the dead zone makes the outcome indeterminate.
Classification classify_bruteforce(const SquareMatrix& a, const Tolerance& tol = {},
                                   const OracleLimits& limits = {});

/// Every minor of A + t*x*y^T is affine in t: intercept det A[alpha], slope
/// y[alpha]^T adj(A[alpha]) x[alpha]. Returns the smallest t beyond which all
/// 2^n - 1 minors are positive, or nullopt when no such threshold exists.
std::optional<double> exact_border_threshold(const SquareMatrix& a,
                                             const std::vector<double>& x,
                                             const std::vector<double>& y,
                                             const Tolerance& tol = {},
                                             const OracleLimits& limits = {});

struct EigenvalueCount {
  int count = 0;                     // negative real roots, multiplicities summed
  bool multiplicity_warning = false; // some root had multiplicity > 1
  bool indeterminate = false;        // a root sits within tol.eps of 0
};

/// Counts real roots of the characteristic polynomial in (-inf, 0).
/// Coefficients come from the trace recursion; roots are isolated by
/// recursive-derivative bracketing on [-R, 0], R = 1 + max absolute row sum.
EigenvalueCount negative_real_eigenvalue_count(const SquareMatrix& a, const Tolerance& tol = {},
                                               const OracleLimits& limits = {});

/// One line per subset in binary-counter order: "{i,j,...}: value".
std::string serialize(const MinorTable& table);

}  // namespace nmat
