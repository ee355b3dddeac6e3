#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nmat {

/// Thresholds for floating-point sign decisions and elimination pivots.
/// A value v counts negative iff v < -eps*s and positive iff v > +eps*s,
/// where s = max(1, largest absolute entry of the matrix under test).
/// Values inside the dead zone yield an indeterminate outcome, never a bool.
struct Tolerance {
  double eps = 1e-9;
  double pivot_eps = 1e-12;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition broken by the caller (bad index, length mismatch, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A[alpha] too close to singular to form a Schur complement.
class SingularPivot : public Error {
 public:
  SingularPivot(const std::string& msg, std::vector<int> alpha_members)
      : Error(msg), alpha(std::move(alpha_members)) {}
  std::vector<int> alpha;  // 1-based members of the offending pivot block
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class SignPatternError : public Error {
 public:
  using Error::Error;
};

class InfeasibleBorder : public Error {
 public:
  using Error::Error;
};

class ConstructionStuck : public Error {
 public:
  using Error::Error;
};

/// Dense real square matrix, row-major. Element access is 0-based in code;
/// every index that crosses a module interface (subsets, permutations,
/// serialized text, witnesses) is 1-based.
class SquareMatrix {
 public:
  explicit SquareMatrix(int n);
  SquareMatrix(int n, std::vector<double> entries);
  static SquareMatrix identity(int n);
  static SquareMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  int order() const { return n_; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const std::vector<double>& entries() const { return a_; }

  /// Largest absolute entry.
  double max_abs() const;

  bool operator==(const SquareMatrix&) const = default;

 private:
  int n_;
  std::vector<double> a_;
};

/// max(1, largest absolute entry): the scale s used in sign decisions.
double sign_scale(const SquareMatrix& a);

enum class Sign { Negative, DeadZone, Positive };

inline Sign sign_of(double v, double scale, double eps) {
  const double z = eps * scale;
  if (v > z) return Sign::Positive;
  if (v < -z) return Sign::Negative;
  return Sign::DeadZone;
}

/// Ordered subset of {1..n}. Members are strictly ascending and 1-based.
/// An empty subset is representable (it arises as the complement of the
/// full set) but operations that need a nonempty subset reject it.
class IndexSubset {
 public:
  IndexSubset(int universe, std::vector<int> members);
  static IndexSubset full(int universe);
  /// Bit i-1 of `mask` set means index i is a member.
  static IndexSubset from_mask(int universe, std::uint64_t mask);

  int universe() const { return universe_; }
  const std::vector<int>& members() const { return members_; }
  int size() const { return static_cast<int>(members_.size()); }
  bool empty() const { return members_.empty(); }
  bool is_full() const { return size() == universe_; }

  IndexSubset complement() const;
  std::uint64_t mask() const;
  std::string to_string() const;  // "{1,3}"

  bool operator==(const IndexSubset&) const = default;

 private:
  int universe_;
  std::vector<int> members_;
};

}  // namespace nmat
