#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nmat/types.hpp"

namespace nmat {

/// Stream of border-entry magnitudes in (0, bound]. Signs are imposed by
/// the border sign pattern, never by the source. Construction draws, per
/// growth step, all entries of x and then all entries of y; the base
/// diagonal of a second-category construction is one extra leading draw.
class ChoiceSource {
 public:
  virtual ~ChoiceSource() = default;
  virtual double magnitude() = 0;
};

/// Deterministic seeded stream: 53-bit uniform from mt19937_64, mapped to
/// (0, bound]. Bit-stable across platforms for replay.
class SeededSource final : public ChoiceSource {
 public:
  SeededSource(std::uint64_t seed, double bound);
  double magnitude() override;

 private:
  std::mt19937_64 gen_;
  double bound_;
};

/// Scripted magnitudes for injecting hand-picked border choices; cycles.
class ScriptedSource final : public ChoiceSource {
 public:
  explicit ScriptedSource(std::vector<double> values);
  double magnitude() override;

 private:
  std::vector<double> values_;
  std::size_t next_ = 0;
};

/// Required signs of a border pair (x, y): the first `positive_prefix`
/// entries must be positive, the rest negative. 0 = all negative.
struct BorderSigns {
  int positive_prefix = 0;
  static BorderSigns all_negative() { return {0}; }
  static BorderSigns first_category(int k) { return {k}; }
};

struct BorderStep {
  std::vector<double> x;  // new column block
  std::vector<double> y;  // new row block
  double a = 0.0;         // new diagonal entry, < 0
  double t = 0.0;         // -1/a
  bool certified = false; // P-test passed on A + t x y^T
};

struct ConstructionParams {
  int n = 1;
  int category = 2;              // 1 or 2
  int k = 0;                     // first-block size, category 1 only
  std::uint64_t seed = 0;
  double magnitude = 2.0;        // bound for sampled entry magnitudes
  int max_doublings = 60;        // t searched over {1, 2, ..., 2^max_doublings}
  int resample_budget = 50;      // x,y resamples before giving up
  Tolerance tol{};
};

struct ConstructionTrace {
  SquareMatrix base;              // the 1x1 or kxk seed
  std::vector<BorderStep> steps;
  SquareMatrix result;
};

/// [[A, x], [y^T, a]] without any feasibility checking.
SquareMatrix bordered(const SquareMatrix& a, const std::vector<double>& x,
                      const std::vector<double>& y, double corner);

/// Validated bordering: a < 0, x and y match the sign pattern, and
/// A + (-1/a) x y^T is a P-matrix. Returns the (n+1)x(n+1) matrix, which the
/// bordering characterization certifies as an N-matrix of the pattern's
/// category.
SquareMatrix append_border(const SquareMatrix& a, const std::vector<double>& x,
                           const std::vector<double>& y, double corner, BorderSigns signs,
                           const Tolerance& tol = {});

/// Samples signed (x, y) and searches t over {1, 2, 4, ...} for the first
/// P-certified rank-one lift; a = -1/t. Minors of A + t x y^T are affine in
/// t, so once all of them are positive they stay positive as t grows;
/// a failed deep search means the sample was bad, so resample.
BorderStep find_feasible_border(const SquareMatrix& a, BorderSigns signs,
                                const ConstructionParams& params, ChoiceSource& source);

/// Grow an n x n N-matrix of the second category from a 1x1 negative seed
/// by n-1 certified all-negative border steps.
ConstructionTrace ncon2(const ConstructionParams& params, ChoiceSource& source);
ConstructionTrace ncon2(const ConstructionParams& params);

/// For the first category: build the k x k all-negative block, then append
/// n-k borders whose first k entries are positive and the rest negative.
/// The output is already in two-block form with split k.
ConstructionTrace ncon1(const ConstructionParams& params, ChoiceSource& source);
ConstructionTrace ncon1(const ConstructionParams& params);

/// Text form: base matrix, one "step i: a=... x=[...] y=[...] t=..." line
/// per step, then the result matrix.
std::string serialize(const ConstructionTrace& trace);

}  // namespace nmat
