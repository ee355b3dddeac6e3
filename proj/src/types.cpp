#include "nmat/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nmat {

SquareMatrix::SquareMatrix(int n) : n_(n) {
  if (n < 1) throw ContractViolation("matrix order must be >= 1");
  a_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

SquareMatrix::SquareMatrix(int n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
  if (n < 1) throw ContractViolation("matrix order must be >= 1");
  if (a_.size() != static_cast<std::size_t>(n) * n)
    throw ContractViolation("entry count does not match order");
  for (double v : a_)
    if (!std::isfinite(v)) throw ContractViolation("matrix entries must be finite");
}

SquareMatrix SquareMatrix::identity(int n) {
  SquareMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SquareMatrix SquareMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<double> a;
  a.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != n) throw ContractViolation("rows must all have length n");
    a.insert(a.end(), r.begin(), r.end());
  }
  return SquareMatrix(n, std::move(a));
}

double SquareMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::fabs(v));
  return m;
}

double sign_scale(const SquareMatrix& a) { return std::max(1.0, a.max_abs()); }

IndexSubset::IndexSubset(int universe, std::vector<int> members)
    : universe_(universe), members_(std::move(members)) {
  if (universe < 1) throw ContractViolation("subset universe must be >= 1");
  int prev = 0;
  for (int m : members_) {
    if (m <= prev) throw ContractViolation("subset members must be strictly ascending");
    if (m > universe) throw ContractViolation("subset member out of range");
    prev = m;
  }
}

IndexSubset IndexSubset::full(int universe) {
  std::vector<int> m(static_cast<std::size_t>(universe));
  for (int i = 0; i < universe; ++i) m[static_cast<std::size_t>(i)] = i + 1;
  return IndexSubset(universe, std::move(m));
}

IndexSubset IndexSubset::from_mask(int universe, std::uint64_t mask) {
  if (universe > 63) throw ContractViolation("mask representation limited to universe <= 63");
  if (mask >> universe) throw ContractViolation("mask has bits outside the universe");
  std::vector<int> m;
  for (int i = 0; i < universe; ++i)
    if (mask & (std::uint64_t{1} << i)) m.push_back(i + 1);
  return IndexSubset(universe, std::move(m));
}

IndexSubset IndexSubset::complement() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(universe_ - size()));
  auto it = members_.begin();
  for (int i = 1; i <= universe_; ++i) {
    if (it != members_.end() && *it == i) {
      ++it;
    } else {
      out.push_back(i);
    }
  }
  return IndexSubset(universe_, std::move(out));
}

std::uint64_t IndexSubset::mask() const {
  if (universe_ > 63) throw ContractViolation("mask representation limited to universe <= 63");
  std::uint64_t m = 0;
  for (int i : members_) m |= std::uint64_t{1} << (i - 1);
  return m;
}

std::string IndexSubset::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) os << ',';
    os << members_[i];
  }
  os << '}';
  return os.str();
}

}  // namespace nmat
