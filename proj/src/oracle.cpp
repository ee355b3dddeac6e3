#include "nmat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "nmat/core.hpp"

namespace nmat {

namespace {

void require_cap(int n, int cap, const char* what) {
  if (n > cap)
    throw CapExceeded(std::string(what) + ": order " + std::to_string(n) +
                      " exceeds the configured cap " + std::to_string(cap));
}

// Gather the principal block selected by `mask` into a flat buffer.
int gather_block(const SquareMatrix& a, std::uint64_t mask, std::vector<int>& idx,
                 std::vector<double>& block) {
  idx.clear();
  const int n = a.order();
  for (int i = 0; i < n; ++i)
    if (mask & (std::uint64_t{1} << i)) idx.push_back(i);
  const int k = static_cast<int>(idx.size());
  block.resize(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      block[static_cast<std::size_t>(i) * k + j] = a(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  return k;
}

double block_max_abs(const std::vector<double>& block, int k) {
  double s = 0.0;
  for (int i = 0; i < k * k; ++i) s = std::max(s, std::fabs(block[static_cast<std::size_t>(i)]));
  return s;
}

// adj(M) for a k x k flat block: det * inverse when safely invertible,
// cofactor expansion otherwise. adj of a 1x1 block is [1].
std::vector<double> adjugate(const std::vector<double>& m, int k, const Tolerance& tol) {
  std::vector<double> adj(static_cast<std::size_t>(k) * k);
  if (k == 1) {
    adj[0] = 1.0;
    return adj;
  }
  std::vector<double> work = m;
  const double det = detail::lu_determinant(work, k);
  const double scale = std::max(1.0, block_max_abs(m, k));
  if (std::fabs(det) > tol.pivot_eps * scale) {
    SquareMatrix inv = inverse(SquareMatrix(k, m), tol);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) adj[static_cast<std::size_t>(i) * k + j] = det * inv(i, j);
    return adj;
  }
  // adj_{ij} = (-1)^{i+j} det(M with row j and column i deleted)
  std::vector<double> minor(static_cast<std::size_t>(k - 1) * (k - 1));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      int r = 0;
      for (int p = 0; p < k; ++p) {
        if (p == j) continue;
        int c = 0;
        for (int q = 0; q < k; ++q) {
          if (q == i) continue;
          minor[static_cast<std::size_t>(r) * (k - 1) + c] = m[static_cast<std::size_t>(p) * k + q];
          ++c;
        }
        ++r;
      }
      std::vector<double> mw = minor;
      const double d = detail::lu_determinant(mw, k - 1);
      adj[static_cast<std::size_t>(i) * k + j] = ((i + j) % 2 == 0 ? 1.0 : -1.0) * d;
    }
  }
  return adj;
}

}  // namespace

MinorTable all_principal_minors(const SquareMatrix& a, const Tolerance&,
                                const OracleLimits& limits) {
  const int n = a.order();
  require_cap(n, limits.minors_cap, "all_principal_minors");
  MinorTable table;
  table.n = n;
  table.by_mask.assign(std::size_t{1} << n, 0.0);
  table.by_mask[0] = 1.0;  // vacuous minor, by convention

  std::vector<int> idx;
  std::vector<double> block;
  const std::uint64_t top = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < top; ++mask) {
    const int k = gather_block(a, mask, idx, block);
    table.by_mask[mask] = detail::lu_determinant(block, k);
  }
  return table;
}

Classification classify_bruteforce(const SquareMatrix& a, const Tolerance& tol,
                                   const OracleLimits& limits) {
  const int n = a.order();
  require_cap(n, limits.minors_cap, "classify_bruteforce");

  std::vector<int> idx;
  std::vector<double> block;
  bool all_pos = true, all_neg = true, proper_pos = true;
  Sign full_sign = Sign::DeadZone;
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask <= full; ++mask) {
    const int k = gather_block(a, mask, idx, block);
    const double scale = std::max(1.0, block_max_abs(block, k));
    std::vector<double> work = block;
    const double d = detail::lu_determinant(work, k);
    const Sign sg = sign_of(d, scale, tol.eps);
    if (sg == Sign::DeadZone) return {MatrixClass::NotClassified, true};
    if (sg != Sign::Positive) all_pos = false;
    if (sg != Sign::Negative) all_neg = false;
    if (mask == full) {
      full_sign = sg;
    } else if (sg != Sign::Positive) {
      proper_pos = false;
    }
  }

  if (all_pos) return {MatrixClass::P, false};
  if (all_neg) {
    const auto cat = entry_category(a, tol);
    if (!cat.has_value()) return {MatrixClass::NotClassified, true};
    return {*cat == 2 ? MatrixClass::NCategory2 : MatrixClass::NCategory1, false};
  }
  if (proper_pos && full_sign == Sign::Negative) return {MatrixClass::AlmostP, false};
  return {MatrixClass::NotClassified, false};
}

std::optional<double> exact_border_threshold(const SquareMatrix& a, const std::vector<double>& x,
                                             const std::vector<double>& y, const Tolerance& tol,
                                             const OracleLimits& limits) {
  const int n = a.order();
  require_cap(n, limits.minors_cap, "exact_border_threshold");
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw ContractViolation("border vectors must have the matrix order");

  std::vector<int> idx;
  std::vector<double> block;
  double t_low = -std::numeric_limits<double>::infinity();
  double u_high = std::numeric_limits<double>::infinity();
  bool any_positive_slope = false;

  const std::uint64_t top = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < top; ++mask) {
    const int k = gather_block(a, mask, idx, block);
    std::vector<double> work = block;
    const double d = detail::lu_determinant(work, k);
    const std::vector<double> adj = adjugate(block, k, tol);

    double slope = 0.0;
    double xmax = 0.0, ymax = 0.0, admax = 0.0;
    for (int i = 0; i < k; ++i) {
      const double yi = y[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      ymax = std::max(ymax, std::fabs(yi));
      for (int j = 0; j < k; ++j) {
        const double xj = x[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
        slope += yi * adj[static_cast<std::size_t>(i) * k + j] * xj;
        if (i == 0) xmax = std::max(xmax, std::fabs(xj));
        admax = std::max(admax, std::fabs(adj[static_cast<std::size_t>(i) * k + j]));
      }
    }
    // Treat numerically vanishing slopes as zero.
    const double slope_floor = tol.eps * std::max(1.0, admax * xmax * ymax * k * k);
    if (std::fabs(slope) <= slope_floor) slope = 0.0;

    if (slope > 0.0) {
      any_positive_slope = true;
      t_low = std::max(t_low, -d / slope);
    } else if (d <= 0.0) {
      return std::nullopt;  // this minor can never become positive
    } else if (slope < 0.0) {
      u_high = std::min(u_high, -d / slope);
    }
  }

  const double t_min = any_positive_slope ? t_low : 0.0;
  if (u_high <= t_min) return std::nullopt;  // declared threshold would be infeasible
  return t_min;
}

namespace {

// Polynomials as descending coefficient vectors: p(t) = sum c[i] t^{deg-i}.
double poly_eval(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (double ci : c) v = v * t + ci;
  return v;
}

std::vector<double> poly_deriv(const std::vector<double>& c) {
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg <= 0) return {0.0};
  std::vector<double> d(static_cast<std::size_t>(deg));
  for (int i = 0; i < deg; ++i) d[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)] * (deg - i);
  return d;
}

// Magnitude of p's terms at t: the comparison scale for "p(t) is zero".
double poly_mag(const std::vector<double>& c, double t) {
  double v = 0.0;
  const double at = std::max(1.0, std::fabs(t));
  for (double ci : c) v = v * at + std::fabs(ci);
  return std::max(v, 1e-300);
}

double bisect_root(const std::vector<double>& c, double lo, double hi) {
  double flo = poly_eval(c, lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double fm = poly_eval(c, mid);
    if ((flo < 0.0) == (fm < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// All real roots of p in [lo, hi], found by recursively isolating with the
// roots of p' (monotone pieces bracket at most one root each). Touch roots
// with even multiplicity show up as critical points where p ~ 0.
void real_roots(const std::vector<double>& c, double lo, double hi, std::vector<double>& out) {
  // strip leading coefficients that vanish relative to the rest
  double cmax = 0.0;
  for (double ci : c) cmax = std::max(cmax, std::fabs(ci));
  if (cmax == 0.0) return;
  std::size_t first = 0;
  while (first + 1 < c.size() && std::fabs(c[first]) <= 1e-14 * cmax) ++first;
  std::vector<double> p(c.begin() + static_cast<std::ptrdiff_t>(first), c.end());
  const int deg = static_cast<int>(p.size()) - 1;
  if (deg < 1) return;
  if (deg == 1) {
    const double r = -p[1] / p[0];
    if (r >= lo && r <= hi) out.push_back(r);
    return;
  }

  std::vector<double> crit;
  real_roots(poly_deriv(p), lo, hi, crit);
  std::vector<double> pts;
  pts.push_back(lo);
  for (double r : crit)
    if (r > lo && r < hi) pts.push_back(r);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());

  const double ztol = 1e-10;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double v = poly_eval(p, pts[i]);
    if (std::fabs(v) <= ztol * poly_mag(p, pts[i])) {
      out.push_back(pts[i]);
      continue;
    }
    if (i + 1 < pts.size()) {
      const double w = poly_eval(p, pts[i + 1]);
      if (std::fabs(w) <= ztol * poly_mag(p, pts[i + 1])) continue;  // handled as a point root
      if ((v < 0.0) != (w < 0.0)) out.push_back(bisect_root(p, pts[i], pts[i + 1]));
    }
  }
}

}  // namespace

EigenvalueCount negative_real_eigenvalue_count(const SquareMatrix& a, const Tolerance& tol,
                                               const OracleLimits& limits) {
  const int n = a.order();
  require_cap(n, limits.eigen_cap, "negative_real_eigenvalue_count");

  // Characteristic polynomial of A by the trace recursion:
  // M_k = A (M_{k-1} + c_{k-1} I), c_k = -tr(M_k)/k.
  std::vector<double> coeff(static_cast<std::size_t>(n) + 1, 0.0);
  coeff[0] = 1.0;
  SquareMatrix m = a;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      SquareMatrix next(n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) s += a(i, l) * m(l, j);
          next(i, j) = s;
        }
      m = next;
    }
    double tr = 0.0;
    for (int i = 0; i < n; ++i) tr += m(i, i);
    const double ck = -tr / k;
    coeff[static_cast<std::size_t>(k)] = ck;
    for (int i = 0; i < n; ++i) m(i, i) += ck;
  }

  // Root bound: every real eigenvalue lies inside [-R, R].
  double max_row_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += std::fabs(a(i, j));
    max_row_sum = std::max(max_row_sum, s);
  }
  const double radius = 1.0 + max_row_sum;

  std::vector<double> roots;
  real_roots(coeff, -radius, 0.0, roots);
  std::sort(roots.begin(), roots.end());
  // merge near-duplicates (a touch root can be reported from both sides)
  std::vector<double> uniq;
  const double merge_tol = 1e-7 * std::max(1.0, radius);
  for (double r : roots)
    if (uniq.empty() || r - uniq.back() > merge_tol) uniq.push_back(r);

  EigenvalueCount out;
  for (double r : uniq) {
    if (std::fabs(r) <= tol.eps) {
      out.indeterminate = true;
      continue;
    }
    if (r >= 0.0) continue;
    // multiplicity: number of leading derivatives vanishing at r
    int mult = 1;
    std::vector<double> d = poly_deriv(coeff);
    while (static_cast<int>(d.size()) >= 1 && mult < n) {
      const double v = poly_eval(d, r);
      if (std::fabs(v) > 1e-6 * poly_mag(d, r)) break;
      ++mult;
      d = poly_deriv(d);
    }
    if (mult > 1) out.multiplicity_warning = true;
    out.count += mult;
  }
  return out;
}

std::string serialize(const MinorTable& table) {
  std::string out;
  char buf[64];
  const std::uint64_t top = std::uint64_t{1} << table.n;
  for (std::uint64_t mask = 1; mask < top; ++mask) {
    out += IndexSubset::from_mask(table.n, mask).to_string();
    std::snprintf(buf, sizeof buf, ": %.17g\n", table.by_mask[mask]);
    out += buf;
  }
  return out;
}

}  // namespace nmat
