#include "nmat/detect.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nmat/core.hpp"

namespace nmat {

const char* to_string(MatrixClass c) {
  switch (c) {
    case MatrixClass::P: return "P";
    case MatrixClass::NCategory1: return "N_Category1";
    case MatrixClass::NCategory2: return "N_Category2";
    case MatrixClass::AlmostP: return "AlmostP";
    case MatrixClass::NotClassified: return "NotClassified";
  }
  return "?";
}

const char* to_string(Tri v) {
  switch (v) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Indeterminate: return "indeterminate";
  }
  return "?";
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::No || b == Tri::No) return Tri::No;
  if (a == Tri::Indeterminate || b == Tri::Indeterminate) return Tri::Indeterminate;
  return Tri::Yes;
}

namespace {

// The recursion works on flat row-major blocks drawn from a per-depth
// buffer pool: a node at depth d has order n - d and writes its two
// children (trailing block, Schur complement) into the depth d + 1 slots.
// Depth-first order means at most one node per depth is live, so the two
// slots per depth suffice and no allocation happens past the first touch.
struct Ctx {
  const Tolerance& tol;
  const DetectOptions& opt;
  std::uint64_t schur_count = 0;
  int max_depth = 0;
  std::optional<std::string> witness;
  std::vector<std::vector<double>> trail_buf;
  std::vector<std::vector<double>> schur_buf;

  Ctx(const Tolerance& t, const DetectOptions& o, int n)
      : tol(t), opt(o), trail_buf(static_cast<std::size_t>(n) + 1),
        schur_buf(static_cast<std::size_t>(n) + 1) {}

  void note(int depth) { max_depth = std::max(max_depth, depth); }

  void record(const char* test, int depth, double a11, bool dead) {
    if (witness) return;  // keep the first early-exit site
    std::ostringstream os;
    os << test << ": pivot a11 = " << a11 << " at depth " << depth
       << (dead ? " is inside the sign dead zone" : " has the wrong sign");
    witness = os.str();
  }
};

double block_scale(const double* a, int m) {
  double s = 0.0;
  const std::size_t total = static_cast<std::size_t>(m) * m;
  for (std::size_t i = 0; i < total; ++i) s = std::max(s, std::fabs(a[i]));
  return std::max(1.0, s);
}

// Trailing principal submatrix of order m-1 into ctx buffer at `depth`.
const double* make_trailing(Ctx& ctx, const double* a, int m, int depth) {
  auto& buf = ctx.trail_buf[static_cast<std::size_t>(depth)];
  const int r = m - 1;
  buf.resize(static_cast<std::size_t>(r) * r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      buf[static_cast<std::size_t>(i) * r + j] = a[static_cast<std::size_t>(i + 1) * m + (j + 1)];
  return buf.data();
}

// Schur complement of a11 in the order-m block, written to the depth slot.
// Counts as one Schur complement formed.
const double* make_schur(Ctx& ctx, const double* a, int m, int depth) {
  auto& buf = ctx.schur_buf[static_cast<std::size_t>(depth)];
  const int r = m - 1;
  buf.resize(static_cast<std::size_t>(r) * r);
  const double a11 = a[0];
  for (int i = 0; i < r; ++i) {
    const double f = a[static_cast<std::size_t>(i + 1) * m] / a11;
    for (int j = 0; j < r; ++j)
      buf[static_cast<std::size_t>(i) * r + j] =
          a[static_cast<std::size_t>(i + 1) * m + (j + 1)] - f * a[static_cast<std::size_t>(j + 1)];
  }
  ++ctx.schur_count;
  return buf.data();
}

bool finite_block(const double* a, int m) {
  const std::size_t total = static_cast<std::size_t>(m) * m;
  for (std::size_t i = 0; i < total; ++i)
    if (!std::isfinite(a[i])) return false;
  return true;
}

Tri ptest(Ctx& ctx, const double* a, int m, int depth);

Tri ntest(Ctx& ctx, const double* a, int m, int depth) {
  ctx.note(depth);
  const double a11 = a[0];
  const Sign sg = sign_of(a11, block_scale(a, m), ctx.tol.eps);
  Tri head = Tri::Yes;
  if (sg != Sign::Negative) {
    head = sg == Sign::DeadZone ? Tri::Indeterminate : Tri::No;
    ctx.record("n-test", depth, a11, sg == Sign::DeadZone);
    if (ctx.opt.early_exit) return head;
  }
  if (m == 1) return head;

  // Schur complement first, then the trailing submatrix.
  Tri rc = Tri::Indeterminate;
  if (a11 != 0.0) {
    const double* c = make_schur(ctx, a, m, depth + 1);
    rc = finite_block(c, m - 1) ? ptest(ctx, c, m - 1, depth + 1) : Tri::Indeterminate;
  }
  if (ctx.opt.early_exit && rc == Tri::No) return Tri::No;

  const double* b = make_trailing(ctx, a, m, depth + 1);
  const Tri rb = ntest(ctx, b, m - 1, depth + 1);

  return tri_and(head, tri_and(rb, rc));
}

Tri ptest(Ctx& ctx, const double* a, int m, int depth) {
  ctx.note(depth);
  const double a11 = a[0];
  const Sign sg = sign_of(a11, block_scale(a, m), ctx.tol.eps);
  Tri head = Tri::Yes;
  if (sg != Sign::Positive) {
    head = sg == Sign::DeadZone ? Tri::Indeterminate : Tri::No;
    ctx.record("p-test", depth, a11, sg == Sign::DeadZone);
    if (ctx.opt.early_exit) return head;
  }
  if (m == 1) return head;

  const double* b = make_trailing(ctx, a, m, depth + 1);
  const Tri rb = ptest(ctx, b, m - 1, depth + 1);
  if (ctx.opt.early_exit && rb == Tri::No) return Tri::No;

  Tri rc = Tri::Indeterminate;
  if (a11 != 0.0) {
    const double* c = make_schur(ctx, a, m, depth + 1);
    rc = finite_block(c, m - 1) ? ptest(ctx, c, m - 1, depth + 1) : Tri::Indeterminate;
  }

  return tri_and(head, tri_and(rb, rc));
}

DetectReport finish(Ctx& ctx, Tri verdict, MatrixClass on_yes) {
  DetectReport rep;
  rep.verdict = verdict;
  rep.klass = verdict == Tri::Yes ? on_yes : MatrixClass::NotClassified;
  rep.schur_count = ctx.schur_count;
  rep.max_depth = ctx.max_depth;
  if (verdict != Tri::Yes) rep.fail_witness = ctx.witness;
  return rep;
}

}  // namespace

DetectReport is_p_matrix(const SquareMatrix& a, const Tolerance& tol, const DetectOptions& opt) {
  Ctx ctx(tol, opt, a.order());
  const Tri v = ptest(ctx, a.entries().data(), a.order(), 0);
  return finish(ctx, v, MatrixClass::P);
}

DetectReport is_n_matrix(const SquareMatrix& a, const Tolerance& tol, const DetectOptions& opt) {
  Ctx ctx(tol, opt, a.order());
  const Tri v = ntest(ctx, a.entries().data(), a.order(), 0);
  DetectReport rep = finish(ctx, v, MatrixClass::NotClassified);
  if (v == Tri::Yes) {
    const auto cat = entry_category(a, tol);
    if (cat.has_value()) {
      rep.klass = *cat == 2 ? MatrixClass::NCategory2 : MatrixClass::NCategory1;
    } else {
      rep.fail_witness = "entry sign scan hit the dead zone; category unresolved";
    }
  }
  return rep;
}

DetectReport is_almost_p_matrix(const SquareMatrix& a, const Tolerance& tol,
                                const DetectOptions& opt) {
  DetectReport rep;
  const double det = determinant(a, tol);
  const Sign sg = sign_of(det, sign_scale(a), tol.eps);
  if (sg != Sign::Negative) {
    rep.verdict = sg == Sign::DeadZone ? Tri::Indeterminate : Tri::No;
    std::ostringstream os;
    os << "det(A) = " << det << (sg == Sign::DeadZone ? " is inside the sign dead zone"
                                                      : " is not negative");
    rep.fail_witness = os.str();
    return rep;
  }
  SquareMatrix inv = a;  // placeholder until inversion succeeds
  try {
    inv = inverse(a, tol);
  } catch (const SingularMatrix&) {
    rep.verdict = Tri::No;
    rep.fail_witness = "singular";
    return rep;
  }
  DetectReport inner = is_n_matrix(inv, tol, opt);
  rep.verdict = inner.verdict;
  rep.klass = inner.verdict == Tri::Yes ? MatrixClass::AlmostP : MatrixClass::NotClassified;
  rep.schur_count = inner.schur_count;
  rep.max_depth = inner.max_depth;
  if (inner.verdict != Tri::Yes && inner.fail_witness)
    rep.fail_witness = "inverse is not an N-matrix: " + *inner.fail_witness;
  return rep;
}

std::optional<int> entry_category(const SquareMatrix& a, const Tolerance& tol) {
  const double s = sign_scale(a);
  bool any_positive = false;
  bool all_negative = true;
  const int n = a.order();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      switch (sign_of(a(i, j), s, tol.eps)) {
        case Sign::Positive: any_positive = true; all_negative = false; break;
        case Sign::Negative: break;
        case Sign::DeadZone: all_negative = false; break;
      }
    }
  }
  if (any_positive) return 1;
  if (all_negative) return 2;
  return std::nullopt;
}

Classification classify(const SquareMatrix& a, const Tolerance& tol) {
  bool saw_dead = false;

  const DetectReport rp = is_p_matrix(a, tol);
  if (rp.verdict == Tri::Yes) return {MatrixClass::P, false};
  saw_dead |= rp.verdict == Tri::Indeterminate;

  const DetectReport rn = is_n_matrix(a, tol);
  if (rn.verdict == Tri::Yes) {
    const auto cat = entry_category(a, tol);
    if (!cat.has_value()) return {MatrixClass::NotClassified, true};
    return {*cat == 2 ? MatrixClass::NCategory2 : MatrixClass::NCategory1, false};
  }
  saw_dead |= rn.verdict == Tri::Indeterminate;

  const DetectReport ra = is_almost_p_matrix(a, tol);
  if (ra.verdict == Tri::Yes) return {MatrixClass::AlmostP, false};
  saw_dead |= ra.verdict == Tri::Indeterminate;

  return {MatrixClass::NotClassified, saw_dead};
}

SignPartition sign_partition(const SquareMatrix& a, const Tolerance& tol) {
  const int n = a.order();
  const double s = sign_scale(a);
  SignPartition out;

  // Membership of j is forced by the sign of A(1,j) once 1 is pinned to S.
  std::vector<bool> in_s(static_cast<std::size_t>(n), false);
  in_s[0] = true;
  for (int j = 1; j < n; ++j) {
    switch (sign_of(a(0, j), s, tol.eps)) {
      case Sign::Negative: in_s[static_cast<std::size_t>(j)] = true; break;
      case Sign::Positive: break;
      case Sign::DeadZone:
        out.status = SignPartition::Status::Indeterminate;
        return out;
    }
  }

  std::vector<int> s_members;
  for (int j = 0; j < n; ++j)
    if (in_s[static_cast<std::size_t>(j)]) s_members.push_back(j + 1);
  if (static_cast<int>(s_members.size()) == n) {
    // All of row 1 negative: the all-negative (second category) pattern,
    // not a two-block partition.
    out.status = SignPartition::Status::Absent;
    return out;
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const bool same_block = in_s[static_cast<std::size_t>(i)] == in_s[static_cast<std::size_t>(j)];
      const Sign need = same_block ? Sign::Negative : Sign::Positive;
      const Sign got = sign_of(a(i, j), s, tol.eps);
      if (got == Sign::DeadZone) {
        out.status = SignPartition::Status::Indeterminate;
        return out;
      }
      if (got != need) {
        out.status = SignPartition::Status::Absent;
        return out;
      }
    }
  }

  // pi sends S (in ascending order) to the leading positions.
  std::vector<int> pi(static_cast<std::size_t>(n), 0);
  int next = 1;
  for (int j = 0; j < n; ++j)
    if (in_s[static_cast<std::size_t>(j)]) pi[static_cast<std::size_t>(j)] = next++;
  for (int j = 0; j < n; ++j)
    if (!in_s[static_cast<std::size_t>(j)]) pi[static_cast<std::size_t>(j)] = next++;

  out.status = SignPartition::Status::Found;
  out.s = IndexSubset(n, std::move(s_members));
  out.pi = std::move(pi);
  return out;
}

}  // namespace nmat
