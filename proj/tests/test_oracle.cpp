#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "nmat/construct.hpp"
#include "nmat/core.hpp"
#include "nmat/detect.hpp"
#include "nmat/oracle.hpp"
#include "test_support.hpp"

using nmat::IndexSubset;
using nmat::MatrixClass;
using nmat::MinorTable;
using nmat::SquareMatrix;
using nmat::Tri;
using testutil::det_cofactor;
using testutil::rel_close;

namespace {

const SquareMatrix kFirstCat3 =
    SquareMatrix::from_rows({{-1, 2, 2}, {2, -1, -1}, {2, -2, -1}});
const SquareMatrix kSecondCat3 =
    SquareMatrix::from_rows({{-1, -1, -2}, {-2, -1, -1}, {-3, -2, -1}});

// Independent threshold oracle: every minor of A + t x y^T is affine in t,
// so its slope is det((A + x y^T)[alpha]) - det(A[alpha]) with both sides
// from the cofactor determinant. No adjugates involved.
std::optional<double> threshold_by_finite_difference(const SquareMatrix& a,
                                                     const std::vector<double>& x,
                                                     const std::vector<double>& y) {
  const int n = a.order();
  const SquareMatrix shifted = nmat::rank_one_update(a, x, y, 1.0);
  double t_low = 0.0;
  bool any_low = false;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const IndexSubset alpha = IndexSubset::from_mask(n, mask);
    const double d = det_cofactor(nmat::principal_submatrix(a, alpha));
    const double s = det_cofactor(nmat::principal_submatrix(shifted, alpha)) - d;
    if (s > 1e-12) {
      const double crossing = -d / s;
      if (!any_low || crossing > t_low) {
        t_low = crossing;
        any_low = true;
      }
    } else if (d <= 0.0) {
      return std::nullopt;
    }
  }
  return any_low ? t_low : 0.0;
}

}  // namespace

TEST_CASE("all principal minors") {
  SUBCASE("hand-computed 2x2 table") {
    const MinorTable t = nmat::all_principal_minors(SquareMatrix::from_rows({{-1, 2}, {2, -1}}));
    CHECK(t.value(IndexSubset(2, {1})) == -1.0);
    CHECK(t.value(IndexSubset(2, {2})) == -1.0);
    CHECK(t.value(IndexSubset(2, {1, 2})) == -3.0);
  }
  SUBCASE("identity: all seven minors are 1") {
    const MinorTable t = nmat::all_principal_minors(SquareMatrix::identity(3));
    for (std::uint64_t mask = 1; mask < 8; ++mask) CHECK(t.value(mask) == 1.0);
  }
  SUBCASE("all-negative example: all seven minors negative, cross-checked") {
    const MinorTable t = nmat::all_principal_minors(kSecondCat3);
    for (std::uint64_t mask = 1; mask < 8; ++mask) {
      CHECK(t.value(mask) < 0.0);
      const IndexSubset alpha = IndexSubset::from_mask(3, mask);
      CHECK(rel_close(t.value(mask), det_cofactor(nmat::principal_submatrix(kSecondCat3, alpha)),
                      1e-12));
    }
  }
  SUBCASE("table rows equal the library determinant of the submatrix exactly") {
    testutil::Rng rng(17);
    for (int n = 1; n <= 6; ++n) {
      const SquareMatrix a = testutil::random_matrix(rng, n, -2, 2);
      const MinorTable t = nmat::all_principal_minors(a);
      for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        const IndexSubset alpha = IndexSubset::from_mask(n, mask);
        CHECK(t.value(mask) == nmat::determinant(nmat::principal_submatrix(a, alpha)));
        CHECK(rel_close(t.value(mask), det_cofactor(nmat::principal_submatrix(a, alpha)), 1e-8));
      }
    }
  }
  SUBCASE("singletons are the diagonal; full set is det(A)") {
    testutil::Rng rng(19);
    const SquareMatrix a = testutil::random_matrix(rng, 5, -2, 2);
    const MinorTable t = nmat::all_principal_minors(a);
    for (int i = 0; i < 5; ++i) CHECK(t.value(std::uint64_t{1} << i) == a(i, i));
    CHECK(rel_close(t.value((std::uint64_t{1} << 5) - 1), nmat::determinant(a), 1e-10));
  }
  SUBCASE("cap is enforced") {
    nmat::OracleLimits limits;
    limits.minors_cap = 4;
    CHECK_THROWS_AS(nmat::all_principal_minors(SquareMatrix::identity(5), {}, limits),
                    nmat::CapExceeded);
  }
}

TEST_CASE("minor table serialization is binary-counter ordered") {
  const MinorTable t = nmat::all_principal_minors(SquareMatrix::from_rows({{-1, 2}, {2, -1}}));
  CHECK(nmat::serialize(t) == "{1}: -1\n{2}: -1\n{1,2}: -3\n");
}

TEST_CASE("brute-force classification applies the definitions literally") {
  CHECK(nmat::classify_bruteforce(kFirstCat3).tag == MatrixClass::NCategory1);
  CHECK(nmat::classify_bruteforce(kSecondCat3).tag == MatrixClass::NCategory2);
  CHECK(nmat::classify_bruteforce(SquareMatrix::identity(2)).tag == MatrixClass::P);

  // minors 1/3, 1/3, -1/3 by hand: proper positive, determinant negative
  const SquareMatrix inv2 =
      SquareMatrix::from_rows({{1.0 / 3, 2.0 / 3}, {2.0 / 3, 1.0 / 3}});
  CHECK(nmat::classify_bruteforce(inv2).tag == MatrixClass::AlmostP);

  CHECK(nmat::classify_bruteforce(SquareMatrix::from_rows({{1, 0}, {0, -1}})).tag ==
        MatrixClass::NotClassified);

  SUBCASE("dead-zone minor makes the outcome indeterminate") {
    const nmat::Classification c =
        nmat::classify_bruteforce(SquareMatrix::from_rows({{0, 1}, {1, 1}}));
    CHECK(c.indeterminate);
  }
}

TEST_CASE("exact border threshold") {
  SUBCASE("single affine constraint solved by hand: -1 + 2t > 0") {
    const auto t = nmat::exact_border_threshold(SquareMatrix(1, {-1}), {-1}, {-2});
    REQUIRE(t.has_value());
    CHECK(rel_close(*t, 0.5, 1e-12));
  }
  SUBCASE("all-negative 2x2 growth step accepts t = 1") {
    const SquareMatrix a = SquareMatrix::from_rows({{-1, -1}, {-2, -1}});
    const std::vector<double> x = {-2, -1}, y = {-3, -2};
    const auto t = nmat::exact_border_threshold(a, x, y);
    REQUIRE(t.has_value());
    CHECK(*t < 1.0);
    // crossing points by hand: 1/6, 1/2, 1/3
    CHECK(rel_close(*t, 0.5, 1e-12));
    CHECK(nmat::is_p_matrix(nmat::rank_one_update(a, x, y, 1.0)).verdict == Tri::Yes);
  }
  SUBCASE("zero perturbation cannot rescue negative minors") {
    CHECK(!nmat::exact_border_threshold(SquareMatrix(1, {-1}), {0.0}, {0.0}).has_value());
  }
  SUBCASE("matches the finite-difference oracle and brackets the P transition") {
    testutil::Rng rng(71);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_u64() % 4);
      nmat::ConstructionParams params;
      params.n = n;
      params.category = 2;
      params.seed = rng.next_u64();
      params.resample_budget = 500000;
      const SquareMatrix a = nmat::ncon2(params).result;
      std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
      for (auto& v : x) v = -rng.uniform(0.05, 2.0);
      for (auto& v : y) v = -rng.uniform(0.05, 2.0);

      const auto got = nmat::exact_border_threshold(a, x, y);
      const auto want = threshold_by_finite_difference(a, x, y);
      REQUIRE(got.has_value() == want.has_value());
      if (!got) continue;
      CHECK(rel_close(*got, *want, 1e-7));
      if (*got > 1e-6) {
        // sharp eps so a 1e-6-relative sign margin is decidable either way
        nmat::Tolerance sharp;
        sharp.eps = 1e-13;
        CHECK(nmat::is_p_matrix(nmat::rank_one_update(a, x, y, *got * (1 + 1e-6)), sharp)
                  .verdict == Tri::Yes);
        CHECK(nmat::is_p_matrix(nmat::rank_one_update(a, x, y, *got * (1 - 1e-6)), sharp)
                  .verdict == Tri::No);
        ++checked;
      }
    }
    CHECK(checked > 60);
  }
}

TEST_CASE("negative real eigenvalue count") {
  SUBCASE("all-negative example has exactly one") {
    const auto c = nmat::negative_real_eigenvalue_count(kSecondCat3);
    CHECK(c.count == 1);
    CHECK(!c.indeterminate);
  }
  SUBCASE("identity has none") {
    const auto c = nmat::negative_real_eigenvalue_count(SquareMatrix::identity(3));
    CHECK(c.count == 0);
  }
  SUBCASE("-I2: double root at -1 counts twice with a warning") {
    const auto c =
        nmat::negative_real_eigenvalue_count(SquareMatrix::from_rows({{-1, 0}, {0, -1}}));
    CHECK(c.count == 2);
    CHECK(c.multiplicity_warning);
  }
  SUBCASE("root at zero is indeterminate") {
    const auto c = nmat::negative_real_eigenvalue_count(SquareMatrix(1, {0.0}));
    CHECK(c.indeterminate);
  }
  SUBCASE("distinct negative spectrum") {
    SquareMatrix d(4);
    d(0, 0) = -3;
    d(1, 1) = -1;
    d(2, 2) = 2;
    d(3, 3) = 5;
    const auto c = nmat::negative_real_eigenvalue_count(d);
    CHECK(c.count == 2);
    CHECK(!c.multiplicity_warning);
  }
  SUBCASE("cap is enforced") {
    CHECK_THROWS_AS(nmat::negative_real_eigenvalue_count(SquareMatrix::identity(9)),
                    nmat::CapExceeded);
  }
  SUBCASE("constructed N-matrices have exactly one") {
    for (int n = 2; n <= 6; ++n) {
      nmat::ConstructionParams params;
      params.n = n;
      params.category = 2;
      params.seed = 9000 + static_cast<std::uint64_t>(n);
      params.resample_budget = 500000;
      const auto c = nmat::negative_real_eigenvalue_count(nmat::ncon2(params).result);
      CHECK(c.count == 1);
    }
  }
}
