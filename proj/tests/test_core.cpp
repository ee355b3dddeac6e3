#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nmat/construct.hpp"
#include "nmat/core.hpp"
#include "nmat/oracle.hpp"
#include "test_support.hpp"

using nmat::IndexSubset;
using nmat::SquareMatrix;
using testutil::det_cofactor;
using testutil::rel_close;

namespace {

const SquareMatrix kFirstCat3 =
    SquareMatrix::from_rows({{-1, 2, 2}, {2, -1, -1}, {2, -2, -1}});
const SquareMatrix kSecondCat3 =
    SquareMatrix::from_rows({{-1, -1, -2}, {-2, -1, -1}, {-3, -2, -1}});

void check_equal(const SquareMatrix& got, const SquareMatrix& want, double tol = 0.0) {
  REQUIRE(got.order() == want.order());
  for (int i = 0; i < got.order(); ++i)
    for (int j = 0; j < got.order(); ++j) {
      if (tol == 0.0) {
        CHECK(got(i, j) == want(i, j));
      } else {
        CHECK(rel_close(got(i, j), want(i, j), tol));
      }
    }
}

}  // namespace

TEST_CASE("principal submatrix selects rows and columns by subset") {
  const SquareMatrix a = SquareMatrix::from_rows({{-1, 2}, {2, -1}});
  check_equal(nmat::principal_submatrix(a, IndexSubset(2, {1})), SquareMatrix(1, {-1}));

  check_equal(nmat::principal_submatrix(SquareMatrix::identity(3), IndexSubset(3, {1, 3})),
              SquareMatrix::identity(2));

  check_equal(nmat::principal_submatrix(kSecondCat3, IndexSubset(3, {2, 3})),
              SquareMatrix::from_rows({{-1, -1}, {-2, -1}}));

  CHECK_THROWS_AS(IndexSubset(2, {1, 3}), nmat::ContractViolation);
  CHECK_THROWS_AS(nmat::principal_submatrix(a, IndexSubset(3, {1})), nmat::ContractViolation);
  CHECK_THROWS_AS(nmat::principal_submatrix(a, IndexSubset(2, {})), nmat::ContractViolation);
}

TEST_CASE("determinant by row reduction") {
  // 2x2 cofactor expansion gives (-1)(-1) - 2*2 = -3
  CHECK(nmat::determinant(SquareMatrix::from_rows({{-1, 2}, {2, -1}})) == -3.0);
  CHECK(nmat::determinant(SquareMatrix::identity(4)) == 1.0);

  // independent cofactor oracle: det = -2 for the all-negative example
  const double oracle = det_cofactor(kSecondCat3);
  CHECK(oracle == -2.0);
  CHECK(rel_close(nmat::determinant(kSecondCat3), oracle, 1e-12));
  CHECK(nmat::determinant(kSecondCat3) < 0.0);

  CHECK(nmat::determinant(SquareMatrix::from_rows({{1, 1}, {1, 1}})) == 0.0);
}

TEST_CASE("Schur complement matches the block formula") {
  const SquareMatrix a2 = SquareMatrix::from_rows({{-1, 2}, {2, -1}});
  check_equal(nmat::schur_complement(a2, IndexSubset(2, {2})), SquareMatrix(1, {3}), 1e-15);

  check_equal(nmat::schur_complement(SquareMatrix::identity(3), IndexSubset(3, {1})),
              SquareMatrix::identity(2), 1e-15);

  check_equal(nmat::schur_complement(kSecondCat3, IndexSubset(3, {3})),
              SquareMatrix::from_rows({{5, 3}, {1, 1}}), 1e-15);

  SUBCASE("singular pivot block is rejected with the subset named") {
    const SquareMatrix s = SquareMatrix::from_rows({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}});
    try {
      nmat::schur_complement(s, IndexSubset(3, {1, 2}));
      FAIL("expected SingularPivot");
    } catch (const nmat::SingularPivot& e) {
      CHECK(e.alpha == std::vector<int>{1, 2});
    }
  }

  SUBCASE("full subset is rejected") {
    CHECK_THROWS_AS(nmat::schur_complement(a2, IndexSubset::full(2)), nmat::ContractViolation);
  }
}

TEST_CASE("rank-one update") {
  const SquareMatrix a2 = SquareMatrix::from_rows({{-1, 2}, {2, -1}});
  check_equal(nmat::rank_one_update(a2, {2, -1}, {2, -2}, 1.0),
              SquareMatrix::from_rows({{3, -2}, {0, 1}}));

  check_equal(nmat::rank_one_update(kFirstCat3, {1, 2, 3}, {4, 5, 6}, 0.0), kFirstCat3);

  check_equal(nmat::rank_one_update(SquareMatrix::from_rows({{-1, -1}, {-2, -1}}), {-2, -1},
                                    {-3, -2}, 1.0),
              SquareMatrix::from_rows({{5, 3}, {1, 1}}));

  CHECK_THROWS_AS(nmat::rank_one_update(a2, {1.0}, {1.0, 2.0}, 1.0), nmat::ContractViolation);
}

TEST_CASE("inverse") {
  // adjugate formula: inv([[-1,2],[2,-1]]) = [[1/3,2/3],[2/3,1/3]]
  check_equal(nmat::inverse(SquareMatrix::from_rows({{-1, 2}, {2, -1}})),
              SquareMatrix::from_rows({{1.0 / 3, 2.0 / 3}, {2.0 / 3, 1.0 / 3}}), 1e-14);
  check_equal(nmat::inverse(SquareMatrix::identity(3)), SquareMatrix::identity(3));
  check_equal(nmat::inverse(SquareMatrix(1, {2.0})), SquareMatrix(1, {0.5}));

  CHECK_THROWS_AS(nmat::inverse(SquareMatrix::from_rows({{1, 1}, {1, 1}})),
                  nmat::SingularMatrix);
}

TEST_CASE("permutation similarity") {
  SUBCASE("identity permutation") {
    check_equal(nmat::permutation_similarity(kFirstCat3, {1, 2, 3}), kFirstCat3);
  }
  SUBCASE("swap") {
    check_equal(nmat::permutation_similarity(SquareMatrix::from_rows({{1, 2}, {3, 4}}), {2, 1}),
                SquareMatrix::from_rows({{4, 3}, {2, 1}}));
  }
  SUBCASE("rejects non-bijections") {
    CHECK_THROWS_AS(nmat::permutation_similarity(kFirstCat3, {1, 1, 2}),
                    nmat::ContractViolation);
    CHECK_THROWS_AS(nmat::permutation_similarity(kFirstCat3, {1, 2}), nmat::ContractViolation);
    CHECK_THROWS_AS(nmat::permutation_similarity(kFirstCat3, {0, 1, 2}),
                    nmat::ContractViolation);
  }
  SUBCASE("preserves the multiset of principal minors") {
    const SquareMatrix p = nmat::permutation_similarity(kFirstCat3, {2, 3, 1});
    auto ma = nmat::all_principal_minors(kFirstCat3).by_mask;
    auto mp = nmat::all_principal_minors(p).by_mask;
    std::sort(ma.begin(), ma.end());
    std::sort(mp.begin(), mp.end());
    REQUIRE(ma.size() == mp.size());
    for (std::size_t i = 0; i < ma.size(); ++i) CHECK(rel_close(mp[i], ma[i], 1e-10));
  }
  SUBCASE("applying pi then its inverse restores the matrix exactly") {
    testutil::Rng rng(11);
    const SquareMatrix a = testutil::random_matrix(rng, 5, -2, 2);
    const std::vector<int> pi = {3, 1, 5, 2, 4};
    std::vector<int> inv(5);
    for (int i = 0; i < 5; ++i) inv[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)] - 1)] = i + 1;
    check_equal(nmat::permutation_similarity(nmat::permutation_similarity(a, pi), inv), a);
  }
}

TEST_CASE("determinant is permutation-similarity invariant") {
  testutil::Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 6);
    const SquareMatrix a = testutil::random_matrix(rng, n, -2, 2);
    std::vector<int> pi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pi[static_cast<std::size_t>(i)] = i + 1;
    for (int i = n - 1; i > 0; --i)
      std::swap(pi[static_cast<std::size_t>(i)], pi[rng.next_u64() % static_cast<std::uint64_t>(i + 1)]);
    CHECK(rel_close(nmat::determinant(nmat::permutation_similarity(a, pi)),
                    nmat::determinant(a), 1e-12));
  }
}

TEST_CASE("Schur determinant identity det(A) = det(A[alpha]) det(A/A[alpha])") {
  testutil::Rng rng(37);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 7);  // up to 8
    const SquareMatrix a = testutil::random_matrix(rng, n, -2, 2);
    const std::uint64_t mask = 1 + rng.next_u64() % ((std::uint64_t{1} << n) - 2);
    const IndexSubset alpha = IndexSubset::from_mask(n, mask);
    try {
      const SquareMatrix s = nmat::schur_complement(a, alpha);
      const double lhs = nmat::determinant(a);
      const double rhs =
          nmat::determinant(nmat::principal_submatrix(a, alpha)) * nmat::determinant(s);
      CHECK(rel_close(lhs, rhs, 1e-8));
      ++checked;
    } catch (const nmat::SingularPivot&) {
      // near-singular pivot block: identity not testable here
    }
  }
  CHECK(checked > 150);
}

TEST_CASE("rank-one update equals the Schur complement of the bordered matrix") {
  testutil::Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 6);
    const SquareMatrix a = testutil::random_matrix(rng, n, -2, 2);
    std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    for (auto& v : x) v = rng.uniform(-2, 2);
    for (auto& v : y) v = rng.uniform(-2, 2);
    double corner = rng.uniform(-2, 2);
    if (std::fabs(corner) < 0.1) corner = -0.5;
    const SquareMatrix u = nmat::bordered(a, x, y, corner);
    const SquareMatrix lhs = nmat::rank_one_update(a, x, y, -1.0 / corner);
    const SquareMatrix rhs = nmat::schur_complement(u, IndexSubset(n + 1, {n + 1}));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(rel_close(lhs(i, j), rhs(i, j), 1e-10));
  }
}

TEST_CASE("inverse of inverse is the identity map on well-conditioned input") {
  testutil::Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 7);
    const SquareMatrix a = testutil::random_p_matrix(rng, n);
    const SquareMatrix back = nmat::inverse(nmat::inverse(a));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(rel_close(back(i, j), a(i, j), 1e-8));
  }
}

TEST_CASE("matrix construction validates its invariants") {
  CHECK_THROWS_AS(SquareMatrix(0), nmat::ContractViolation);
  CHECK_THROWS_AS(SquareMatrix(2, {1, 2, 3}), nmat::ContractViolation);
  CHECK_THROWS_AS(SquareMatrix(1, {std::nan("")}), nmat::ContractViolation);
  CHECK_THROWS_AS(SquareMatrix(1, {std::numeric_limits<double>::infinity()}),
                  nmat::ContractViolation);

  CHECK(IndexSubset::from_mask(3, 0b101).members() == std::vector<int>{1, 3});
  CHECK(IndexSubset(3, {1, 3}).complement().members() == std::vector<int>{2});
  CHECK(IndexSubset::full(3).complement().empty());
  CHECK(IndexSubset(3, {1, 3}).mask() == 0b101);
  CHECK(IndexSubset(3, {1, 3}).to_string() == "{1,3}");
}
