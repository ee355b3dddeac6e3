#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nmat/types.hpp"

namespace nmat {

struct BenchRow {
  int n = 0;
  std::uint64_t t_recursive_ns = 0;  // recursive N-test, per run
  std::uint64_t t_naive_ns = 0;      // exhaustive principal-minor enumeration, per run
  std::uint64_t schur_count = 0;     // 2^{n-1} - 1 on a full run
};

/// Times the recursive N-test against the exhaustive minor enumerator on
/// constructed second-category N-matrices (worst case: a true verdict never
/// exits early). Per order: `trials` matrices, min-of-trials timing, with
/// enough inner repetitions to keep each sample well above clock noise.
std::vector<BenchRow> run_bench(int nmin, int nmax, int trials, std::uint64_t seed,
                                const Tolerance& tol = {});

/// Header "n,t_recursive_ns,t_naive_ns,schur_count" plus one row per order.
std::string to_csv(const std::vector<BenchRow>& rows);

/// splitmix64: decorrelates per-(order, trial) construction seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

}  // namespace nmat
