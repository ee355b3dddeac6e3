#include "nmat/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "nmat/construct.hpp"
#include "nmat/detect.hpp"
#include "nmat/oracle.hpp"

namespace nmat {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point t0, Clock::time_point t1) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
}

}  // namespace

std::vector<BenchRow> run_bench(int nmin, int nmax, int trials, std::uint64_t seed,
                                const Tolerance& tol) {
  if (nmin < 1 || nmax < nmin) throw ContractViolation("bench needs 1 <= nmin <= nmax");
  if (trials < 1) throw ContractViolation("bench needs at least one trial");
  OracleLimits limits;
  if (nmax > limits.minors_cap)
    throw CapExceeded("bench: nmax " + std::to_string(nmax) + " exceeds the oracle cap " +
                      std::to_string(limits.minors_cap));

  std::vector<BenchRow> rows;
  for (int n = nmin; n <= nmax; ++n) {
    // Keep each timed sample comfortably above timer resolution.
    const int reps = std::max(1, 1 << std::max(0, 18 - n));

    // One matrix per order; trials are timing repetitions. Uniform border
    // samples get rare at double-digit orders and a greedy path can strand
    // itself, so retry whole paths under fresh derived seeds.
    SquareMatrix a(1);
    bool built = false;
    for (int attempt = 0; attempt < 60 && !built; ++attempt) {
      ConstructionParams params;
      params.n = n;
      params.category = 2;
      params.seed = mix_seed(seed, (static_cast<std::uint64_t>(n) << 20) +
                                       static_cast<std::uint64_t>(attempt));
      params.tol = tol;
      params.resample_budget = 30000;
      try {
        a = ncon2(params).result;
        built = true;
      } catch (const ConstructionStuck&) {
      }
    }
    if (!built)
      throw ConstructionStuck("bench: could not construct an N-matrix of order " +
                              std::to_string(n));

    BenchRow row;
    row.n = n;
    std::uint64_t best_rec = ~std::uint64_t{0};
    std::uint64_t best_naive = ~std::uint64_t{0};
    volatile std::uint64_t sink = 0;

    for (int trial = 0; trial < trials; ++trial) {
      auto t0 = Clock::now();
      for (int r = 0; r < reps; ++r) {
        const DetectReport rep = is_n_matrix(a, tol);
        sink = sink + rep.schur_count;
        row.schur_count = rep.schur_count;
      }
      auto t1 = Clock::now();
      best_rec = std::min(best_rec, elapsed_ns(t0, t1) / static_cast<std::uint64_t>(reps));

      auto t2 = Clock::now();
      for (int r = 0; r < reps; ++r) {
        const MinorTable table = all_principal_minors(a, tol, limits);
        sink = sink + static_cast<std::uint64_t>(table.by_mask.size());
      }
      auto t3 = Clock::now();
      best_naive = std::min(best_naive, elapsed_ns(t2, t3) / static_cast<std::uint64_t>(reps));
    }
    (void)sink;

    row.t_recursive_ns = std::max<std::uint64_t>(1, best_rec);
    row.t_naive_ns = std::max<std::uint64_t>(1, best_naive);
    rows.push_back(row);
  }
  return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::string out = "n,t_recursive_ns,t_naive_ns,schur_count\n";
  char buf[128];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%d,%llu,%llu,%llu\n", r.n,
                  static_cast<unsigned long long>(r.t_recursive_ns),
                  static_cast<unsigned long long>(r.t_naive_ns),
                  static_cast<unsigned long long>(r.schur_count));
    out += buf;
  }
  return out;
}

}  // namespace nmat
