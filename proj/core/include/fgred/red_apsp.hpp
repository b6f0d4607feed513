#pragma once

#include <cstdint>
#include <vector>

#include "fgred/accounting.hpp"
#include "fgred/dyadic.hpp"
#include "fgred/instances.hpp"
#include "fgred/oracles.hpp"

namespace fgred {
namespace red_apsp {

// ---------------------------------------------------------------------------
// Shared rank structure: ranks of all within-instance differences
//   A[i,k'] - A[i,k]   and   B[k,j] - B[k',j]
// in one deduplicated sorted list. Built once per (A,B) pair; lookups are
// table reads, so they cost no further comparisons. Differences touching an
// infinite entry are not inserted (the builders skip those edges anyway).
// ---------------------------------------------------------------------------
class FredmanRanks {
 public:
  FredmanRanks(const MinPlusInstance& inst, ComparisonLedger& ledger);

  long long rank_a(size_t i, size_t k, size_t kp) const {
    return ra_[(i * d_ + k) * d_ + kp];
  }
  long long rank_b(size_t k, size_t j, size_t kp) const {
    return rb_[(j * d_ + k) * d_ + kp];
  }
  bool a_finite(size_t i, size_t k) const { return af_[i * d_ + k] != 0; }
  bool b_finite(size_t k, size_t j) const { return bf_[k * n_ + j] != 0; }

  int universe_log() const { return ulog_; }
  int levels() const { return ulog_ + 1; }
  size_t distinct() const { return distinct_; }

 private:
  size_t n_, d_;
  int ulog_ = 0;
  size_t distinct_ = 0;
  std::vector<long long> ra_, rb_;
  std::vector<uint8_t> af_, bf_;
};

// One AE-Sparse-Tri instance G_{k,P}. Node layout: x[i] = i, z[j] = n + j,
// middle nodes from 2n upward, materialized lazily.
struct VariantGraph {
  SparseGraph graph;
  int32_t k = 0;
  size_t chunk = 0;
  std::vector<std::pair<uint32_t, uint32_t>> query_pairs;  // (i,j) per query edge
  struct Middle {
    int32_t k_prime;
    DyadicInterval interval;
  };
  std::vector<Middle> middles;
  size_t n = 0;  // left/right part width

  size_t middle_base() const { return 2 * n; }
};

struct GraphFamily {
  std::vector<VariantGraph> graphs;
  LedgerRow ledger;
};

// Lemma-level construction: one graph per (k, P-chunk), chunk size
// ceil(n^2/d); a triangle x[i] y[k',I] z[j] exists iff
// A[i,k'] + B[k',j] < A[i,k_ij] + B[k_ij,j].
// `cols` are the candidate columns (the recursion passes subsets); `k` holds
// per-pair current indices, -1 marking pairs without a finite candidate
// (those are skipped). Throws ShapeMismatch.
GraphFamily build_variant_graphs(const MinPlusInstance& inst,
                                 const std::vector<int32_t>& cols,
                                 const std::vector<int32_t>& k, const FredmanRanks& ranks,
                                 ComparisonLedger& ledger);

struct VariantAnswer {
  bool found = false;
  int32_t k_prime = -1;
};

// One oracle round: build, query with witnesses, decode and re-validate
// every improvement against Eq. (1). Throws OracleProtocol on a witness that
// fails validation.
std::vector<VariantAnswer> solve_variant(const MinPlusInstance& inst,
                                         const std::vector<int32_t>& cols,
                                         const std::vector<int32_t>& k,
                                         const FredmanRanks& ranks, SparseTriOracle& oracle,
                                         ComparisonLedger& ledger, LedgerRow* accum = nullptr,
                                         int jobs = 1);

struct DriverOptions {
  int c_iter = 30;
  int c_retry = 5;
  int jobs = 1;
};

struct DriverStats {
  uint64_t max_rounds = 0;
  uint64_t total_rounds = 0;
  uint64_t retries = 0;
  LedgerRow row;  // aggregated over every build in the run
};

// Las Vegas driver (random-half recursion + improvement rounds). The result
// equals oracles::min_plus exactly in value; argmins agree up to ties.
// Round budget per level is c_iter * log2(n+2); exceeding it aborts the
// attempt, and c_retry failed attempts throw RetryBudgetExhausted.
oracles::MinPlusResult min_plus_rect(const MinPlusInstance& inst, SparseTriOracle& oracle,
                                     uint64_t seed, ComparisonLedger& ledger,
                                     DriverStats* stats = nullptr, DriverOptions opts = {});

// Square (min,+) product via ceil(n/d) rectangular strips.
oracles::MinPlusResult min_plus_square(const std::vector<RestrictedReal>& a,
                                       const std::vector<RestrictedReal>& b, size_t n,
                                       size_t d, SparseTriOracle& oracle, uint64_t seed,
                                       ComparisonLedger& ledger, DriverStats* stats = nullptr,
                                       DriverOptions opts = {});

// APSP by ceil(log2 n) repeated squarings of the adjacency matrix (diagonal
// 0). Throws NegativeCycleDetected if a diagonal entry goes negative.
std::vector<RestrictedReal> apsp(const std::vector<RestrictedReal>& w, size_t n, size_t d,
                                 SparseTriOracle& oracle, uint64_t seed,
                                 ComparisonLedger& ledger, DriverStats* stats = nullptr,
                                 DriverOptions opts = {});

// Split left nodes with more than d right-neighbors into ceil(delta/d) copies
// (each inheriting all middle edges); per-edge answers are unchanged and the
// resulting degeneracy is O(d * levels).
VariantGraph split_for_degeneracy(const VariantGraph& g, size_t d);

struct PruneResult {
  std::vector<uint8_t> resolved_yes;  // per query edge
  SparseGraph pruned;
  size_t removed_middles = 0;
  size_t remaining_middles = 0;  // non-isolated middle nodes left
};

// "High vs. low degree" trick: brute-force and remove every middle node of
// degree <= threshold, resolving the query edges its neighbor pairs close.
PruneResult prune_low_degree_middle(const SparseGraph& g, size_t threshold);

struct SetDisjointnessReduction {
  SetDisjointnessInstance instance;
  // queries align 1:1 with g's query edges; disjoint <=> edge NOT in a triangle
};

SetDisjointnessReduction sparse_tri_to_set_disjointness(const SparseGraph& g);

}  // namespace red_apsp
}  // namespace fgred
