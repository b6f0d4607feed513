#pragma once

#include <cstdint>
#include <vector>

#include "fgred/red_apsp.hpp"

namespace fgred {
namespace red_exacttri {

// Per-pair anchors: indices of the current predecessor / successor candidates
// (-1 = sentinel, i.e. -inf below / +inf above). Invariant while iterating:
// sum(pred) <= C[i,j] < sum(succ) whenever defined.
struct PredSuccState {
  size_t n = 0;
  std::vector<int32_t> pred, succ;
  std::vector<RestrictedReal> c;

  static PredSuccState empty(size_t n, std::vector<RestrictedReal> c) {
    PredSuccState s;
    s.n = n;
    s.pred.assign(n * n, -1);
    s.succ.assign(n * n, -1);
    s.c = std::move(c);
    return s;
  }
};

// One AE-Sparse-Tri instance G_{k-,k+,P} with middle nodes y[k', I-, I+].
struct ExactTriGraph {
  SparseGraph graph;
  int32_t k_minus = -1, k_plus = -1;
  size_t chunk = 0;
  std::vector<std::pair<uint32_t, uint32_t>> query_pairs;
  struct Middle {
    int32_t k_prime;
    DyadicInterval lo, hi;
  };
  std::vector<Middle> middles;
  size_t n = 0;
  size_t middle_base() const { return 2 * n; }
};

struct ExactTriFamily {
  std::vector<ExactTriGraph> graphs;
  LedgerRow ledger;
};

// Lemma-level construction for pairs with both anchors defined: a triangle
// x[i] y[k',I-,I+] z[j] exists iff
//   A[i,k-]+B[k-,j] < A[i,k']+B[k',j] < A[i,k+]+B[k+,j].
// Pairs with a sentinel side are handled by the driver through the one-sided
// (apsp-style) construction instead.
ExactTriFamily build_exacttri_graphs(const MinPlusInstance& inst,
                                     const std::vector<int32_t>& cols,
                                     const PredSuccState& state,
                                     const red_apsp::FredmanRanks& ranks,
                                     ComparisonLedger& ledger);

struct BetweenAnswer {
  bool found = false;
  int32_t k_prime = -1;
};

// Witness route for Variant 2: find some k' strictly between the anchors, per
// pair. Sentinel-sided pairs go through apsp-style graphs on (A,B) for a
// missing predecessor and on (-A,-B) for a missing successor.
std::vector<BetweenAnswer> solve_variant2(const MinPlusInstance& inst,
                                          const std::vector<int32_t>& cols,
                                          const PredSuccState& state,
                                          const red_apsp::FredmanRanks& ranks,
                                          SparseTriOracle& oracle, ComparisonLedger& ledger,
                                          LedgerRow* accum = nullptr, int jobs = 1);

// Counting route for Variant 3: per pair, the number of k' in `cols` with
// A[i,k']+B[k',j] < A[i,k]+B[k,j] (finite sums only; pairs with k = -1 are
// skipped). Uses the apsp2 graph family with a counting oracle.
std::vector<uint64_t> count_below(const MinPlusInstance& inst,
                                  const std::vector<int32_t>& cols,
                                  const std::vector<int32_t>& k,
                                  const red_apsp::FredmanRanks& ranks,
                                  SparseTriOracle& count_oracle, ComparisonLedger& ledger,
                                  LedgerRow* accum = nullptr, int jobs = 1);

// Same, counting k' with sum <= the reference sum.
std::vector<uint64_t> count_at_most(const MinPlusInstance& inst,
                                    const std::vector<int32_t>& cols,
                                    const std::vector<int32_t>& k,
                                    SparseTriOracle& count_oracle, ComparisonLedger& ledger,
                                    LedgerRow* accum = nullptr, int jobs = 1);

// Variant 2 realized through Variant 3 counts plus witness recovery by bit
// restriction and random size-2^s subsets; every returned index is
// re-validated against Eq. (3). Las Vegas: throws RetryBudgetExhausted after
// c_retry failures.
std::vector<BetweenAnswer> variant2_via_counts(const MinPlusInstance& inst,
                                               const std::vector<int32_t>& cols,
                                               const PredSuccState& state,
                                               SparseTriOracle& count_oracle,
                                               ComparisonLedger& ledger, uint64_t seed,
                                               LedgerRow* accum = nullptr,
                                               red_apsp::DriverOptions opts = {});

enum class VariantRoute { Witness, Counting };

// Lemma exacttri1 driver: random-half recursion, then tighten anchors via
// Variant 2 until fixpoint. Output anchors are the true predecessor
// ("itself" convention) and successor of C[i,j] per pair.
PredSuccState pred_succ(const MinPlusInstance& inst, const std::vector<RestrictedReal>& c,
                        SparseTriOracle& oracle, uint64_t seed, ComparisonLedger& ledger,
                        VariantRoute route = VariantRoute::Witness,
                        red_apsp::DriverStats* stats = nullptr,
                        red_apsp::DriverOptions opts = {});

// All-edges exact triangle through the AE-Sparse-Tri oracle: split the inner
// part into width-d strips, run pred_succ per strip with C = negated query
// weights, and answer yes iff some predecessor equals C[i,j]. Equals
// oracles::ae_exact_tri on the I x J slab.
std::vector<uint8_t> ae_exact_tri_via_sparse(const WeightedTripartiteGraph& g, size_t d,
                                             SparseTriOracle& oracle, uint64_t seed,
                                             ComparisonLedger& ledger,
                                             VariantRoute route = VariantRoute::Witness,
                                             red_apsp::DriverStats* stats = nullptr,
                                             red_apsp::DriverOptions opts = {});

}  // namespace red_exacttri
}  // namespace fgred
