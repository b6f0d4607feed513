#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fgred/accounting.hpp"
#include "fgred/dyadic.hpp"
#include "fgred/instances.hpp"
#include "fgred/oracles.hpp"
#include "fgred/red_apsp.hpp"

namespace fgred {
namespace red_3sum {

// Sorted lists of A and B cut into buckets of width d (last bucket ragged).
struct BucketedPair {
  size_t d = 0;   // bucket width
  size_t n = 0;   // list length
  size_t nb = 0;  // bucket count
  std::vector<RestrictedReal> a, b;  // globally sorted ascending

  size_t width(size_t bucket) const {
    size_t lo = bucket * d;
    return std::min(d, n - lo);
  }
  const RestrictedReal& A(size_t i, size_t k) const { return a[i * d + k]; }
  const RestrictedReal& B(size_t j, size_t l) const { return b[j * d + l]; }
};

BucketedPair bucketize(std::vector<RestrictedReal> a, std::vector<RestrictedReal> b,
                       size_t d, ComparisonLedger& ledger);

// Bucket pairs whose sum range can contain c, visited by a monotone sweep.
// Complete: every (a,b) with a+b = c has its bucket pair in the output.
std::vector<std::pair<uint32_t, uint32_t>> staircase_pairs(const BucketedPair& bp,
                                                           const RestrictedReal& c,
                                                           ComparisonLedger& ledger);

// Ranks of all within-bucket-row differences of A and B, both orientations.
class ThreeSumRanks {
 public:
  ThreeSumRanks(const BucketedPair& bp, ComparisonLedger& ledger);
  // rank of A(i,p) - A(i,q)
  long long rank_a(size_t i, size_t p, size_t q) const { return ra_[(i * d_ + p) * d_ + q]; }
  // rank of B(j,p) - B(j,q)
  long long rank_b(size_t j, size_t p, size_t q) const { return rb_[(j * d_ + p) * d_ + q]; }
  int universe_log() const { return ulog_; }
  int levels() const { return ulog_ + 1; }

 private:
  size_t d_;
  int ulog_ = 0;
  std::vector<long long> ra_, rb_;
};

// (k,l) anchor pair; k = -1 means the whole anchor is a sentinel.
struct PairAnchor {
  int32_t k = -1, l = -1;
  bool defined() const { return k >= 0; }
};

// One quadruple occurrence q = (pred, succ) at bucket pair (i,j).
struct Quadruple {
  uint32_t i = 0, j = 0;
  PairAnchor pred, succ;
};

struct QuadAnswer {
  bool found = false;
  int32_t k_prime = -1, l_prime = -1;
};

// Witness pair reference for the pair-form (counting) graph.
struct PairRef {
  uint32_t i = 0, j = 0;
  int32_t k = 0, l = 0;
};

enum class PairDir { Below, Above };

struct QuadGraph {
  SparseGraph graph;
  std::vector<int32_t> left_annot, right_annot;  // per edge: inserted k' / l' (or -1)
  std::vector<uint32_t> query_edge;              // per quadruple -> edge index
  struct XNode {
    uint32_t i;
    int32_t km, kp;
  };
  struct ZNode {
    uint32_t j;
    int32_t lm, lp;
  };
  std::vector<XNode> xs;
  std::vector<ZNode> zs;
  size_t z_base = 0, y_base = 0;
  LedgerRow row;
};

// Lemma 3sum2: ONE AE-Sparse-Tri instance; a triangle through the query edge
// of quadruple q exists iff some (k',l') lies strictly between its anchor
// sums. `subset` restricts the k' candidates (empty = all); throws
// QuadBudgetExceeded when quads.size() > quad_budget.
QuadGraph build_3sum_quad_graph(const BucketedPair& bp, const std::vector<Quadruple>& quads,
                                const ThreeSumRanks& ranks,
                                const std::vector<uint8_t>& subset_mask,
                                size_t quad_budget, ComparisonLedger& ledger);

struct PairCountGraph {
  SparseGraph graph;
  std::vector<uint32_t> query_edge;  // per ref -> edge index
  LedgerRow row;
};

// Lemma 3sum3: ONE #AE-Sparse-Tri instance with per-edge multiplicities; the
// triangle count through the query edge of ref r equals
//   #{(k',l') : A(i,k')+B(j,l')  <  (Below) / >  (Above)  A(i,k)+B(j,l)}.
PairCountGraph build_3sum_pair_graph(const BucketedPair& bp,
                                     const std::vector<PairRef>& refs,
                                     const ThreeSumRanks& ranks, PairDir dir,
                                     const std::vector<uint8_t>& subset_mask,
                                     size_t quad_budget, ComparisonLedger& ledger);

// Variant-1 driver state: each query is one target value routed to one bucket
// pair of the staircase.
struct Variant1Query {
  uint32_t i = 0, j = 0;
  uint32_t c_index = 0;
};

struct Variant1Result {
  std::vector<PairAnchor> pred, succ;  // per query: true pred ("itself") / succ
  LedgerRow row;
  uint64_t max_rounds = 0;
};

enum class Route { Witness, Counting };

// Lemma 3sum1: random-half recursion over the A-side columns, re-anchoring l
// by binary search after every improvement; counting route per Lemma 3sum23.
Variant1Result solve_3sum_variant1(const BucketedPair& bp,
                                   const std::vector<Variant1Query>& queries,
                                   const std::vector<RestrictedReal>& cvals,
                                   SparseTriOracle& oracle, uint64_t seed,
                                   ComparisonLedger& ledger, Route route = Route::Witness,
                                   red_apsp::DriverOptions opts = {});

// Whole-problem driver (Thm 3sum / 3sum:count): instance values are in
// a+b+c = 0 form; the third set is negated once at ingestion.
std::vector<uint8_t> all_nums_3sum_via_sparse(const ThreeSumInstance& inst, size_t d,
                                              SparseTriOracle& oracle, uint64_t seed,
                                              ComparisonLedger& ledger,
                                              Route route = Route::Witness,
                                              LedgerRow* row_out = nullptr,
                                              red_apsp::DriverOptions opts = {});

// Appendix-B bucketing reduction from the symmetric (single-list) form to
// Real-Exact-Triangle instances, with heavy bucket pairs answered directly.
struct Real3SumToExactTri {
  bool partial_yes = false;
  std::array<RestrictedReal, 3> partial_witness{};  // a+b+c = 0 when partial_yes
  std::vector<WeightedTripartiteGraph> instances;   // indexed by (q, p)
  size_t bucket_count = 0, tau = 0, piece = 0;      // piece = ceil(n/g)
  uint64_t valid_triples = 0;
  LedgerRow row;
};

Real3SumToExactTri real3sum_to_exact_tri(const ThreeSumInstance& inst, size_t g, double eps,
                                         ComparisonLedger& ledger);

}  // namespace red_3sum
}  // namespace fgred
