#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fgred/instances.hpp"

namespace fgred {
namespace oracles {

// All functions here are reference solvers: straightforward, exhaustive, and
// independent of the reduction paths they check. They read reals directly
// (raw comparisons), so they must run outside any audit scope.

enum class Mode { Decide, Count, Witness };

struct EdgeAnswer {
  bool yes = false;
  uint64_t count = 0;
  int64_t witness = -1;  // completing node, -1 if none
};

// --- 3SUM ------------------------------------------------------------------
// For each c in C: does some a+b+c = 0 exist?
std::vector<uint8_t> all_nums_3sum(const ThreeSumInstance& inst);

// --- (min,+) product / APSP --------------------------------------------------
struct MinPlusResult {
  size_t n = 0;
  std::vector<RestrictedReal> value;  // n x n
  std::vector<int32_t> argmin;        // smallest index attaining the min
  const RestrictedReal& at(size_t i, size_t j) const { return value[i * n + j]; }
  int32_t arg(size_t i, size_t j) const { return argmin[i * n + j]; }
};
MinPlusResult min_plus(const MinPlusInstance& inst);

// Floyd-Warshall on an n x n weight matrix (inf = absent, diagonal forced 0).
// Throws NegativeCycleDetected.
std::vector<RestrictedReal> apsp_reference(const std::vector<RestrictedReal>& w, size_t n);

// --- exact triangle ----------------------------------------------------------
// Per (i,j) over the I x J slab: a zero triangle through (i,j)?
std::vector<EdgeAnswer> ae_exact_tri(const WeightedTripartiteGraph& g, Mode mode);

struct PredSucc {
  bool pred_defined = false, succ_defined = false;  // false = -inf / +inf sentinel
  int32_t pred_k = -1, succ_k = -1;
};
// Predecessor (largest sum <= C[i,j], the "itself" convention) and successor
// (smallest sum > C[i,j]) of C[i,j] among {A[i,k]+B[k,j]}; infinite sums never
// qualify.
std::vector<PredSucc> exact_tri_pred_succ(const MinPlusInstance& ab,
                                          const std::vector<RestrictedReal>& c);

// --- sparse triangles --------------------------------------------------------
// Per query edge of g. Count mode multiplies side-edge multiplicities, which
// is the parallel-edge semantics the pair-form counting reduction needs.
std::vector<EdgeAnswer> ae_sparse_tri(const SparseGraph& g, Mode mode);

// Per (u,v,color) edge: a triangle whose three edges all carry that color?
std::vector<EdgeAnswer> ae_mono_tri(const EdgeColoredMultigraph& g, Mode mode);

// --- colorful products -------------------------------------------------------
std::vector<uint8_t> colorful_bmm(const ColorfulBmmInstance& inst);  // n1 x n2

// --- triangle collection -----------------------------------------------------
bool tri_co_decide(const TriCoInstance& inst);

struct AcpResult {
  std::vector<uint32_t> colors_a, colors_b;  // sorted
  std::vector<uint8_t> yes;                  // |colors_a| x |colors_b|
  bool at(size_t a, size_t b) const { return yes[a * colors_b.size() + b] != 0; }
};
AcpResult tri_co_acp(const TriCoInstance& inst);

// --- orthogonal vectors ------------------------------------------------------
struct OvAnswer {
  bool yes = false;
  uint32_t u = 0, v = 0;  // witness pair (u < v) when yes
};
OvAnswer ov(const OVInstance& inst);

// --- strings -----------------------------------------------------------------
// For each shift i in [0, N-M]: |{p_j : p_j == t_{i+j}}| (distinct symbols).
std::vector<uint32_t> distinct_hamming_similarity(const StringPair& s);

// --- degeneracy and triangle listing -----------------------------------------
struct DegeneracyResult {
  uint32_t degeneracy = 0;
  std::vector<uint32_t> elimination_order;
};
DegeneracyResult degeneracy(const SparseGraph& g);

// All triangles (a<b<c node triples), enumerated in O(m*D) via the
// elimination order.
std::vector<std::array<uint32_t, 3>> triangles_via_degeneracy(const SparseGraph& g);

// Per query edge: is the set of completing-node colors a superset of gamma?
std::vector<uint8_t> ae_colorful_sparse_tri(const SparseGraph& g,
                                            const std::vector<uint32_t>& node_color,
                                            const std::vector<uint32_t>& gamma);

// --- set disjointness --------------------------------------------------------
std::vector<uint8_t> set_disjointness(const SetDisjointnessInstance& inst);  // 1 = disjoint

// --- (distinct,=)-product (test oracle for the section-9 mapping) ------------
std::vector<uint32_t> distinct_eq_product(const std::vector<long long>& a, size_t n1,
                                          const std::vector<long long>& b, size_t n2,
                                          size_t k);

}  // namespace oracles

// Oracle interfaces handed to reductions. The brute implementations below are
// the defaults; tests can substitute faulty ones to exercise protocol checks.
struct SparseTriOracle {
  virtual ~SparseTriOracle() = default;
  virtual std::vector<oracles::EdgeAnswer> run(const SparseGraph& g, oracles::Mode mode) = 0;
};

struct BruteSparseTriOracle final : SparseTriOracle {
  std::vector<oracles::EdgeAnswer> run(const SparseGraph& g, oracles::Mode mode) override {
    audit::Suspend lift;
    return oracles::ae_sparse_tri(g, mode);
  }
};

struct ColorfulBmmOracle {
  virtual ~ColorfulBmmOracle() = default;
  virtual std::vector<uint8_t> run(const ColorfulBmmInstance& inst) = 0;
};

struct BruteColorfulBmmOracle final : ColorfulBmmOracle {
  std::vector<uint8_t> run(const ColorfulBmmInstance& inst) override {
    audit::Suspend lift;
    return oracles::colorful_bmm(inst);
  }
};

}  // namespace fgred
