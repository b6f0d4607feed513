#pragma once

#include <cstdint>
#include <vector>

#include "fgred/accounting.hpp"
#include "fgred/instances.hpp"
#include "fgred/oracles.hpp"

namespace fgred {
namespace red_mono {

// Overlay of several sparse instances into one edge-colored multigraph
// (color = instance index). Keeping per-color edges distinct makes the
// decode exact; the random permutations shape the color classes like the
// source lemma but carry no correctness burden.
struct OverlayResult {
  EdgeColoredMultigraph graph;
  // decode: per output edge -> (instance index, edge index within it)
  std::vector<std::pair<uint32_t, uint32_t>> source_edge;
  std::vector<std::vector<uint32_t>> permutation;  // per instance: node -> slot
  LedgerRow row;
};

OverlayResult overlay(const SparseBundle& bundle, uint64_t seed);

// AE-Mono-Tri -> ACP-Tri-Co_light via per-bit graphs G_t. The source must be
// tripartite with at most one color per node pair (NotSimple otherwise);
// `parts` names which source parts play A, B, C (C holds the single nodes).
// For a C-incident NON-edge (v,z), both copies of v are linked to z in every
// G_t: without those edges the triple (v,v',z) would look uncovered and
// decode as a spurious monochromatic triangle.
struct MonoToAcpResult {
  TriCoInstance instance;  // Light with p = 2 * bit rounds
  uint32_t bit_rounds = 0;
  // decode domain: source A-B edges; answer = NOT acp(color_a, color_b)
  std::vector<uint32_t> query_edges;          // indices into the source edge list
  std::vector<uint32_t> color_a, color_b;     // per query edge: node colors in the instance
  LedgerRow row;
};

MonoToAcpResult mono_to_acp_trico_light(const EdgeColoredMultigraph& g,
                                        const std::array<uint8_t, 3>& parts);

// Decode helper: per query edge of `red`, true iff the source edge lies in a
// monochromatic triangle, read off an ACP answer matrix.
std::vector<uint8_t> decode_acp_answers(const MonoToAcpResult& red,
                                        const oracles::AcpResult& acp);

// Salem-Spencer (3-AP-free) subset of [N] from the Behrend construction:
// digit cubes {0,1}^m in base 3 plus the best fixed-norm shell over larger
// digit sets, whichever is larger.
std::vector<long long> behrend_set(long long n);

// AE-Mono-Tri -> Int-AE-Exact-Tri: colors map injectively into a
// Salem-Spencer set; K-incident edges get f(color), I-J edges -2 f(color).
struct MonoToIntExactResult {
  WeightedTripartiteGraph graph;
  // decode domain: source I-J edges, aligned with ae_exact_tri's (i,j) output
  std::vector<uint32_t> query_edges;
  std::vector<std::pair<uint32_t, uint32_t>> query_ij;
  std::vector<long long> color_value;  // injective map used
  LedgerRow row;
};

MonoToIntExactResult mono_to_int_exact_tri(const EdgeColoredMultigraph& g,
                                           const std::array<uint8_t, 3>& parts);

}  // namespace red_mono
}  // namespace fgred
