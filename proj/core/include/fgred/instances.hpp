#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fgred/numeric.hpp"

namespace fgred {

// ---------------------------------------------------------------------------
// Problem instances. All immutable after construction.
// ---------------------------------------------------------------------------

// Sets A, B, C of sizes n, n, nhat; a solution is a+b+c = 0.
struct ThreeSumInstance {
  std::vector<RestrictedReal> a, b, c;
};

// A is n x d, B is d x n, row-major.
struct MinPlusInstance {
  size_t n = 0, d = 0;
  std::vector<RestrictedReal> a, b;

  const RestrictedReal& A(size_t i, size_t k) const { return a[i * d + k]; }
  const RestrictedReal& B(size_t k, size_t j) const { return b[k * n + j]; }
};

// Parts I, J, K; absent edges are +inf.
struct WeightedTripartiteGraph {
  size_t ni = 0, nj = 0, nk = 0;
  std::vector<RestrictedReal> w_ij, w_ik, w_kj;  // row-major ni*nj, ni*nk, nk*nj

  const RestrictedReal& WIJ(size_t i, size_t j) const { return w_ij[i * nj + j]; }
  const RestrictedReal& WIK(size_t i, size_t k) const { return w_ik[i * nk + k]; }
  const RestrictedReal& WKJ(size_t k, size_t j) const { return w_kj[k * nj + j]; }
};

struct OVInstance {
  size_t n = 0, f = 0;
  std::vector<uint8_t> bits;  // n x f row-major

  uint8_t at(size_t v, size_t s) const { return bits[v * f + s]; }
};

// Undirected simple graph; optional tripartite part tags, optional query-edge
// subset (indices into edges), optional per-edge multiplicity (defaults to 1;
// used by the pair-form counting construction, where parallel edges carry the
// per-interval multiplicities the exact counts need).
struct SparseGraph {
  size_t nodes = 0;
  std::vector<std::pair<uint32_t, uint32_t>> edges;
  std::vector<uint8_t> parts;           // empty or size nodes (values 0/1/2)
  std::vector<uint32_t> query_edges;    // empty = every edge is a query edge
  std::vector<uint32_t> multiplicity;   // empty = all 1

  uint32_t mult(size_t e) const { return multiplicity.empty() ? 1u : multiplicity[e]; }
  bool has_query_subset() const { return !query_edges.empty(); }
};

struct EdgeColoredMultigraph {
  struct CEdge {
    uint32_t u, v, color;
  };
  size_t nodes = 0;
  std::vector<CEdge> edges;     // (u,v,color) triples, unique
  std::vector<uint8_t> parts;   // empty or size nodes
};

struct ColorfulBmmInstance {
  size_t n1 = 0, n2 = 0, k = 0;
  std::vector<uint8_t> a;        // n1 x k
  std::vector<uint8_t> b;        // k x n2
  std::vector<uint32_t> color;   // size k
  std::vector<uint32_t> gamma;   // sorted unique target palette
  std::optional<uint32_t> pad_color;  // flagged padding color ("!"), excluded from gamma

  uint8_t A(size_t i, size_t t) const { return a[i * k + t]; }
  uint8_t B(size_t t, size_t j) const { return b[t * n2 + j]; }
};

struct TriCoInstance {
  enum class Variant { General, Tripartite, Light, Star2 };
  Variant variant = Variant::Tripartite;
  uint32_t p = 0;  // Light: max nodes per color
  uint32_t t = 0;  // Star2: component count
  struct Node {
    uint32_t color = 0;
    uint8_t part = 255;      // 0/1/2 for tripartite variants, 255 for General
    uint32_t component = 0;  // Star2 only
  };
  std::vector<Node> nodes;
  std::vector<std::pair<uint32_t, uint32_t>> edges;
};

struct SetDisjointnessInstance {
  size_t universe = 0;
  std::vector<std::vector<uint32_t>> family;
  std::vector<std::pair<uint32_t, uint32_t>> queries;
};

// Symbols are small non-negative integers; the three reserved symbols are
// encoded as negative values below.
struct StringPair {
  static constexpr int32_t kBang = -1;    // '!'
  static constexpr int32_t kHash = -2;    // '#'
  static constexpr int32_t kDollar = -3;  // '$'
  uint32_t alphabet = 0;                  // plain symbols are 0..alphabet-1
  std::vector<int32_t> text, pattern;
};

// Source bundle for the monochromatic overlay: instances on <= slots nodes.
struct SparseBundle {
  size_t slots = 0;
  std::vector<SparseGraph> graphs;
};

// ---------------------------------------------------------------------------
// Envelope: kind tag + payload + provenance header.
// ---------------------------------------------------------------------------
struct Provenance {
  uint64_t seed = 0;
  std::string source;    // "gen" or pipeline id
  std::string pipeline;  // set when emitted by cmd_reduce
  std::string lemma;     // lemma id for ledger cross-reference
};

using InstancePayload =
    std::variant<ThreeSumInstance, MinPlusInstance, WeightedTripartiteGraph, OVInstance,
                 SparseGraph, EdgeColoredMultigraph, ColorfulBmmInstance, TriCoInstance,
                 SetDisjointnessInstance, StringPair, SparseBundle>;

struct Instance {
  std::string kind;
  InstancePayload payload;
  Provenance prov;
};

// ---------------------------------------------------------------------------
// Validation: total, side-effect-free; first violated invariant wins.
// ---------------------------------------------------------------------------
struct Violation {
  std::string field;
  std::string message;
};

std::optional<Violation> validate(const ThreeSumInstance&);
std::optional<Violation> validate(const MinPlusInstance&);
std::optional<Violation> validate(const WeightedTripartiteGraph&);
std::optional<Violation> validate(const OVInstance&);
std::optional<Violation> validate(const SparseGraph&);
std::optional<Violation> validate(const EdgeColoredMultigraph&);
std::optional<Violation> validate(const ColorfulBmmInstance&);
std::optional<Violation> validate(const TriCoInstance&);
std::optional<Violation> validate(const SetDisjointnessInstance&);
std::optional<Violation> validate(const StringPair&);
std::optional<Violation> validate(const SparseBundle&);
std::optional<Violation> validate(const Instance&);

// ---------------------------------------------------------------------------
// Interchange format: one self-describing JSON document per instance.
// ---------------------------------------------------------------------------
std::string serialize(const Instance&);
Instance deserialize(const std::string& text);  // throws ParseError

// ---------------------------------------------------------------------------
// Seeded generators. `params` is a JSON object text (may be "{}"); unknown
// keys are rejected. Deterministic for a fixed (kind, params, seed).
// ---------------------------------------------------------------------------
Instance generate(const std::string& kind, const std::string& params_json, uint64_t seed);

bool instances_equal(const Instance& a, const Instance& b);

}  // namespace fgred
