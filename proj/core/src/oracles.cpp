#include "fgred/oracles.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace fgred {
namespace oracles {

namespace {

bool finite(const RestrictedReal& r) { return !r.is_infinite(); }

// sum of three finite reals equals zero?
bool zero_sum(const RestrictedReal& a, const RestrictedReal& b, const RestrictedReal& c) {
  return (a + b + c).raw_eq(RestrictedReal(0));
}

std::vector<std::vector<uint32_t>> adjacency(const SparseGraph& g) {
  std::vector<std::vector<uint32_t>> adj(g.nodes);
  for (auto [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

}  // namespace

std::vector<uint8_t> all_nums_3sum(const ThreeSumInstance& inst) {
  std::vector<RestrictedReal> sorted_b = inst.b;
  std::sort(sorted_b.begin(), sorted_b.end(), raw_less);
  std::vector<uint8_t> out(inst.c.size(), 0);
  for (size_t ci = 0; ci < inst.c.size(); ++ci) {
    for (const auto& a : inst.a) {
      RestrictedReal target = -(a + inst.c[ci]);  // need b == target
      auto it = std::lower_bound(sorted_b.begin(), sorted_b.end(), target, raw_less);
      if (it != sorted_b.end() && it->raw_eq(target)) {
        out[ci] = 1;
        break;
      }
    }
  }
  return out;
}

MinPlusResult min_plus(const MinPlusInstance& inst) {
  MinPlusResult r;
  r.n = inst.n;
  r.value.assign(inst.n * inst.n, RestrictedReal::infinity());
  r.argmin.assign(inst.n * inst.n, 0);
  for (size_t i = 0; i < inst.n; ++i)
    for (size_t j = 0; j < inst.n; ++j) {
      RestrictedReal best = RestrictedReal::infinity();
      int32_t arg = 0;
      for (size_t k = 0; k < inst.d; ++k) {
        RestrictedReal s = inst.A(i, k) + inst.B(k, j);
        if (k == 0 || s.raw_cmp(best) < 0) {
          best = s;
          arg = static_cast<int32_t>(k);
        }
      }
      r.value[i * inst.n + j] = best;
      r.argmin[i * inst.n + j] = arg;
    }
  return r;
}

std::vector<RestrictedReal> apsp_reference(const std::vector<RestrictedReal>& w, size_t n) {
  std::vector<RestrictedReal> d = w;
  for (size_t i = 0; i < n; ++i) d[i * n + i] = RestrictedReal(0);
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i) {
      if (d[i * n + k].is_infinite()) continue;
      for (size_t j = 0; j < n; ++j) {
        RestrictedReal via = d[i * n + k] + d[k * n + j];
        if (via.raw_cmp(d[i * n + j]) < 0) d[i * n + j] = via;
      }
    }
  for (size_t i = 0; i < n; ++i)
    if (!d[i * n + i].is_infinite() && d[i * n + i].raw_cmp(RestrictedReal(0)) < 0)
      throw NegativeCycleDetected();
  return d;
}

std::vector<EdgeAnswer> ae_exact_tri(const WeightedTripartiteGraph& g, Mode mode) {
  std::vector<EdgeAnswer> out(g.ni * g.nj);
  for (size_t i = 0; i < g.ni; ++i)
    for (size_t j = 0; j < g.nj; ++j) {
      EdgeAnswer& ans = out[i * g.nj + j];
      if (!finite(g.WIJ(i, j))) continue;
      for (size_t k = 0; k < g.nk; ++k) {
        if (!finite(g.WIK(i, k)) || !finite(g.WKJ(k, j))) continue;
        if (zero_sum(g.WIJ(i, j), g.WIK(i, k), g.WKJ(k, j))) {
          ans.yes = true;
          ++ans.count;
          if (ans.witness < 0) ans.witness = static_cast<int64_t>(k);
          if (mode == Mode::Decide) break;
        }
      }
    }
  return out;
}

std::vector<PredSucc> exact_tri_pred_succ(const MinPlusInstance& ab,
                                          const std::vector<RestrictedReal>& c) {
  if (c.size() != ab.n * ab.n) throw ShapeMismatch("C matrix shape");
  std::vector<PredSucc> out(ab.n * ab.n);
  for (size_t i = 0; i < ab.n; ++i)
    for (size_t j = 0; j < ab.n; ++j) {
      PredSucc& ps = out[i * ab.n + j];
      const RestrictedReal& target = c[i * ab.n + j];
      RestrictedReal pred, succ;
      for (size_t k = 0; k < ab.d; ++k) {
        RestrictedReal s = ab.A(i, k) + ab.B(k, j);
        if (s.is_infinite()) continue;
        if (s.raw_cmp(target) <= 0) {
          if (!ps.pred_defined || s.raw_cmp(pred) > 0) {
            pred = s;
            ps.pred_defined = true;
            ps.pred_k = static_cast<int32_t>(k);
          }
        } else {
          if (!ps.succ_defined || s.raw_cmp(succ) < 0) {
            succ = s;
            ps.succ_defined = true;
            ps.succ_k = static_cast<int32_t>(k);
          }
        }
      }
    }
  return out;
}

std::vector<EdgeAnswer> ae_sparse_tri(const SparseGraph& g, Mode mode) {
  auto adj = adjacency(g);
  std::map<std::pair<uint32_t, uint32_t>, uint32_t> mult;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    auto key = std::minmax(g.edges[e].first, g.edges[e].second);
    mult[{key.first, key.second}] = g.mult(e);
  }
  auto edge_mult = [&](uint32_t a, uint32_t b) -> uint32_t {
    auto key = std::minmax(a, b);
    auto it = mult.find({key.first, key.second});
    return it == mult.end() ? 0u : it->second;
  };

  std::vector<uint32_t> queries = g.query_edges;
  if (queries.empty()) {
    queries.resize(g.edges.size());
    for (uint32_t e = 0; e < g.edges.size(); ++e) queries[e] = e;
  }

  std::vector<EdgeAnswer> out(queries.size());
  for (size_t qi = 0; qi < queries.size(); ++qi) {
    auto [u, v] = g.edges[queries[qi]];
    // iterate over the lower-degree endpoint's adjacency
    uint32_t a = adj[u].size() <= adj[v].size() ? u : v;
    uint32_t b = a == u ? v : u;
    EdgeAnswer& ans = out[qi];
    for (uint32_t w : adj[a]) {
      if (w == b) continue;
      uint32_t m2 = edge_mult(w, b);
      if (m2 == 0) continue;
      ans.yes = true;
      ans.count += static_cast<uint64_t>(edge_mult(a, w)) * m2;
      if (ans.witness < 0 || static_cast<int64_t>(w) < ans.witness)
        ans.witness = static_cast<int64_t>(w);
      if (mode == Mode::Decide) break;
    }
  }
  return out;
}

std::vector<EdgeAnswer> ae_mono_tri(const EdgeColoredMultigraph& g, Mode mode) {
  (void)mode;
  // per color: adjacency restricted to that color
  std::map<uint32_t, std::set<std::pair<uint32_t, uint32_t>>> by_color;
  for (const auto& e : g.edges) {
    auto key = std::minmax(e.u, e.v);
    by_color[e.color].insert({key.first, key.second});
  }
  std::vector<EdgeAnswer> out(g.edges.size());
  for (size_t ei = 0; ei < g.edges.size(); ++ei) {
    const auto& e = g.edges[ei];
    const auto& same = by_color[e.color];
    EdgeAnswer& ans = out[ei];
    for (uint32_t w = 0; w < g.nodes; ++w) {
      if (w == e.u || w == e.v) continue;
      auto k1 = std::minmax(e.u, w);
      auto k2 = std::minmax(w, e.v);
      if (same.count({k1.first, k1.second}) && same.count({k2.first, k2.second})) {
        ans.yes = true;
        ++ans.count;
        if (ans.witness < 0) ans.witness = w;
      }
    }
  }
  return out;
}

std::vector<uint8_t> colorful_bmm(const ColorfulBmmInstance& inst) {
  std::vector<uint8_t> out(inst.n1 * inst.n2, 0);
  std::set<uint32_t> gamma(inst.gamma.begin(), inst.gamma.end());
  for (size_t i = 0; i < inst.n1; ++i)
    for (size_t j = 0; j < inst.n2; ++j) {
      std::set<uint32_t> seen;
      for (size_t t = 0; t < inst.k; ++t)
        if (inst.A(i, t) && inst.B(t, j) && gamma.count(inst.color[t]))
          seen.insert(inst.color[t]);
      out[i * inst.n2 + j] = seen.size() == gamma.size() ? 1 : 0;
    }
  return out;
}

namespace {

// Sorted distinct colors of a part (or of the whole graph for General).
std::vector<uint32_t> part_colors(const TriCoInstance& inst, int part) {
  std::set<uint32_t> s;
  for (const auto& n : inst.nodes)
    if (part < 0 || n.part == part) s.insert(n.color);
  return {s.begin(), s.end()};
}

// All color triples (sorted by part: a in part0, b in part1, c in part2)
// realized by some triangle.
std::set<std::array<uint32_t, 3>> covered_triples(const TriCoInstance& inst) {
  std::vector<std::set<uint32_t>> adj(inst.nodes.size());
  for (auto [u, v] : inst.edges) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::set<std::array<uint32_t, 3>> covered;
  for (uint32_t x = 0; x < inst.nodes.size(); ++x)
    for (uint32_t y : adj[x]) {
      if (y <= x) continue;
      for (uint32_t z : adj[x]) {
        if (z <= y || !adj[y].count(z)) continue;
        std::array<uint32_t, 3> tri{};
        if (inst.variant == TriCoInstance::Variant::General) {
          tri = {inst.nodes[x].color, inst.nodes[y].color, inst.nodes[z].color};
          std::sort(tri.begin(), tri.end());
        } else {
          tri[inst.nodes[x].part] = inst.nodes[x].color;
          tri[inst.nodes[y].part] = inst.nodes[y].color;
          tri[inst.nodes[z].part] = inst.nodes[z].color;
        }
        covered.insert(tri);
      }
    }
  return covered;
}

}  // namespace

bool tri_co_decide(const TriCoInstance& inst) {
  auto covered = covered_triples(inst);
  if (inst.variant == TriCoInstance::Variant::General) {
    auto colors = part_colors(inst, -1);
    for (size_t a = 0; a < colors.size(); ++a)
      for (size_t b = a + 1; b < colors.size(); ++b)
        for (size_t c = b + 1; c < colors.size(); ++c) {
          std::array<uint32_t, 3> tri = {colors[a], colors[b], colors[c]};
          if (!covered.count(tri)) return false;
        }
    return true;
  }
  auto ka = part_colors(inst, 0), kb = part_colors(inst, 1), kc = part_colors(inst, 2);
  for (auto a : ka)
    for (auto b : kb)
      for (auto c : kc)
        if (!covered.count({a, b, c})) return false;
  return true;
}

AcpResult tri_co_acp(const TriCoInstance& inst) {
  AcpResult res;
  auto covered = covered_triples(inst);
  if (inst.variant == TriCoInstance::Variant::General) {
    auto colors = part_colors(inst, -1);
    res.colors_a = colors;
    res.colors_b = colors;
    res.yes.assign(colors.size() * colors.size(), 1);
    for (size_t a = 0; a < colors.size(); ++a)
      for (size_t b = 0; b < colors.size(); ++b) {
        if (a == b) continue;  // pairs are of distinct colors
        for (auto c : colors) {
          if (c == colors[a] || c == colors[b]) continue;
          std::array<uint32_t, 3> tri = {colors[a], colors[b], c};
          std::sort(tri.begin(), tri.end());
          if (!covered.count(tri)) {
            res.yes[a * colors.size() + b] = 0;
            break;
          }
        }
      }
    return res;
  }
  res.colors_a = part_colors(inst, 0);
  res.colors_b = part_colors(inst, 1);
  auto kc = part_colors(inst, 2);
  res.yes.assign(res.colors_a.size() * res.colors_b.size(), 1);
  for (size_t a = 0; a < res.colors_a.size(); ++a)
    for (size_t b = 0; b < res.colors_b.size(); ++b)
      for (auto c : kc)
        if (!covered.count({res.colors_a[a], res.colors_b[b], c})) {
          res.yes[a * res.colors_b.size() + b] = 0;
          break;
        }
  return res;
}

OvAnswer ov(const OVInstance& inst) {
  for (uint32_t u = 0; u < inst.n; ++u)
    for (uint32_t v = u + 1; v < inst.n; ++v) {
      bool hit = false;
      for (size_t s = 0; s < inst.f; ++s)
        if (inst.at(u, s) && inst.at(v, s)) {
          hit = true;
          break;
        }
      if (!hit) return {true, u, v};
    }
  return {};
}

std::vector<uint32_t> distinct_hamming_similarity(const StringPair& s) {
  size_t n = s.text.size(), m = s.pattern.size();
  std::vector<uint32_t> out(n - m + 1, 0);
  std::set<int32_t> seen;
  for (size_t shift = 0; shift + m <= n; ++shift) {
    seen.clear();
    for (size_t j = 0; j < m; ++j)
      if (s.pattern[j] == s.text[shift + j]) seen.insert(s.pattern[j]);
    out[shift] = static_cast<uint32_t>(seen.size());
  }
  return out;
}

DegeneracyResult degeneracy(const SparseGraph& g) {
  auto adj = adjacency(g);
  std::vector<std::set<uint32_t>> live(g.nodes);
  for (uint32_t u = 0; u < g.nodes; ++u) live[u] = {adj[u].begin(), adj[u].end()};
  std::vector<uint8_t> removed(g.nodes, 0);
  DegeneracyResult res;
  res.elimination_order.reserve(g.nodes);
  for (size_t step = 0; step < g.nodes; ++step) {
    uint32_t best = UINT32_MAX;
    size_t best_deg = SIZE_MAX;
    for (uint32_t u = 0; u < g.nodes; ++u)
      if (!removed[u] && live[u].size() < best_deg) {
        best = u;
        best_deg = live[u].size();
      }
    res.degeneracy = std::max<uint32_t>(res.degeneracy, static_cast<uint32_t>(best_deg));
    res.elimination_order.push_back(best);
    removed[best] = 1;
    for (uint32_t v : live[best]) live[v].erase(best);
    live[best].clear();
  }
  return res;
}

std::vector<std::array<uint32_t, 3>> triangles_via_degeneracy(const SparseGraph& g) {
  auto order = degeneracy(g).elimination_order;
  std::vector<uint32_t> pos(g.nodes);
  for (uint32_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  auto adj = adjacency(g);
  std::vector<std::set<uint32_t>> adjset(g.nodes);
  for (uint32_t u = 0; u < g.nodes; ++u) adjset[u] = {adj[u].begin(), adj[u].end()};
  std::vector<std::array<uint32_t, 3>> out;
  for (uint32_t u = 0; u < g.nodes; ++u) {
    std::vector<uint32_t> later;
    for (uint32_t v : adj[u])
      if (pos[v] > pos[u]) later.push_back(v);
    for (size_t x = 0; x < later.size(); ++x)
      for (size_t y = x + 1; y < later.size(); ++y)
        if (adjset[later[x]].count(later[y])) {
          std::array<uint32_t, 3> t = {u, later[x], later[y]};
          std::sort(t.begin(), t.end());
          out.push_back(t);
        }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint8_t> ae_colorful_sparse_tri(const SparseGraph& g,
                                            const std::vector<uint32_t>& node_color,
                                            const std::vector<uint32_t>& gamma) {
  if (node_color.size() != g.nodes) throw ShapeMismatch("node_color size");
  std::set<uint32_t> want(gamma.begin(), gamma.end());
  auto tris = triangles_via_degeneracy(g);

  std::map<std::pair<uint32_t, uint32_t>, std::set<uint32_t>> edge_colors;
  for (const auto& t : tris)
    for (int e = 0; e < 3; ++e) {
      uint32_t a = t[e], b = t[(e + 1) % 3], w = t[(e + 2) % 3];
      auto key = std::minmax(a, b);
      if (want.count(node_color[w]))
        edge_colors[{key.first, key.second}].insert(node_color[w]);
    }

  std::vector<uint32_t> queries = g.query_edges;
  if (queries.empty()) {
    queries.resize(g.edges.size());
    for (uint32_t e = 0; e < g.edges.size(); ++e) queries[e] = e;
  }
  std::vector<uint8_t> out(queries.size(), 0);
  for (size_t qi = 0; qi < queries.size(); ++qi) {
    auto key = std::minmax(g.edges[queries[qi]].first, g.edges[queries[qi]].second);
    auto it = edge_colors.find({key.first, key.second});
    size_t got = it == edge_colors.end() ? 0 : it->second.size();
    out[qi] = got == want.size() ? 1 : 0;
  }
  return out;
}

std::vector<uint8_t> set_disjointness(const SetDisjointnessInstance& inst) {
  std::vector<std::set<uint32_t>> sets;
  sets.reserve(inst.family.size());
  for (const auto& f : inst.family) sets.emplace_back(f.begin(), f.end());
  std::vector<uint8_t> out(inst.queries.size(), 1);
  for (size_t q = 0; q < inst.queries.size(); ++q) {
    const auto& f1 = sets[inst.queries[q].first];
    const auto& f2 = sets[inst.queries[q].second];
    for (auto e : f1)
      if (f2.count(e)) {
        out[q] = 0;
        break;
      }
  }
  return out;
}

std::vector<uint32_t> distinct_eq_product(const std::vector<long long>& a, size_t n1,
                                          const std::vector<long long>& b, size_t n2,
                                          size_t k) {
  std::vector<uint32_t> out(n1 * n2, 0);
  std::set<long long> seen;
  for (size_t i = 0; i < n1; ++i)
    for (size_t j = 0; j < n2; ++j) {
      seen.clear();
      for (size_t t = 0; t < k; ++t)
        if (a[i * k + t] == b[t * n2 + j]) seen.insert(a[i * k + t]);
      out[i * n2 + j] = static_cast<uint32_t>(seen.size());
    }
  return out;
}

}  // namespace oracles
}  // namespace fgred
