#include "fgred/red_mono.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace fgred {
namespace red_mono {

OverlayResult overlay(const SparseBundle& bundle, uint64_t seed) {
  for (const auto& g : bundle.graphs)
    if (g.nodes > bundle.slots) throw TooManyNodes();

  OverlayResult out;
  out.graph.nodes = bundle.slots;
  out.row.lemma = "monotri";
  out.row.n = bundle.slots;
  out.row.graphs = bundle.graphs.size();

  std::mt19937_64 rng(seed ^ 0xb5297a4dull);
  for (uint32_t gi = 0; gi < bundle.graphs.size(); ++gi) {
    const SparseGraph& g = bundle.graphs[gi];
    std::vector<uint32_t> slots(bundle.slots);
    for (uint32_t s = 0; s < bundle.slots; ++s) slots[s] = s;
    for (size_t s = slots.size(); s > 1; --s) std::swap(slots[s - 1], slots[rng() % s]);
    std::vector<uint32_t> perm(slots.begin(), slots.begin() + g.nodes);
    for (uint32_t e = 0; e < g.edges.size(); ++e) {
      auto [u, v] = g.edges[e];
      out.graph.edges.push_back({perm[u], perm[v], gi});
      out.source_edge.emplace_back(gi, e);
    }
    out.permutation.push_back(std::move(perm));
  }
  out.row.edges = out.graph.edges.size();
  return out;
}

namespace {

struct TripartiteView {
  std::vector<uint32_t> a, b, c;                          // source node ids per role
  std::map<std::pair<uint32_t, uint32_t>, uint32_t> color;  // edge pair -> color
};

TripartiteView split_parts(const EdgeColoredMultigraph& g, const std::array<uint8_t, 3>& parts) {
  if (g.parts.size() != g.nodes) throw NotTripartite("graph needs part tags");
  TripartiteView view;
  for (uint32_t v = 0; v < g.nodes; ++v) {
    if (g.parts[v] == parts[0])
      view.a.push_back(v);
    else if (g.parts[v] == parts[1])
      view.b.push_back(v);
    else if (g.parts[v] == parts[2])
      view.c.push_back(v);
    else
      throw NotTripartite("node outside the three parts");
  }
  for (const auto& e : g.edges) {
    auto key = std::minmax(e.u, e.v);
    if (!view.color.emplace(std::make_pair(key.first, key.second), e.color).second)
      throw NotSimple("parallel edges are not representable here");
  }
  return view;
}

}  // namespace

MonoToAcpResult mono_to_acp_trico_light(const EdgeColoredMultigraph& g,
                                        const std::array<uint8_t, 3>& parts) {
  TripartiteView view = split_parts(g, parts);

  uint32_t max_color = 0;
  for (const auto& e : g.edges) max_color = std::max(max_color, e.color);
  uint32_t bits = 1;
  while ((1u << bits) <= max_color) ++bits;

  MonoToAcpResult out;
  out.bit_rounds = bits;
  out.row.lemma = "mono:ACPTC";
  out.row.n = g.nodes;
  out.row.p = 2 * bits;
  TriCoInstance& inst = out.instance;
  inst.variant = TriCoInstance::Variant::Light;
  inst.p = 2 * bits;

  // node ids per G_t: copies of A/B nodes and singletons for C nodes
  std::map<std::tuple<uint32_t, uint32_t, uint8_t>, uint32_t> id;  // (t, src, copy)
  auto node = [&](uint32_t t, uint32_t src, uint8_t copy, uint8_t part) {
    auto key = std::make_tuple(t, src, copy);
    auto it = id.find(key);
    if (it != id.end()) return it->second;
    uint32_t nid = static_cast<uint32_t>(inst.nodes.size());
    inst.nodes.push_back({src, part, t});
    id.emplace(key, nid);
    return nid;
  };
  auto edge_color = [&](uint32_t u, uint32_t v) -> const uint32_t* {
    auto key = std::minmax(u, v);
    auto it = view.color.find({key.first, key.second});
    return it == view.color.end() ? nullptr : &it->second;
  };

  for (uint32_t t = 0; t < bits; ++t) {
    for (uint32_t z : view.c) node(t, z, 0, 2);
    for (uint32_t v : view.a) {
      node(t, v, 0, 0);
      node(t, v, 1, 0);
    }
    for (uint32_t v : view.b) {
      node(t, v, 0, 1);
      node(t, v, 1, 1);
    }
    // C-incident pairs
    for (uint8_t side = 0; side < 2; ++side)
      for (uint32_t v : (side == 0 ? view.a : view.b))
        for (uint32_t z : view.c) {
          const uint32_t* col = edge_color(v, z);
          if (col) {
            uint8_t b = static_cast<uint8_t>((*col >> t) & 1);
            inst.edges.emplace_back(node(t, v, b, side), node(t, z, 0, 2));
          } else {
            // missing apex edge: connect both copies so every G_t keeps a
            // triangle for this triple and the decode never false-positives
            inst.edges.emplace_back(node(t, v, 0, side), node(t, z, 0, 2));
            inst.edges.emplace_back(node(t, v, 1, side), node(t, z, 0, 2));
          }
        }
    // A-B pairs: cross-copy edges always; equal-copy edge on the complement bit
    for (uint32_t v : view.a)
      for (uint32_t w : view.b) {
        inst.edges.emplace_back(node(t, v, 0, 0), node(t, w, 1, 1));
        inst.edges.emplace_back(node(t, v, 1, 0), node(t, w, 0, 1));
        const uint32_t* col = edge_color(v, w);
        if (col) {
          uint8_t b = static_cast<uint8_t>(1u - ((*col >> t) & 1));
          inst.edges.emplace_back(node(t, v, b, 0), node(t, w, b, 1));
        }
      }
  }

  for (uint32_t e = 0; e < g.edges.size(); ++e) {
    uint8_t pu = g.parts[g.edges[e].u], pv = g.parts[g.edges[e].v];
    if ((pu == parts[0] && pv == parts[1]) || (pu == parts[1] && pv == parts[0])) {
      out.query_edges.push_back(e);
      bool u_is_a = pu == parts[0];
      out.color_a.push_back(u_is_a ? g.edges[e].u : g.edges[e].v);
      out.color_b.push_back(u_is_a ? g.edges[e].v : g.edges[e].u);
    }
  }
  out.row.nodes = inst.nodes.size();
  out.row.edges = inst.edges.size();
  return out;
}

std::vector<uint8_t> decode_acp_answers(const MonoToAcpResult& red,
                                        const oracles::AcpResult& acp) {
  auto index_of = [](const std::vector<uint32_t>& colors, uint32_t c) {
    auto it = std::lower_bound(colors.begin(), colors.end(), c);
    if (it == colors.end() || *it != c) throw OracleProtocol("color missing from ACP output");
    return static_cast<size_t>(it - colors.begin());
  };
  std::vector<uint8_t> out(red.query_edges.size(), 0);
  for (size_t q = 0; q < red.query_edges.size(); ++q) {
    size_t a = index_of(acp.colors_a, red.color_a[q]);
    size_t b = index_of(acp.colors_b, red.color_b[q]);
    out[q] = acp.at(a, b) ? 0 : 1;  // some apex uncovered <=> monochromatic triangle
  }
  return out;
}

std::vector<long long> behrend_set(long long n) {
  if (n < 1) throw BadParams("behrend_set needs N >= 1");

  // candidate 1: digit cube {0,1}^m in base 3
  std::vector<long long> best = {0};
  {
    int m = 0;
    long long maxval = 0, pow3 = 1;
    while (maxval + pow3 <= n - 1) {
      maxval += pow3;
      pow3 *= 3;
      ++m;
    }
    std::vector<long long> cube;
    cube.reserve(1ull << m);
    for (long long mask = 0; mask < (1ll << m); ++mask) {
      long long value = 0, p = 1;
      for (int i = 0; i < m; ++i, p *= 3)
        if ((mask >> i) & 1) value += p;
      cube.push_back(value);
    }
    std::sort(cube.begin(), cube.end());
    if (cube.size() > best.size()) best = std::move(cube);
  }

  // candidate 2: fixed-norm shells over digits [0,k-1] in base 2k-1
  for (int m = 1; m <= 40; ++m) {
    for (long long k = 3;; ++k) {
      long long base = 2 * k - 1;
      // max value = (k-1) * (base^m - 1) / (base - 1) must be <= n-1
      __int128 maxval = 0, p = 1;
      bool fits = true;
      for (int i = 0; i < m; ++i) {
        maxval += static_cast<__int128>(k - 1) * p;
        p *= base;
        if (maxval > n - 1) {
          fits = false;
          break;
        }
      }
      if (!fits) break;
      long long rmax = m * (k - 1) * (k - 1);
      // ways[r]: digit vectors with squared norm r
      std::vector<long long> ways(static_cast<size_t>(rmax) + 1, 0);
      ways[0] = 1;
      for (int i = 0; i < m; ++i) {
        std::vector<long long> next(ways.size(), 0);
        for (size_t r = 0; r < ways.size(); ++r) {
          if (!ways[r]) continue;
          for (long long x = 0; x < k; ++x) {
            size_t nr = r + static_cast<size_t>(x * x);
            if (nr < next.size()) next[nr] += ways[r];
          }
        }
        ways = std::move(next);
      }
      long long best_r = 0;
      for (size_t r = 0; r < ways.size(); ++r)
        if (ways[r] > ways[static_cast<size_t>(best_r)]) best_r = static_cast<long long>(r);
      if (ways[static_cast<size_t>(best_r)] <= static_cast<long long>(best.size())) continue;

      std::vector<long long> shell;
      shell.reserve(static_cast<size_t>(ways[static_cast<size_t>(best_r)]));
      std::vector<long long> digits(m, 0);
      auto rec = [&](auto&& self, int pos, long long r) -> void {
        if (pos == m) {
          if (r == 0) {
            long long value = 0, pw = 1;
            for (int i = 0; i < m; ++i, pw *= base) value += digits[i] * pw;
            shell.push_back(value);
          }
          return;
        }
        for (long long x = 0; x < k && x * x <= r; ++x) {
          digits[pos] = x;
          self(self, pos + 1, r - x * x);
        }
      };
      rec(rec, 0, best_r);
      std::sort(shell.begin(), shell.end());
      if (shell.size() > best.size()) best = std::move(shell);
    }
    // stop once even k = 3 cannot fit m digits
    __int128 p = 1, maxval = 0;
    for (int i = 0; i < m; ++i) {
      maxval += 2 * p;
      p *= 5;
    }
    if (maxval > n - 1) break;
  }
  return best;
}

MonoToIntExactResult mono_to_int_exact_tri(const EdgeColoredMultigraph& g,
                                           const std::array<uint8_t, 3>& parts) {
  TripartiteView view = split_parts(g, parts);

  std::set<uint32_t> colors;
  for (const auto& e : g.edges) colors.insert(e.color);

  // smallest universe whose Salem-Spencer set covers the palette
  std::vector<long long> ss;
  long long universe = 4;
  for (;;) {
    ss = behrend_set(universe);
    if (ss.size() >= colors.size()) break;
    if (universe > (1ll << 21)) throw TooManyColors();
    universe *= 2;
  }

  MonoToIntExactResult out;
  out.row.lemma = "AEMonoT:IntExactT";
  out.row.n = g.nodes;
  out.row.d = colors.size();
  std::map<uint32_t, long long> f;
  size_t idx = 0;
  for (uint32_t c : colors) {
    f[c] = ss[idx++];
    out.color_value.push_back(f[c]);
  }

  std::map<uint32_t, uint32_t> ia, jb, kc;
  for (uint32_t v : view.a) ia[v] = static_cast<uint32_t>(ia.size());
  for (uint32_t v : view.b) jb[v] = static_cast<uint32_t>(jb.size());
  for (uint32_t v : view.c) kc[v] = static_cast<uint32_t>(kc.size());

  WeightedTripartiteGraph& wg = out.graph;
  wg.ni = std::max<size_t>(ia.size(), 1);
  wg.nj = std::max<size_t>(jb.size(), 1);
  wg.nk = std::max<size_t>(kc.size(), 1);
  wg.w_ij.assign(wg.ni * wg.nj, RestrictedReal::infinity());
  wg.w_ik.assign(wg.ni * wg.nk, RestrictedReal::infinity());
  wg.w_kj.assign(wg.nk * wg.nj, RestrictedReal::infinity());

  for (uint32_t e = 0; e < g.edges.size(); ++e) {
    const auto& ce = g.edges[e];
    uint32_t u = ce.u, v = ce.v;
    auto val = f.at(ce.color);
    auto is = [&](uint32_t node, uint8_t role) { return g.parts[node] == parts[role]; };
    if ((is(u, 0) && is(v, 1)) || (is(u, 1) && is(v, 0))) {
      uint32_t i = is(u, 0) ? u : v, j = is(u, 0) ? v : u;
      wg.w_ij[ia[i] * wg.nj + jb[j]] = RestrictedReal(-2 * val);
      out.query_edges.push_back(e);
      out.query_ij.emplace_back(ia[i], jb[j]);
    } else if ((is(u, 0) && is(v, 2)) || (is(u, 2) && is(v, 0))) {
      uint32_t i = is(u, 0) ? u : v, k = is(u, 0) ? v : u;
      wg.w_ik[ia[i] * wg.nk + kc[k]] = RestrictedReal(val);
    } else {
      uint32_t j = is(u, 1) ? u : v, k = is(u, 1) ? v : u;
      wg.w_kj[kc[k] * wg.nj + jb[j]] = RestrictedReal(val);
    }
  }
  out.row.nodes = wg.ni + wg.nj + wg.nk;
  out.row.edges = g.edges.size();
  return out;
}

}  // namespace red_mono
}  // namespace fgred
