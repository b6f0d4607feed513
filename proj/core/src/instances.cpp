#include "fgred/instances.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fgred {

namespace {

std::optional<Violation> check_real_vector(const std::vector<RestrictedReal>& v,
                                           const char* field, size_t expect) {
  if (v.size() != expect)
    return Violation{field, "expected " + std::to_string(expect) + " entries, got " +
                                std::to_string(v.size())};
  return std::nullopt;
}

std::optional<Violation> check_edges(size_t nodes,
                                     const std::vector<std::pair<uint32_t, uint32_t>>& edges,
                                     bool forbid_duplicates) {
  std::set<std::pair<uint32_t, uint32_t>> seen;
  for (size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    if (u >= nodes || v >= nodes)
      return Violation{"edges[" + std::to_string(e) + "]", "endpoint out of range"};
    if (u == v) return Violation{"edges[" + std::to_string(e) + "]", "self-loop"};
    if (forbid_duplicates) {
      auto key = std::minmax(u, v);
      if (!seen.insert({key.first, key.second}).second)
        return Violation{"edges[" + std::to_string(e) + "]", "duplicate edge"};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> validate(const ThreeSumInstance& x) {
  if (x.a.size() != x.b.size())
    return Violation{"b", "A and B must have equal size"};
  if (x.c.size() > x.a.size())
    return Violation{"c", "nhat must be <= n"};
  if (x.a.empty()) return Violation{"a", "empty set"};
  for (const auto* s : {&x.a, &x.b, &x.c})
    for (const auto& v : *s)
      if (v.is_infinite()) return Violation{"values", "3SUM values must be finite"};
  return std::nullopt;
}

std::optional<Violation> validate(const MinPlusInstance& x) {
  if (x.n == 0 || x.d == 0) return Violation{"n", "empty matrix"};
  if (x.d > x.n) return Violation{"d", "d must be <= n"};
  if (auto v = check_real_vector(x.a, "a", x.n * x.d)) return v;
  if (auto v = check_real_vector(x.b, "b", x.d * x.n)) return v;
  return std::nullopt;
}

std::optional<Violation> validate(const WeightedTripartiteGraph& x) {
  if (x.ni == 0 || x.nj == 0 || x.nk == 0) return Violation{"parts", "empty part"};
  if (auto v = check_real_vector(x.w_ij, "w_ij", x.ni * x.nj)) return v;
  if (auto v = check_real_vector(x.w_ik, "w_ik", x.ni * x.nk)) return v;
  if (auto v = check_real_vector(x.w_kj, "w_kj", x.nk * x.nj)) return v;
  return std::nullopt;
}

std::optional<Violation> validate(const OVInstance& x) {
  if (x.n == 0 || x.f == 0) return Violation{"n", "empty instance"};
  if (x.bits.size() != x.n * x.f) return Violation{"vectors", "bit matrix shape mismatch"};
  for (auto b : x.bits)
    if (b > 1) return Violation{"vectors", "entries must be 0/1"};
  return std::nullopt;
}

std::optional<Violation> validate(const SparseGraph& x) {
  if (auto v = check_edges(x.nodes, x.edges, /*forbid_duplicates=*/true)) return v;
  if (!x.parts.empty()) {
    if (x.parts.size() != x.nodes) return Violation{"parts", "size mismatch"};
    for (auto p : x.parts)
      if (p > 2) return Violation{"parts", "part tag must be 0/1/2"};
  }
  for (auto q : x.query_edges)
    if (q >= x.edges.size()) return Violation{"query_edges", "index out of range"};
  if (!x.multiplicity.empty() && x.multiplicity.size() != x.edges.size())
    return Violation{"multiplicity", "size mismatch"};
  for (auto m : x.multiplicity)
    if (m == 0) return Violation{"multiplicity", "zero multiplicity"};
  return std::nullopt;
}

std::optional<Violation> validate(const EdgeColoredMultigraph& x) {
  std::set<std::tuple<uint32_t, uint32_t, uint32_t>> seen;
  for (size_t e = 0; e < x.edges.size(); ++e) {
    const auto& ce = x.edges[e];
    if (ce.u >= x.nodes || ce.v >= x.nodes)
      return Violation{"edges[" + std::to_string(e) + "]", "endpoint out of range"};
    if (ce.u == ce.v) return Violation{"edges[" + std::to_string(e) + "]", "self-loop"};
    auto key = std::minmax(ce.u, ce.v);
    if (!seen.insert({key.first, key.second, ce.color}).second)
      return Violation{"edges[" + std::to_string(e) + "]",
                       "duplicate (u,v,color) triple"};
  }
  if (!x.parts.empty()) {
    if (x.parts.size() != x.nodes) return Violation{"parts", "size mismatch"};
    for (auto p : x.parts)
      if (p > 2) return Violation{"parts", "part tag must be 0/1/2"};
  }
  return std::nullopt;
}

std::optional<Violation> validate(const ColorfulBmmInstance& x) {
  if (x.a.size() != x.n1 * x.k) return Violation{"a", "shape mismatch"};
  if (x.b.size() != x.k * x.n2) return Violation{"b", "shape mismatch"};
  if (x.color.size() != x.k) return Violation{"color", "every inner index needs a color"};
  std::set<uint32_t> image(x.color.begin(), x.color.end());
  if (x.pad_color) image.erase(*x.pad_color);
  std::set<uint32_t> gamma(x.gamma.begin(), x.gamma.end());
  if (gamma.size() != x.gamma.size()) return Violation{"gamma", "duplicate colors"};
  if (gamma != image)
    return Violation{"gamma", "gamma must equal the image of the color map"};
  if (x.pad_color && gamma.count(*x.pad_color))
    return Violation{"pad_color", "padding color cannot appear in gamma"};
  return std::nullopt;
}

namespace {

// Shared structural checks for Tri-Co* with a multiplicity parameter; star2
// is exactly the p=1 shape.
std::optional<Violation> tri_co_star_check(const TriCoInstance& x, uint32_t p) {
  std::map<std::pair<uint32_t, uint32_t>, uint32_t> per_component_color;
  for (size_t i = 0; i < x.nodes.size(); ++i) {
    auto key = std::make_pair(x.nodes[i].component, x.nodes[i].color);
    if (++per_component_color[key] > p)
      return Violation{"nodes[" + std::to_string(i) + "]",
                       "more than " + std::to_string(p) + " nodes of one color in a component"};
  }
  for (size_t e = 0; e < x.edges.size(); ++e) {
    auto [u, v] = x.edges[e];
    if (x.nodes[u].component != x.nodes[v].component)
      return Violation{"edges[" + std::to_string(e) + "]", "cross-component edge"};
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> validate(const TriCoInstance& x) {
  if (auto v = check_edges(x.nodes.size(), x.edges, /*forbid_duplicates=*/true)) return v;
  bool tripartite = x.variant != TriCoInstance::Variant::General;
  if (tripartite) {
    std::set<uint32_t> colors_by_part[3];
    for (size_t i = 0; i < x.nodes.size(); ++i) {
      if (x.nodes[i].part > 2)
        return Violation{"nodes[" + std::to_string(i) + "]", "missing part tag"};
      colors_by_part[x.nodes[i].part].insert(x.nodes[i].color);
    }
    for (int p1 = 0; p1 < 3; ++p1)
      for (int p2 = p1 + 1; p2 < 3; ++p2)
        for (auto c : colors_by_part[p1])
          if (colors_by_part[p2].count(c))
            return Violation{"colors", "color sets of parts must be disjoint"};
    for (size_t e = 0; e < x.edges.size(); ++e) {
      auto [u, v] = x.edges[e];
      if (x.nodes[u].part == x.nodes[v].part)
        return Violation{"edges[" + std::to_string(e) + "]", "intra-part edge"};
    }
  }
  if (x.variant == TriCoInstance::Variant::Light) {
    if (x.p == 0) return Violation{"p", "light variant needs p >= 1"};
    std::map<uint32_t, uint32_t> freq;
    for (size_t i = 0; i < x.nodes.size(); ++i)
      if (++freq[x.nodes[i].color] > x.p)
        return Violation{"nodes[" + std::to_string(i) + "]", "color multiplicity exceeds p"};
  }
  if (x.variant == TriCoInstance::Variant::Star2) {
    if (x.t == 0) return Violation{"t", "star2 variant needs t >= 1"};
    for (size_t i = 0; i < x.nodes.size(); ++i)
      if (x.nodes[i].component >= x.t)
        return Violation{"nodes[" + std::to_string(i) + "]", "component index out of range"};
    if (auto v = tri_co_star_check(x, 1)) return v;
  }
  return std::nullopt;
}

std::optional<Violation> validate(const SetDisjointnessInstance& x) {
  for (size_t s = 0; s < x.family.size(); ++s)
    for (auto e : x.family[s])
      if (e >= x.universe)
        return Violation{"family[" + std::to_string(s) + "]", "element outside universe"};
  for (size_t q = 0; q < x.queries.size(); ++q)
    if (x.queries[q].first >= x.family.size() || x.queries[q].second >= x.family.size())
      return Violation{"queries[" + std::to_string(q) + "]", "index outside family"};
  return std::nullopt;
}

std::optional<Violation> validate(const StringPair& x) {
  if (x.pattern.size() > x.text.size())
    return Violation{"pattern", "pattern longer than text"};
  auto ok = [&](int32_t s) {
    return (s >= 0 && static_cast<uint32_t>(s) < x.alphabet) || s == StringPair::kBang ||
           s == StringPair::kHash || s == StringPair::kDollar;
  };
  for (auto s : x.text)
    if (!ok(s)) return Violation{"text", "symbol outside alphabet"};
  for (auto s : x.pattern)
    if (!ok(s)) return Violation{"pattern", "symbol outside alphabet"};
  return std::nullopt;
}

std::optional<Violation> validate(const SparseBundle& x) {
  for (size_t g = 0; g < x.graphs.size(); ++g) {
    if (x.graphs[g].nodes > x.slots)
      return Violation{"graphs[" + std::to_string(g) + "]", "more nodes than slots"};
    if (auto v = validate(x.graphs[g]))
      return Violation{"graphs[" + std::to_string(g) + "]." + v->field, v->message};
  }
  return std::nullopt;
}

std::optional<Violation> validate(const Instance& inst) {
  return std::visit([](const auto& payload) { return validate(payload); }, inst.payload);
}

}  // namespace fgred
