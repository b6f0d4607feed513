#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "fgred/instances.hpp"

namespace fgred {

using nlohmann::json;

namespace {

// Thin wrapper so all generators draw deterministically from one stream.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed ^ 0x9e3779b97f4a7c15ull) {}
  uint64_t next() { return eng(); }
  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
  bool chance(double p) { return (next() >> 11) * 0x1.0p-53 < p; }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[next() % i]);
  }
};

class Params {
 public:
  Params(const std::string& text, std::initializer_list<const char*> known) {
    try {
      j_ = text.empty() ? json::object() : json::parse(text);
    } catch (const json::parse_error& e) {
      throw BadParams(std::string("bad params json: ") + e.what());
    }
    if (!j_.is_object()) throw BadParams("params must be a JSON object");
    for (auto& [key, _] : j_.items())
      if (std::find_if(known.begin(), known.end(),
                       [&](const char* k) { return key == k; }) == known.end())
        throw BadParams("unknown param: " + key);
  }
  long long geti(const char* key, long long def) const {
    return j_.contains(key) ? j_.at(key).get<long long>() : def;
  }
  double getf(const char* key, double def) const {
    return j_.contains(key) ? j_.at(key).get<double>() : def;
  }
  bool getb(const char* key, bool def) const {
    return j_.contains(key) ? j_.at(key).get<bool>() : def;
  }

 private:
  json j_;
};

std::vector<RestrictedReal> random_reals(Rng& rng, size_t count, long long range,
                                         double inf_prob) {
  std::vector<RestrictedReal> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    if (inf_prob > 0 && rng.chance(inf_prob))
      out.push_back(RestrictedReal::infinity());
    else
      out.push_back(RestrictedReal(rng.range(-range, range)));
  }
  return out;
}

ThreeSumInstance gen_3sum(const Params& p, Rng& rng) {
  size_t n = static_cast<size_t>(p.geti("n", 8));
  size_t nhat = static_cast<size_t>(p.geti("nhat", static_cast<long long>(n)));
  long long range = p.geti("range", 4 * static_cast<long long>(n) * static_cast<long long>(n));
  bool planted = p.getb("planted", false);
  if (n < 1 || nhat < 1 || nhat > n) throw BadParams("need 1 <= nhat <= n");
  ThreeSumInstance x;
  x.a = random_reals(rng, n, range, 0);
  x.b = random_reals(rng, n, range, 0);
  x.c = random_reals(rng, nhat, range, 0);
  if (planted) {
    size_t i = rng.next() % n, j = rng.next() % n, k = rng.next() % nhat;
    x.c[k] = -(x.a[i] + x.b[j]);
  }
  return x;
}

ThreeSumInstance gen_3sum_symmetric(const Params& p, Rng& rng) {
  size_t n = static_cast<size_t>(p.geti("n", 12));
  long long range = p.geti("range", 4 * static_cast<long long>(n) * static_cast<long long>(n));
  bool planted = p.getb("planted", false);
  if (n < 1) throw BadParams("need n >= 1");
  ThreeSumInstance x;
  x.a = random_reals(rng, n, range, 0);
  if (planted && n >= 3) {
    size_t i = rng.next() % n, j = rng.next() % n;
    size_t k = rng.next() % n;
    while (k == i || k == j) k = rng.next() % n;
    x.a[k] = -(x.a[i] + x.a[j]);
  }
  x.b = x.a;
  x.c = x.a;
  return x;
}

MinPlusInstance gen_minplus(const Params& p, Rng& rng) {
  MinPlusInstance x;
  x.n = static_cast<size_t>(p.geti("n", 8));
  x.d = static_cast<size_t>(p.geti("d", 2));
  long long range = p.geti("range", 4 * static_cast<long long>(x.n));
  double inf_prob = p.getf("inf_prob", 0.0);
  if (x.n < 1 || x.d < 1 || x.d > x.n) throw BadParams("need 1 <= d <= n");
  x.a = random_reals(rng, x.n * x.d, range, inf_prob);
  x.b = random_reals(rng, x.d * x.n, range, inf_prob);
  return x;
}

WeightedTripartiteGraph gen_exacttri(const Params& p, Rng& rng) {
  WeightedTripartiteGraph x;
  x.ni = static_cast<size_t>(p.geti("n", 6));
  x.nj = static_cast<size_t>(p.geti("nj", static_cast<long long>(x.ni)));
  x.nk = static_cast<size_t>(p.geti("nk", static_cast<long long>(x.ni)));
  long long range = p.geti("range", 4 * static_cast<long long>(x.ni));
  double inf_prob = p.getf("inf_prob", 0.1);
  bool planted = p.getb("planted", false);
  if (x.ni < 1 || x.nj < 1 || x.nk < 1) throw BadParams("need nonempty parts");
  x.w_ij = random_reals(rng, x.ni * x.nj, range, inf_prob);
  x.w_ik = random_reals(rng, x.ni * x.nk, range, inf_prob);
  x.w_kj = random_reals(rng, x.nk * x.nj, range, inf_prob);
  if (planted) {
    size_t i = rng.next() % x.ni, j = rng.next() % x.nj, k = rng.next() % x.nk;
    RestrictedReal wik(rng.range(-range, range)), wkj(rng.range(-range, range));
    x.w_ik[i * x.nk + k] = wik;
    x.w_kj[k * x.nj + j] = wkj;
    x.w_ij[i * x.nj + j] = -(wik + wkj);
  }
  return x;
}

OVInstance gen_ov(const Params& p, Rng& rng) {
  OVInstance x;
  x.n = static_cast<size_t>(p.geti("n", 8));
  x.f = static_cast<size_t>(p.geti("f", 4));
  double density = p.getf("density", 0.5);
  bool planted = p.getb("planted", false);
  if (x.n < 1 || x.f < 1) throw BadParams("need n, f >= 1");
  x.bits.assign(x.n * x.f, 0);
  for (auto& b : x.bits) b = rng.chance(density) ? 1 : 0;
  if (planted && x.n >= 2) {
    size_t u = rng.next() % x.n, v = rng.next() % x.n;
    while (v == u) v = rng.next() % x.n;
    for (size_t s = 0; s < x.f; ++s)
      if (x.bits[u * x.f + s] && x.bits[v * x.f + s]) x.bits[v * x.f + s] = 0;
  }
  return x;
}

SparseGraph gen_sparse(const Params& p, Rng& rng) {
  SparseGraph g;
  g.nodes = static_cast<size_t>(p.geti("nodes", 8));
  double p_edge = p.getf("p_edge", 0.35);
  bool tripartite = p.getb("tripartite", false);
  if (g.nodes < 1) throw BadParams("need nodes >= 1");
  if (tripartite) {
    g.parts.resize(g.nodes);
    for (size_t i = 0; i < g.nodes; ++i) g.parts[i] = static_cast<uint8_t>(i % 3);
  }
  for (uint32_t u = 0; u < g.nodes; ++u)
    for (uint32_t v = u + 1; v < g.nodes; ++v) {
      if (tripartite && g.parts[u] == g.parts[v]) continue;
      if (rng.chance(p_edge)) g.edges.emplace_back(u, v);
    }
  return g;
}

EdgeColoredMultigraph gen_mono(const Params& p, Rng& rng) {
  EdgeColoredMultigraph g;
  g.nodes = static_cast<size_t>(p.geti("nodes", 9));
  size_t colors = static_cast<size_t>(p.geti("colors", 3));
  double p_edge = p.getf("p_edge", 0.5);
  bool tripartite = p.getb("tripartite", true);
  bool simple_pairs = p.getb("simple_pairs", true);
  if (g.nodes < 1 || colors < 1) throw BadParams("need nodes, colors >= 1");
  if (tripartite) {
    g.parts.resize(g.nodes);
    for (size_t i = 0; i < g.nodes; ++i) g.parts[i] = static_cast<uint8_t>(i % 3);
  }
  for (uint32_t u = 0; u < g.nodes; ++u)
    for (uint32_t v = u + 1; v < g.nodes; ++v) {
      if (tripartite && g.parts[u] == g.parts[v]) continue;
      if (simple_pairs) {
        if (rng.chance(p_edge))
          g.edges.push_back({u, v, static_cast<uint32_t>(rng.next() % colors)});
      } else {
        for (uint32_t c = 0; c < colors; ++c)
          if (rng.chance(p_edge / static_cast<double>(colors) * 1.5))
            g.edges.push_back({u, v, c});
      }
    }
  return g;
}

ColorfulBmmInstance gen_cbmm(const Params& p, Rng& rng) {
  ColorfulBmmInstance x;
  x.n1 = static_cast<size_t>(p.geti("n1", p.geti("n", 4)));
  x.n2 = static_cast<size_t>(p.geti("n2", p.geti("n", 4)));
  size_t colors = static_cast<size_t>(p.geti("colors", 2));
  size_t per_color = static_cast<size_t>(p.geti("per_color", 2));
  double density = p.getf("density", 0.6);
  if (x.n1 < 1 || x.n2 < 1 || colors < 1 || per_color < 1)
    throw BadParams("need positive sizes");
  x.k = colors * per_color;
  x.a.assign(x.n1 * x.k, 0);
  x.b.assign(x.k * x.n2, 0);
  for (auto& v : x.a) v = rng.chance(density) ? 1 : 0;
  for (auto& v : x.b) v = rng.chance(density) ? 1 : 0;
  x.color.resize(x.k);
  for (size_t t = 0; t < x.k; ++t) x.color[t] = static_cast<uint32_t>(t % colors);
  x.gamma.resize(colors);
  std::iota(x.gamma.begin(), x.gamma.end(), 0u);
  return x;
}

TriCoInstance gen_trico(const Params& p, Rng& rng) {
  TriCoInstance x;
  std::string variant = "tripartite";
  long long vsel = p.geti("variant_id", -1);
  if (vsel >= 0 && vsel <= 3) {
    x.variant = static_cast<TriCoInstance::Variant>(vsel);
  }
  size_t colors_per_part = static_cast<size_t>(p.geti("colors", 2));
  uint32_t per_color = static_cast<uint32_t>(p.geti("p", 2));
  double p_edge = p.getf("p_edge", 0.5);
  uint32_t t = static_cast<uint32_t>(p.geti("t", 2));
  if (colors_per_part < 1 || per_color < 1) throw BadParams("need positive sizes");

  auto add_node = [&](uint32_t color, uint8_t part, uint32_t comp) {
    x.nodes.push_back({color, part, comp});
  };

  if (x.variant == TriCoInstance::Variant::Star2) {
    x.t = t;
    // one node per color per component, independently kept with prob 0.8
    for (uint32_t comp = 0; comp < t; ++comp)
      for (uint8_t part = 0; part < 3; ++part)
        for (uint32_t c = 0; c < colors_per_part; ++c)
          if (rng.chance(0.8)) add_node(part * static_cast<uint32_t>(colors_per_part) + c, part, comp);
    for (uint32_t u = 0; u < x.nodes.size(); ++u)
      for (uint32_t v = u + 1; v < x.nodes.size(); ++v) {
        if (x.nodes[u].component != x.nodes[v].component) continue;
        if (x.nodes[u].part == x.nodes[v].part) continue;
        if (rng.chance(p_edge)) x.edges.emplace_back(u, v);
      }
    return x;
  }

  bool general = x.variant == TriCoInstance::Variant::General;
  for (uint8_t part = 0; part < 3; ++part)
    for (uint32_t c = 0; c < colors_per_part; ++c) {
      uint32_t copies = 1 + static_cast<uint32_t>(rng.next() % per_color);
      for (uint32_t i = 0; i < copies; ++i) {
        uint32_t color = general ? c : part * static_cast<uint32_t>(colors_per_part) + c;
        add_node(color, general ? 255 : part, 0);
      }
    }
  for (uint32_t u = 0; u < x.nodes.size(); ++u)
    for (uint32_t v = u + 1; v < x.nodes.size(); ++v) {
      if (!general && x.nodes[u].part == x.nodes[v].part) continue;
      if (rng.chance(p_edge)) x.edges.emplace_back(u, v);
    }
  if (x.variant == TriCoInstance::Variant::Light) x.p = per_color;
  return x;
}

SetDisjointnessInstance gen_setdisj(const Params& p, Rng& rng) {
  SetDisjointnessInstance x;
  x.universe = static_cast<size_t>(p.geti("universe", 8));
  size_t sets = static_cast<size_t>(p.geti("sets", 4));
  size_t queries = static_cast<size_t>(p.geti("queries", 6));
  double density = p.getf("density", 0.3);
  if (x.universe < 1 || sets < 1) throw BadParams("need positive sizes");
  x.family.resize(sets);
  for (auto& s : x.family)
    for (uint32_t e = 0; e < x.universe; ++e)
      if (rng.chance(density)) s.push_back(e);
  for (size_t q = 0; q < queries; ++q)
    x.queries.emplace_back(static_cast<uint32_t>(rng.next() % sets),
                           static_cast<uint32_t>(rng.next() % sets));
  return x;
}

StringPair gen_strings(const Params& p, Rng& rng) {
  StringPair x;
  size_t n = static_cast<size_t>(p.geti("text_len", 24));
  size_t m = static_cast<size_t>(p.geti("pattern_len", 8));
  x.alphabet = static_cast<uint32_t>(p.geti("alphabet", 4));
  if (m > n || m < 1 || x.alphabet < 1) throw BadParams("need 1 <= M <= N");
  x.text.resize(n);
  x.pattern.resize(m);
  for (auto& s : x.text) s = static_cast<int32_t>(rng.next() % x.alphabet);
  for (auto& s : x.pattern) s = static_cast<int32_t>(rng.next() % x.alphabet);
  return x;
}

SparseBundle gen_bundle(const Params& p, Rng& rng) {
  SparseBundle x;
  x.slots = static_cast<size_t>(p.geti("slots", 8));
  size_t count = static_cast<size_t>(p.geti("count", 3));
  double p_edge = p.getf("p_edge", 0.35);
  if (x.slots < 1 || count < 1) throw BadParams("need positive sizes");
  for (size_t g = 0; g < count; ++g) {
    SparseGraph sg;
    sg.nodes = 1 + rng.next() % x.slots;
    for (uint32_t u = 0; u < sg.nodes; ++u)
      for (uint32_t v = u + 1; v < sg.nodes; ++v)
        if (rng.chance(p_edge)) sg.edges.emplace_back(u, v);
    x.graphs.push_back(std::move(sg));
  }
  return x;
}

}  // namespace

Instance generate(const std::string& kind, const std::string& params_json, uint64_t seed) {
  Rng rng(seed);
  Instance inst;
  inst.kind = kind;
  inst.prov.seed = seed;
  inst.prov.source = "gen";

  if (kind == "3sum") {
    Params p(params_json, {"n", "nhat", "range", "planted"});
    inst.payload = gen_3sum(p, rng);
  } else if (kind == "3sum-symmetric") {
    Params p(params_json, {"n", "range", "planted"});
    inst.payload = gen_3sum_symmetric(p, rng);
    inst.kind = "3sum";
  } else if (kind == "minplus") {
    Params p(params_json, {"n", "d", "range", "inf_prob"});
    inst.payload = gen_minplus(p, rng);
  } else if (kind == "exacttri") {
    Params p(params_json, {"n", "nj", "nk", "range", "inf_prob", "planted"});
    inst.payload = gen_exacttri(p, rng);
  } else if (kind == "ov") {
    Params p(params_json, {"n", "f", "density", "planted"});
    inst.payload = gen_ov(p, rng);
  } else if (kind == "sparse") {
    Params p(params_json, {"nodes", "p_edge", "tripartite"});
    inst.payload = gen_sparse(p, rng);
  } else if (kind == "mono") {
    Params p(params_json, {"nodes", "colors", "p_edge", "tripartite", "simple_pairs"});
    inst.payload = gen_mono(p, rng);
  } else if (kind == "cbmm") {
    Params p(params_json, {"n", "n1", "n2", "colors", "per_color", "density"});
    inst.payload = gen_cbmm(p, rng);
  } else if (kind == "trico") {
    Params p(params_json, {"variant_id", "colors", "p", "p_edge", "t"});
    inst.payload = gen_trico(p, rng);
  } else if (kind == "setdisj") {
    Params p(params_json, {"universe", "sets", "queries", "density"});
    inst.payload = gen_setdisj(p, rng);
  } else if (kind == "strings") {
    Params p(params_json, {"text_len", "pattern_len", "alphabet"});
    inst.payload = gen_strings(p, rng);
  } else if (kind == "sparse-bundle") {
    Params p(params_json, {"slots", "count", "p_edge"});
    inst.payload = gen_bundle(p, rng);
  } else {
    throw BadParams("unknown instance kind: " + kind);
  }

  if (auto v = validate(inst))
    throw BadParams("generator produced invalid instance: " + v->field + ": " + v->message);
  return inst;
}

}  // namespace fgred
