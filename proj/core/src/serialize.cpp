#include <json.hpp>

#include "fgred/instances.hpp"

namespace fgred {

using nlohmann::json;

namespace {

json reals_to_json(const std::vector<RestrictedReal>& v) {
  json arr = json::array();
  for (const auto& r : v) arr.push_back(r.str());
  return arr;
}

std::vector<RestrictedReal> reals_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where, "expected array");
  std::vector<RestrictedReal> out;
  out.reserve(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string())
      throw ParseError(where + "[" + std::to_string(i) + "]", "expected string");
    auto r = RestrictedReal::parse(arr[i].get<std::string>());
    if (!r) throw ParseError(where + "[" + std::to_string(i) + "]", "bad rational");
    out.push_back(*r);
  }
  return out;
}

json edges_to_json(const std::vector<std::pair<uint32_t, uint32_t>>& edges) {
  json arr = json::array();
  for (auto [u, v] : edges) arr.push_back(json::array({u, v}));
  return arr;
}

std::vector<std::pair<uint32_t, uint32_t>> edges_from_json(const json& arr,
                                                           const std::string& where) {
  if (!arr.is_array()) throw ParseError(where, "expected array");
  std::vector<std::pair<uint32_t, uint32_t>> out;
  out.reserve(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_array() || arr[i].size() != 2)
      throw ParseError(where + "[" + std::to_string(i) + "]", "expected [u,v]");
    out.emplace_back(arr[i][0].get<uint32_t>(), arr[i][1].get<uint32_t>());
  }
  return out;
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(key, "missing field");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(key, e.what());
  }
}

json payload_to_json(const InstancePayload& p);

struct PayloadWriter {
  json operator()(const ThreeSumInstance& x) const {
    return {{"a", reals_to_json(x.a)}, {"b", reals_to_json(x.b)}, {"c", reals_to_json(x.c)}};
  }
  json operator()(const MinPlusInstance& x) const {
    return {{"n", x.n}, {"d", x.d}, {"a", reals_to_json(x.a)}, {"b", reals_to_json(x.b)}};
  }
  json operator()(const WeightedTripartiteGraph& x) const {
    return {{"ni", x.ni},
            {"nj", x.nj},
            {"nk", x.nk},
            {"w_ij", reals_to_json(x.w_ij)},
            {"w_ik", reals_to_json(x.w_ik)},
            {"w_kj", reals_to_json(x.w_kj)}};
  }
  json operator()(const OVInstance& x) const {
    return {{"n", x.n}, {"f", x.f}, {"bits", x.bits}};
  }
  json operator()(const SparseGraph& x) const {
    json j = {{"nodes", x.nodes}, {"edges", edges_to_json(x.edges)}};
    if (!x.parts.empty()) j["parts"] = x.parts;
    if (!x.query_edges.empty()) j["query_edges"] = x.query_edges;
    if (!x.multiplicity.empty()) j["multiplicity"] = x.multiplicity;
    return j;
  }
  json operator()(const EdgeColoredMultigraph& x) const {
    json edges = json::array();
    for (const auto& e : x.edges) edges.push_back(json::array({e.u, e.v, e.color}));
    json j = {{"nodes", x.nodes}, {"edges", edges}};
    if (!x.parts.empty()) j["parts"] = x.parts;
    return j;
  }
  json operator()(const ColorfulBmmInstance& x) const {
    json j = {{"n1", x.n1}, {"n2", x.n2},     {"k", x.k},
              {"a", x.a},   {"b", x.b},       {"color", x.color},
              {"gamma", x.gamma}};
    if (x.pad_color) j["pad_color"] = *x.pad_color;
    return j;
  }
  json operator()(const TriCoInstance& x) const {
    static const char* names[] = {"general", "tripartite", "light", "star2"};
    json nodes = json::array();
    for (const auto& n : x.nodes)
      nodes.push_back(json::array({n.color, n.part, n.component}));
    return {{"variant", names[static_cast<int>(x.variant)]},
            {"p", x.p},
            {"t", x.t},
            {"nodes", nodes},
            {"edges", edges_to_json(x.edges)}};
  }
  json operator()(const SetDisjointnessInstance& x) const {
    return {{"universe", x.universe}, {"family", x.family}, {"queries", edges_to_json(x.queries)}};
  }
  json operator()(const StringPair& x) const {
    return {{"alphabet", x.alphabet}, {"text", x.text}, {"pattern", x.pattern}};
  }
  json operator()(const SparseBundle& x) const {
    json graphs = json::array();
    for (const auto& g : x.graphs) graphs.push_back(payload_to_json(g));
    return {{"slots", x.slots}, {"graphs", graphs}};
  }
};

json payload_to_json(const InstancePayload& p) { return std::visit(PayloadWriter{}, p); }

json params_of(const InstancePayload& p) {
  struct V {
    json operator()(const ThreeSumInstance& x) const {
      return {{"n", x.a.size()}, {"nhat", x.c.size()}};
    }
    json operator()(const MinPlusInstance& x) const { return {{"n", x.n}, {"d", x.d}}; }
    json operator()(const WeightedTripartiteGraph& x) const {
      return {{"ni", x.ni}, {"nj", x.nj}, {"nk", x.nk}};
    }
    json operator()(const OVInstance& x) const { return {{"n", x.n}, {"f", x.f}}; }
    json operator()(const SparseGraph& x) const {
      return {{"nodes", x.nodes}, {"m", x.edges.size()}};
    }
    json operator()(const EdgeColoredMultigraph& x) const {
      return {{"nodes", x.nodes}, {"m", x.edges.size()}};
    }
    json operator()(const ColorfulBmmInstance& x) const {
      return {{"n1", x.n1}, {"n2", x.n2}, {"k", x.k}, {"colors", x.gamma.size()}};
    }
    json operator()(const TriCoInstance& x) const {
      return {{"nodes", x.nodes.size()}, {"m", x.edges.size()}};
    }
    json operator()(const SetDisjointnessInstance& x) const {
      return {{"universe", x.universe}, {"sets", x.family.size()}, {"q", x.queries.size()}};
    }
    json operator()(const StringPair& x) const {
      return {{"N", x.text.size()}, {"M", x.pattern.size()}, {"alphabet", x.alphabet}};
    }
    json operator()(const SparseBundle& x) const {
      return {{"slots", x.slots}, {"count", x.graphs.size()}};
    }
  };
  return std::visit(V{}, p);
}

SparseGraph sparse_from_json(const json& j) {
  SparseGraph g;
  g.nodes = field<size_t>(j, "nodes");
  g.edges = edges_from_json(j.at("edges"), "edges");
  if (j.contains("parts")) g.parts = field<std::vector<uint8_t>>(j, "parts");
  if (j.contains("query_edges"))
    g.query_edges = field<std::vector<uint32_t>>(j, "query_edges");
  if (j.contains("multiplicity"))
    g.multiplicity = field<std::vector<uint32_t>>(j, "multiplicity");
  return g;
}

InstancePayload payload_from_json(const std::string& kind, const json& j) {
  if (kind == "3sum") {
    ThreeSumInstance x;
    x.a = reals_from_json(j.at("a"), "a");
    x.b = reals_from_json(j.at("b"), "b");
    x.c = reals_from_json(j.at("c"), "c");
    return x;
  }
  if (kind == "minplus") {
    MinPlusInstance x;
    x.n = field<size_t>(j, "n");
    x.d = field<size_t>(j, "d");
    x.a = reals_from_json(j.at("a"), "a");
    x.b = reals_from_json(j.at("b"), "b");
    return x;
  }
  if (kind == "exacttri") {
    WeightedTripartiteGraph x;
    x.ni = field<size_t>(j, "ni");
    x.nj = field<size_t>(j, "nj");
    x.nk = field<size_t>(j, "nk");
    x.w_ij = reals_from_json(j.at("w_ij"), "w_ij");
    x.w_ik = reals_from_json(j.at("w_ik"), "w_ik");
    x.w_kj = reals_from_json(j.at("w_kj"), "w_kj");
    return x;
  }
  if (kind == "ov") {
    OVInstance x;
    x.n = field<size_t>(j, "n");
    x.f = field<size_t>(j, "f");
    x.bits = field<std::vector<uint8_t>>(j, "bits");
    return x;
  }
  if (kind == "sparse") return sparse_from_json(j);
  if (kind == "mono") {
    EdgeColoredMultigraph x;
    x.nodes = field<size_t>(j, "nodes");
    const json& edges = j.at("edges");
    for (size_t i = 0; i < edges.size(); ++i) {
      if (!edges[i].is_array() || edges[i].size() != 3)
        throw ParseError("edges[" + std::to_string(i) + "]", "expected [u,v,color]");
      x.edges.push_back(
          {edges[i][0].get<uint32_t>(), edges[i][1].get<uint32_t>(), edges[i][2].get<uint32_t>()});
    }
    if (j.contains("parts")) x.parts = field<std::vector<uint8_t>>(j, "parts");
    return x;
  }
  if (kind == "cbmm") {
    ColorfulBmmInstance x;
    x.n1 = field<size_t>(j, "n1");
    x.n2 = field<size_t>(j, "n2");
    x.k = field<size_t>(j, "k");
    x.a = field<std::vector<uint8_t>>(j, "a");
    x.b = field<std::vector<uint8_t>>(j, "b");
    x.color = field<std::vector<uint32_t>>(j, "color");
    x.gamma = field<std::vector<uint32_t>>(j, "gamma");
    if (j.contains("pad_color")) x.pad_color = field<uint32_t>(j, "pad_color");
    return x;
  }
  if (kind == "trico") {
    TriCoInstance x;
    std::string v = field<std::string>(j, "variant");
    if (v == "general")
      x.variant = TriCoInstance::Variant::General;
    else if (v == "tripartite")
      x.variant = TriCoInstance::Variant::Tripartite;
    else if (v == "light")
      x.variant = TriCoInstance::Variant::Light;
    else if (v == "star2")
      x.variant = TriCoInstance::Variant::Star2;
    else
      throw ParseError("variant", "unknown variant " + v);
    x.p = field<uint32_t>(j, "p");
    x.t = field<uint32_t>(j, "t");
    const json& nodes = j.at("nodes");
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].is_array() || nodes[i].size() != 3)
        throw ParseError("nodes[" + std::to_string(i) + "]", "expected [color,part,component]");
      x.nodes.push_back({nodes[i][0].get<uint32_t>(),
                         static_cast<uint8_t>(nodes[i][1].get<uint32_t>()),
                         nodes[i][2].get<uint32_t>()});
    }
    x.edges = edges_from_json(j.at("edges"), "edges");
    return x;
  }
  if (kind == "setdisj") {
    SetDisjointnessInstance x;
    x.universe = field<size_t>(j, "universe");
    x.family = field<std::vector<std::vector<uint32_t>>>(j, "family");
    x.queries = edges_from_json(j.at("queries"), "queries");
    return x;
  }
  if (kind == "strings") {
    StringPair x;
    x.alphabet = field<uint32_t>(j, "alphabet");
    x.text = field<std::vector<int32_t>>(j, "text");
    x.pattern = field<std::vector<int32_t>>(j, "pattern");
    return x;
  }
  if (kind == "sparse-bundle") {
    SparseBundle x;
    x.slots = field<size_t>(j, "slots");
    const json& graphs = j.at("graphs");
    if (!graphs.is_array()) throw ParseError("graphs", "expected array");
    for (const auto& g : graphs) x.graphs.push_back(sparse_from_json(g));
    return x;
  }
  throw ParseError("kind", "unknown instance kind " + kind);
}

}  // namespace

std::string serialize(const Instance& inst) {
  json j;
  j["kind"] = inst.kind;
  j["params"] = params_of(inst.payload);
  j["payload"] = payload_to_json(inst.payload);
  j["provenance"] = {{"seed", inst.prov.seed},
                     {"source", inst.prov.source},
                     {"pipeline", inst.prov.pipeline},
                     {"lemma", inst.prov.lemma}};
  return j.dump(2) + "\n";
}

Instance deserialize(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), e.what());
  }
  Instance inst;
  inst.kind = field<std::string>(j, "kind");
  if (!j.contains("payload")) throw ParseError("payload", "missing field");
  inst.payload = payload_from_json(inst.kind, j.at("payload"));
  if (j.contains("provenance")) {
    const json& p = j.at("provenance");
    inst.prov.seed = p.value("seed", 0ull);
    inst.prov.source = p.value("source", "");
    inst.prov.pipeline = p.value("pipeline", "");
    inst.prov.lemma = p.value("lemma", "");
  }
  return inst;
}

bool instances_equal(const Instance& a, const Instance& b) {
  if (a.kind != b.kind) return false;
  return payload_to_json(a.payload) == payload_to_json(b.payload);
}

}  // namespace fgred
