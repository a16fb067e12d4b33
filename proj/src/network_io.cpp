#include "spinnet/network_io.hpp"
#include "spinnet/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace spinnet {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw schema_error(where + ": " + what);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [k, v] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
      fail(where + "/" + k, "unknown key");
  }
}

const json& need(const json& obj, const std::string& where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing key \"") + key + "\"");
  return *it;
}

int as_int(const json& v, const std::string& where, int lo = 0) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  const auto x = v.get<long long>();
  if (x < lo || x > 1000000000) fail(where, "integer out of range");
  return static_cast<int>(x);
}

template <std::size_t N>
std::array<int, N> int_array(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != N) fail(where, "expected an array of " + std::to_string(N) + " integers");
  std::array<int, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = as_int(v[i], where + "/" + std::to_string(i));
  return out;
}

// list of {"id":..., key:[...]} entries, placed by id
template <std::size_t N>
std::vector<std::array<int, N>> id_list(const json& arr, const std::string& where, const char* key) {
  if (!arr.is_array()) fail(where, "expected an array");
  std::vector<std::array<int, N>> out(arr.size());
  std::vector<bool> seen(arr.size(), false);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string w = where + "/" + std::to_string(i);
    only_keys(arr[i], w, {"id", key});
    const int id = as_int(need(arr[i], w, "id"), w + "/id");
    if (id >= static_cast<int>(arr.size()) || seen[id]) fail(w + "/id", "ids must be 0..n-1 without repeats");
    seen[id] = true;
    out[id] = int_array<N>(need(arr[i], w, key), w + "/" + key);
  }
  return out;
}

int id_key(const std::string& k, const std::string& where, int count) {
  int id = -1;
  auto [p, ec] = std::from_chars(k.data(), k.data() + k.size(), id);
  if (ec != std::errc() || p != k.data() + k.size() || id < 0 || id >= count || std::to_string(id) != k)
    fail(where + "/" + k, "key is not an id in 0.." + std::to_string(count - 1));
  return id;
}

// {"id": value} covering every id exactly once
template <class T, class F>
std::vector<T> id_map(const json& obj, const std::string& where, int count, F&& read) {
  if (!obj.is_object()) fail(where, "expected an object");
  std::vector<T> out(count);
  std::vector<bool> seen(count, false);
  for (const auto& [k, v] : obj.items()) {
    const int id = id_key(k, where, count);
    seen[id] = true;
    out[id] = read(v, where + "/" + k);
  }
  for (int i = 0; i < count; ++i)
    if (!seen[i]) fail(where, "no entry for id " + std::to_string(i));
  return out;
}

int line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

} // namespace

NetworkFile parse_network(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw schema_error("line " + std::to_string(line_of(text, e.byte)) + ": malformed JSON: " + e.what());
  }
  only_keys(doc, "", {"vertices", "edges", "decoration", "trivial_components", "orientation", "gates"});

  NetworkSpec spec;
  for (const auto& r : id_list<3>(need(doc, "", "vertices"), "/vertices", "rotation"))
    spec.rotations.push_back({r.begin(), r.end()});
  for (const auto& e : id_list<2>(need(doc, "", "edges"), "/edges", "halfedges")) spec.edges.push_back(e);
  const int ne = static_cast<int>(spec.edges.size());
  spec.decoration = id_map<int>(need(doc, "", "decoration"), "/decoration", ne,
                                [](const json& v, const std::string& w) { return as_int(v, w); });
  if (auto it = doc.find("trivial_components"); it != doc.end()) {
    if (!it->is_array()) fail("/trivial_components", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i)
      spec.trivial_components.push_back(as_int((*it)[i], "/trivial_components/" + std::to_string(i)));
  }

  NetworkFile f;
  try {
    f.net = build_network(spec);
  } catch (const structure_error& e) {
    throw schema_error(std::string("malformed graph: ") + e.what());
  }

  if (auto it = doc.find("orientation"); it != doc.end()) {
    SmoothOrientation o;
    o.direction = id_map<std::array<HalfEdgeId, 2>>(*it, "/orientation", ne, [](const json& v, const std::string& w) {
      return int_array<2>(v, w);
    });
    for (EdgeId e = 0; e < ne; ++e) {
      auto h = f.net.halves(e);
      auto d = o.direction[e];
      if (!((d[0] == h[0] && d[1] == h[1]) || (d[0] == h[1] && d[1] == h[0])))
        fail("/orientation/" + std::to_string(e), "not the two half-edges of the edge");
    }
    if (!validate_smooth(f.net, o)) fail("/orientation", "orientation is not smooth");
    f.orientation = o;
  }
  if (auto it = doc.find("gates"); it != doc.end()) {
    if (!f.orientation) fail("/gates", "gates need an orientation");
    GateSignage g;
    g.gate = id_map<std::array<HalfEdgeId, 2>>(*it, "/gates", f.net.num_vertices(), [](const json& v, const std::string& w) {
      return int_array<2>(v, w);
    });
    for (VertexId v = 0; v < f.net.num_vertices(); ++v)
      for (HalfEdgeId h : g.gate[v])
        if (h >= f.net.num_half_edges() || f.net.vertex_of(h) != v)
          fail("/gates/" + std::to_string(v), "half-edge not at this vertex");
    if (!validate_gates(f.net, *f.orientation, g)) fail("/gates", "gates do not pair same-direction half-edges");
    f.gates = g;
  }
  return f;
}

std::string serialize_network(const NetworkFile& file) {
  const SpinNetwork& net = file.net;
  json doc;
  json vs = json::array();
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    auto r = net.rotation(v);
    vs.push_back({{"id", v}, {"rotation", {r[0], r[1], r[2]}}});
  }
  doc["vertices"] = vs;
  json es = json::array();
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    auto h = net.halves(e);
    es.push_back({{"id", e}, {"halfedges", {h[0], h[1]}}});
  }
  doc["edges"] = es;
  json dec = json::object();
  for (EdgeId e = 0; e < net.num_edges(); ++e) dec[std::to_string(e)] = net.decoration(e);
  doc["decoration"] = dec;
  doc["trivial_components"] = net.trivial_components();
  if (file.orientation) {
    json o = json::object();
    for (EdgeId e = 0; e < net.num_edges(); ++e) {
      auto d = file.orientation->direction[e];
      o[std::to_string(e)] = {d[0], d[1]};
    }
    doc["orientation"] = o;
  }
  if (file.gates) {
    json g = json::object();
    for (VertexId v = 0; v < net.num_vertices(); ++v) {
      auto p = file.gates->gate[v];
      g[std::to_string(v)] = {p[0], p[1]};
    }
    doc["gates"] = g;
  }
  return doc.dump(2) + "\n";
}

NetworkFile read_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw schema_error(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_network(ss.str());
  } catch (const schema_error& e) {
    throw schema_error(path + ": " + e.what());
  }
}

CgNetwork to_cg_network(const NetworkFile& file) {
  if (!file.orientation) return CgNetwork::canonical(file.net);
  GateSignage g = file.gates ? *file.gates : canonical_gate_signage(file.net, *file.orientation);
  return CgNetwork::from_spin_network(file.net, *file.orientation, g);
}

} // namespace spinnet
