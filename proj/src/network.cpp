#include "spinnet/network.hpp"
#include "spinnet/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace spinnet {

HalfEdgeId SpinNetwork::opposite(HalfEdgeId h) const {
  const auto& e = edges_[h_edge_[h]];
  return e[0] == h ? e[1] : e[0];
}

bool SpinNetwork::has_loop(VertexId v) const {
  for (HalfEdgeId h : rot_[v])
    if (is_loop(h_edge_[h])) return true;
  return false;
}

std::array<int, 3> SpinNetwork::vertex_decorations(VertexId v) const {
  const auto& r = rot_[v];
  return {half_decoration(r[0]), half_decoration(r[1]), half_decoration(r[2])};
}

NetworkSpec SpinNetwork::spec() const {
  NetworkSpec s;
  for (const auto& r : rot_) s.rotations.push_back({r[0], r[1], r[2]});
  s.edges = edges_;
  s.decoration = dec_;
  s.trivial_components = trivial_;
  return s;
}

SpinNetwork build_network(const NetworkSpec& spec) {
  const int ne = static_cast<int>(spec.edges.size());
  const int nh = 2 * ne;
  if (static_cast<int>(spec.decoration.size()) != ne)
    throw structure_error("decoration has " + std::to_string(spec.decoration.size()) +
                          " entries for " + std::to_string(ne) + " edges");
  SpinNetwork net;
  net.h_vertex_.assign(nh, -1);
  net.h_edge_.assign(nh, -1);
  net.h_slot_.assign(nh, -1);

  for (std::size_t v = 0; v < spec.rotations.size(); ++v) {
    const auto& r = spec.rotations[v];
    if (r.size() != 3)
      throw structure_error("vertex " + std::to_string(v) + " is not trivalent (" +
                            std::to_string(r.size()) + " half-edges)");
    for (int i = 0; i < 3; ++i) {
      HalfEdgeId h = r[i];
      if (h < 0 || h >= nh)
        throw structure_error("vertex " + std::to_string(v) + " references half-edge " +
                              std::to_string(h) + " which belongs to no edge");
      if (net.h_vertex_[h] != -1)
        throw structure_error("half-edge " + std::to_string(h) + " appears in two rotations");
      net.h_vertex_[h] = static_cast<VertexId>(v);
      net.h_slot_[h] = i;
    }
    net.rot_.push_back({r[0], r[1], r[2]});
  }
  for (int e = 0; e < ne; ++e) {
    for (HalfEdgeId h : spec.edges[e]) {
      if (h < 0 || h >= nh)
        throw structure_error("edge " + std::to_string(e) + " has out-of-range half-edge " +
                              std::to_string(h));
      if (net.h_edge_[h] != -1)
        throw structure_error("half-edge " + std::to_string(h) + " appears in two edges");
      net.h_edge_[h] = e;
    }
    if (spec.edges[e][0] == spec.edges[e][1])
      throw structure_error("edge " + std::to_string(e) + " uses the same half-edge twice");
    if (spec.decoration[e] < 0)
      throw structure_error("edge " + std::to_string(e) + " has a negative decoration");
  }
  for (HalfEdgeId h = 0; h < nh; ++h)
    if (net.h_vertex_[h] == -1)
      throw structure_error("dangling half-edge " + std::to_string(h) + " (no vertex)");
  for (int a : spec.trivial_components)
    if (a < 0) throw structure_error("trivial component with negative decoration");
  net.edges_ = spec.edges;
  net.dec_ = spec.decoration;
  net.trivial_ = spec.trivial_components;
  return net;
}

// --- admissibility -------------------------------------------------------

bool admissible_triple(int a, int b, int c) {
  return (a + b + c) % 2 == 0 && std::abs(a - b) <= c && c <= a + b;
}

AdmissibilityReport check_admissible(const SpinNetwork& net) {
  AdmissibilityReport rep;
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    auto t = net.vertex_decorations(v);
    // a loop contributes its decoration twice, which the plain triple already does
    if ((t[0] + t[1] + t[2]) % 2 != 0)
      rep.violations.push_back({v, t, AdmissibilityIssue::parity});
    if (!(std::abs(t[0] - t[1]) <= t[2] && t[2] <= t[0] + t[1]))
      rep.violations.push_back({v, t, AdmissibilityIssue::triangle});
  }
  rep.admissible = rep.violations.empty();
  return rep;
}

std::string describe(const AdmissibilityViolation& v) {
  std::ostringstream os;
  os << "vertex " << v.vertex << " (" << v.triple[0] << "," << v.triple[1] << "," << v.triple[2]
     << "): " << (v.issue == AdmissibilityIssue::parity ? "odd sum" : "triangle inequality fails");
  return os.str();
}

// --- derived networks ----------------------------------------------------

SpinNetwork flip_cyclic_order(const SpinNetwork& net, VertexId v) {
  auto s = net.spec();
  std::swap(s.rotations.at(v)[1], s.rotations.at(v)[2]);
  return build_network(s);
}

SpinNetwork scale_decoration(const SpinNetwork& net, int n) {
  if (n < 0) throw domain_error("scale factor must be nonnegative");
  auto s = net.spec();
  for (int& d : s.decoration) d *= n;
  for (int& d : s.trivial_components) d *= n;
  return build_network(s);
}

SpinNetwork with_decoration(const SpinNetwork& net, std::vector<int> decoration) {
  auto s = net.spec();
  s.decoration = std::move(decoration);
  return build_network(s);
}

SpinNetwork disjoint_union(const SpinNetwork& a, const SpinNetwork& b) {
  auto s = a.spec();
  auto t = b.spec();
  const int off = a.num_half_edges();
  for (auto r : t.rotations) {
    for (auto& h : r) h += off;
    s.rotations.push_back(r);
  }
  for (auto e : t.edges) s.edges.push_back({e[0] + off, e[1] + off});
  s.decoration.insert(s.decoration.end(), t.decoration.begin(), t.decoration.end());
  s.trivial_components.insert(s.trivial_components.end(), t.trivial_components.begin(),
                              t.trivial_components.end());
  return build_network(s);
}

SpinNetwork attach_lollipop(const SpinNetwork& net, EdgeId e, int loop_decoration,
                            int bridge_decoration) {
  auto s = net.spec();
  const int nh = net.num_half_edges();
  const auto [h0, h1] = net.halves(e);
  // e keeps h0 and gets a fresh partner on the new vertex w; a new edge runs w..h1
  const HalfEdgeId w_in = nh, w_out = nh + 1, w_stem = nh + 2;
  const HalfEdgeId l_stem = nh + 3, l_a = nh + 4, l_b = nh + 5;
  s.edges[e] = {h0, w_in};
  s.edges.push_back({w_out, h1});
  s.decoration.push_back(net.decoration(e));
  s.edges.push_back({w_stem, l_stem});
  s.decoration.push_back(bridge_decoration);
  s.edges.push_back({l_a, l_b});
  s.decoration.push_back(loop_decoration);
  s.rotations.push_back({w_in, w_stem, w_out});
  s.rotations.push_back({l_stem, l_a, l_b});
  return build_network(s);
}

// --- structure -----------------------------------------------------------

std::vector<EdgeId> find_bridges(const SpinNetwork& net) {
  const int nv = net.num_vertices();
  std::vector<int> disc(nv, -1), low(nv, 0);
  std::vector<EdgeId> bridges;
  int timer = 0;
  // iterative DFS; the parent is tracked by edge so parallel edges are handled
  struct Frame {
    VertexId v;
    EdgeId via;
    int next;
  };
  for (VertexId root = 0; root < nv; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      auto& f = stack.back();
      if (f.next < 3) {
        HalfEdgeId h = net.rotation(f.v)[f.next++];
        EdgeId e = net.edge_of(h);
        if (e == f.via || net.is_loop(e)) continue;
        VertexId w = net.vertex_of(net.opposite(h));
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, e, 0});
        } else {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          VertexId p = stack.back().v;
          low[p] = std::min(low[p], low[done.v]);
          if (low[done.v] > disc[p]) bridges.push_back(done.via);
        }
      }
    }
  }
  std::sort(bridges.begin(), bridges.end());
  return bridges;
}

std::vector<std::vector<VertexId>> connected_components(const SpinNetwork& net) {
  const int nv = net.num_vertices();
  std::vector<int> comp(nv, -1);
  std::vector<std::vector<VertexId>> out;
  for (VertexId s = 0; s < nv; ++s) {
    if (comp[s] != -1) continue;
    std::vector<VertexId> members{s}, stack{s};
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      for (HalfEdgeId h : net.rotation(v)) {
        VertexId w = net.vertex_of(net.opposite(h));
        if (comp[w] == -1) {
          comp[w] = comp[s];
          members.push_back(w);
          stack.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

SpinNetwork induced_subnetwork(const SpinNetwork& net, const std::vector<VertexId>& vertices) {
  std::vector<int> keep(net.num_vertices(), 0);
  for (VertexId v : vertices) keep.at(v) = 1;
  std::vector<EdgeId> edges;
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    bool a = keep[net.vertex_of(net.halves(e)[0])], b = keep[net.vertex_of(net.halves(e)[1])];
    if (a != b) throw structure_error("induced_subnetwork: vertex set cuts an edge");
    if (a) edges.push_back(e);
  }
  std::map<HalfEdgeId, HalfEdgeId> renum;
  NetworkSpec s;
  for (EdgeId e : edges) {
    auto [h0, h1] = net.halves(e);
    int base = static_cast<int>(renum.size());
    renum[h0] = base;
    renum[h1] = base + 1;
    s.edges.push_back({base, base + 1});
    s.decoration.push_back(net.decoration(e));
  }
  std::vector<VertexId> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  for (VertexId v : sorted) {
    const auto& r = net.rotation(v);
    s.rotations.push_back({renum.at(r[0]), renum.at(r[1]), renum.at(r[2])});
  }
  return build_network(s);
}

std::vector<SpinNetwork> split_components(const SpinNetwork& net) {
  std::vector<SpinNetwork> out;
  for (const auto& c : connected_components(net)) out.push_back(induced_subnetwork(net, c));
  for (int a : net.trivial_components()) out.push_back(make_trivial(a));
  return out;
}

int count_faces(const SpinNetwork& net) {
  // face boundary: leave along h, arrive at opposite(h), continue with the next half-edge
  const int nh = net.num_half_edges();
  std::vector<char> seen(nh, 0);
  int faces = 0;
  for (HalfEdgeId s = 0; s < nh; ++s) {
    if (seen[s]) continue;
    ++faces;
    HalfEdgeId h = s;
    while (!seen[h]) {
      seen[h] = 1;
      HalfEdgeId o = net.opposite(h);
      h = net.rotation(net.vertex_of(o))[(net.slot_of(o) + 1) % 3];
    }
  }
  return faces;
}

void for_each_admissible_decoration(const SpinNetwork& net, int max_gamma,
                                    const std::function<void(const std::vector<int>&)>& visit) {
  const int ne = net.num_edges();
  std::vector<int> dec(ne, 0);
  // depth-first over edges; prune as soon as every edge at a vertex is assigned
  std::vector<std::vector<VertexId>> closes(ne);
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    EdgeId last = -1;
    for (HalfEdgeId h : net.rotation(v)) last = std::max(last, net.edge_of(h));
    closes[last].push_back(v);
  }
  std::function<void(int)> rec = [&](int e) {
    if (e == ne) {
      visit(dec);
      return;
    }
    for (int g = 0; g <= max_gamma; ++g) {
      dec[e] = g;
      bool ok = true;
      for (VertexId v : closes[e]) {
        const auto& r = net.rotation(v);
        if (!admissible_triple(dec[net.edge_of(r[0])], dec[net.edge_of(r[1])],
                               dec[net.edge_of(r[2])])) {
          ok = false;
          break;
        }
      }
      if (ok) rec(e + 1);
    }
    dec[e] = 0;
  };
  rec(0);
}

// --- generators ----------------------------------------------------------

SpinNetwork make_theta(int a, int b, int c) {
  NetworkSpec s;
  s.edges = {{0, 1}, {2, 3}, {4, 5}};
  s.decoration = {a, b, c};
  // opposite cyclic orders of the edge labels at the two vertices: planar
  s.rotations = {{0, 2, 4}, {5, 3, 1}};
  return build_network(s);
}

SpinNetwork make_tetrahedron(const std::array<int, 6>& d) {
  // v0 in the middle, v1 v2 v3 counterclockwise around it.
  // edges: a=v0v1 b=v0v2 c=v0v3 d=v2v3 e=v1v3 f=v1v2; half-edge 2k at the first vertex
  NetworkSpec s;
  s.edges = {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {8, 9}, {10, 11}};
  s.decoration.assign(d.begin(), d.end());
  s.rotations = {
      {0, 2, 4},   // v0: a b c
      {10, 1, 8},  // v1: f a e
      {6, 3, 11},  // v2: d b f
      {9, 5, 7},   // v3: e c d
  };
  return build_network(s);
}

SpinNetwork make_drum(int s, const std::vector<int>& cycle, const std::vector<int>& rungs) {
  if (s < 1) throw domain_error("drum needs s >= 1");
  if (static_cast<int>(cycle.size()) != s || static_cast<int>(rungs.size()) != s)
    throw domain_error("drum needs s cycle and s rung decorations");
  NetworkSpec sp;
  // outer cycle edge i: o_i -> o_{i+1}, half-edges (2i, 2i+1)
  // inner cycle edge i: i_i -> i_{i+1}, half-edges (2s+2i, 2s+2i+1)
  // rung i: o_i -- i_i, half-edges (4s+2i, 4s+2i+1)
  for (int i = 0; i < s; ++i) sp.edges.push_back({2 * i, 2 * i + 1});
  for (int i = 0; i < s; ++i) sp.edges.push_back({2 * s + 2 * i, 2 * s + 2 * i + 1});
  for (int i = 0; i < s; ++i) sp.edges.push_back({4 * s + 2 * i, 4 * s + 2 * i + 1});
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < s; ++i) sp.decoration.push_back(cycle[i]);
  for (int i = 0; i < s; ++i) sp.decoration.push_back(rungs[i]);
  auto prev = [s](int i) { return (i + s - 1) % s; };
  for (int i = 0; i < s; ++i)  // outer: forward tangent, inward rung, backward tangent
    sp.rotations.push_back({2 * i, 4 * s + 2 * i, 2 * prev(i) + 1});
  for (int i = 0; i < s; ++i)  // inner: outward rung, forward tangent, backward tangent
    sp.rotations.push_back({4 * s + 2 * i + 1, 2 * s + 2 * i, 2 * s + 2 * prev(i) + 1});
  return build_network(sp);
}

SpinNetwork make_drum(int s, int uniform) {
  return make_drum(s, std::vector<int>(s, uniform), std::vector<int>(s, uniform));
}

SpinNetwork make_dumbbell(int a, int b, int c) {
  NetworkSpec s;
  s.edges = {{0, 1}, {2, 3}, {4, 5}};  // loop a at v0, bridge c, loop b at v1
  s.decoration = {a, c, b};
  s.rotations = {{0, 1, 2}, {3, 4, 5}};
  return build_network(s);
}

SpinNetwork make_trivial(int a) {
  NetworkSpec s;
  s.trivial_components = {a};
  return build_network(s);
}

SpinNetwork make_cycle_pair(int a, int b) {
  NetworkSpec s;
  s.trivial_components = {a, b};
  return build_network(s);
}

SpinNetwork make_k33(int uniform) {
  NetworkSpec s;
  // edge 3i+j joins left vertex i and right vertex j
  std::vector<std::vector<HalfEdgeId>> rot(6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int e = 3 * i + j;
      s.edges.push_back({2 * e, 2 * e + 1});
      s.decoration.push_back(uniform);
      rot[i].push_back(2 * e);
      rot[3 + j].push_back(2 * e + 1);
    }
  s.rotations = rot;
  return build_network(s);
}

SpinNetwork random_cubic(int vertices, std::mt19937_64& rng) {
  if (vertices < 2 || vertices % 2 != 0)
    throw domain_error("random_cubic needs an even number of vertices >= 2");
  const int nh = 3 * vertices;
  std::vector<HalfEdgeId> perm(nh);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  NetworkSpec s;
  for (int i = 0; i < nh; i += 2) {
    s.edges.push_back({perm[i], perm[i + 1]});
    s.decoration.push_back(0);
  }
  // edge k owns half-edges (2k, 2k+1): relabel so ids are dense per edge
  std::vector<HalfEdgeId> relabel(nh);
  for (int k = 0; k < static_cast<int>(s.edges.size()); ++k) {
    relabel[s.edges[k][0]] = 2 * k;
    relabel[s.edges[k][1]] = 2 * k + 1;
    s.edges[k] = {2 * k, 2 * k + 1};
  }
  for (int v = 0; v < vertices; ++v) {
    std::vector<HalfEdgeId> r{relabel[3 * v], relabel[3 * v + 1], relabel[3 * v + 2]};
    if (std::uniform_int_distribution<int>(0, 1)(rng)) std::swap(r[1], r[2]);
    s.rotations.push_back(r);
  }
  return build_network(s);
}

const std::vector<FamilyInfo>& generator_families() {
  static const std::vector<FamilyInfo> f = {
      {"theta", "a b c"},
      {"tetrahedron", "g | a b c d e f"},
      {"drum", "s g | s a_1..a_s b_1..b_s"},
      {"prism", "g  (drum with s = 3)"},
      {"dumbbell", "a b c"},
      {"trivial", "a"},
      {"cycle_pair", "a b"},
      {"k33", "g"},
  };
  return f;
}

SpinNetwork generate(const std::string& family, const std::vector<int>& p) {
  auto need = [&](std::size_t n) {
    if (p.size() != n)
      throw domain_error(family + " expects " + std::to_string(n) + " parameters, got " +
                         std::to_string(p.size()));
  };
  if (family == "theta") {
    need(3);
    return make_theta(p[0], p[1], p[2]);
  }
  if (family == "tetrahedron") {
    if (p.size() == 1) return make_tetrahedron({p[0], p[0], p[0], p[0], p[0], p[0]});
    need(6);
    return make_tetrahedron({p[0], p[1], p[2], p[3], p[4], p[5]});
  }
  if (family == "drum") {
    if (p.empty()) throw domain_error("drum expects s first");
    const int s = p[0];
    if (p.size() == 2) return make_drum(s, p[1]);
    if (s < 1 || p.size() != static_cast<std::size_t>(1 + 2 * s))
      throw domain_error("drum expects s g, or s followed by 2s decorations");
    return make_drum(s, {p.begin() + 1, p.begin() + 1 + s}, {p.begin() + 1 + s, p.end()});
  }
  if (family == "prism") {
    need(1);
    return make_drum(3, p[0]);
  }
  if (family == "dumbbell") {
    need(3);
    return make_dumbbell(p[0], p[1], p[2]);
  }
  if (family == "trivial") {
    need(1);
    return make_trivial(p[0]);
  }
  if (family == "cycle_pair") {
    need(2);
    return make_cycle_pair(p[0], p[1]);
  }
  if (family == "k33") {
    need(1);
    return make_k33(p[0]);
  }
  throw domain_error("unknown family '" + family + "'");
}

} // namespace spinnet
