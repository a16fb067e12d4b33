#include "spinnet/orientation.hpp"
#include "spinnet/error.hpp"

#include <algorithm>
#include <deque>

namespace spinnet {

namespace {

void orient(SmoothOrientation& o, const SpinNetwork& net, EdgeId e, HalfEdgeId tail) {
  o.direction[e] = {tail, net.opposite(tail)};
}

void orient_component(const SpinNetwork& net, const std::vector<VertexId>& comp,
                      SmoothOrientation& o) {
  const int nv = net.num_vertices();
  std::vector<char> in_tree(net.num_edges(), 0);
  std::vector<char> seen(nv, 0);
  std::vector<int> tdeg(nv, 0);

  // BFS spanning tree from the lowest vertex
  std::deque<VertexId> queue{comp.front()};
  seen[comp.front()] = 1;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (HalfEdgeId h : net.rotation(v)) {
      EdgeId e = net.edge_of(h);
      VertexId w = net.vertex_of(net.opposite(h));
      if (seen[w]) continue;
      seen[w] = 1;
      in_tree[e] = 1;
      ++tdeg[v];
      ++tdeg[w];
      queue.push_back(w);
    }
  }

  // root: lowest leaf; a single vertex is its own root
  VertexId root = comp.front();
  for (VertexId v : comp)
    if (tdeg[v] == 1) {
      root = v;
      break;
    }

  // tree edges point toward the root
  std::vector<char> done(nv, 0);
  std::vector<VertexId> stack{root};
  done[root] = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (HalfEdgeId h : net.rotation(v)) {
      EdgeId e = net.edge_of(h);
      if (!in_tree[e]) continue;
      HalfEdgeId far = net.opposite(h);
      VertexId w = net.vertex_of(far);
      if (done[w]) continue;
      done[w] = 1;
      orient(o, net, e, far);
      stack.push_back(w);
    }
  }

  // Cotree: every vertex has cotree degree 0 (root when it has 3 tree edges never
  // happens for a leaf), 1 or 2, so the cotree is a union of paths and cycles.
  std::vector<char> oriented(net.num_edges(), 0);
  for (VertexId v : comp)
    for (HalfEdgeId h : net.rotation(v))
      if (in_tree[net.edge_of(h)]) oriented[net.edge_of(h)] = 1;

  auto cotree_halves = [&](VertexId v) {
    std::vector<HalfEdgeId> hs;
    for (HalfEdgeId h : net.rotation(v))
      if (!in_tree[net.edge_of(h)]) hs.push_back(h);
    return hs;
  };
  auto unoriented_half = [&](VertexId v) -> HalfEdgeId {
    for (HalfEdgeId h : net.rotation(v)) {
      EdgeId e = net.edge_of(h);
      if (!oriented[e] && !net.is_loop(e)) return h;
    }
    return -1;
  };
  auto walk = [&](VertexId start) {
    VertexId v = start;
    for (HalfEdgeId h = unoriented_half(v); h != -1; h = unoriented_half(v)) {
      EdgeId e = net.edge_of(h);
      orient(o, net, e, h);
      oriented[e] = 1;
      v = net.vertex_of(net.opposite(h));
    }
  };

  // loops: tail is the lower half-edge
  for (VertexId v : comp)
    for (HalfEdgeId h : net.rotation(v)) {
      EdgeId e = net.edge_of(h);
      if (net.is_loop(e) && !oriented[e]) {
        const auto& hs = net.halves(e);
        orient(o, net, e, std::min(hs[0], hs[1]));
        oriented[e] = 1;
      }
    }
  // paths start at cotree-degree-one vertices
  for (VertexId v : comp) {
    auto hs = cotree_halves(v);
    if (hs.size() == 1 && !net.is_loop(net.edge_of(hs[0]))) walk(v);
  }
  // what remains are cycles
  for (VertexId v : comp) walk(v);
}

} // namespace

SmoothOrientation find_smooth_orientation(const SpinNetwork& net) {
  SmoothOrientation o;
  o.direction.assign(net.num_edges(), {-1, -1});
  for (const auto& comp : connected_components(net)) orient_component(net, comp, o);
  return o;
}

bool is_incoming(const SpinNetwork& net, const SmoothOrientation& o, HalfEdgeId h) {
  return o.direction.at(net.edge_of(h))[1] == h;
}

int indegree(const SpinNetwork& net, const SmoothOrientation& o, VertexId v) {
  int in = 0;
  for (HalfEdgeId h : net.rotation(v)) in += is_incoming(net, o, h);
  return in;
}

bool validate_smooth(const SpinNetwork& net, const SmoothOrientation& o) {
  if (static_cast<int>(o.direction.size()) != net.num_edges()) return false;
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    auto [t, h] = o.direction[e];
    auto hs = net.halves(e);
    if (!((t == hs[0] && h == hs[1]) || (t == hs[1] && h == hs[0]))) return false;
  }
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    int in = indegree(net, o, v);
    if (in != 1 && in != 2) return false;
  }
  return true;
}

namespace {

std::array<int, 2> gate_slots(const SpinNetwork& net, const SmoothOrientation& o, VertexId v) {
  const auto& r = net.rotation(v);
  bool in[3] = {is_incoming(net, o, r[0]), is_incoming(net, o, r[1]), is_incoming(net, o, r[2])};
  for (int odd = 0; odd < 3; ++odd) {
    int x = (odd + 1) % 3, y = (odd + 2) % 3;
    if (in[x] == in[y] && in[odd] != in[x]) return {x, y};
  }
  throw domain_error("vertex " + std::to_string(v) + " is not smooth");
}

} // namespace

GateSignage canonical_gate_signage(const SpinNetwork& net, const SmoothOrientation& o) {
  GateSignage g;
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    auto [x, y] = gate_slots(net, o, v);  // y == x+1 mod 3 by construction
    g.gate.push_back({net.rotation(v)[x], net.rotation(v)[y]});
  }
  return g;
}

GateSignage arbitrary_gate_signage(const SpinNetwork& net, const SmoothOrientation& o) {
  GateSignage g;
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    auto [x, y] = gate_slots(net, o, v);
    if (x > y) std::swap(x, y);
    g.gate.push_back({net.rotation(v)[x], net.rotation(v)[y]});
  }
  return g;
}

bool validate_gates(const SpinNetwork& net, const SmoothOrientation& o, const GateSignage& g) {
  if (static_cast<int>(g.gate.size()) != net.num_vertices()) return false;
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    auto [x, y] = g.gate[v];
    if (x == y || x < 0 || y < 0 || x >= net.num_half_edges() || y >= net.num_half_edges())
      return false;
    if (net.vertex_of(x) != v || net.vertex_of(y) != v) return false;
    HalfEdgeId z = odd_half_edge(net, g, v);
    if (is_incoming(net, o, x) != is_incoming(net, o, y)) return false;
    if (is_incoming(net, o, z) == is_incoming(net, o, x)) return false;
  }
  return true;
}

HalfEdgeId odd_half_edge(const SpinNetwork& net, const GateSignage& g, VertexId v) {
  for (HalfEdgeId h : net.rotation(v))
    if (h != g.gate[v][0] && h != g.gate[v][1]) return h;
  throw domain_error("gate does not leave an odd half-edge");
}

VertexPartition classify_vertices(const SpinNetwork& net, const SmoothOrientation& o) {
  if (!validate_smooth(net, o)) throw domain_error("orientation is not smooth");
  VertexPartition p;
  for (VertexId v = 0; v < net.num_vertices(); ++v)
    (indegree(net, o, v) == 2 ? p.v_pi : p.v_iota).push_back(v);
  return p;
}

std::vector<SmoothOrientation> all_smooth_orientations(const SpinNetwork& net) {
  const int ne = net.num_edges();
  if (ne > 24) throw resource_error("all_smooth_orientations: too many edges");
  std::vector<SmoothOrientation> out;
  for (unsigned long mask = 0; mask < (1ul << ne); ++mask) {
    SmoothOrientation o;
    for (EdgeId e = 0; e < ne; ++e) {
      auto hs = net.halves(e);
      o.direction.push_back((mask >> e) & 1 ? std::array{hs[1], hs[0]} : hs);
    }
    if (validate_smooth(net, o)) out.push_back(std::move(o));
  }
  return out;
}

} // namespace spinnet
