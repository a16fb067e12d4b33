#include "spinnet/reduction.hpp"
#include "spinnet/error.hpp"

#include <deque>

namespace spinnet {

namespace {

SpinNetwork remove_bridge(const SpinNetwork& net, EdgeId bridge, Radical& factor) {
  const auto [hb0, hb1] = net.halves(bridge);
  const VertexId ends[2] = {net.vertex_of(hb0), net.vertex_of(hb1)};

  std::vector<char> edge_gone(net.num_edges(), 0);
  edge_gone[bridge] = 1;
  std::vector<int> circles = net.trivial_components();

  // partner of a half-edge after fusions at erased vertices
  std::vector<HalfEdgeId> joined(net.num_half_edges(), -1);

  for (int side = 0; side < 2; ++side) {
    VertexId v = ends[side];
    HalfEdgeId hb = side == 0 ? hb0 : hb1;
    std::vector<HalfEdgeId> rest;
    for (HalfEdgeId h : net.rotation(v))
      if (h != hb) rest.push_back(h);
    EdgeId ex = net.edge_of(rest[0]), ey = net.edge_of(rest[1]);
    if (ex == ey) {
      const int a = net.decoration(ex);
      circles.push_back(a);
      edge_gone[ex] = 1;
      factor *= Radical(1, BigRational(1) / (BigRational(factorial(a)) * factorial(a) * (a + 1)));
    } else {
      const int a = net.decoration(ex);
      if (a != net.decoration(ey)) throw domain_error("bridge_reduce: inadmissible bridge end");
      // the two far ends become the ends of one edge
      HalfEdgeId fx = net.opposite(rest[0]), fy = net.opposite(rest[1]);
      joined[fx] = fy;
      joined[fy] = fx;
      edge_gone[ex] = edge_gone[ey] = 1;
      factor *= Radical(1, BigRational(1, a + 1));
    }
  }

  std::vector<char> erased(net.num_vertices(), 0);
  erased[ends[0]] = erased[ends[1]] = 1;

  // far ends never sit on an erased vertex: that would be a second edge
  // between the bridge ends, or a loop, both handled above
  std::vector<char> done(net.num_half_edges(), 0);
  NetworkSpec s;
  std::vector<HalfEdgeId> renum(net.num_half_edges(), -1);

  std::vector<std::pair<HalfEdgeId, HalfEdgeId>> pairs;
  std::vector<int> pair_dec;
  for (EdgeId e = 0; e < net.num_edges(); ++e) {
    if (edge_gone[e]) continue;
    pairs.push_back({net.halves(e)[0], net.halves(e)[1]});
    pair_dec.push_back(net.decoration(e));
  }
  for (HalfEdgeId h = 0; h < net.num_half_edges(); ++h) {
    if (joined[h] == -1 || done[h]) continue;
    done[h] = done[joined[h]] = 1;
    pairs.push_back({h, joined[h]});
    pair_dec.push_back(net.half_decoration(net.opposite(h)));
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    int base = static_cast<int>(2 * i);
    renum[pairs[i].first] = base;
    renum[pairs[i].second] = base + 1;
    s.edges.push_back({base, base + 1});
    s.decoration.push_back(pair_dec[i]);
  }
  for (VertexId v = 0; v < net.num_vertices(); ++v) {
    if (erased[v]) continue;
    const auto& r = net.rotation(v);
    s.rotations.push_back({renum[r[0]], renum[r[1]], renum[r[2]]});
  }
  s.trivial_components = circles;
  return build_network(s);
}

} // namespace

BridgeReduction bridge_reduce(const SpinNetwork& net) {
  BridgeReduction out;
  std::deque<SpinNetwork> work;
  for (auto& c : split_components(net)) work.push_back(std::move(c));
  while (!work.empty()) {
    SpinNetwork c = std::move(work.front());
    work.pop_front();
    auto bridges = find_bridges(c);
    if (bridges.empty()) {
      out.components.push_back(std::move(c));
      continue;
    }
    for (EdgeId b : bridges)
      if (c.decoration(b) != 0) {
        out.zero = true;
        out.factor = Radical();
        out.components.clear();
        return out;
      }
    auto reduced = remove_bridge(c, bridges.front(), out.factor);
    for (auto& piece : split_components(reduced)) work.push_back(std::move(piece));
  }
  return out;
}

} // namespace spinnet
