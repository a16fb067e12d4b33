#pragma once

#include "spinnet/network.hpp"

#include <array>
#include <vector>

namespace spinnet {

// direction[e] = {tail, head}, both half-edges of e
struct SmoothOrientation {
  std::vector<std::array<HalfEdgeId, 2>> direction;
  bool operator==(const SmoothOrientation&) const = default;
};

// gate[v] = the ordered pair of same-direction half-edges at v
struct GateSignage {
  std::vector<std::array<HalfEdgeId, 2>> gate;
  bool operator==(const GateSignage&) const = default;
};

struct VertexPartition {
  std::vector<VertexId> v_pi;    // two incoming half-edges
  std::vector<VertexId> v_iota;  // one incoming half-edge
};

// Spanning-tree construction, run per connected component: tree edges point to a
// leaf root, cotree paths and cycles are oriented coherently. Deterministic.
SmoothOrientation find_smooth_orientation(const SpinNetwork& net);

bool is_incoming(const SpinNetwork& net, const SmoothOrientation& o, HalfEdgeId h);
int indegree(const SpinNetwork& net, const SmoothOrientation& o, VertexId v);
bool validate_smooth(const SpinNetwork& net, const SmoothOrientation& o);

// gate pair (x, y) ordered so that y follows x in the rotation
GateSignage canonical_gate_signage(const SpinNetwork& net, const SmoothOrientation& o);
// gate pair ordered by position in the stored rotation triple
GateSignage arbitrary_gate_signage(const SpinNetwork& net, const SmoothOrientation& o);
bool validate_gates(const SpinNetwork& net, const SmoothOrientation& o, const GateSignage& g);
// the remaining half-edge at v once the gate is removed
HalfEdgeId odd_half_edge(const SpinNetwork& net, const GateSignage& g, VertexId v);

// throws domain_error when o is not smooth
VertexPartition classify_vertices(const SpinNetwork& net, const SmoothOrientation& o);

// Every smooth orientation, by brute force over edge directions. Small graphs only.
std::vector<SmoothOrientation> all_smooth_orientations(const SpinNetwork& net);

} // namespace spinnet
