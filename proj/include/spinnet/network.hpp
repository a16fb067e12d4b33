#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace spinnet {

using VertexId = int;
using EdgeId = int;
using HalfEdgeId = int;

// Raw description of a decorated ribbon graph. Ids are dense: vertex v is
// rotations[v], edge e is edges[e], half-edges are 0..2|E|-1.
struct NetworkSpec {
  std::vector<std::vector<HalfEdgeId>> rotations;  // counterclockwise, seen from outside
  std::vector<std::array<HalfEdgeId, 2>> edges;
  std::vector<int> decoration;                      // twice-spin, one per edge
  std::vector<int> trivial_components;              // vertex-less circles

  bool operator==(const NetworkSpec&) const = default;
};

// A closed trivalent ribbon graph with a decoration and trivial components.
// Immutable once built; use the free functions below to derive new networks.
class SpinNetwork {
 public:
  SpinNetwork() = default;

  int num_vertices() const { return static_cast<int>(rot_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_half_edges() const { return 2 * num_edges(); }

  const std::array<HalfEdgeId, 3>& rotation(VertexId v) const { return rot_[v]; }
  const std::array<HalfEdgeId, 2>& halves(EdgeId e) const { return edges_[e]; }
  int decoration(EdgeId e) const { return dec_[e]; }
  const std::vector<int>& decorations() const { return dec_; }
  const std::vector<int>& trivial_components() const { return trivial_; }

  VertexId vertex_of(HalfEdgeId h) const { return h_vertex_[h]; }
  EdgeId edge_of(HalfEdgeId h) const { return h_edge_[h]; }
  int slot_of(HalfEdgeId h) const { return h_slot_[h]; }  // position in its rotation
  HalfEdgeId opposite(HalfEdgeId h) const;
  int half_decoration(HalfEdgeId h) const { return dec_[h_edge_[h]]; }
  bool is_loop(EdgeId e) const { return h_vertex_[edges_[e][0]] == h_vertex_[edges_[e][1]]; }
  bool has_loop(VertexId v) const;

  // decorations of the three half-edges in rotation order
  std::array<int, 3> vertex_decorations(VertexId v) const;

  NetworkSpec spec() const;

  bool operator==(const SpinNetwork& o) const {
    return rot_ == o.rot_ && edges_ == o.edges_ && dec_ == o.dec_ && trivial_ == o.trivial_;
  }

 private:
  friend SpinNetwork build_network(const NetworkSpec&);

  std::vector<std::array<HalfEdgeId, 3>> rot_;
  std::vector<std::array<HalfEdgeId, 2>> edges_;
  std::vector<int> dec_;
  std::vector<int> trivial_;
  std::vector<VertexId> h_vertex_;
  std::vector<EdgeId> h_edge_;
  std::vector<int> h_slot_;
};

// Throws structure_error for malformed input (dangling, duplicated or
// out-of-range half-edges, vertices that are not trivalent, negative decorations).
SpinNetwork build_network(const NetworkSpec& spec);

// --- admissibility -------------------------------------------------------

enum class AdmissibilityIssue { parity, triangle };

struct AdmissibilityViolation {
  VertexId vertex;
  std::array<int, 3> triple;  // rotation order
  AdmissibilityIssue issue;
};

struct AdmissibilityReport {
  bool admissible = true;
  std::vector<AdmissibilityViolation> violations;
};

bool admissible_triple(int a, int b, int c);
AdmissibilityReport check_admissible(const SpinNetwork& net);
std::string describe(const AdmissibilityViolation& v);

// --- derived networks ----------------------------------------------------

// reverses the cyclic order at v (mirror image of the vertex)
SpinNetwork flip_cyclic_order(const SpinNetwork& net, VertexId v);
// multiplies every decoration, trivial components included, by n
SpinNetwork scale_decoration(const SpinNetwork& net, int n);
SpinNetwork with_decoration(const SpinNetwork& net, std::vector<int> decoration);
SpinNetwork disjoint_union(const SpinNetwork& a, const SpinNetwork& b);

// Subdivides edge e with a new vertex and hangs a bridge of decoration
// bridge_decoration ending in a loop of decoration loop_decoration.
SpinNetwork attach_lollipop(const SpinNetwork& net, EdgeId e, int loop_decoration,
                            int bridge_decoration = 0);

// --- structure -----------------------------------------------------------

std::vector<EdgeId> find_bridges(const SpinNetwork& net);
// vertex sets of the connected components, each sorted, ordered by smallest vertex
std::vector<std::vector<VertexId>> connected_components(const SpinNetwork& net);
// The component induced on a union of whole components, renumbered in vertex order.
// Trivial components are not carried over.
SpinNetwork induced_subnetwork(const SpinNetwork& net, const std::vector<VertexId>& vertices);
// every connected piece as its own network; each trivial component becomes
// a network with no vertices and a single circle
std::vector<SpinNetwork> split_components(const SpinNetwork& net);
int count_faces(const SpinNetwork& net);

// Calls visit for every admissible decoration with values in [0, max_gamma],
// in lexicographic order of the decoration vector (edge 0 most significant).
void for_each_admissible_decoration(const SpinNetwork& net, int max_gamma,
                                    const std::function<void(const std::vector<int>&)>& visit);

// --- generators ----------------------------------------------------------

SpinNetwork make_theta(int a, int b, int c);
// Edge order a,b,c,d,e,f with triads (a,b,c),(a,e,f),(d,b,f),(d,e,c); planar.
SpinNetwork make_tetrahedron(const std::array<int, 6>& abcdef);
// Two s-cycles joined by s rungs. cycle[i] sits on the i-th edge of both cycles,
// rungs[i] joins the i-th vertices. Edge order: outer cycle, inner cycle, rungs.
SpinNetwork make_drum(int s, const std::vector<int>& cycle, const std::vector<int>& rungs);
SpinNetwork make_drum(int s, int uniform);
SpinNetwork make_dumbbell(int a, int b, int c);
SpinNetwork make_trivial(int a);
SpinNetwork make_cycle_pair(int a, int b);
// K_{3,3} with a fixed rotation system, all edges decorated with `uniform`
SpinNetwork make_k33(int uniform);

// Configuration-model trivalent ribbon graph with random rotations. May contain
// loops, multi-edges and several components. Decorations are zero.
SpinNetwork random_cubic(int vertices, std::mt19937_64& rng);

struct FamilyInfo {
  std::string name;
  std::string params;  // usage string
};
const std::vector<FamilyInfo>& generator_families();
// Dispatch by family name, used by the command line tool.
SpinNetwork generate(const std::string& family, const std::vector<int>& params);

} // namespace spinnet
