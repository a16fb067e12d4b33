#pragma once

#include "spinnet/micro.hpp"
#include "spinnet/network.hpp"
#include "spinnet/orientation.hpp"
#include "spinnet/radical.hpp"
#include "spinnet/symtensor.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace spinnet {

// gate half-edges in gate order, then the odd half-edge
struct CgVertex {
  HalfEdgeId gate_first, gate_second, odd;
};

enum class LegKind { entry, exit };

// a 1-valent vertex; an entry leg's half-edge is the tail of its edge
struct CgLeg {
  HalfEdgeId half_edge;
  LegKind kind;
};

// Oriented trivalent graph with gate data at every vertex, possibly with legs.
// The cyclic order is irrelevant here.
class CgNetwork {
 public:
  // edges[e] = {tail, head}; half-edges are 0..2|E|-1, each used by exactly one
  // vertex slot or leg. Throws structure_error / domain_error when not smooth.
  CgNetwork(std::vector<CgVertex> vertices, std::vector<CgLeg> legs,
            std::vector<std::array<HalfEdgeId, 2>> edges, std::vector<int> decoration,
            std::vector<int> trivial_components = {});

  static CgNetwork from_spin_network(const SpinNetwork& net, const SmoothOrientation& o,
                                     const GateSignage& g);
  // spanning-tree orientation and canonical gates
  static CgNetwork canonical(const SpinNetwork& net);

  const std::vector<CgVertex>& vertices() const { return vertices_; }
  const std::vector<CgLeg>& legs() const { return legs_; }
  const std::vector<std::array<HalfEdgeId, 2>>& edges() const { return edges_; }
  const std::vector<int>& decoration() const { return dec_; }
  const std::vector<int>& trivial_components() const { return trivial_; }
  int half_decoration(HalfEdgeId h) const { return dec_[edge_of_[h]]; }
  EdgeId edge_of(HalfEdgeId h) const { return edge_of_[h]; }
  bool closed() const { return legs_.empty(); }

 private:
  std::vector<CgVertex> vertices_;
  std::vector<CgLeg> legs_;
  std::vector<std::array<HalfEdgeId, 2>> edges_;
  std::vector<int> dec_, trivial_;
  std::vector<EdgeId> edge_of_;
};

// One vertex tensor per vertex, labelled by half-edge ids; edges between two
// vertices become contraction edges, an edge between two legs an identity tensor.
struct CgTensorNetwork {
  std::vector<SymTensor> tensors;
  std::vector<ContractionEdge> edges;
  std::vector<int> leg_labels;  // open label carrying each leg
};
CgTensorNetwork cg_tensor_network(const CgNetwork& cg);

// Value of a closed network. Throws domain_error if it has legs.
BigRational cg_evaluate(const CgNetwork& cg, ContractionStats* stats = nullptr);
// Open network: axes labelled 0..L-1 in leg order.
SymTensor cg_evaluate_tensor(const CgNetwork& cg, ContractionStats* stats = nullptr);
// binary64 contraction of a closed network
double cg_evaluate_float(const CgNetwork& cg);

// The whole network as one microscopic diagram, for the brute-force oracle.
MicroDiagram cg_micro_diagram(const CgNetwork& cg);

// prod over vertices of the pi/iota normalization sqrt(m! n! (p+1)! / ((s+1)! x! y! z!)),
// gate legs m, n, odd leg p
Radical pi_iota_factor(const CgNetwork& cg);
Radical pi_iota_evaluate(const CgNetwork& cg);

// Network with one entry and one exit leg: the scalar the map is a multiple of
// the identity by. Zero when the two legs differ in decoration.
BigRational schur_constant(const CgNetwork& cg);

struct EvalOptions {
  std::uint64_t state_limit = 0;  // Penrose guard; 0 = default
  int threads = 1;
  bool penrose_sign = true;  // use the Penrose engine for signs when affordable
};

struct UnitaryValue {
  Radical value;
  bool sign_known = false;
};

struct StandardValue {
  BigRational value;
  bool sign_known = false;
};

BigInt edge_factorial_product(const SpinNetwork& net);
// prod over vertices of dim(v) = odd decoration + 1 under the given gates
BigInt dimension_product(const CgNetwork& cg);

// |U| through pi/iota and the vertex dimensions, after bridge reduction.
// Signs come from the Penrose engine when every component is affordable.
UnitaryValue unitary_evaluate(const SpinNetwork& net, const EvalOptions& opt = {});
StandardValue standard_evaluate(const SpinNetwork& net, const EvalOptions& opt = {});

struct CrossCheckReport {
  bool ok = false;
  BigInt penrose;
  BigRational cg;
  BigInt edge_factorials;
  int mu = 0;  // P / (prod gamma! * CG) when nonzero
};

// |P| == prod gamma(e)! * |CG| on the canonical orientation and gates.
CrossCheckReport cross_check(const SpinNetwork& net, const EvalOptions& opt = {});
CrossCheckReport cross_check(const SpinNetwork& net, const CgNetwork& cg, const EvalOptions& opt = {});

} // namespace spinnet
