#include "spinnet/cg_eval.hpp"
#include "spinnet/error.hpp"
#include "spinnet/penrose.hpp"
#include "spinnet/reduction.hpp"

#include <numeric>

namespace spinnet {

CgNetwork::CgNetwork(std::vector<CgVertex> vertices, std::vector<CgLeg> legs,
                     std::vector<std::array<HalfEdgeId, 2>> edges, std::vector<int> decoration,
                     std::vector<int> trivial_components)
    : vertices_(std::move(vertices)),
      legs_(std::move(legs)),
      edges_(std::move(edges)),
      dec_(std::move(decoration)),
      trivial_(std::move(trivial_components)) {
  const int ne = static_cast<int>(edges_.size());
  const int nh = 2 * ne;
  if (static_cast<int>(dec_.size()) != ne) throw structure_error("CG network: one decoration per edge");
  edge_of_.assign(nh, -1);
  std::vector<char> tail(nh, 0), used(nh, 0);
  for (EdgeId e = 0; e < ne; ++e) {
    for (int k = 0; k < 2; ++k) {
      HalfEdgeId h = edges_[e][k];
      if (h < 0 || h >= nh || edge_of_[h] != -1)
        throw structure_error("CG network: edge " + std::to_string(e) + " has a bad half-edge");
      edge_of_[h] = e;
      tail[h] = k == 0;
    }
    if (dec_[e] < 0) throw structure_error("CG network: negative decoration");
  }
  auto use = [&](HalfEdgeId h) {
    if (h < 0 || h >= nh || used[h]) throw structure_error("CG network: half-edge used twice or dangling");
    used[h] = 1;
  };
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const auto& x = vertices_[v];
    use(x.gate_first);
    use(x.gate_second);
    use(x.odd);
    if (tail[x.gate_first] != tail[x.gate_second] || tail[x.odd] == tail[x.gate_first])
      throw domain_error("CG network: vertex " + std::to_string(v) + " is not smooth");
    if (!admissible_triple(half_decoration(x.gate_first), half_decoration(x.gate_second),
                           half_decoration(x.odd)))
      throw domain_error("CG network: vertex " + std::to_string(v) + " is not admissible");
  }
  for (const auto& l : legs_) {
    use(l.half_edge);
    if ((l.kind == LegKind::entry) != static_cast<bool>(tail[l.half_edge]))
      throw domain_error("CG network: entry legs must start their edge, exit legs end it");
  }
  for (HalfEdgeId h = 0; h < nh; ++h)
    if (!used[h]) throw structure_error("CG network: dangling half-edge " + std::to_string(h));
  for (int a : trivial_)
    if (a < 0) throw structure_error("CG network: negative trivial component");
}

CgNetwork CgNetwork::from_spin_network(const SpinNetwork& net, const SmoothOrientation& o,
                                       const GateSignage& g) {
  if (!validate_smooth(net, o)) throw domain_error("orientation is not smooth");
  if (!validate_gates(net, o, g)) throw domain_error("gate signage does not match the orientation");
  auto rep = check_admissible(net);
  if (!rep.admissible) throw domain_error("inadmissible: " + describe(rep.violations.front()));
  std::vector<CgVertex> vs;
  for (VertexId v = 0; v < net.num_vertices(); ++v)
    vs.push_back({g.gate[v][0], g.gate[v][1], odd_half_edge(net, g, v)});
  return CgNetwork(std::move(vs), {}, o.direction, net.decorations(), net.trivial_components());
}

CgNetwork CgNetwork::canonical(const SpinNetwork& net) {
  auto o = find_smooth_orientation(net);
  return from_spin_network(net, o, canonical_gate_signage(net, o));
}

CgTensorNetwork cg_tensor_network(const CgNetwork& cg) {
  CgTensorNetwork a;
  std::vector<int> leg_of(2 * cg.edges().size(), -1);
  for (std::size_t l = 0; l < cg.legs().size(); ++l) leg_of[cg.legs()[l].half_edge] = static_cast<int>(l);
  for (const auto& v : cg.vertices()) {
    const auto& t = vertex_tensor(cg.half_decoration(v.gate_first), cg.half_decoration(v.gate_second),
                                  cg.half_decoration(v.odd), true);
    a.tensors.push_back(t.relabeled({v.gate_first, v.gate_second, v.odd}));
  }
  a.leg_labels.assign(cg.legs().size(), -1);
  for (EdgeId e = 0; e < static_cast<EdgeId>(cg.edges().size()); ++e) {
    auto [t, h] = cg.edges()[e];
    const int g = cg.decoration()[e];
    int lt = leg_of[t], lh = leg_of[h];
    if (lt < 0 && lh < 0) {
      a.edges.push_back({t, h, g});
    } else if (lt >= 0 && lh >= 0) {
      a.tensors.push_back(identity_tensor(g, t, h));
      a.leg_labels[lt] = t;
      a.leg_labels[lh] = h;
    } else if (lt >= 0) {
      a.leg_labels[lt] = h;
    } else {
      a.leg_labels[lh] = t;
    }
  }
  return a;
}

namespace {

BigRational trivial_factor(const CgNetwork& cg) {
  BigRational f = 1;
  for (int a : cg.trivial_components()) f *= a + 1;
  return f;
}

} // namespace

SymTensor cg_evaluate_tensor(const CgNetwork& cg, ContractionStats* stats) {
  auto a = cg_tensor_network(cg);
  SymTensor t = contract(std::move(a.tensors), a.edges, nullptr, stats);
  std::vector<int> order(a.leg_labels.size());
  std::iota(order.begin(), order.end(), 0);
  t = t.permuted(a.leg_labels).relabeled(order);
  BigRational f = trivial_factor(cg);
  return f == 1 ? t : t.scaled(f);
}

BigRational cg_evaluate(const CgNetwork& cg, ContractionStats* stats) {
  if (!cg.closed()) throw domain_error("cg_evaluate: network has legs; use cg_evaluate_tensor");
  return cg_evaluate_tensor(cg, stats).value();
}

double cg_evaluate_float(const CgNetwork& cg) {
  if (!cg.closed()) throw domain_error("cg_evaluate_float: network has legs");
  auto a = cg_tensor_network(cg);
  std::vector<FloatSymTensor> ft;
  for (const auto& t : a.tensors) ft.push_back(to_float(t));
  double v = contract(std::move(ft), a.edges).value();
  for (int x : cg.trivial_components()) v *= x + 1;
  return v;
}

MicroDiagram cg_micro_diagram(const CgNetwork& cg) {
  MicroDiagram d;
  const int nh = static_cast<int>(2 * cg.edges().size());
  std::vector<std::vector<int>> wires_of(nh);
  auto append = [&](const MicroDiagram& piece) {
    const int off = d.wires;
    auto shift = [off](std::vector<int> v) {
      for (int& w : v) w += off;
      return v;
    };
    for (auto s : piece.strands) {
      s.wire_a += off;
      s.wire_b += off;
      d.strands.push_back(s);
    }
    for (const auto& s : piece.symmetrizers) d.symmetrizers.push_back({shift(s.in), shift(s.out)});
    d.wires += piece.wires;
    std::vector<std::vector<int>> legs;
    for (const auto& l : piece.legs) legs.push_back(shift(l));
    return legs;
  };
  auto bare = [](int a, bool closed) {
    MicroDiagram p;
    p.wires = 2 * a;
    std::vector<int> in(a), out(a);
    std::iota(in.begin(), in.end(), 0);
    std::iota(out.begin(), out.end(), a);
    p.symmetrizers.push_back({in, out});
    if (closed)
      for (int r = 0; r < a; ++r) p.strands.push_back({StrandKind::delta, out[r], in[r]});
    else
      p.legs = {in, out};
    return p;
  };

  for (const auto& v : cg.vertices()) {
    auto legs = append(vertex_diagram(cg.half_decoration(v.gate_first), cg.half_decoration(v.gate_second),
                                      cg.half_decoration(v.odd), true));
    wires_of[v.gate_first] = legs[0];
    wires_of[v.gate_second] = legs[1];
    wires_of[v.odd] = legs[2];
  }
  std::vector<int> leg_of(nh, -1);
  for (std::size_t l = 0; l < cg.legs().size(); ++l) leg_of[cg.legs()[l].half_edge] = static_cast<int>(l);
  d.legs.assign(cg.legs().size(), {});
  for (EdgeId e = 0; e < static_cast<EdgeId>(cg.edges().size()); ++e) {
    auto [t, h] = cg.edges()[e];
    const int g = cg.decoration()[e];
    int lt = leg_of[t], lh = leg_of[h];
    if (lt < 0 && lh < 0) {
      for (int r = 0; r < g; ++r) d.strands.push_back({StrandKind::delta, wires_of[t][r], wires_of[h][r]});
    } else if (lt >= 0 && lh >= 0) {
      auto legs = append(bare(g, false));
      d.legs[lt] = legs[0];
      d.legs[lh] = legs[1];
    } else if (lt >= 0) {
      d.legs[lt] = wires_of[h];
    } else {
      d.legs[lh] = wires_of[t];
    }
  }
  for (int a : cg.trivial_components()) append(bare(a, true));
  return d;
}

Radical pi_iota_factor(const CgNetwork& cg) {
  Radical f = Radical::from_rational(1);
  for (const auto& v : cg.vertices()) {
    const int m = cg.half_decoration(v.gate_first), n = cg.half_decoration(v.gate_second),
              p = cg.half_decoration(v.odd);
    const int s = (m + n + p) / 2;
    BigRational sq(factorial(m) * factorial(n) * factorial(p + 1),
                   factorial(s + 1) * factorial(s - m) * factorial(s - n) * factorial(s - p));
    sq.canonicalize();
    f *= Radical(1, sq);
  }
  return f;
}

Radical pi_iota_evaluate(const CgNetwork& cg) {
  return Radical::from_rational(cg_evaluate(cg)) * pi_iota_factor(cg);
}

BigRational schur_constant(const CgNetwork& cg) {
  if (cg.legs().size() != 2) throw domain_error("schur_constant needs exactly two legs");
  const int a = cg.half_decoration(cg.legs()[0].half_edge), b = cg.half_decoration(cg.legs()[1].half_edge);
  if (a != b) return 0;
  SymTensor t = cg_evaluate_tensor(cg);
  BigRational tr = 0;
  for (int q = 0; q <= a; ++q) tr += BigRational(binomial(a, q)) * t.at({q, q});
  BigRational c = tr / (a + 1);
  // an equivariant map between copies of the same irreducible is c times the identity
  if (!(t == identity_tensor(a, 0, 1).scaled(c))) throw domain_error("schur_constant: map is not a multiple of the identity");
  return c;
}

BigInt edge_factorial_product(const SpinNetwork& net) {
  BigInt f = 1;
  for (int g : net.decorations()) f *= factorial(g);
  for (int a : net.trivial_components()) f *= factorial(a);
  return f;
}

BigInt dimension_product(const CgNetwork& cg) {
  BigInt d = 1;
  for (const auto& v : cg.vertices()) d *= cg.half_decoration(v.odd) + 1;
  return d;
}

namespace {

std::uint64_t limit_of(const EvalOptions& opt) {
  return opt.state_limit ? opt.state_limit : default_state_limit();
}

void require_admissible(const SpinNetwork& net) {
  auto rep = check_admissible(net);
  if (!rep.admissible) throw domain_error("inadmissible: " + describe(rep.violations.front()));
}

BigInt signed_circle(int a) {
  BigInt v = factorial(a + 1);
  return a % 2 ? BigInt(-v) : v;
}

} // namespace

UnitaryValue unitary_evaluate(const SpinNetwork& net, const EvalOptions& opt) {
  require_admissible(net);
  auto red = bridge_reduce(net);
  if (red.zero) return {Radical(), true};
  UnitaryValue out{red.factor, true};
  for (const auto& comp : red.components) {
    if (comp.num_vertices() == 0) {
      out.value *= Radical::from_rational(BigRational(signed_circle(comp.trivial_components().at(0))));
      continue;
    }
    auto cg = CgNetwork::canonical(comp);
    BigRational c = cg_evaluate(cg);
    if (sgn(c) == 0) return {Radical(), true};
    BigRational sq = c * c * pi_iota_factor(cg).square() / BigRational(dimension_product(cg));
    int sign = 1;
    if (opt.penrose_sign && penrose_state_count(comp) <= limit_of(opt)) {
      PenroseOptions po;
      po.state_limit = limit_of(opt);
      po.threads = opt.threads;
      BigInt p = penrose_evaluate(comp, po).value;
      if (p == 0) throw error("Penrose and CG disagree on whether the value vanishes");
      sign = sgn(p);
    } else {
      out.sign_known = false;
    }
    out.value *= Radical(sign, sq);
  }
  return out;
}

StandardValue standard_evaluate(const SpinNetwork& net, const EvalOptions& opt) {
  require_admissible(net);
  for (EdgeId b : find_bridges(net))
    if (net.decoration(b) != 0) return {0, true};
  if (opt.penrose_sign && penrose_state_count(net) <= limit_of(opt)) {
    PenroseOptions po;
    po.state_limit = limit_of(opt);
    po.threads = opt.threads;
    return {standard_from_penrose(net, penrose_evaluate(net, po).value), true};
  }
  BigRational c = cg_evaluate(CgNetwork::canonical(net));
  BigRational s = abs(c) * BigRational(edge_factorial_product(net)) / BigRational(half_factorial_product(net));
  return {s, sgn(s) == 0};
}

CrossCheckReport cross_check(const SpinNetwork& net, const CgNetwork& cg, const EvalOptions& opt) {
  PenroseOptions po;
  po.state_limit = limit_of(opt);
  po.threads = opt.threads;
  CrossCheckReport r;
  r.penrose = penrose_evaluate(net, po).value;
  r.cg = cg_evaluate(cg);
  r.edge_factorials = edge_factorial_product(net);
  r.ok = BigRational(abs(r.penrose)) == abs(r.cg) * BigRational(r.edge_factorials);
  r.mu = (r.penrose == 0 || sgn(r.cg) == 0) ? 0 : sgn(r.penrose) * sgn(r.cg);
  return r;
}

CrossCheckReport cross_check(const SpinNetwork& net, const EvalOptions& opt) {
  return cross_check(net, CgNetwork::canonical(net), opt);
}

} // namespace spinnet
