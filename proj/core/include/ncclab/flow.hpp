#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "ncclab/network.hpp"

namespace ncclab {

struct FlowTolerances {
  double feasibility = 1e-9;
  double optimality = 1e-7;
};

// A directed arc carrying flow. For undirected networks each edge {u,v}
// contributes the two arcs u->v and v->u, both pointing at the same edge id.
struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t edge = 0;
};

struct FlowSolution {
  double rate = 0.0;
  std::vector<Arc> arcs;
  std::vector<std::vector<double>> flow;  // [commodity][arc]

  std::size_t iterations = 0;
  double max_conservation_violation = 0.0;
  double max_capacity_violation = 0.0;
  double max_delivery_shortfall = 0.0;
  double certificate_residual = 0.0;

  // Net amount of commodity i arriving at its target.
  double delivered(const Network& net, std::size_t commodity) const;
  // Flow of commodity i entering vertex v.
  double inflow(std::size_t commodity, std::size_t v) const;
};

// Maximum concurrent multicommodity flow over the pairs of `net`, directed or
// undirected according to net.directed(). Edge-flow LP solved by simplex; for
// undirected networks antiparallel flow of each commodity is cancelled
// afterwards so at most one direction per edge carries it.
FlowSolution flow_rate(const Network& net, const FlowTolerances& tol = {});

// commodity,u,v,flow rows for every positive arc flow.
void write_flow_csv(std::ostream& out, const FlowSolution& sol, double min_flow = 1e-12);

struct GapReport {
  double directed_flow_rate = 0.0;
  double undirected_flow_rate = 0.0;
  double coding_rate = 0.0;
  double directed_ratio = 0.0;    // coding / directed flow (inf when flow is 0)
  double undirected_ratio = 0.0;  // coding / un() flow
  bool directed_gap = false;      // coding exceeds directed flow
  bool ncc_counterexample_candidate = false;  // coding exceeds un() flow
};

GapReport ncc_gap_report(const Network& net, double achieved_coding_rate,
                         const FlowTolerances& tol = {});

struct EdgeBoundReport {
  std::size_t edges = 0;
  std::size_t pairs = 0;
  double delta = 0.0;
  double d = 0.0;
  double delta_prime = 0.0;   // (delta - 5/6) / 10
  double edges_per_pair = 0.0;
  double bound = 0.0;         // delta_prime * d
  bool vacuous = false;       // delta <= 5/6, precondition fails
  bool holds = false;
};

// Evaluates |E|/k >= delta' d numerically.
EdgeBoundReport edge_bound_check(std::size_t edges, std::size_t pairs, double delta, double d);

}  // namespace ncclab
