#include "ncclab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "ncclab/error.hpp"
#include "ncclab/lp.hpp"

namespace ncclab {

double FlowSolution::delivered(const Network& net, std::size_t commodity) const {
  const std::size_t t = net.pairs().at(commodity).target;
  double in = 0.0;
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (arcs[a].to == t) in += flow[commodity][a];
    if (arcs[a].from == t) in -= flow[commodity][a];
  }
  return in;
}

double FlowSolution::inflow(std::size_t commodity, std::size_t v) const {
  double in = 0.0;
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (arcs[a].to == v) in += flow[commodity][a];
  }
  return in;
}

FlowSolution flow_rate(const Network& net, const FlowTolerances& tol) {
  const std::size_t k = net.pair_count();
  if (k == 0) throw Error(Errc::InvalidArgument, "flow rate needs at least one pair");
  for (const auto& p : net.pairs()) {
    if (p.source == p.target) throw Error(Errc::InvalidArgument, "pair with source == target");
  }

  FlowSolution sol;
  for (std::size_t id = 0; id < net.edge_count(); ++id) {
    const Edge& e = net.edge(id);
    sol.arcs.push_back({e.u, e.v, id});
    if (!net.directed()) sol.arcs.push_back({e.v, e.u, id});
  }
  const std::size_t arc_count = sol.arcs.size();
  const std::size_t vertices = net.vertex_count();

  LinearProgram lp;
  lp.num_vars = k * arc_count + 1;
  const std::size_t rate_var = k * arc_count;
  auto var = [&](std::size_t i, std::size_t a) { return i * arc_count + a; };
  lp.objective.assign(lp.num_vars, 0.0);
  lp.objective[rate_var] = 1.0;

  std::vector<std::vector<std::size_t>> arcs_in(vertices);
  std::vector<std::vector<std::size_t>> arcs_out(vertices);
  for (std::size_t a = 0; a < arc_count; ++a) {
    arcs_out[sol.arcs[a].from].push_back(a);
    arcs_in[sol.arcs[a].to].push_back(a);
  }

  for (std::size_t i = 0; i < k; ++i) {
    const auto [s, t] = net.pairs()[i];
    for (std::size_t v = 0; v < vertices; ++v) {
      if (v == s || v == t || (arcs_in[v].empty() && arcs_out[v].empty())) continue;
      std::vector<double> row(lp.num_vars, 0.0);
      for (auto a : arcs_in[v]) row[var(i, a)] += 1.0;
      for (auto a : arcs_out[v]) row[var(i, a)] -= 1.0;
      std::vector<double> neg(row);
      for (auto& x : neg) x = -x;
      lp.add_row(std::move(row), 0.0);
      lp.add_row(std::move(neg), 0.0);
    }
    std::vector<double> delivery(lp.num_vars, 0.0);
    delivery[rate_var] = 1.0;
    for (auto a : arcs_in[t]) delivery[var(i, a)] -= 1.0;
    for (auto a : arcs_out[t]) delivery[var(i, a)] += 1.0;
    lp.add_row(std::move(delivery), 0.0);
  }
  for (std::size_t id = 0; id < net.edge_count(); ++id) {
    std::vector<double> row(lp.num_vars, 0.0);
    for (std::size_t a = 0; a < arc_count; ++a) {
      if (sol.arcs[a].edge != id) continue;
      for (std::size_t i = 0; i < k; ++i) row[var(i, a)] = 1.0;
    }
    lp.add_row(std::move(row), net.edge(id).capacity);
  }

  const LPResult res = solve_lp(lp);
  if (res.status == LPStatus::Unbounded) {
    throw Error(Errc::Unbounded, "flow LP reported unbounded (internal error)");
  }
  sol.iterations = res.iterations;
  sol.certificate_residual = res.certificate_residual;
  sol.flow.assign(k, std::vector<double>(arc_count, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t a = 0; a < arc_count; ++a) {
      const double f = res.x[var(i, a)];
      sol.flow[i][a] = f < tol.feasibility * 1e-3 ? 0.0 : f;
    }
  }

  if (!net.directed()) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t a = 0; a + 1 < arc_count; a += 2) {
        const double common = std::min(sol.flow[i][a], sol.flow[i][a + 1]);
        sol.flow[i][a] -= common;
        sol.flow[i][a + 1] -= common;
      }
    }
  }

  double rate = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) rate = std::min(rate, sol.delivered(net, i));
  sol.rate = std::max(0.0, std::min(rate, res.x[rate_var]));

  for (std::size_t i = 0; i < k; ++i) {
    const auto [s, t] = net.pairs()[i];
    for (std::size_t v = 0; v < vertices; ++v) {
      if (v == s || v == t) continue;
      double balance = 0.0;
      for (auto a : arcs_in[v]) balance += sol.flow[i][a];
      for (auto a : arcs_out[v]) balance -= sol.flow[i][a];
      sol.max_conservation_violation = std::max(sol.max_conservation_violation, std::abs(balance));
    }
    sol.max_delivery_shortfall =
        std::max(sol.max_delivery_shortfall, sol.rate - sol.delivered(net, i));
  }
  std::vector<double> usage(net.edge_count(), 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t a = 0; a < arc_count; ++a) usage[sol.arcs[a].edge] += sol.flow[i][a];
  }
  for (std::size_t id = 0; id < net.edge_count(); ++id) {
    sol.max_capacity_violation =
        std::max(sol.max_capacity_violation, usage[id] - net.edge(id).capacity);
  }
  return sol;
}

void write_flow_csv(std::ostream& out, const FlowSolution& sol, double min_flow) {
  out << "commodity,u,v,flow\n";
  for (std::size_t i = 0; i < sol.flow.size(); ++i) {
    for (std::size_t a = 0; a < sol.arcs.size(); ++a) {
      if (sol.flow[i][a] > min_flow) {
        out << i << ',' << sol.arcs[a].from << ',' << sol.arcs[a].to << ','
            << format_decimal(sol.flow[i][a]) << '\n';
      }
    }
  }
}

GapReport ncc_gap_report(const Network& net, double achieved_coding_rate,
                         const FlowTolerances& tol) {
  GapReport rep;
  rep.coding_rate = achieved_coding_rate;
  rep.directed_flow_rate = flow_rate(net, tol).rate;
  rep.undirected_flow_rate = flow_rate(undirect(net), tol).rate;
  auto ratio = [](double num, double den) {
    if (den > 0) return num / den;
    return num > 0 ? std::numeric_limits<double>::infinity() : 1.0;
  };
  rep.directed_ratio = ratio(rep.coding_rate, rep.directed_flow_rate);
  rep.undirected_ratio = ratio(rep.coding_rate, rep.undirected_flow_rate);
  rep.directed_gap = rep.coding_rate > rep.directed_flow_rate + tol.optimality;
  rep.ncc_counterexample_candidate = rep.coding_rate > rep.undirected_flow_rate + tol.optimality;
  return rep;
}

EdgeBoundReport edge_bound_check(std::size_t edges, std::size_t pairs, double delta, double d) {
  EdgeBoundReport rep;
  rep.edges = edges;
  rep.pairs = pairs;
  rep.delta = delta;
  rep.d = d;
  rep.delta_prime = (delta - 5.0 / 6.0) / 10.0;
  rep.edges_per_pair = pairs == 0 ? 0.0 : static_cast<double>(edges) / static_cast<double>(pairs);
  rep.bound = rep.delta_prime * d;
  rep.vacuous = delta <= 5.0 / 6.0;
  rep.holds = rep.edges_per_pair >= rep.bound;
  return rep;
}

}  // namespace ncclab
