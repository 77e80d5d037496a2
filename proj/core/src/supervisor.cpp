#include "ncclab/supervisor.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>

#include "ncclab/error.hpp"

namespace ncclab {

namespace {

Symbol pack_bits(const BitVector& bits) {
  if (bits.size() > 62) throw Error(Errc::UnsupportedWidth, "correction message longer than 62 bits");
  Symbol s = 1;
  for (std::size_t i = 0; i < bits.size(); ++i) s = (s << 1) | (bits[i] ? 1U : 0U);
  return s;
}

BitVector unpack_bits(Symbol s) {
  BitVector bits;
  if (s == 0) throw Error(Errc::ParseError, "packed message lacks its sentinel bit");
  const auto len = static_cast<unsigned>(std::bit_width(s) - 1);
  bits.append(s, len);
  return bits;
}

std::size_t position_of(const std::vector<std::size_t>& ids, std::size_t id) {
  return static_cast<std::size_t>(std::find(ids.begin(), ids.end(), id) - ids.begin());
}

}  // namespace

SupervisedScheme build_supervised_scheme(const Network& base, const CodingScheme& base_scheme,
                                         const ExplicitCodebook& codebook) {
  const std::size_t k = base.pair_count();
  const unsigned r = codebook.block_bits();
  if (codebook.blocks() != k) throw Error(Errc::WidthMismatch, "codebook blocks must equal the pair count");
  if (static_cast<std::size_t>(r) * k > 20) {
    throw Error(Errc::SearchSpaceTooLarge, "exact E|beta_i| needs r*k <= 20");
  }

  SupervisedScheme out;
  out.r = r;
  out.expected_beta.assign(k, 0.0);
  const std::uint64_t total = std::uint64_t{1} << (r * k);
  const Block mask = (Block{1} << r) - 1;
  std::vector<Block> alpha(k);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    for (std::size_t i = 0; i < k; ++i) alpha[i] = (idx >> (r * i)) & mask;
    const auto res = correction_protocol(codebook, alpha);
    for (std::size_t i = 0; i < k; ++i) out.expected_beta[i] += static_cast<double>(res.beta[i].size());
  }
  for (auto& b : out.expected_beta) b /= static_cast<double>(total);
  for (double b : out.expected_beta) {
    out.beta_capacity.push_back(std::max(std::ceil(b * 1024.0) / 1024.0, 1.0 / 1024.0));
  }

  out.network = augment_with_supervisor(base, r, out.beta_capacity);
  const Network& net = out.network.net;
  const std::size_t base_edges = base.edge_count();
  const std::size_t u = out.network.supervisor;
  auto edge_id = [&](std::size_t i, std::size_t which) { return base_edges + 4 * i + which; };

  auto book = std::make_shared<const ExplicitCodebook>(codebook);
  auto inner = std::make_shared<const CodingScheme>(base_scheme);
  CodingScheme& s = out.scheme;
  s = CodingScheme::sized_for(net);

  std::vector<std::size_t> base_source(base.vertex_count(), k);
  for (std::size_t i = 0; i < k; ++i) base_source[base.pairs()[i].source] = i;

  for (std::size_t e = 0; e < base_edges; ++e) {
    const std::size_t v = base.edge(e).u;
    s.edge_arity[e] = net.in_edges(v).size();
    s.alphabet_size[e] = e < base_scheme.alphabet_size.size() ? base_scheme.alphabet_size[e] : 0;
    if (base_source[v] < k) {
      const std::size_t i = base_source[v];
      const std::size_t from_src = position_of(net.in_edges(v), edge_id(i, 0));
      const std::size_t from_u = position_of(net.in_edges(v), edge_id(i, 2));
      s.edge_fn[e] = [inner, e, from_src, from_u, r](std::span<const Symbol> in) {
        const Symbol x = in[from_src] ^ player_decode(unpack_bits(in[from_u]), r);
        const Symbol arg[1] = {x};
        return inner->edge_fn[e](arg);
      };
    } else {
      const std::size_t keep = base.in_edges(v).size();
      s.edge_fn[e] = [inner, e, keep](std::span<const Symbol> in) {
        return inner->edge_fn[e](in.first(keep));
      };
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    s.edge_fn[edge_id(i, 0)] = [](std::span<const Symbol> in) { return in[0]; };
    s.edge_fn[edge_id(i, 1)] = [](std::span<const Symbol> in) { return in[0]; };
    s.edge_arity[edge_id(i, 0)] = 1;
    s.edge_arity[edge_id(i, 1)] = 1;
    s.alphabet_size[edge_id(i, 0)] = s.alphabet_size[edge_id(i, 1)] = std::uint64_t{1} << r;
    auto beta_fn = [book, i](std::span<const Symbol> in) {
      const auto res = correction_protocol(*book, in);
      return pack_bits(res.beta[i]);
    };
    for (std::size_t which : {std::size_t{2}, std::size_t{3}}) {
      s.edge_fn[edge_id(i, which)] = beta_fn;
      s.edge_arity[edge_id(i, which)] = net.in_edges(u).size();
    }

    const std::size_t t = base.pairs()[i].target;
    const std::size_t keep = base.in_edges(t).size();
    const std::size_t from_u = position_of(net.in_edges(t), edge_id(i, 3));
    s.decoders[i] = [inner, i, keep, from_u, r](std::span<const Symbol> in) {
      const Symbol gamma = player_decode(unpack_bits(in[from_u]), r);
      return inner->decoders[i](in.first(keep)) ^ gamma;
    };
    s.decoder_arity[i] = net.in_edges(t).size();
  }
  return out;
}

SupervisorFlowAudit audit_supervisor_flow(const SupervisedScheme& sup, const FlowTolerances& tol) {
  SupervisorFlowAudit a;
  const Network& net = sup.network.net;
  const std::size_t k = net.pair_count();
  const double kd = static_cast<double>(k);
  const std::size_t u = sup.network.supervisor;
  a.r = sup.r;

  for (std::size_t e : net.in_edges(u)) a.u_capacity += net.edge(e).capacity;
  for (std::size_t e : net.out_edges(u)) a.u_capacity += net.edge(e).capacity;
  a.u_capacity_bound = 1.5 * kd * a.r;
  for (double b : sup.beta_capacity) a.beta_sum += b;
  a.beta_sum_bound = kd * a.r / 4.0;
  a.beta_condition = a.beta_sum <= a.beta_sum_bound + tol.optimality;
  a.capacity_claim = !a.beta_condition || a.u_capacity <= a.u_capacity_bound + tol.optimality;

  const Network un = undirect(net);
  const FlowSolution sol = flow_rate(un, tol);
  a.flow_rate = sol.rate;
  a.flow_residual = std::max({sol.max_conservation_violation, sol.max_capacity_violation,
                              sol.max_delivery_shortfall});
  for (std::size_t i = 0; i < k; ++i) {
    const double through = sol.inflow(i, u);
    a.through_u.push_back(through);
    a.through_u_total += through;
    if (sol.delivered(un, i) - through >= a.flow_rate / 10.0 - tol.feasibility) ++a.good_pairs;
  }
  a.through_u_bound = 0.75 * kd * a.flow_rate;
  a.small_u_flow = a.through_u_total <= a.through_u_bound + tol.feasibility;
  a.good_set_claim = !a.small_u_flow || 6 * a.good_pairs >= k;
  return a;
}

}  // namespace ncclab
