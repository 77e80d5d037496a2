#include "ncclab/coding.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "ncclab/error.hpp"

namespace ncclab {

namespace {

constexpr std::size_t kNoPair = static_cast<std::size_t>(-1);

// pair index per vertex when the vertex is a source, kNoPair otherwise
std::vector<std::size_t> source_index(const Network& net) {
  std::vector<std::size_t> idx(net.vertex_count(), kNoPair);
  for (std::size_t i = 0; i < net.pair_count(); ++i) {
    const std::size_t s = net.pairs()[i].source;
    if (idx[s] != kNoPair) throw Error(Errc::InvalidArgument, "vertex is the source of two pairs");
    if (!net.in_edges(s).empty()) {
      throw Error(Errc::InvalidArgument, "source " + std::to_string(s) + " has in-edges");
    }
    idx[s] = i;
  }
  return idx;
}

std::vector<std::size_t> require_order(const Network& net) {
  if (!net.directed()) throw Error(Errc::InvalidArgument, "coding schemes need a directed network");
  auto order = net.topological_order();
  if (!order) throw Error(Errc::CyclicNetwork, "network has a directed cycle");
  return *order;
}

std::string tuple_text(std::span<const Symbol> t) {
  if (t.empty()) return "()";
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(t[i]);
  }
  return s;
}

void write_table(std::ostream& out, const std::string& prefix, const FunctionTable& f) {
  std::vector<Symbol> tuple(f.radix.size(), 0);
  for (std::size_t idx = 0; idx < f.table.size(); ++idx) {
    std::size_t rest = idx;
    for (std::size_t j = 0; j < f.radix.size(); ++j) {
      tuple[j] = rest % f.radix[j];
      rest /= f.radix[j];
    }
    out << prefix << ' ' << tuple_text(tuple) << " -> " << f.table[idx] << '\n';
  }
}

}  // namespace

CodingScheme CodingScheme::sized_for(const Network& net) {
  CodingScheme s;
  s.edge_fn.resize(net.edge_count());
  s.edge_arity.assign(net.edge_count(), 0);
  s.decoders.resize(net.pair_count());
  s.decoder_arity.assign(net.pair_count(), 0);
  s.alphabet_size.assign(net.edge_count(), 0);
  return s;
}

Execution execute_scheme(const Network& net, const CodingScheme& scheme,
                         std::span<const Symbol> inputs) {
  const auto order = require_order(net);
  const auto src = source_index(net);
  if (inputs.size() != net.pair_count()) {
    throw Error(Errc::InvalidArgument, "expected " + std::to_string(net.pair_count()) + " inputs");
  }
  if (scheme.edge_fn.size() != net.edge_count() || scheme.edge_arity.size() != net.edge_count() ||
      scheme.decoders.size() != net.pair_count() ||
      scheme.decoder_arity.size() != net.pair_count()) {
    throw Error(Errc::ArityMismatch, "scheme does not match the network's edge or pair count");
  }

  Execution ex;
  ex.messages.assign(net.edge_count(), 0);
  std::vector<Symbol> args;
  for (std::size_t v : order) {
    const auto& outs = net.out_edges(v);
    if (outs.empty()) continue;
    args.clear();
    if (src[v] != kNoPair) {
      args.push_back(inputs[src[v]]);
    } else {
      for (std::size_t e : net.in_edges(v)) args.push_back(ex.messages[e]);
    }
    for (std::size_t e : outs) {
      if (scheme.edge_arity[e] != args.size()) {
        throw Error(Errc::ArityMismatch, "encoder of edge " + std::to_string(e) + " expects " +
                                             std::to_string(scheme.edge_arity[e]) + " inputs, got " +
                                             std::to_string(args.size()));
      }
      if (!scheme.edge_fn[e]) throw Error(Errc::ArityMismatch, "edge " + std::to_string(e) + " has no encoder");
      ex.messages[e] = scheme.edge_fn[e](args);
    }
  }
  ex.outputs.assign(net.pair_count(), 0);
  for (std::size_t i = 0; i < net.pair_count(); ++i) {
    args.clear();
    for (std::size_t e : net.in_edges(net.pairs()[i].target)) args.push_back(ex.messages[e]);
    if (scheme.decoder_arity[i] != args.size() || !scheme.decoders[i]) {
      throw Error(Errc::ArityMismatch, "decoder " + std::to_string(i) + " arity mismatch");
    }
    ex.outputs[i] = scheme.decoders[i](args);
  }
  return ex;
}

double empirical_entropy(std::span<const Symbol> samples) {
  if (samples.empty()) return 0.0;
  std::vector<Symbol> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double total = static_cast<double>(sorted.size());
  double h = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double p = static_cast<double>(j - i) / total;
    h -= p * std::log2(p);
    i = j;
  }
  return h <= 0.0 ? 0.0 : h;
}

SchemeAudit audit_scheme(const Network& net, const CodingScheme& scheme,
                         const std::vector<std::vector<Symbol>>& input_set, double r, double eps) {
  SchemeAudit audit;
  audit.total = input_set.size();
  std::vector<std::vector<Symbol>> per_edge(net.edge_count());
  for (auto& v : per_edge) v.reserve(input_set.size());
  for (const auto& in : input_set) {
    const Execution ex = execute_scheme(net, scheme, in);
    if (std::equal(ex.outputs.begin(), ex.outputs.end(), in.begin(), in.end())) ++audit.correct_count;
    for (std::size_t e = 0; e < net.edge_count(); ++e) per_edge[e].push_back(ex.messages[e]);
  }
  constexpr double kSlack = 1e-9;
  audit.edge_entropy.resize(net.edge_count());
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    audit.edge_entropy[e] = empirical_entropy(per_edge[e]);
    if (audit.edge_entropy[e] > net.edge(e).capacity + kSlack) audit.capacity_respected = false;
    if (e < scheme.alphabet_size.size() && scheme.alphabet_size[e] > 0 &&
        std::log2(static_cast<double>(scheme.alphabet_size[e])) > net.edge(e).capacity + kSlack) {
      audit.strict_respected = false;
    }
  }
  const double k = static_cast<double>(net.pair_count());
  if (audit.correct_count > 0) {
    audit.log2_correct = std::log2(static_cast<double>(audit.correct_count));
    audit.eps_r_scheme = audit.log2_correct + kSlack >= (1.0 - eps) * r * k;
  }
  return audit;
}

std::vector<std::vector<Symbol>> all_inputs(std::size_t pairs, unsigned r) {
  if (r * pairs > 24) throw Error(Errc::SearchSpaceTooLarge, "more than 2^24 input tuples");
  const std::uint64_t total = std::uint64_t{1} << (r * pairs);
  const Symbol mask = (Symbol{1} << r) - 1;
  std::vector<std::vector<Symbol>> out;
  out.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<Symbol> w(pairs);
    for (std::size_t i = 0; i < pairs; ++i) w[i] = (idx >> (r * i)) & mask;
    out.push_back(std::move(w));
  }
  return out;
}

LongnessReport is_delta_d_long(const Network& net, std::size_t d, double threshold) {
  LongnessReport rep;
  std::size_t count = 0;
  for (const auto& p : net.pairs()) {
    const std::size_t dist = net.undirected_distances(p.source)[p.target];
    rep.distances.push_back(dist);
    if (dist >= d) ++count;
  }
  rep.delta = net.pair_count() == 0 ? 1.0
                                    : static_cast<double>(count) / static_cast<double>(net.pair_count());
  rep.holds = rep.delta >= threshold;
  return rep;
}

SupervisedNetwork augment_with_supervisor(const Network& net, double r,
                                          std::span<const double> beta_budgets) {
  const std::size_t k = net.pair_count();
  if (beta_budgets.size() != k) throw Error(Errc::InvalidArgument, "one beta budget per pair");
  if (!net.directed()) throw Error(Errc::InvalidArgument, "supervisor augmentation needs a directed network");
  SupervisedNetwork out;
  out.net = Network(net.vertex_count() + k + 1, true);
  for (const Edge& e : net.edges()) out.net.add_edge(e.u, e.v, e.capacity);
  out.base_edge_count = net.edge_count();
  out.supervisor = net.vertex_count() + k;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t sp = net.vertex_count() + i;
    out.new_sources.push_back(sp);
    const auto [s, t] = net.pairs()[i];
    out.net.add_edge(sp, s, r);
    out.net.add_edge(sp, out.supervisor, r);
    out.net.add_edge(out.supervisor, s, beta_budgets[i]);
    out.net.add_edge(out.supervisor, t, beta_budgets[i]);
    out.net.add_pair(sp, t);
  }
  return out;
}

Symbol FunctionTable::operator()(std::span<const Symbol> in) const {
  if (in.size() != radix.size()) throw Error(Errc::ArityMismatch, "function table arity mismatch");
  std::size_t idx = 0;
  std::size_t stride = 1;
  for (std::size_t j = 0; j < in.size(); ++j) {
    if (in[j] >= radix[j]) throw Error(Errc::InvalidArgument, "symbol outside the input alphabet");
    idx += static_cast<std::size_t>(in[j]) * stride;
    stride *= radix[j];
  }
  return table.at(idx);
}

CodingScheme TableScheme::to_scheme(const Network& net) const {
  if (edges.size() != net.edge_count() || decoders.size() != net.pair_count()) {
    throw Error(Errc::ArityMismatch, "table scheme does not match the network");
  }
  CodingScheme s = CodingScheme::sized_for(net);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    s.edge_fn[e] = edges[e];
    s.edge_arity[e] = edges[e].radix.size();
    const auto& t = edges[e].table;
    s.alphabet_size[e] = t.empty() ? 0 : *std::max_element(t.begin(), t.end()) + 1;
  }
  for (std::size_t i = 0; i < decoders.size(); ++i) {
    s.decoders[i] = decoders[i];
    s.decoder_arity[i] = decoders[i].radix.size();
  }
  return s;
}

void write_table_scheme(std::ostream& out, const Network& net, const TableScheme& scheme) {
  out << "scheme " << scheme.edges.size() << ' ' << scheme.decoders.size() << '\n';
  for (std::size_t e = 0; e < scheme.edges.size(); ++e) {
    write_table(out, "f " + std::to_string(net.edge(e).u) + ' ' + std::to_string(e), scheme.edges[e]);
  }
  for (std::size_t i = 0; i < scheme.decoders.size(); ++i) {
    write_table(out, "d " + std::to_string(i) + ' ' + std::to_string(net.pairs()[i].target),
                scheme.decoders[i]);
  }
}

TableScheme parse_table_scheme(std::istream& in, const Network& net) {
  auto fail = [](std::size_t line, const std::string& msg) -> Error {
    return Error(Errc::ParseError, "line " + std::to_string(line) + ": " + msg);
  };
  using Rows = std::vector<std::pair<std::vector<Symbol>, Symbol>>;
  std::string line;
  std::size_t lineno = 0;
  std::size_t edges = 0;
  std::size_t pairs = 0;
  bool header = false;
  std::map<std::size_t, Rows> fe;
  std::map<std::size_t, Rows> fd;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!header) {
      if (tag != "scheme" || !(ls >> edges >> pairs)) throw fail(lineno, "expected 'scheme <#edges> <#pairs>'");
      if (edges != net.edge_count() || pairs != net.pair_count()) {
        throw fail(lineno, "scheme size does not match the network");
      }
      header = true;
      continue;
    }
    std::size_t a = 0;
    std::size_t b = 0;
    std::string tuple;
    std::string arrow;
    Symbol sym = 0;
    if (!(ls >> a >> b >> tuple >> arrow >> sym) || arrow != "->") throw fail(lineno, "malformed row");
    std::vector<Symbol> vals;
    if (tuple != "()") {
      std::istringstream ts(tuple);
      std::string item;
      while (std::getline(ts, item, ',')) {
        try {
          vals.push_back(std::stoull(item));
        } catch (const std::exception&) {
          throw fail(lineno, "bad tuple entry '" + item + "'");
        }
      }
    }
    if (tag == "f") {
      if (b >= net.edge_count() || net.edge(b).u != a) throw fail(lineno, "unknown edge");
      fe[b].emplace_back(std::move(vals), sym);
    } else if (tag == "d") {
      if (a >= net.pair_count() || net.pairs()[a].target != b) throw fail(lineno, "unknown pair");
      fd[a].emplace_back(std::move(vals), sym);
    } else {
      throw fail(lineno, "unknown tag '" + tag + "'");
    }
  }
  if (!header) throw fail(lineno, "missing header");

  auto build = [&](const Rows& rows, const std::string& what) {
    FunctionTable f;
    const std::size_t arity = rows.front().first.size();
    f.radix.assign(arity, 1);
    for (const auto& [t, s] : rows) {
      if (t.size() != arity) throw Error(Errc::ParseError, what + ": inconsistent arity");
      for (std::size_t j = 0; j < arity; ++j) f.radix[j] = std::max<std::uint64_t>(f.radix[j], t[j] + 1);
    }
    std::size_t size = 1;
    for (auto r : f.radix) size *= r;
    if (size != rows.size()) throw Error(Errc::ParseError, what + ": incomplete table");
    f.table.assign(size, 0);
    std::vector<bool> seen(size, false);
    for (const auto& [t, s] : rows) {
      std::size_t idx = 0;
      std::size_t stride = 1;
      for (std::size_t j = 0; j < arity; ++j) {
        idx += t[j] * stride;
        stride *= f.radix[j];
      }
      if (seen[idx]) throw Error(Errc::ParseError, what + ": duplicate row");
      seen[idx] = true;
      f.table[idx] = s;
    }
    return f;
  };
  TableScheme out;
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    if (!fe.count(e)) throw Error(Errc::ParseError, "no rows for edge " + std::to_string(e));
    out.edges.push_back(build(fe[e], "edge " + std::to_string(e)));
  }
  for (std::size_t i = 0; i < net.pair_count(); ++i) {
    if (!fd.count(i)) throw Error(Errc::ParseError, "no rows for decoder " + std::to_string(i));
    out.decoders.push_back(build(fd[i], "decoder " + std::to_string(i)));
  }
  return out;
}

namespace {

// One independently enumerated piece of the scheme: a source's joint encoder
// tuple (restricted to injective ones) or a single relay edge's table.
struct Unit {
  std::vector<std::size_t> edges;
  std::vector<std::vector<std::vector<Symbol>>> options;  // [option][edge in unit] -> table
};

// Every table dom -> [alphabet], as an odometer over table entries.
std::vector<std::vector<Symbol>> all_tables(std::size_t dom, std::uint64_t alphabet) {
  std::vector<std::vector<Symbol>> out;
  std::vector<Symbol> t(dom, 0);
  for (;;) {
    out.push_back(t);
    std::size_t j = 0;
    while (j < dom && ++t[j] == alphabet) t[j++] = 0;
    if (j == dom) break;
  }
  return out;
}

std::optional<TableScheme> search_at_rate(const Network& net, unsigned r, unsigned alphabet_bits,
                                          std::uint64_t max_candidates, std::uint64_t& tried) {
  const auto order = *net.topological_order();
  const auto src = source_index(net);
  const std::size_t k = net.pair_count();

  std::vector<std::uint64_t> alpha(net.edge_count());
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const auto cap = static_cast<unsigned>(std::floor(net.edge(e).capacity + 1e-9));
    alpha[e] = std::uint64_t{1} << std::min(cap, alphabet_bits);
  }
  auto domain_of = [&](std::size_t v) -> std::uint64_t {
    if (src[v] != kNoPair) return std::uint64_t{1} << r;
    std::uint64_t d = 1;
    for (std::size_t e : net.in_edges(v)) d *= alpha[e];
    return d;
  };

  // Size estimate before materialising anything.
  double space = 1.0;
  for (std::size_t v = 0; v < net.vertex_count(); ++v) {
    const double dom = static_cast<double>(domain_of(v));
    if (src[v] != kNoPair) {
      // injective maps from W into the product of the out-alphabets
      double joint = 1.0;
      for (std::size_t e : net.out_edges(v)) joint *= static_cast<double>(alpha[e]);
      for (double j = 0; j < dom; ++j) space *= std::max(0.0, joint - j);
    } else {
      for (std::size_t e : net.out_edges(v)) space *= std::pow(static_cast<double>(alpha[e]), dom);
    }
  }
  if (space > static_cast<double>(max_candidates)) {
    throw Error(Errc::SearchSpaceTooLarge,
                "about " + format_decimal(space) + " candidate schemes at rate " + std::to_string(r));
  }

  std::vector<Unit> units;
  for (std::size_t v : order) {
    const auto& outs = net.out_edges(v);
    if (outs.empty()) continue;
    const std::size_t dom = domain_of(v);
    if (src[v] != kNoPair) {
      double raw = 1.0;
      for (std::size_t e : outs) raw *= std::pow(static_cast<double>(alpha[e]), static_cast<double>(dom));
      if (raw > static_cast<double>(max_candidates)) {
        throw Error(Errc::SearchSpaceTooLarge, "source encoder space too large");
      }
      Unit u;
      u.edges = outs;
      std::vector<std::vector<std::vector<Symbol>>> per_edge;
      for (std::size_t e : outs) per_edge.push_back(all_tables(dom, alpha[e]));
      std::vector<std::size_t> pick(outs.size(), 0);
      for (;;) {
        std::vector<std::vector<Symbol>> joint;
        for (std::size_t j = 0; j < outs.size(); ++j) joint.push_back(per_edge[j][pick[j]]);
        bool injective = true;
        for (std::size_t a = 0; a < dom && injective; ++a) {
          for (std::size_t b = a + 1; b < dom && injective; ++b) {
            bool same = true;
            for (const auto& t : joint) same = same && t[a] == t[b];
            injective = !same;
          }
        }
        if (injective) u.options.push_back(std::move(joint));
        std::size_t j = 0;
        while (j < outs.size() && ++pick[j] == per_edge[j].size()) pick[j++] = 0;
        if (j == outs.size()) break;
      }
      if (u.options.empty()) return std::nullopt;
      units.push_back(std::move(u));
    } else {
      for (std::size_t e : outs) {
        Unit u;
        u.edges = {e};
        for (auto& t : all_tables(dom, alpha[e])) u.options.push_back({std::move(t)});
        units.push_back(std::move(u));
      }
    }
  }
  // a source with no out-edges cannot transmit anything
  for (std::size_t i = 0; i < k; ++i) {
    if (net.out_edges(net.pairs()[i].source).empty()) return std::nullopt;
  }

  std::vector<const std::vector<Symbol>*> table_of(net.edge_count(), nullptr);
  std::vector<std::size_t> pick(units.size(), 0);
  std::vector<std::uint64_t> target_dom(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t d = 1;
    for (std::size_t e : net.in_edges(net.pairs()[i].target)) d *= alpha[e];
    target_dom[i] = d;
  }
  std::vector<std::vector<std::int64_t>> seen(k);
  for (std::size_t i = 0; i < k; ++i) seen[i].assign(target_dom[i], -1);

  const std::uint64_t inputs = std::uint64_t{1} << (r * k);
  const Symbol mask = (Symbol{1} << r) - 1;
  std::vector<Symbol> msg(net.edge_count(), 0);

  auto index_of = [&](std::size_t v) {
    std::uint64_t idx = 0;
    std::uint64_t stride = 1;
    for (std::size_t e : net.in_edges(v)) {
      idx += msg[e] * stride;
      stride *= alpha[e];
    }
    return idx;
  };

  for (;;) {
    ++tried;
    for (std::size_t u = 0; u < units.size(); ++u) {
      for (std::size_t j = 0; j < units[u].edges.size(); ++j) {
        table_of[units[u].edges[j]] = &units[u].options[pick[u]][j];
      }
    }
    for (auto& s : seen) std::fill(s.begin(), s.end(), -1);
    bool ok = true;
    for (std::uint64_t in = 0; in < inputs && ok; ++in) {
      for (std::size_t v : order) {
        const auto& outs = net.out_edges(v);
        if (outs.empty()) continue;
        const std::uint64_t idx = src[v] != kNoPair ? (in >> (r * src[v])) & mask : index_of(v);
        for (std::size_t e : outs) msg[e] = (*table_of[e])[idx];
      }
      for (std::size_t i = 0; i < k && ok; ++i) {
        const auto w = static_cast<std::int64_t>((in >> (r * i)) & mask);
        auto& slot = seen[i][index_of(net.pairs()[i].target)];
        if (slot < 0) slot = w;
        ok = slot == w;
      }
    }
    if (ok) {
      TableScheme witness;
      for (std::size_t e = 0; e < net.edge_count(); ++e) {
        FunctionTable f;
        const std::size_t v = net.edge(e).u;
        if (src[v] != kNoPair) {
          f.radix = {std::uint64_t{1} << r};
        } else {
          for (std::size_t x : net.in_edges(v)) f.radix.push_back(alpha[x]);
        }
        f.table = *table_of[e];
        witness.edges.push_back(std::move(f));
      }
      for (std::size_t i = 0; i < k; ++i) {
        FunctionTable f;
        for (std::size_t x : net.in_edges(net.pairs()[i].target)) f.radix.push_back(alpha[x]);
        f.table.resize(target_dom[i]);
        for (std::size_t j = 0; j < target_dom[i]; ++j) {
          f.table[j] = seen[i][j] < 0 ? 0 : static_cast<Symbol>(seen[i][j]);
        }
        witness.decoders.push_back(std::move(f));
      }
      return witness;
    }
    std::size_t u = 0;
    while (u < units.size() && ++pick[u] == units[u].options.size()) pick[u++] = 0;
    if (u == units.size()) break;
  }
  return std::nullopt;
}

}  // namespace

CodingSearchResult search_coding_rate(const Network& net, unsigned alphabet_bits,
                                      std::uint64_t max_candidates) {
  if (alphabet_bits == 0 || alphabet_bits > 2) {
    throw Error(Errc::SearchSpaceTooLarge, "exhaustive search supports 1- or 2-bit alphabets only");
  }
  require_order(net);
  if (net.pair_count() == 0) throw Error(Errc::InvalidArgument, "network has no pairs");
  CodingSearchResult res;
  for (unsigned r = alphabet_bits; r >= 1; --r) {
    if (auto w = search_at_rate(net, r, alphabet_bits, max_candidates, res.candidates_tried)) {
      res.rate = r;
      res.witness = std::move(w);
      return res;
    }
  }
  return res;
}

}  // namespace ncclab
