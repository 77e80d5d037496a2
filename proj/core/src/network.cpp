#include "ncclab/network.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>

#include "ncclab/error.hpp"

namespace ncclab {

Network::Network(std::size_t vertices, bool directed)
    : directed_(directed), out_(vertices), in_(vertices) {}

std::size_t Network::add_vertex() {
  out_.emplace_back();
  in_.emplace_back();
  return out_.size() - 1;
}

std::size_t Network::add_edge(std::size_t u, std::size_t v, double capacity) {
  if (u >= vertex_count() || v >= vertex_count()) {
    throw Error(Errc::InvalidArgument, "edge endpoint out of range");
  }
  if (!(capacity > 0.0)) throw Error(Errc::InvalidArgument, "capacities must be positive");
  edges_.push_back({u, v, capacity});
  const std::size_t id = edges_.size() - 1;
  out_[u].push_back(id);
  in_[v].push_back(id);
  return id;
}

void Network::add_pair(std::size_t source, std::size_t target) {
  if (source >= vertex_count() || target >= vertex_count()) {
    throw Error(Errc::InvalidArgument, "pair endpoint out of range");
  }
  pairs_.push_back({source, target});
}

std::optional<std::vector<std::size_t>> Network::topological_order() const {
  const std::size_t n = vertex_count();
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& e : edges_) ++indeg[e.v];
  std::vector<std::size_t> order;
  std::vector<std::size_t> stack;
  for (std::size_t v = n; v-- > 0;) {
    if (indeg[v] == 0) stack.push_back(v);
  }
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    order.push_back(v);
    const auto& outs = out_[v];
    for (auto it = outs.rbegin(); it != outs.rend(); ++it) {
      const std::size_t w = edges_[*it].v;
      if (--indeg[w] == 0) stack.push_back(w);
    }
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

std::vector<std::size_t> Network::undirected_distances(std::size_t from) const {
  std::vector<std::size_t> dist(vertex_count(), kUnreachable);
  std::queue<std::size_t> frontier;
  dist.at(from) = 0;
  frontier.push(from);
  while (!frontier.empty()) {
    const std::size_t x = frontier.front();
    frontier.pop();
    auto visit = [&](std::size_t y) {
      if (dist[y] == kUnreachable) {
        dist[y] = dist[x] + 1;
        frontier.push(y);
      }
    };
    for (auto id : out_[x]) visit(edges_[id].v);
    for (auto id : in_[x]) visit(edges_[id].u);
  }
  return dist;
}

bool Network::is_uniform() const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [&](const Edge& e) { return e.capacity == edges_.front().capacity; });
}

std::size_t Network::max_out_degree() const {
  std::size_t best = 0;
  for (const auto& o : out_) best = std::max(best, o.size());
  return best;
}

Network undirect(const Network& net) {
  Network out(net.vertex_count(), false);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  std::vector<Edge> merged;
  for (const auto& e : net.edges()) {
    if (e.u == e.v) continue;
    const auto key = std::minmax(e.u, e.v);
    auto [it, fresh] = index.try_emplace(key, merged.size());
    if (fresh) {
      merged.push_back(e);
    } else {
      merged[it->second].capacity += e.capacity;
    }
  }
  for (const auto& e : merged) out.add_edge(e.u, e.v, e.capacity);
  for (const auto& p : net.pairs()) out.add_pair(p.source, p.target);
  return out;
}

std::string format_decimal(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& why) {
  throw Error(Errc::ParseError, "line " + std::to_string(line) + ": " + why);
}

std::size_t parse_index(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    parse_fail(line, "expected a non-negative integer, got '" + tok + "'");
  }
  return v;
}

double parse_capacity(const std::string& tok, std::size_t line) {
  double v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || !(v > 0)) {
    parse_fail(line, "expected a positive decimal capacity, got '" + tok + "'");
  }
  return v;
}

}  // namespace

Network parse_network(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<Network> net;
  std::size_t want_edges = 0;
  std::size_t want_pairs = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty() || raw.front() == '#') continue;
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (!net) {
      if (tok.size() != 5 || tok[0] != "network") parse_fail(line_no, "missing network header");
      if (tok[1] != "directed" && tok[1] != "undirected") {
        parse_fail(line_no, "kind must be directed or undirected");
      }
      net.emplace(parse_index(tok[2], line_no), tok[1] == "directed");
      want_edges = parse_index(tok[3], line_no);
      want_pairs = parse_index(tok[4], line_no);
      continue;
    }
    if (tok[0] == "e" && tok.size() == 4) {
      const auto u = parse_index(tok[1], line_no);
      const auto v = parse_index(tok[2], line_no);
      if (u >= net->vertex_count() || v >= net->vertex_count()) {
        parse_fail(line_no, "vertex out of range");
      }
      net->add_edge(u, v, parse_capacity(tok[3], line_no));
    } else if (tok[0] == "p" && tok.size() == 3) {
      const auto s = parse_index(tok[1], line_no);
      const auto t = parse_index(tok[2], line_no);
      if (s >= net->vertex_count() || t >= net->vertex_count()) {
        parse_fail(line_no, "vertex out of range");
      }
      net->add_pair(s, t);
    } else {
      parse_fail(line_no, "unrecognised line '" + raw + "'");
    }
  }
  if (!net) throw Error(Errc::ParseError, "empty network file");
  if (net->edge_count() != want_edges || net->pair_count() != want_pairs) {
    throw Error(Errc::ParseError, "edge or pair count disagrees with header");
  }
  return std::move(*net);
}

Network read_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  return parse_network(in);
}

void write_network(std::ostream& out, const Network& net) {
  out << "network " << (net.directed() ? "directed" : "undirected") << ' ' << net.vertex_count()
      << ' ' << net.edge_count() << ' ' << net.pair_count() << '\n';
  for (const auto& e : net.edges()) {
    out << "e " << e.u << ' ' << e.v << ' ' << format_decimal(e.capacity) << '\n';
  }
  for (const auto& p : net.pairs()) out << "p " << p.source << ' ' << p.target << '\n';
}

}  // namespace ncclab
