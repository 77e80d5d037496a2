#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace ncclab {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double capacity = 1.0;
};

struct DemandPair {
  std::size_t source = 0;
  std::size_t target = 0;
};

// Graph with positive edge capacities and k source-target pairs. Directed
// networks carry arcs u->v; undirected ones carry edges {u, v}.
class Network {
 public:
  static constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

  explicit Network(std::size_t vertices = 0, bool directed = true);

  bool directed() const noexcept { return directed_; }
  std::size_t vertex_count() const noexcept { return out_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t pair_count() const noexcept { return pairs_.size(); }

  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t id) const { return edges_.at(id); }
  const std::vector<DemandPair>& pairs() const noexcept { return pairs_; }

  // Edge ids leaving / entering v in insertion order (directed sense).
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_.at(v); }
  const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_.at(v); }

  std::size_t add_vertex();
  // Throws InvalidArgument for non-positive capacity or unknown endpoints.
  std::size_t add_edge(std::size_t u, std::size_t v, double capacity);
  void add_pair(std::size_t source, std::size_t target);

  std::optional<std::vector<std::size_t>> topological_order() const;
  bool is_acyclic() const { return topological_order().has_value(); }

  // BFS hop distances in the underlying undirected graph un(G).
  std::vector<std::size_t> undirected_distances(std::size_t from) const;

  // All capacities equal (the uniform case).
  bool is_uniform() const;

  std::size_t max_out_degree() const;

 private:
  bool directed_;
  std::vector<Edge> edges_;
  std::vector<DemandPair> pairs_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

// un(R): every arc becomes an undirected edge of the same capacity. Parallel
// and antiparallel arcs between the same two vertices merge into one edge whose
// capacity is the sum. Pairs are kept.
Network undirect(const Network& net);

// Line-oriented text format:
//   network <directed|undirected> <#vertices> <#edges> <#pairs>
//   e <u> <v> <capacity>
//   p <s> <t>
// '#' starts a comment line. Throws Errc::ParseError.
Network parse_network(std::istream& in);
Network read_network_file(const std::string& path);
void write_network(std::ostream& out, const Network& net);

// Shortest decimal that parses back to the same double.
std::string format_decimal(double v);

}  // namespace ncclab
