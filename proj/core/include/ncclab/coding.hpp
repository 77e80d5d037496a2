#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ncclab/network.hpp"

namespace ncclab {

using Symbol = std::uint64_t;
using LocalFunction = std::function<Symbol(std::span<const Symbol>)>;

// Coding scheme over a directed acyclic network. The encoder of an edge leaving
// the source of pair i receives {w_i}; the encoder of any other edge (v, x)
// receives the messages on v's in-edges in Network::in_edges(v) order. The
// decoder of pair i receives the messages on its target's in-edges.
struct CodingScheme {
  std::vector<LocalFunction> edge_fn;
  std::vector<std::size_t> edge_arity;
  std::vector<LocalFunction> decoders;
  std::vector<std::size_t> decoder_arity;
  // |Sigma_e| per edge; 0 when not declared. Used by the strict capacity check.
  std::vector<std::uint64_t> alphabet_size;

  static CodingScheme sized_for(const Network& net);
};

struct Execution {
  std::vector<Symbol> outputs;   // decoded message per pair
  std::vector<Symbol> messages;  // per edge
};

// Throws CyclicNetwork, ArityMismatch, or InvalidArgument (source with in-edges,
// wrong input count).
Execution execute_scheme(const Network& net, const CodingScheme& scheme,
                         std::span<const Symbol> inputs);

struct SchemeAudit {
  std::size_t correct_count = 0;
  std::size_t total = 0;
  std::vector<double> edge_entropy;  // empirical H(M_e), bits
  bool capacity_respected = true;    // H(M_e) <= c(e) on every edge
  bool strict_respected = true;      // log2 |Sigma_e| <= c(e) where declared
  double log2_correct = 0.0;
  bool eps_r_scheme = false;         // correct_count >= 2^((1-eps) r k)
};

// Empirical audit under the uniform distribution on `input_set`.
SchemeAudit audit_scheme(const Network& net, const CodingScheme& scheme,
                         const std::vector<std::vector<Symbol>>& input_set, double r, double eps);

// Every tuple of W_0 x ... x W_{k-1} with |W_i| = 2^r, first coordinate fastest.
std::vector<std::vector<Symbol>> all_inputs(std::size_t pairs, unsigned r);

struct LongnessReport {
  double delta = 0.0;  // fraction of pairs at un(G)-distance >= d
  bool holds = false;  // delta >= threshold
  std::vector<std::size_t> distances;
};

LongnessReport is_delta_d_long(const Network& net, std::size_t d, double threshold = 0.9);

// R -> R' with new sources s'_i, one supervisor vertex u, edges (s'_i,s_i) and
// (s'_i,u) of capacity r, and (u,s_i), (u,t_i) of capacity beta_budgets[i].
// Original vertex and edge ids are preserved; pairs become (s'_i, t_i).
struct SupervisedNetwork {
  Network net;
  std::vector<std::size_t> new_sources;
  std::size_t supervisor = 0;
  std::size_t base_edge_count = 0;
};

SupervisedNetwork augment_with_supervisor(const Network& net, double r,
                                          std::span<const double> beta_budgets);

// Explicit truth tables, the serialisable form of a scheme.
struct FunctionTable {
  std::vector<std::uint64_t> radix;  // alphabet size of each input
  std::vector<Symbol> table;         // mixed-radix index, first input fastest

  Symbol operator()(std::span<const Symbol> in) const;
};

struct TableScheme {
  std::vector<FunctionTable> edges;
  std::vector<FunctionTable> decoders;

  CodingScheme to_scheme(const Network& net) const;
};

// One line per (vertex, out-edge) entry: "f <vertex> <edge> <in,...> -> <symbol>",
// and per decoder entry "d <pair> <vertex> <in,...> -> <symbol>"; "()" is the empty tuple.
void write_table_scheme(std::ostream& out, const Network& net, const TableScheme& scheme);
TableScheme parse_table_scheme(std::istream& in, const Network& net);

struct CodingSearchResult {
  unsigned rate = 0;  // bits per pair, 0 when no scheme exists
  std::optional<TableScheme> witness;
  std::uint64_t candidates_tried = 0;
};

// Exhaustive search over encoder tables with edge alphabets of
// min(floor(c(e)), alphabet_bits) bits, trying r = alphabet_bits down to 1.
// Throws SearchSpaceTooLarge above `max_candidates` or alphabet_bits > 2.
CodingSearchResult search_coding_rate(const Network& net, unsigned alphabet_bits = 2,
                                      std::uint64_t max_candidates = std::uint64_t{1} << 24);

// Shannon entropy (bits) of the empirical distribution of `samples`.
double empirical_entropy(std::span<const Symbol> samples);

}  // namespace ncclab
