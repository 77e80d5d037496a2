#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ncclab/bits.hpp"
#include "ncclab/coding.hpp"
#include "ncclab/field.hpp"
#include "ncclab/flow.hpp"
#include "ncclab/network.hpp"
#include "ncclab/systematic_ds.hpp"

namespace ncclab {

// Three layers of width n: sources s_i (id i), middle v_j (id n + j), and the
// last layer u_l (id 2n + l). (s_i, v_j) is an edge iff i is read by the first
// pass at v_j; (v_j, u_l) iff j is read by the second pass at u_l.
struct LayeredGraph {
  std::size_t n = 0;
  std::size_t t = 0;           // query bound of the first pass
  unsigned capacity_bits = 0;  // r
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  static std::size_t source(std::size_t i) { return i; }
  std::size_t middle(std::size_t j) const { return n + j; }
  std::size_t last(std::size_t l) const { return 2 * n + l; }
  std::size_t vertex_count() const { return 3 * n; }
  std::vector<std::size_t> out_degrees() const;
};

// `second_query` maps u_l to the second pass's query (identity when empty).
// Throws AdaptiveDSRejected.
LayeredGraph build_layered_graph(const DSDescriptor& first, const DSDescriptor& second,
                                 std::span<const std::size_t> second_query = {},
                                 unsigned capacity_bits = 0);
LayeredGraph build_layered_graph(const DSDescriptor& ds);

struct PrunedNetwork {
  LayeredGraph graph;              // edges incident to W removed
  std::size_t edges_before = 0;
  std::size_t max_out_degree_before = 0;
  std::vector<std::size_t> W;      // sorted vertex ids
  std::vector<bool> in_w;
  std::size_t q = 0;
  std::size_t b = 0;
  std::size_t d = 0;
  double delta = 0.0;
  std::vector<std::size_t> targets;  // t_i = u_{(i + b) mod n}

  bool removed(std::size_t vertex) const { return in_w[vertex]; }
  // Directed network with capacity r per edge and pairs (s_i, t_i).
  Network network() const;
};

PrunedNetwork prune_high_degree(const LayeredGraph& g, std::size_t q);

// ceil(log_{qt} n / 2), with base 2 when qt < 2.
std::size_t default_distance(std::size_t n, std::size_t q, std::size_t t);

// Sets b, d, delta and targets on `net`; returns b.
std::size_t choose_shift(PrunedNetwork& net, std::size_t d);
// Same bookkeeping for a caller-chosen b.
void apply_shift(PrunedNetwork& net, std::size_t b, std::size_t d);

// Values fixed by the scheme: both advice strings and the inputs at removed
// vertices. Ordered lexicographically in field order.
struct Fixing {
  BitVector advice_1;
  BitVector advice_2;
  std::vector<std::pair<std::size_t, std::uint32_t>> source_fixes;  // i -> x_i, s_i in W
  std::vector<std::pair<std::size_t, std::uint32_t>> middle_fixes;  // j -> h(j), v_j in W

  std::size_t fixed_bits(unsigned value_bits) const;
  friend bool operator==(const Fixing&, const Fixing&) = default;
  friend auto operator<=>(const Fixing&, const Fixing&) = default;
};

enum class SchemeVariant { Inversion, PolyEval, PolyInterp };

using DSFactory = std::function<DSPtr(const RootOfUnity&)>;

// The two uses of the data structure and the arithmetic between them.
class TwoPassScheme {
 public:
  static TwoPassScheme inversion(std::shared_ptr<const SystematicDS> ds);
  // PolyEval: make(sigma) serves both passes, the second at query -l mod n.
  // PolyInterp: make(sigma^-1) for the first pass, make(sigma) for the second.
  static TwoPassScheme polynomial(SchemeVariant variant, const RootOfUnity& root, const DSFactory& make);

  SchemeVariant variant() const noexcept { return variant_; }
  std::size_t n() const noexcept { return n_; }
  const SystematicDS& first() const { return *first_; }
  const SystematicDS& second() const { return *second_; }
  const std::vector<std::size_t>& second_query() const noexcept { return second_query_; }
  unsigned value_bits() const noexcept { return value_bits_; }
  std::optional<RootOfUnity> root() const { return root_; }

  void set_shift(std::size_t b);
  std::size_t shift() const noexcept { return b_; }

  LayeredGraph layered_graph() const;

  // h(j) from the first pass's answer at v_j.
  std::uint32_t middle(std::size_t j, std::uint32_t answer) const;
  // Value emitted by u_l from the second pass's answer.
  std::uint32_t output(std::size_t l, std::uint32_t answer) const;
  // Throws NotAPermutation / InvalidArgument for inputs outside the domain.
  void validate_input(std::span<const std::uint32_t> x) const;

  // Full-information evaluation: both advice strings and h.
  struct Trace {
    AdviceString advice_1;
    AdviceString advice_2;
    std::vector<std::uint32_t> h;
  };
  Trace trace(std::span<const std::uint32_t> x) const;

 private:
  TwoPassScheme() = default;

  SchemeVariant variant_ = SchemeVariant::Inversion;
  std::size_t n_ = 0;
  std::shared_ptr<const SystematicDS> first_;
  std::shared_ptr<const SystematicDS> second_;
  std::vector<std::size_t> second_query_;
  unsigned value_bits_ = 0;
  std::optional<RootOfUnity> root_;
  std::size_t b_ = 0;
  // polynomial helpers
  std::uint32_t first_scale_ = 1;
  std::uint32_t output_scale_ = 1;
  std::vector<std::uint32_t> twiddle_;  // sigma^(j b)
};

Fixing compute_fixing(const PrunedNetwork& net, const TwoPassScheme& scheme,
                      std::span<const std::uint32_t> x);

struct SchemeRun {
  std::vector<std::uint32_t> outputs;   // per pair i, the value at t_i
  std::vector<std::uint32_t> layer_out;  // per u_l
  std::vector<std::uint32_t> h;         // per v_j
  std::vector<Symbol> messages;         // per edge of net.network()
};

// Executes the network scheme from the fixing and the inputs. Throws
// InconsistentInput or MissingMessage.
SchemeRun run_scheme(const PrunedNetwork& net, const TwoPassScheme& scheme, const Fixing& fixing,
                     std::span<const std::uint32_t> x);
SchemeRun run_inversion_scheme(const PrunedNetwork& net, const TwoPassScheme& scheme,
                               const Fixing& fixing, std::span<const std::uint32_t> x);
SchemeRun run_poly_scheme(const PrunedNetwork& net, const TwoPassScheme& scheme, const Fixing& fixing,
                          std::span<const FieldElement> alpha);

// The same scheme as local encoders and decoders over net.network().
CodingScheme to_coding_scheme(const PrunedNetwork& net, const TwoPassScheme& scheme,
                              const Fixing& fixing);

// p'(sigma^-l)/n for every l, with h(j) = p(sigma^j) sigma^(jb); pure algebra.
std::vector<FieldElement> telescoping_outputs(std::span<const FieldElement> alpha,
                                              const RootOfUnity& root, std::size_t b);

struct Bucket {
  Fixing fixing;
  std::vector<std::vector<std::uint32_t>> members;
  std::size_t inputs_examined = 0;
  std::size_t bucket_count = 0;
  bool exhaustive = false;
  std::uint64_t seed = 0;
};

// Inputs for the census: every permutation of [n] when n <= 8 (inversion),
// every vector when p^n <= samples (polynomials), otherwise `samples`
// seeded uniform draws.
std::vector<std::vector<std::uint32_t>> census_inputs(const TwoPassScheme& scheme, std::size_t samples,
                                                      std::uint64_t seed, bool& exhaustive);

// Largest bucket; ties go to the smallest fixing. Throws EmptyInput.
Bucket select_bucket(const PrunedNetwork& net, const TwoPassScheme& scheme,
                     const std::vector<std::vector<std::uint32_t>>& inputs);

struct ReductionConfig {
  std::size_t q = 8;
  double eps = 1.0 / 16.0;
  std::optional<std::size_t> d;
  std::optional<std::size_t> shift;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
};

struct ReductionAudit {
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t q = 0;
  unsigned r = 0;
  std::size_t s_bits = 0;
  std::size_t edges_before = 0;
  std::size_t edges_bound = 0;       // 2 t n
  std::size_t edges_after = 0;
  std::size_t max_out_degree = 0;    // after pruning
  std::size_t degree_bound = 0;      // q t
  std::size_t w_size = 0;
  double w_bound = 0.0;              // 2 n / q
  std::size_t b = 0;
  std::size_t d = 0;
  double delta = 0.0;
  double delta_bfs = 0.0;            // independent recomputation
  double sqrt_bound = 0.0;           // 1 - 2/sqrt(n)
  std::size_t bucket_size = 0;
  std::size_t inputs_examined = 0;
  std::size_t bucket_count = 0;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  double log2_bucket_fraction = 0.0;
  double log2_fraction_bound = 0.0;  // -(2 eps + 2/q) n log n
  double log2_bucket_bound = 0.0;    // (1 - 2 eps - 2/q - 2/log n) n log n
  double eps = 0.0;                  // configured
  double eps_measured = 0.0;         // s / (n log n); used by the bounds below
  double eps_prime = 0.0;            // 2 eps + 2/q + 2/log n
  std::size_t fixed_bits = 0;
  double fixed_bits_bound = 0.0;     // 2 s + (2/q) n r
  std::size_t members_checked = 0;
  std::size_t members_correct = 0;
  std::size_t replay_agreements = 0;
  double max_edge_entropy = 0.0;
  bool capacity_respected = true;
  EdgeBoundReport edge_bound;

  bool structure_ok() const;
  bool scheme_ok() const { return members_correct == members_checked && replay_agreements == members_checked; }
};

// Runs every member through run_scheme and the execute_scheme replay and
// collects the structural numbers.
ReductionAudit audit_reduction(const PrunedNetwork& net, const TwoPassScheme& scheme, const Bucket& bucket,
                               const ReductionConfig& config);

struct ReductionResult {
  PrunedNetwork net;
  Bucket bucket;
  ReductionAudit audit;
};

// build -> prune -> shift -> census -> bucket -> audit. Throws DegenerateSize
// for n < 4 and AdaptiveDSRejected.
ReductionResult run_reduction(TwoPassScheme& scheme, const ReductionConfig& config);

}  // namespace ncclab
