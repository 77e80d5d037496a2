#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ncclab/systematic_ds.hpp"

namespace ncclab {

enum class GateKind { Input, And, Or, Not, Output };

std::string_view gate_kind_name(GateKind kind) noexcept;

struct Gate {
  GateKind kind = GateKind::Input;
  std::size_t a = 0;  // first operand (AND, OR, NOT, OUTPUT)
  std::size_t b = 0;  // second operand (AND, OR)
};

// Gates are stored in topological order: operands always precede their gate.
// Input bit i is the i-th INPUT gate, output bit j the j-th OUTPUT gate.
class Circuit {
 public:
  std::size_t add_input();
  std::size_t add_and(std::size_t a, std::size_t b);
  std::size_t add_or(std::size_t a, std::size_t b);
  std::size_t add_not(std::size_t a);
  std::size_t add_output(std::size_t a);
  // AND(x, NOT x) on an existing gate; used for the constant 0.
  std::size_t add_zero(std::size_t any_gate);

  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const Gate& gate(std::size_t id) const { return gates_.at(id); }
  std::size_t size() const noexcept { return gates_.size(); }
  std::size_t n_in() const noexcept { return inputs_.size(); }
  std::size_t n_out() const noexcept { return outputs_.size(); }
  const std::vector<std::size_t>& inputs() const noexcept { return inputs_; }
  const std::vector<std::size_t>& outputs() const noexcept { return outputs_; }
  // input bit index of an INPUT gate
  std::size_t input_position(std::size_t gate_id) const { return input_pos_.at(gate_id); }

  // Longest input-to-gate path per gate (inputs at 0).
  std::vector<std::size_t> depths() const;
  std::size_t depth() const;

 private:
  std::size_t push(Gate g);

  std::vector<Gate> gates_;
  std::vector<std::size_t> inputs_;
  std::vector<std::size_t> outputs_;
  std::vector<std::size_t> input_pos_;
};

// Throws WidthMismatch.
std::vector<bool> eval_circuit(const Circuit& c, const std::vector<bool>& input);
// All gate values.
std::vector<bool> eval_gates(const Circuit& c, const std::vector<bool>& input);

// "circuit <n_in> <n_out>" then "gate <id> <KIND> [op1] [op2]" lines.
Circuit parse_circuit(std::istream& in);
Circuit read_circuit_file(const std::string& path);
void write_circuit(std::ostream& out, const Circuit& c);

// Blocks of b bits, most significant bit first.
std::vector<bool> blocks_to_bits(std::span<const std::uint32_t> blocks, unsigned b);
std::vector<std::uint32_t> bits_to_blocks(const std::vector<bool>& bits, unsigned b);

struct CommonBitsCut {
  std::vector<std::size_t> cut;  // sorted non-input gate ids
  std::size_t block_bits = 1;    // output bits per block
  std::vector<std::vector<std::size_t>> connectivity;  // per output block, input bits
  bool bound_met = true;
  bool fallback_all = false;     // every non-input gate was cut before pruning
};

// Input bits reaching each output block once the cut gates are removed.
std::vector<std::vector<std::size_t>> block_connectivity(const Circuit& c, std::span<const std::size_t> cut,
                                                         std::size_t block_bits);

// Depth-label class scoring, then single-gate greedy, then removal of
// redundant cut gates, until every block reads at most `bound` input bits.
CommonBitsCut find_common_bits(const Circuit& c, std::size_t bound, std::size_t block_bits = 1);

// Smallest cut by exhaustive search over subsets of the non-input gates
// (ties: lexicographically smallest). Empty when there are more than
// `max_candidates` such gates.
std::optional<CommonBitsCut> exact_common_bits(const Circuit& c, std::size_t bound, std::size_t block_bits = 1,
                                               std::size_t max_candidates = 16);

// Non-adaptive structure answering output block j: advice = cut gate values,
// Q_j = input positions (b-bit blocks of the input) feeding block j. Throws
// InvalidCut when `cut.connectivity` disagrees with the circuit.
DSPtr circuit_to_ds(const Circuit& c, const CommonBitsCut& cut, unsigned b,
                    ProblemKind problem = ProblemKind::CircuitBlocks);

// Batcher's bitonic network over n b-bit keys, ascending. n a power of two.
Circuit build_sorting_network(std::size_t n, unsigned b);
// Inverse table of f: [n] -> [n] with ceil(log n)-bit blocks; 0 where no preimage.
Circuit build_inversion_circuit(std::size_t n);
// outputs OR(AND(x0, x1), x_j) for j < n
Circuit build_hub_circuit(std::size_t n);
Circuit build_identity_circuit(std::size_t n);

}  // namespace ncclab
