#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ncclab/bits.hpp"

namespace ncclab {

using Block = std::uint64_t;
using Codeword = std::vector<Block>;

// A set F of l-tuples of m-bit blocks.
class Codebook {
 public:
  Codebook(unsigned block_bits, std::size_t blocks);
  virtual ~Codebook() = default;

  unsigned block_bits() const noexcept { return m_; }
  std::size_t blocks() const noexcept { return l_; }

  virtual bool contains(std::span<const Block> w) const = 0;
  virtual double log2_size() const = 0;
  // Sorted member list when the set is stored explicitly, else nullptr.
  virtual const std::vector<Codeword>* members() const { return nullptr; }

 private:
  unsigned m_;
  std::size_t l_;
};

class ExplicitCodebook final : public Codebook {
 public:
  // Sorts and deduplicates. Throws EmptyCodebook or WidthMismatch.
  ExplicitCodebook(unsigned block_bits, std::size_t blocks, std::vector<Codeword> words);

  bool contains(std::span<const Block> w) const override;
  double log2_size() const override;
  const std::vector<Codeword>* members() const override { return &words_; }

 private:
  std::vector<Codeword> words_;
};

// Pseudo-random set of density 2^-deficit_bits: w belongs iff the top
// deficit_bits of a seeded hash of w are zero. Expected size 2^(m l - deficit).
class HashedCodebook final : public Codebook {
 public:
  HashedCodebook(unsigned block_bits, std::size_t blocks, unsigned deficit_bits, std::uint64_t seed);

  bool contains(std::span<const Block> w) const override;
  double log2_size() const override;

 private:
  unsigned deficit_;
  std::uint64_t seed_;
};

// Prefix-free block code: '0' + gamma(weight + 1) + weight positions of
// ceil(log2 m) bits, or '1' + m raw bits, whichever is shorter (raw on ties).
BitVector encode_correction(Block x, unsigned m);
Block decode_correction(BitReader& in, unsigned m);
std::size_t correction_length(Block x, unsigned m);

// Elias gamma code of v >= 1.
void append_elias_gamma(BitVector& out, std::uint64_t v);
std::uint64_t read_elias_gamma(BitReader& in);

struct CorrectionOutcome {
  Codeword w;                  // chosen member of F
  std::vector<BitVector> beta;  // supervisor -> player i
  std::vector<Block> gamma;    // decoded by player i; alpha_i ^ gamma_i = w_i
  std::size_t total_bits = 0;
  std::uint64_t probes = 0;
};

// Picks w in F minimising sum_i |code(alpha_i ^ w_i)|, ties to the
// lexicographically smallest w. Uses a scan for explicit codebooks and the
// cost-level search otherwise. Throws EmptyCodebook.
CorrectionOutcome correction_protocol(const Codebook& f, std::span<const Block> alpha);
CorrectionOutcome correction_by_scan(const Codebook& f, std::span<const Block> alpha);
// Enumerates candidates by increasing total code length; throws
// SearchSpaceTooLarge after max_probes membership tests.
CorrectionOutcome correction_by_search(const Codebook& f, std::span<const Block> alpha,
                                       std::uint64_t max_probes = std::uint64_t{1} << 26);

// Player side: gamma_i from beta_i alone.
Block player_decode(const BitVector& beta, unsigned m);

// 3l + 2l log(sqrt(eps/2) m + 1) + sqrt(eps/8) m l log(2/eps), base-2 logs.
double correction_length_bound(unsigned m, std::size_t l, double eps);

// No element is a proper prefix of another (equal strings are allowed).
bool is_prefix_free(const std::vector<BitVector>& codes);

}  // namespace ncclab
