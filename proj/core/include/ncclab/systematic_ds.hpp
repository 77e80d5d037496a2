#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncclab/bits.hpp"
#include "ncclab/field.hpp"

namespace ncclab {

enum class ProblemKind { Inversion, PolyEval, PolyInterp, CircuitBlocks };

std::string_view problem_name(ProblemKind kind) noexcept;

// What a systematic data structure promises: space s (advice bits), query
// time t (oracle reads), and, when non-adaptive, the read set Q_j of every query.
struct DSDescriptor {
  std::string name;
  ProblemKind problem = ProblemKind::Inversion;
  std::size_t n = 0;  // input length; queries range over [n]
  std::size_t s_bits = 0;
  std::size_t t_queries = 0;
  bool adaptive = false;
  std::vector<std::vector<std::size_t>> query_sets;  // sorted, deduplicated

  // Throws InvalidArgument when a non-adaptive descriptor has missing or oversized Q_j.
  void validate() const;
};

// Input oracle handed to answer(). Positions may be unknown (nullopt), which is
// how the reduction models a vertex that only hears some sources.
class OracleTape {
 public:
  OracleTape() = default;
  explicit OracleTape(std::vector<std::uint32_t> table);
  explicit OracleTape(std::vector<std::optional<std::uint32_t>> partial);

  std::size_t size() const noexcept { return table_.size(); }

  // Counted read. Enforces the armed budget and read set; an unknown position
  // throws MissingMessage.
  std::uint32_t read(std::size_t i);

  const std::vector<std::size_t>& read_log() const noexcept { return read_log_; }

  // Resets the log and restricts subsequent reads; allowed == nullptr means any position.
  void arm(std::size_t budget, const std::vector<std::size_t>* allowed);
  void disarm();

 private:
  std::vector<std::optional<std::uint32_t>> table_;
  std::vector<std::size_t> read_log_;
  std::size_t budget_ = static_cast<std::size_t>(-1);
  const std::vector<std::size_t>* allowed_ = nullptr;
};

class SystematicDS {
 public:
  explicit SystematicDS(DSDescriptor descriptor);
  virtual ~SystematicDS() = default;
  SystematicDS(const SystematicDS&) = delete;
  SystematicDS& operator=(const SystematicDS&) = delete;

  const DSDescriptor& descriptor() const noexcept { return descriptor_; }
  std::size_t n() const noexcept { return descriptor_.n; }

  // Full access to the input. Throws BudgetExceeded if the advice outgrows s_bits.
  AdviceString preprocess(std::span<const std::uint32_t> input) const;

  // At most t counted reads, all inside Q_query when non-adaptive. The tape's
  // read_log holds exactly this call's reads afterwards.
  std::uint32_t answer(const AdviceString& advice, std::size_t query, OracleTape& oracle) const;

 protected:
  virtual BitVector build_advice(std::span<const std::uint32_t> input) const = 0;
  virtual std::uint32_t respond(const BitVector& advice, std::size_t query,
                                OracleTape& oracle) const = 0;

 private:
  DSDescriptor descriptor_;
};

using DSPtr = std::unique_ptr<SystematicDS>;

// Free-function spellings of the two procedures.
inline AdviceString preprocess(const SystematicDS& ds, std::span<const std::uint32_t> input) {
  return ds.preprocess(input);
}
inline std::uint32_t answer(const SystematicDS& ds, const AdviceString& advice, std::size_t query,
                            OracleTape& oracle) {
  return ds.answer(advice, query, oracle);
}

// --- inversion -------------------------------------------------------------

bool is_permutation(std::span<const std::uint32_t> f);
// f^-1(y) = min{x : f(x) = y}, and 0 when y has no preimage.
std::vector<std::uint32_t> min_preimage_inverse(std::span<const std::uint32_t> f);

// Stores the whole inverse table: s = n*ceil(log n), t = 0.
DSPtr make_inv_trivial_table(std::size_t n);
// Reads the whole function: s = 0, t = n, Q_y = [n].
DSPtr make_inv_trivial_scan(std::size_t n);

// Non-adaptive block inverter for permutations, block size t dividing n.
// Q_y = {t*floor(y/t), ..., t*floor(y/t) + t - 1}. Advice, in query order
// y = 0..n-1: one flag bit (1 when f^-1(y) lies in Q_y), followed by f^-1(y)
// in ceil(log n) bits MSB-first when the flag is 0.
DSPtr make_inv_block(std::size_t n, std::size_t block);

// Adaptive permutation inverter. On every cycle longer than t, anchors are
// placed every t steps starting from the cycle's smallest element; the advice
// lists (anchor, previous anchor) pairs sorted by anchor, 2*ceil(log n) bits
// each. Shorter cycles get no anchors and are inverted by walking them.
// At most 2t reads per query.
DSPtr make_hellman(std::size_t n, std::size_t t);

// --- polynomials -------------------------------------------------------------

// Input: coefficients alpha_0..alpha_{n-1}. Query j -> p(sigma^j). t = 0.
DSPtr make_eval_table(const RootOfUnity& root);
DSPtr make_eval_table(const PrimeField& field, std::size_t n);
// Reads every coefficient: s = 0, t = n.
DSPtr make_eval_scan(const RootOfUnity& root);

// Input: p(x_0..x_{n-1}) at the fixed points x_i = sigma^i. Query j -> alpha_j. t = 0.
DSPtr make_interp_table(const RootOfUnity& root);
DSPtr make_interp_table(const PrimeField& field, std::size_t n);
// Reads every value: s = 0, t = n.
DSPtr make_interp_scan(const RootOfUnity& root);

// Name-based construction used by the CLI. `param` is the block size / Hellman
// spacing for inversion structures and ignored otherwise; `root` is required
// for the polynomial structures.
DSPtr make_named_ds(std::string_view name, std::size_t n, std::size_t param,
                    const std::optional<RootOfUnity>& root = std::nullopt);

}  // namespace ncclab
