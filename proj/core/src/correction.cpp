#include "ncclab/correction.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "ncclab/error.hpp"

namespace ncclab {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_alpha(const Codebook& f, std::span<const Block> alpha) {
  if (alpha.size() != f.blocks()) throw Error(Errc::WidthMismatch, "alpha has the wrong number of blocks");
  for (Block a : alpha) {
    if (f.block_bits() < 64 && (a >> f.block_bits()) != 0) {
      throw Error(Errc::WidthMismatch, "alpha block wider than m bits");
    }
  }
}

CorrectionOutcome finish(const Codebook& f, std::span<const Block> alpha, Codeword w,
                         std::uint64_t probes) {
  CorrectionOutcome out;
  out.w = std::move(w);
  out.probes = probes;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    out.beta.push_back(encode_correction(alpha[i] ^ out.w[i], f.block_bits()));
    out.total_bits += out.beta.back().size();
    out.gamma.push_back(player_decode(out.beta.back(), f.block_bits()));
  }
  return out;
}

}  // namespace

Codebook::Codebook(unsigned block_bits, std::size_t blocks) : m_(block_bits), l_(blocks) {
  if (block_bits == 0 || block_bits > 32) throw Error(Errc::UnsupportedWidth, "block width must be in [1, 32]");
  if (blocks == 0) throw Error(Errc::InvalidArgument, "codebook needs at least one block");
}

ExplicitCodebook::ExplicitCodebook(unsigned block_bits, std::size_t blocks, std::vector<Codeword> words)
    : Codebook(block_bits, blocks), words_(std::move(words)) {
  if (words_.empty()) throw Error(Errc::EmptyCodebook, "F is empty");
  for (const auto& w : words_) {
    if (w.size() != blocks) throw Error(Errc::WidthMismatch, "codeword has the wrong number of blocks");
    for (Block b : w) {
      if ((b >> block_bits) != 0) throw Error(Errc::WidthMismatch, "codeword block wider than m bits");
    }
  }
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

bool ExplicitCodebook::contains(std::span<const Block> w) const {
  return std::binary_search(words_.begin(), words_.end(), w,
                            [](const auto& a, const auto& b) {
                              return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
                            });
}

double ExplicitCodebook::log2_size() const { return std::log2(static_cast<double>(words_.size())); }

HashedCodebook::HashedCodebook(unsigned block_bits, std::size_t blocks, unsigned deficit_bits,
                               std::uint64_t seed)
    : Codebook(block_bits, blocks), deficit_(deficit_bits), seed_(seed) {
  if (deficit_bits >= 64) throw Error(Errc::InvalidArgument, "density deficit must be below 64 bits");
}

bool HashedCodebook::contains(std::span<const Block> w) const {
  if (w.size() != blocks()) return false;
  if (deficit_ == 0) return true;
  std::uint64_t h = mix64(seed_);
  for (Block b : w) h = mix64(h ^ b);
  return (h >> (64 - deficit_)) == 0;
}

double HashedCodebook::log2_size() const {
  return static_cast<double>(block_bits()) * static_cast<double>(blocks()) - deficit_;
}

void append_elias_gamma(BitVector& out, std::uint64_t v) {
  if (v == 0) throw Error(Errc::InvalidArgument, "Elias gamma needs v >= 1");
  const unsigned width = static_cast<unsigned>(std::bit_width(v));
  for (unsigned i = 1; i < width; ++i) out.push_back(false);
  out.append(v, width);
}

std::uint64_t read_elias_gamma(BitReader& in) {
  unsigned zeros = 0;
  while (!in.take_bit()) {
    if (++zeros > 63) throw Error(Errc::ParseError, "Elias gamma prefix too long");
  }
  return (std::uint64_t{1} << zeros) | (zeros ? in.take(zeros) : 0);
}

std::size_t correction_length(Block x, unsigned m) {
  const std::size_t weight = static_cast<std::size_t>(std::popcount(x));
  const std::size_t gamma = 2 * static_cast<std::size_t>(std::bit_width(weight + 1)) - 1;
  const std::size_t sparse = 1 + gamma + weight * ceil_log2(m);
  const std::size_t raw = 1 + m;
  return std::min(sparse, raw);
}

BitVector encode_correction(Block x, unsigned m) {
  BitVector out;
  const std::size_t weight = static_cast<std::size_t>(std::popcount(x));
  const std::size_t gamma = 2 * static_cast<std::size_t>(std::bit_width(weight + 1)) - 1;
  const unsigned pos_bits = ceil_log2(m);
  if (1 + gamma + weight * pos_bits < 1 + static_cast<std::size_t>(m)) {
    out.push_back(false);
    append_elias_gamma(out, weight + 1);
    for (unsigned p = 0; p < m; ++p) {
      if ((x >> p) & 1U) out.append(p, pos_bits);
    }
  } else {
    out.push_back(true);
    out.append(x, m);
  }
  return out;
}

Block decode_correction(BitReader& in, unsigned m) {
  if (in.take_bit()) return in.take(m);
  const std::uint64_t weight = read_elias_gamma(in) - 1;
  const unsigned pos_bits = ceil_log2(m);
  Block x = 0;
  for (std::uint64_t i = 0; i < weight; ++i) {
    const std::uint64_t p = pos_bits ? in.take(pos_bits) : 0;
    if (p >= m) throw Error(Errc::ParseError, "position outside the block");
    x |= Block{1} << p;
  }
  return x;
}

Block player_decode(const BitVector& beta, unsigned m) {
  BitReader r(beta);
  const Block x = decode_correction(r, m);
  if (r.remaining() != 0) throw Error(Errc::ParseError, "trailing bits after correction message");
  return x;
}

CorrectionOutcome correction_by_scan(const Codebook& f, std::span<const Block> alpha) {
  check_alpha(f, alpha);
  const auto* words = f.members();
  if (words == nullptr) throw Error(Errc::InvalidArgument, "scan needs an explicit codebook");
  if (words->empty()) throw Error(Errc::EmptyCodebook, "F is empty");
  std::size_t best_cost = std::numeric_limits<std::size_t>::max();
  const Codeword* best = nullptr;
  for (const auto& w : *words) {
    std::size_t cost = 0;
    for (std::size_t i = 0; i < alpha.size(); ++i) cost += correction_length(alpha[i] ^ w[i], f.block_bits());
    if (cost < best_cost) {  // members are sorted, so the first minimum is lexicographically least
      best_cost = cost;
      best = &w;
    }
  }
  return finish(f, alpha, *best, words->size());
}

CorrectionOutcome correction_by_search(const Codebook& f, std::span<const Block> alpha,
                                       std::uint64_t max_probes) {
  check_alpha(f, alpha);
  const unsigned m = f.block_bits();
  if (m > 20) throw Error(Errc::SearchSpaceTooLarge, "cost-level search supports m <= 20");
  const std::size_t l = f.blocks();

  // Patterns x (the correction alpha_i ^ w_i) grouped by code length.
  std::map<std::size_t, std::vector<Block>> by_cost;
  for (Block x = 0; x < (Block{1} << m); ++x) by_cost[correction_length(x, m)].push_back(x);
  std::vector<std::size_t> costs;
  std::vector<std::vector<Block>> patterns;
  for (auto& [c, xs] : by_cost) {
    costs.push_back(c);
    patterns.push_back(std::move(xs));
  }
  const std::size_t lo = costs.front() * l;
  const std::size_t hi = costs.back() * l;

  std::uint64_t probes = 0;
  std::vector<std::size_t> cls(l);
  std::vector<std::size_t> idx(l);
  Codeword w(l);
  Codeword best;

  // Enumerate class assignments with exactly `total` cost, then every
  // pattern combination inside them.
  auto scan_classes = [&]() {
    std::fill(idx.begin(), idx.end(), 0);
    for (;;) {
      for (std::size_t i = 0; i < l; ++i) w[i] = alpha[i] ^ patterns[cls[i]][idx[i]];
      if (++probes > max_probes) {
        throw Error(Errc::SearchSpaceTooLarge, "correction search exceeded its probe budget");
      }
      if (f.contains(w) && (best.empty() || w < best)) best = w;
      std::size_t i = 0;
      while (i < l && ++idx[i] == patterns[cls[i]].size()) idx[i++] = 0;
      if (i == l) return;
    }
  };
  auto assign = [&](auto&& self, std::size_t pos, std::size_t remaining) -> void {
    if (pos == l) {
      if (remaining == 0) scan_classes();
      return;
    }
    const std::size_t left = l - pos - 1;
    for (std::size_t c = 0; c < costs.size(); ++c) {
      if (costs[c] > remaining) break;
      const std::size_t rest = remaining - costs[c];
      if (rest < costs.front() * left || rest > costs.back() * left) continue;
      cls[pos] = c;
      self(self, pos + 1, rest);
    }
  };

  for (std::size_t total = lo; total <= hi; ++total) {
    assign(assign, 0, total);
    if (!best.empty()) return finish(f, alpha, best, probes);
  }
  throw Error(Errc::EmptyCodebook, "no member of F found");
}

CorrectionOutcome correction_protocol(const Codebook& f, std::span<const Block> alpha) {
  if (f.members() != nullptr) return correction_by_scan(f, alpha);
  return correction_by_search(f, alpha);
}

double correction_length_bound(unsigned m, std::size_t l, double eps) {
  const double md = static_cast<double>(m);
  const double ld = static_cast<double>(l);
  return 3.0 * ld + 2.0 * ld * std::log2(std::sqrt(eps / 2.0) * md + 1.0) +
         std::sqrt(eps / 8.0) * md * ld * std::log2(2.0 / eps);
}

bool is_prefix_free(const std::vector<BitVector>& codes) {
  for (std::size_t a = 0; a < codes.size(); ++a) {
    for (std::size_t b = 0; b < codes.size(); ++b) {
      const auto& x = codes[a];
      const auto& y = codes[b];
      if (x.size() >= y.size()) continue;
      bool prefix = true;
      for (std::size_t i = 0; i < x.size() && prefix; ++i) prefix = x[i] == y[i];
      if (prefix) return false;
    }
  }
  return true;
}

}  // namespace ncclab
