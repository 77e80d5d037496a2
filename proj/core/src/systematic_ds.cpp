#include "ncclab/systematic_ds.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace ncclab {

std::string_view problem_name(ProblemKind kind) noexcept {
  switch (kind) {
    case ProblemKind::Inversion: return "inversion";
    case ProblemKind::PolyEval: return "polyeval";
    case ProblemKind::PolyInterp: return "polyinterp";
    case ProblemKind::CircuitBlocks: return "circuit";
  }
  return "unknown";
}

void DSDescriptor::validate() const {
  if (adaptive) return;
  if (query_sets.size() != n) {
    throw Error(Errc::InvalidArgument, name + ": query sets must cover every query in [n]");
  }
  for (std::size_t j = 0; j < n; ++j) {
    const auto& q = query_sets[j];
    if (q.size() > t_queries) {
      throw Error(Errc::InvalidArgument, name + ": |Q_" + std::to_string(j) + "| exceeds t");
    }
    if (!std::is_sorted(q.begin(), q.end()) || std::adjacent_find(q.begin(), q.end()) != q.end()) {
      throw Error(Errc::InvalidArgument, name + ": query sets must be sorted and distinct");
    }
    if (!q.empty() && q.back() >= n) {
      throw Error(Errc::InvalidArgument, name + ": query position out of range");
    }
  }
}

OracleTape::OracleTape(std::vector<std::uint32_t> table) {
  table_.reserve(table.size());
  for (auto v : table) table_.emplace_back(v);
}

OracleTape::OracleTape(std::vector<std::optional<std::uint32_t>> partial)
    : table_(std::move(partial)) {}

std::uint32_t OracleTape::read(std::size_t i) {
  if (i >= table_.size()) throw Error(Errc::InvalidArgument, "oracle position out of range");
  if (allowed_ && !std::binary_search(allowed_->begin(), allowed_->end(), i)) {
    throw Error(Errc::NonAdaptivityViolation,
                "read of position " + std::to_string(i) + " outside the declared query set");
  }
  if (read_log_.size() >= budget_) {
    throw Error(Errc::BudgetExceeded, "more than " + std::to_string(budget_) + " oracle reads");
  }
  if (!table_[i]) {
    throw Error(Errc::MissingMessage, "position " + std::to_string(i) + " is not available");
  }
  read_log_.push_back(i);
  return *table_[i];
}

void OracleTape::arm(std::size_t budget, const std::vector<std::size_t>* allowed) {
  read_log_.clear();
  budget_ = budget;
  allowed_ = allowed;
}

void OracleTape::disarm() {
  budget_ = static_cast<std::size_t>(-1);
  allowed_ = nullptr;
}

SystematicDS::SystematicDS(DSDescriptor descriptor) : descriptor_(std::move(descriptor)) {
  descriptor_.validate();
}

AdviceString SystematicDS::preprocess(std::span<const std::uint32_t> input) const {
  if (input.size() != descriptor_.n) {
    throw Error(Errc::LengthMismatch, descriptor_.name + ": input of length " +
                                          std::to_string(input.size()) + ", expected " +
                                          std::to_string(descriptor_.n));
  }
  AdviceString advice{build_advice(input), descriptor_.s_bits};
  if (advice.size() > descriptor_.s_bits) {
    throw Error(Errc::BudgetExceeded, descriptor_.name + ": advice of " +
                                          std::to_string(advice.size()) + " bits exceeds s = " +
                                          std::to_string(descriptor_.s_bits));
  }
  return advice;
}

std::uint32_t SystematicDS::answer(const AdviceString& advice, std::size_t query,
                                   OracleTape& oracle) const {
  if (query >= descriptor_.n) throw Error(Errc::InvalidArgument, "query out of range");
  if (oracle.size() != descriptor_.n) throw Error(Errc::LengthMismatch, "oracle length");
  if (advice.size() > descriptor_.s_bits) {
    throw Error(Errc::BudgetExceeded, descriptor_.name + ": advice longer than s");
  }
  const std::vector<std::size_t>* allowed =
      descriptor_.adaptive ? nullptr : &descriptor_.query_sets[query];
  oracle.arm(descriptor_.t_queries, allowed);
  struct Disarm {
    OracleTape& tape;
    ~Disarm() { tape.disarm(); }
  } guard{oracle};
  return respond(advice.bits, query, oracle);
}

bool is_permutation(std::span<const std::uint32_t> f) {
  std::vector<bool> seen(f.size(), false);
  for (auto v : f) {
    if (v >= f.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::vector<std::uint32_t> min_preimage_inverse(std::span<const std::uint32_t> f) {
  const std::size_t n = f.size();
  std::vector<std::uint32_t> inv(n, 0);
  std::vector<bool> hit(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    const auto y = f[x];
    if (y < n && !hit[y]) {
      hit[y] = true;
      inv[y] = static_cast<std::uint32_t>(x);
    }
  }
  return inv;
}

namespace {

void require_permutation(std::span<const std::uint32_t> f, const std::string& who) {
  if (!is_permutation(f)) throw Error(Errc::NotAPermutation, who + ": input is not a permutation");
}

std::vector<std::size_t> iota_set(std::size_t begin, std::size_t end) {
  std::vector<std::size_t> s(end - begin);
  std::iota(s.begin(), s.end(), begin);
  return s;
}

// --- inversion ---------------------------------------------------------------

class InvTrivialTable final : public SystematicDS {
 public:
  explicit InvTrivialTable(std::size_t n)
      : SystematicDS({"inv_trivial_table", ProblemKind::Inversion, n, n * ceil_log2(n), 0, false,
                      std::vector<std::vector<std::size_t>>(n)}),
        width_(ceil_log2(n)) {}

 protected:
  BitVector build_advice(std::span<const std::uint32_t> f) const override {
    BitVector bits;
    for (auto x : min_preimage_inverse(f)) bits.append(x, width_);
    return bits;
  }
  std::uint32_t respond(const BitVector& advice, std::size_t y, OracleTape&) const override {
    return static_cast<std::uint32_t>(advice.read(y * width_, width_));
  }

 private:
  unsigned width_;
};

class InvTrivialScan final : public SystematicDS {
 public:
  explicit InvTrivialScan(std::size_t n)
      : SystematicDS({"inv_trivial_scan", ProblemKind::Inversion, n, 0, n, false,
                      std::vector<std::vector<std::size_t>>(n, iota_set(0, n))}) {}

 protected:
  BitVector build_advice(std::span<const std::uint32_t>) const override { return {}; }
  std::uint32_t respond(const BitVector&, std::size_t y, OracleTape& oracle) const override {
    std::optional<std::uint32_t> found;
    for (std::size_t x = 0; x < n(); ++x) {
      if (oracle.read(x) == y && !found) found = static_cast<std::uint32_t>(x);
    }
    return found.value_or(0);
  }
};

class InvBlock final : public SystematicDS {
 public:
  InvBlock(std::size_t n, std::size_t block)
      : SystematicDS({"inv_block", ProblemKind::Inversion, n, n * (1 + ceil_log2(n)), block, false,
                      block_sets(n, block)}),
        block_(block),
        width_(ceil_log2(n)) {}

 protected:
  BitVector build_advice(std::span<const std::uint32_t> f) const override {
    require_permutation(f, "inv_block");
    const auto inv = min_preimage_inverse(f);
    BitVector bits;
    for (std::size_t y = 0; y < n(); ++y) {
      if (in_block(inv[y], y)) {
        bits.push_back(true);
      } else {
        bits.push_back(false);
        bits.append(inv[y], width_);
      }
    }
    return bits;
  }

  std::uint32_t respond(const BitVector& advice, std::size_t y, OracleTape& oracle) const override {
    // Every query reads its whole block, whatever the advice says.
    const std::size_t lo = block_ * (y / block_);
    std::optional<std::uint32_t> hit;
    for (std::size_t x = lo; x < lo + block_; ++x) {
      if (oracle.read(x) == y && !hit) hit = static_cast<std::uint32_t>(x);
    }
    BitReader reader(advice);
    for (std::size_t z = 0; z < y; ++z) {
      if (!reader.take_bit()) reader.take(width_);
    }
    if (reader.take_bit()) {
      if (!hit) throw Error(Errc::Unanswerable, "inv_block: flagged preimage not in block");
      return *hit;
    }
    return static_cast<std::uint32_t>(reader.take(width_));
  }

 private:
  static std::vector<std::vector<std::size_t>> block_sets(std::size_t n, std::size_t block) {
    if (block == 0 || n % block != 0) {
      throw Error(Errc::InvalidArgument, "inv_block: block size must divide n");
    }
    std::vector<std::vector<std::size_t>> sets(n);
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t lo = block * (y / block);
      sets[y] = iota_set(lo, lo + block);
    }
    return sets;
  }
  bool in_block(std::size_t x, std::size_t y) const { return x / block_ == y / block_; }

  std::size_t block_;
  unsigned width_;
};

class Hellman final : public SystematicDS {
 public:
  Hellman(std::size_t n, std::size_t t)
      : SystematicDS({"hellman", ProblemKind::Inversion, n,
                      2 * ceil_log2(n) * ((2 * n + t - 1) / std::max<std::size_t>(t, 1)), 2 * t,
                      true, {}}),
        t_(t),
        width_(ceil_log2(n)) {
    if (t == 0 || t > n) throw Error(Errc::InvalidArgument, "hellman: need 1 <= t <= n");
  }

 protected:
  BitVector build_advice(std::span<const std::uint32_t> f) const override {
    const std::size_t size = f.size();
    std::vector<bool> visited(size, false);
    std::map<std::uint32_t, std::uint32_t> pred_anchor;
    for (std::size_t start = 0; start < size; ++start) {
      if (visited[start]) continue;
      std::vector<std::uint32_t> cycle;
      std::size_t x = start;
      while (!visited[x]) {
        visited[x] = true;
        cycle.push_back(static_cast<std::uint32_t>(x));
        if (f[x] >= size) throw Error(Errc::NotAPermutation, "hellman: value out of range");
        x = f[x];
      }
      if (x != start) throw Error(Errc::NotAPermutation, "hellman: walk did not close a cycle");
      if (cycle.size() <= t_) continue;
      std::vector<std::uint32_t> anchors;
      for (std::size_t k = 0; k < cycle.size(); k += t_) anchors.push_back(cycle[k]);
      for (std::size_t k = 0; k < anchors.size(); ++k) {
        pred_anchor[anchors[k]] = anchors[(k + anchors.size() - 1) % anchors.size()];
      }
    }
    BitVector bits;
    for (const auto& [anchor, pred] : pred_anchor) {
      bits.append(anchor, width_);
      bits.append(pred, width_);
    }
    return bits;
  }

  std::uint32_t respond(const BitVector& advice, std::size_t y, OracleTape& oracle) const override {
    const auto target = static_cast<std::uint32_t>(y);
    auto lookup = [&](std::uint32_t x) -> std::optional<std::uint32_t> {
      if (width_ == 0) return std::nullopt;
      for (std::size_t pos = 0; pos + 2 * width_ <= advice.size(); pos += 2 * width_) {
        if (advice.read(pos, width_) == x) {
          return static_cast<std::uint32_t>(advice.read(pos + width_, width_));
        }
      }
      return std::nullopt;
    };
    // Forward to an anchor; on short cycles the walk itself closes on y.
    std::uint32_t x = target;
    for (std::size_t steps = 0; steps <= t_; ++steps) {
      if (auto pred = lookup(x)) {
        std::uint32_t z = *pred;
        for (std::size_t k = 0; k < t_; ++k) {
          const std::uint32_t next = oracle.read(z);
          if (next == target) return z;
          z = next;
        }
        break;
      }
      const std::uint32_t next = oracle.read(x);
      if (next == target) return x;
      x = next;
    }
    throw Error(Errc::Unanswerable, "hellman: walk did not reach a preimage");
  }

 private:
  std::size_t t_;
  unsigned width_;
};

// --- polynomials ---------------------------------------------------------------

class EvalTable final : public SystematicDS {
 public:
  explicit EvalTable(const RootOfUnity& root)
      : SystematicDS({"eval_table", ProblemKind::PolyEval, root.n,
                      root.n * root.sigma.field().element_bits(), 0, false,
                      std::vector<std::vector<std::size_t>>(root.n)}),
        root_(root),
        width_(root.sigma.field().element_bits()) {}

 protected:
  BitVector build_advice(std::span<const std::uint32_t> alpha) const override {
    const auto values = ffft(to_elements(root_.sigma.field(), alpha), root_);
    BitVector bits;
    for (const auto& v : values) bits.append(v.value(), width_);
    return bits;
  }
  std::uint32_t respond(const BitVector& advice, std::size_t j, OracleTape&) const override {
    return static_cast<std::uint32_t>(advice.read(j * width_, width_));
  }

 private:
  RootOfUnity root_;
  unsigned width_;
};

class EvalScan final : public SystematicDS {
 public:
  explicit EvalScan(const RootOfUnity& root)
      : SystematicDS({"eval_scan", ProblemKind::PolyEval, root.n, 0, root.n, false,
                      std::vector<std::vector<std::size_t>>(root.n, iota_set(0, root.n))}),
        root_(root) {}

 protected:
  BitVector build_advice(std::span<const std::uint32_t>) const override { return {}; }
  std::uint32_t respond(const BitVector&, std::size_t j, OracleTape& oracle) const override {
    const PrimeField field = root_.sigma.field();
    std::vector<FieldElement> alpha;
    for (std::size_t i = 0; i < n(); ++i) alpha.push_back(field.element(oracle.read(i)));
    return poly_eval(alpha, root_.sigma.pow(j)).value();
  }

 private:
  RootOfUnity root_;
};

class InterpTable final : public SystematicDS {
 public:
  explicit InterpTable(const RootOfUnity& root)
      : SystematicDS({"interp_table", ProblemKind::PolyInterp, root.n,
                      root.n * root.sigma.field().element_bits(), 0, false,
                      std::vector<std::vector<std::size_t>>(root.n)}),
        root_(root),
        width_(root.sigma.field().element_bits()) {}

 protected:
  BitVector build_advice(std::span<const std::uint32_t> values) const override {
    const auto coeffs = ffft_inverse(to_elements(root_.sigma.field(), values), root_);
    BitVector bits;
    for (const auto& c : coeffs) bits.append(c.value(), width_);
    return bits;
  }
  std::uint32_t respond(const BitVector& advice, std::size_t j, OracleTape&) const override {
    return static_cast<std::uint32_t>(advice.read(j * width_, width_));
  }

 private:
  RootOfUnity root_;
  unsigned width_;
};

class InterpScan final : public SystematicDS {
 public:
  explicit InterpScan(const RootOfUnity& root)
      : SystematicDS({"interp_scan", ProblemKind::PolyInterp, root.n, 0, root.n, false,
                      std::vector<std::vector<std::size_t>>(root.n, iota_set(0, root.n))}),
        root_(root) {}

 protected:
  BitVector build_advice(std::span<const std::uint32_t>) const override { return {}; }
  std::uint32_t respond(const BitVector&, std::size_t j, OracleTape& oracle) const override {
    // alpha_j = (1/n) sum_i beta_i sigma^(-ij)
    const PrimeField field = root_.sigma.field();
    const FieldElement step = root_.sigma.inv().pow(j);
    FieldElement power = field.one();
    FieldElement acc = field.zero();
    for (std::size_t i = 0; i < n(); ++i) {
      acc += field.element(oracle.read(i)) * power;
      power *= step;
    }
    return (acc / field.element(n())).value();
  }

 private:
  RootOfUnity root_;
};

}  // namespace

DSPtr make_inv_trivial_table(std::size_t n) { return std::make_unique<InvTrivialTable>(n); }
DSPtr make_inv_trivial_scan(std::size_t n) { return std::make_unique<InvTrivialScan>(n); }
DSPtr make_inv_block(std::size_t n, std::size_t block) {
  return std::make_unique<InvBlock>(n, block);
}
DSPtr make_hellman(std::size_t n, std::size_t t) { return std::make_unique<Hellman>(n, t); }

DSPtr make_eval_table(const RootOfUnity& root) { return std::make_unique<EvalTable>(root); }
DSPtr make_eval_table(const PrimeField& field, std::size_t n) {
  return make_eval_table(find_root_of_unity(field, n));
}
DSPtr make_eval_scan(const RootOfUnity& root) { return std::make_unique<EvalScan>(root); }
DSPtr make_interp_table(const RootOfUnity& root) { return std::make_unique<InterpTable>(root); }
DSPtr make_interp_table(const PrimeField& field, std::size_t n) {
  return make_interp_table(find_root_of_unity(field, n));
}
DSPtr make_interp_scan(const RootOfUnity& root) { return std::make_unique<InterpScan>(root); }

DSPtr make_named_ds(std::string_view name, std::size_t n, std::size_t param,
                    const std::optional<RootOfUnity>& root) {
  if (name == "inv_trivial_table") return make_inv_trivial_table(n);
  if (name == "inv_trivial_scan") return make_inv_trivial_scan(n);
  if (name == "inv_block") return make_inv_block(n, param);
  if (name == "hellman") return make_hellman(n, param);
  const bool poly = name == "eval_table" || name == "eval_scan" || name == "interp_table" ||
                    name == "interp_scan";
  if (poly) {
    if (!root) throw Error(Errc::InvalidArgument, std::string(name) + " needs a root of unity");
    if (root->n != n) throw Error(Errc::LengthMismatch, "root order differs from n");
    if (name == "eval_table") return make_eval_table(*root);
    if (name == "eval_scan") return make_eval_scan(*root);
    if (name == "interp_table") return make_interp_table(*root);
    return make_interp_scan(*root);
  }
  throw Error(Errc::InvalidArgument, "unknown data structure '" + std::string(name) + "'");
}

}  // namespace ncclab
