#include "ncclab/circuit.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ncclab/error.hpp"

namespace ncclab {

std::string_view gate_kind_name(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::Input: return "INPUT";
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Not: return "NOT";
    case GateKind::Output: return "OUTPUT";
  }
  return "?";
}

std::size_t Circuit::push(Gate g) {
  const std::size_t id = gates_.size();
  auto check = [&](std::size_t op) {
    if (op >= id) throw Error(Errc::InvalidArgument, "operand " + std::to_string(op) + " does not precede gate");
    if (gates_[op].kind == GateKind::Output) throw Error(Errc::InvalidArgument, "OUTPUT gates cannot feed other gates");
  };
  switch (g.kind) {
    case GateKind::Input: break;
    case GateKind::And:
    case GateKind::Or: check(g.a); check(g.b); break;
    case GateKind::Not:
    case GateKind::Output: check(g.a); break;
  }
  gates_.push_back(g);
  input_pos_.push_back(g.kind == GateKind::Input ? inputs_.size() : static_cast<std::size_t>(-1));
  if (g.kind == GateKind::Input) inputs_.push_back(id);
  if (g.kind == GateKind::Output) outputs_.push_back(id);
  return id;
}

std::size_t Circuit::add_input() { return push({GateKind::Input, 0, 0}); }
std::size_t Circuit::add_and(std::size_t a, std::size_t b) { return push({GateKind::And, a, b}); }
std::size_t Circuit::add_or(std::size_t a, std::size_t b) { return push({GateKind::Or, a, b}); }
std::size_t Circuit::add_not(std::size_t a) { return push({GateKind::Not, a, 0}); }
std::size_t Circuit::add_output(std::size_t a) { return push({GateKind::Output, a, 0}); }
std::size_t Circuit::add_zero(std::size_t any_gate) { return add_and(any_gate, add_not(any_gate)); }

std::vector<std::size_t> Circuit::depths() const {
  std::vector<std::size_t> d(gates_.size(), 0);
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    switch (g.kind) {
      case GateKind::Input: break;
      case GateKind::And:
      case GateKind::Or: d[i] = std::max(d[g.a], d[g.b]) + 1; break;
      case GateKind::Not:
      case GateKind::Output: d[i] = d[g.a] + 1; break;
    }
  }
  return d;
}

std::size_t Circuit::depth() const {
  const auto d = depths();
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

std::vector<bool> eval_gates(const Circuit& c, const std::vector<bool>& input) {
  if (input.size() != c.n_in()) {
    throw Error(Errc::WidthMismatch, "circuit expects " + std::to_string(c.n_in()) + " input bits, got " +
                                         std::to_string(input.size()));
  }
  std::vector<bool> v(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gate(i);
    switch (g.kind) {
      case GateKind::Input: v[i] = input[c.input_position(i)]; break;
      case GateKind::And: v[i] = v[g.a] && v[g.b]; break;
      case GateKind::Or: v[i] = v[g.a] || v[g.b]; break;
      case GateKind::Not: v[i] = !v[g.a]; break;
      case GateKind::Output: v[i] = v[g.a]; break;
    }
  }
  return v;
}

std::vector<bool> eval_circuit(const Circuit& c, const std::vector<bool>& input) {
  const auto v = eval_gates(c, input);
  std::vector<bool> out;
  out.reserve(c.n_out());
  for (std::size_t id : c.outputs()) out.push_back(v[id]);
  return out;
}

Circuit parse_circuit(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n_in = 0;
  std::size_t n_out = 0;
  bool header = false;
  Circuit c;
  auto fail = [&](const std::string& msg) {
    return Error(Errc::ParseError, "line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!header) {
      if (tag != "circuit" || !(ls >> n_in >> n_out)) throw fail("expected 'circuit <n_in> <n_out>'");
      header = true;
      continue;
    }
    std::size_t id = 0;
    std::string kind;
    if (tag != "gate" || !(ls >> id >> kind)) throw fail("expected 'gate <id> <KIND> ...'");
    if (id != c.size()) throw fail("gate ids must be consecutive from 0");
    std::size_t a = 0;
    std::size_t b = 0;
    try {
      if (kind == "INPUT") {
        c.add_input();
      } else if (kind == "AND" || kind == "OR") {
        if (!(ls >> a >> b)) throw fail(kind + " needs two operands");
        kind == "AND" ? c.add_and(a, b) : c.add_or(a, b);
      } else if (kind == "NOT" || kind == "OUTPUT") {
        if (!(ls >> a)) throw fail(kind + " needs one operand");
        kind == "NOT" ? c.add_not(a) : c.add_output(a);
      } else {
        throw fail("unknown gate kind '" + kind + "'");
      }
    } catch (const Error& e) {
      if (e.code() == Errc::ParseError) throw;
      throw fail(e.what());
    }
    std::string extra;
    if (ls >> extra) throw fail("trailing tokens");
  }
  if (!header) throw Error(Errc::ParseError, "missing circuit header");
  if (c.n_in() != n_in || c.n_out() != n_out) {
    throw Error(Errc::ParseError, "header declares " + std::to_string(n_in) + "/" + std::to_string(n_out) +
                                      " inputs/outputs, netlist has " + std::to_string(c.n_in()) + "/" +
                                      std::to_string(c.n_out()));
  }
  return c;
}

Circuit read_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  return parse_circuit(in);
}

void write_circuit(std::ostream& out, const Circuit& c) {
  out << "circuit " << c.n_in() << ' ' << c.n_out() << '\n';
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gate(i);
    out << "gate " << i << ' ' << gate_kind_name(g.kind);
    if (g.kind == GateKind::And || g.kind == GateKind::Or) out << ' ' << g.a << ' ' << g.b;
    if (g.kind == GateKind::Not || g.kind == GateKind::Output) out << ' ' << g.a;
    out << '\n';
  }
}

std::vector<bool> blocks_to_bits(std::span<const std::uint32_t> blocks, unsigned b) {
  std::vector<bool> bits;
  bits.reserve(blocks.size() * b);
  for (auto v : blocks) {
    for (unsigned k = b; k-- > 0;) bits.push_back(((v >> k) & 1U) != 0);
  }
  return bits;
}

std::vector<std::uint32_t> bits_to_blocks(const std::vector<bool>& bits, unsigned b) {
  if (b == 0 || bits.size() % b != 0) throw Error(Errc::WidthMismatch, "bit count is not a multiple of b");
  std::vector<std::uint32_t> out(bits.size() / b, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) out[i / b] = (out[i / b] << 1) | (bits[i] ? 1U : 0U);
  return out;
}

// --- common bits -------------------------------------------------------------

namespace {

using Words = std::vector<std::uint64_t>;

class Supports {
 public:
  Supports(const Circuit& c, const std::vector<bool>& is_cut) : words_((c.n_in() + 63) / 64) {
    sets_.assign(c.size(), Words(words_, 0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (is_cut[i]) continue;
      const Gate& g = c.gate(i);
      auto& s = sets_[i];
      switch (g.kind) {
        case GateKind::Input: {
          const std::size_t p = c.input_position(i);
          s[p / 64] |= std::uint64_t{1} << (p % 64);
          break;
        }
        case GateKind::And:
        case GateKind::Or:
          for (std::size_t w = 0; w < words_; ++w) s[w] = sets_[g.a][w] | sets_[g.b][w];
          break;
        case GateKind::Not:
        case GateKind::Output: s = sets_[g.a]; break;
      }
    }
  }

  Words block(const Circuit& c, std::size_t j, std::size_t bb) const {
    Words acc(words_, 0);
    for (std::size_t k = j * bb; k < (j + 1) * bb; ++k) {
      const auto& s = sets_[c.outputs()[k]];
      for (std::size_t w = 0; w < words_; ++w) acc[w] |= s[w];
    }
    return acc;
  }

 private:
  std::size_t words_;
  std::vector<Words> sets_;
};

std::size_t popcount(const Words& w) {
  std::size_t n = 0;
  for (auto x : w) n += static_cast<std::size_t>(std::popcount(x));
  return n;
}

std::size_t block_count(const Circuit& c, std::size_t bb) {
  if (bb == 0 || c.n_out() % bb != 0) throw Error(Errc::WidthMismatch, "outputs do not split into blocks");
  return c.n_out() / bb;
}

std::size_t excess(const Circuit& c, const std::vector<bool>& is_cut, std::size_t bound, std::size_t bb) {
  const Supports sup(c, is_cut);
  std::size_t total = 0;
  for (std::size_t j = 0; j < block_count(c, bb); ++j) {
    const std::size_t k = popcount(sup.block(c, j, bb));
    if (k > bound) total += k - bound;
  }
  return total;
}

CommonBitsCut make_cut(const Circuit& c, const std::vector<bool>& is_cut, std::size_t bound, std::size_t bb) {
  CommonBitsCut out;
  out.block_bits = bb;
  for (std::size_t i = 0; i < is_cut.size(); ++i) {
    if (is_cut[i]) out.cut.push_back(i);
  }
  out.connectivity = block_connectivity(c, out.cut, bb);
  out.bound_met = std::all_of(out.connectivity.begin(), out.connectivity.end(),
                              [&](const auto& s) { return s.size() <= bound; });
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> block_connectivity(const Circuit& c, std::span<const std::size_t> cut,
                                                         std::size_t block_bits) {
  std::vector<bool> is_cut(c.size(), false);
  for (std::size_t g : cut) {
    if (g >= c.size() || c.gate(g).kind == GateKind::Input) {
      throw Error(Errc::InvalidCut, "cut may only contain non-input gates");
    }
    is_cut[g] = true;
  }
  const Supports sup(c, is_cut);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t j = 0; j < block_count(c, block_bits); ++j) {
    const Words w = sup.block(c, j, block_bits);
    std::vector<std::size_t> bits;
    for (std::size_t p = 0; p < c.n_in(); ++p) {
      if ((w[p / 64] >> (p % 64)) & 1U) bits.push_back(p);
    }
    out.push_back(std::move(bits));
  }
  return out;
}

CommonBitsCut find_common_bits(const Circuit& c, std::size_t bound, std::size_t block_bits) {
  std::vector<bool> is_cut(c.size(), false);
  std::size_t current = excess(c, is_cut, bound, block_bits);
  const auto depth = c.depths();
  const unsigned label_bits = static_cast<unsigned>(std::bit_width(c.depth()));
  bool fallback = false;

  while (current > 0) {
    // Depth-label classes: gates with an out-edge whose endpoint labels differ at bit k.
    double best_score = 0.0;
    std::vector<std::size_t> best_set;
    for (unsigned k = 0; k < label_bits; ++k) {
      std::vector<bool> in_class(c.size(), false);
      for (std::size_t v = 0; v < c.size(); ++v) {
        const Gate& g = c.gate(v);
        auto mark = [&](std::size_t u) {
          if (((depth[u] >> k) & 1U) != ((depth[v] >> k) & 1U)) in_class[u] = true;
        };
        if (g.kind == GateKind::Input) continue;
        mark(g.a);
        if (g.kind == GateKind::And || g.kind == GateKind::Or) mark(g.b);
      }
      std::vector<std::size_t> set;
      for (std::size_t u = 0; u < c.size(); ++u) {
        if (in_class[u] && !is_cut[u] && c.gate(u).kind != GateKind::Input) set.push_back(u);
      }
      if (set.empty()) continue;
      auto trial = is_cut;
      for (auto u : set) trial[u] = true;
      const std::size_t after = excess(c, trial, bound, block_bits);
      const double score = static_cast<double>(current - after) / static_cast<double>(set.size());
      if (after < current && score > best_score) {
        best_score = score;
        best_set = std::move(set);
      }
    }
    if (best_set.empty()) {
      std::size_t best_after = current;
      for (std::size_t u = 0; u < c.size(); ++u) {
        if (is_cut[u] || c.gate(u).kind == GateKind::Input) continue;
        is_cut[u] = true;
        const std::size_t after = excess(c, is_cut, bound, block_bits);
        is_cut[u] = false;
        if (after < best_after) {
          best_after = after;
          best_set = {u};
        }
      }
    }
    if (best_set.empty()) {
      for (std::size_t u = 0; u < c.size(); ++u) is_cut[u] = c.gate(u).kind != GateKind::Input;
      fallback = true;
      current = 0;
      break;
    }
    for (auto u : best_set) is_cut[u] = true;
    current = excess(c, is_cut, bound, block_bits);
  }

  for (std::size_t u = c.size(); u-- > 0;) {
    if (!is_cut[u]) continue;
    is_cut[u] = false;
    if (excess(c, is_cut, bound, block_bits) > 0) is_cut[u] = true;
  }
  CommonBitsCut out = make_cut(c, is_cut, bound, block_bits);
  out.fallback_all = fallback;
  return out;
}

std::optional<CommonBitsCut> exact_common_bits(const Circuit& c, std::size_t bound, std::size_t block_bits,
                                               std::size_t max_candidates) {
  std::vector<std::size_t> cand;
  for (std::size_t u = 0; u < c.size(); ++u) {
    if (c.gate(u).kind != GateKind::Input) cand.push_back(u);
  }
  if (cand.size() > max_candidates) return std::nullopt;
  const std::size_t m = cand.size();
  for (std::size_t size = 0; size <= m; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    for (;;) {
      std::vector<bool> is_cut(c.size(), false);
      for (auto i : pick) is_cut[cand[i]] = true;
      if (excess(c, is_cut, bound, block_bits) == 0) return make_cut(c, is_cut, bound, block_bits);
      // next combination in lexicographic order
      std::size_t i = size;
      while (i > 0 && pick[i - 1] == m - size + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return std::nullopt;  // unreachable: cutting every candidate always works
}

// --- circuit -> data structure -----------------------------------------------

namespace {

class CircuitDS final : public SystematicDS {
 public:
  CircuitDS(DSDescriptor d, Circuit c, std::vector<std::size_t> cut, unsigned b,
            std::vector<std::vector<std::size_t>> cones)
      : SystematicDS(std::move(d)), c_(std::move(c)), cut_(std::move(cut)), b_(b), cones_(std::move(cones)) {
    cut_index_.assign(c_.size(), kNone);
    for (std::size_t i = 0; i < cut_.size(); ++i) cut_index_[cut_[i]] = i;
  }

 protected:
  BitVector build_advice(std::span<const std::uint32_t> input) const override {
    const auto v = eval_gates(c_, blocks_to_bits(input, b_));
    BitVector adv;
    for (std::size_t g : cut_) adv.push_back(v[g]);
    return adv;
  }

  std::uint32_t respond(const BitVector& advice, std::size_t query, OracleTape& oracle) const override {
    if (advice.size() != cut_.size()) throw Error(Errc::InvalidCut, "advice length differs from the cut size");
    std::vector<std::optional<bool>> in_bits(c_.n_in());
    for (std::size_t pos : descriptor().query_sets[query]) {
      const std::uint32_t v = oracle.read(pos);
      for (unsigned k = 0; k < b_; ++k) in_bits[pos * b_ + k] = ((v >> (b_ - 1 - k)) & 1U) != 0;
    }
    std::vector<std::optional<bool>> val(c_.size());
    for (std::size_t g : cones_[query]) {
      if (cut_index_[g] != kNone) {
        val[g] = advice[cut_index_[g]];
        continue;
      }
      const Gate& gate = c_.gate(g);
      auto get = [&](std::size_t x) {
        if (!val[x]) throw Error(Errc::InvalidCut, "gate " + std::to_string(x) + " unavailable below block");
        return *val[x];
      };
      switch (gate.kind) {
        case GateKind::Input: {
          const auto& bit = in_bits[c_.input_position(g)];
          if (!bit) throw Error(Errc::InvalidCut, "input bit outside Q_j reached");
          val[g] = *bit;
          break;
        }
        case GateKind::And: val[g] = get(gate.a) && get(gate.b); break;
        case GateKind::Or: val[g] = get(gate.a) || get(gate.b); break;
        case GateKind::Not: val[g] = !get(gate.a); break;
        case GateKind::Output: val[g] = get(gate.a); break;
      }
    }
    const std::size_t ob = c_.n_out() / descriptor().n;
    std::uint32_t out = 0;
    for (std::size_t k = query * ob; k < (query + 1) * ob; ++k) out = (out << 1) | (*val[c_.outputs()[k]] ? 1U : 0U);
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  Circuit c_;
  std::vector<std::size_t> cut_;
  std::vector<std::size_t> cut_index_;
  unsigned b_;
  std::vector<std::vector<std::size_t>> cones_;  // per block, ascending gate ids to evaluate
};

}  // namespace

DSPtr circuit_to_ds(const Circuit& c, const CommonBitsCut& cut, unsigned b, ProblemKind problem) {
  if (b == 0 || b > 31 || c.n_in() % b != 0) throw Error(Errc::UnsupportedWidth, "input width is not a multiple of b");
  const std::size_t n = c.n_in() / b;
  if (c.n_out() % n != 0 || cut.block_bits * n != c.n_out()) {
    throw Error(Errc::WidthMismatch, "outputs must form n blocks of cut.block_bits bits");
  }
  std::vector<std::size_t> sorted_cut = cut.cut;
  std::sort(sorted_cut.begin(), sorted_cut.end());
  if (block_connectivity(c, sorted_cut, cut.block_bits) != cut.connectivity) {
    throw Error(Errc::InvalidCut, "connectivity map does not match the circuit and cut");
  }
  std::vector<bool> is_cut(c.size(), false);
  for (auto g : sorted_cut) is_cut[g] = true;

  DSDescriptor d;
  d.name = "circuit";
  d.problem = problem;
  d.n = n;
  d.s_bits = sorted_cut.size();
  d.adaptive = false;
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> q;
    for (std::size_t bit : cut.connectivity[j]) q.push_back(bit / b);
    q.erase(std::unique(q.begin(), q.end()), q.end());
    d.t_queries = std::max(d.t_queries, q.size());
    d.query_sets.push_back(std::move(q));

    std::vector<bool> need(c.size(), false);
    for (std::size_t k = j * cut.block_bits; k < (j + 1) * cut.block_bits; ++k) need[c.outputs()[k]] = true;
    for (std::size_t g = c.size(); g-- > 0;) {
      if (!need[g] || is_cut[g]) continue;
      const Gate& gate = c.gate(g);
      if (gate.kind == GateKind::Input) continue;
      need[gate.a] = true;
      if (gate.kind == GateKind::And || gate.kind == GateKind::Or) need[gate.b] = true;
    }
    std::vector<std::size_t> cone;
    for (std::size_t g = 0; g < c.size(); ++g) {
      if (need[g]) cone.push_back(g);
    }
    cones.push_back(std::move(cone));
  }
  return std::make_unique<CircuitDS>(std::move(d), c, std::move(sorted_cut), b, std::move(cones));
}

// --- fixtures ------------------------------------------------------------------

namespace {

// (lo, hi) = (min, max) of two b-bit words, MSB first.
void compare_exchange(Circuit& c, std::vector<std::size_t>& a, std::vector<std::size_t>& b, bool ascending) {
  const std::size_t w = a.size();
  // greater = a > b, scanning from the most significant bit with an equality prefix
  std::size_t greater = 0;
  std::size_t eq = 0;
  bool have = false;
  for (std::size_t k = 0; k < w; ++k) {
    const std::size_t na = c.add_not(a[k]);
    const std::size_t nb = c.add_not(b[k]);
    std::size_t gt = c.add_and(a[k], nb);
    const std::size_t lt = c.add_and(na, b[k]);
    const std::size_t e = c.add_not(c.add_or(gt, lt));
    if (have) {
      gt = c.add_and(eq, gt);
      greater = c.add_or(greater, gt);
      eq = c.add_and(eq, e);
    } else {
      greater = gt;
      eq = e;
      have = true;
    }
  }
  // swap when out of order
  std::size_t swap = greater;
  if (!ascending) {
    // descending: swap when a < b, i.e. neither greater nor equal
    swap = c.add_not(c.add_or(greater, eq));
  }
  const std::size_t keep = c.add_not(swap);
  for (std::size_t k = 0; k < w; ++k) {
    const std::size_t lo = c.add_or(c.add_and(keep, a[k]), c.add_and(swap, b[k]));
    const std::size_t hi = c.add_or(c.add_and(keep, b[k]), c.add_and(swap, a[k]));
    a[k] = lo;
    b[k] = hi;
  }
}

}  // namespace

Circuit build_sorting_network(std::size_t n, unsigned b) {
  if (n == 0 || !std::has_single_bit(n)) throw Error(Errc::UnsupportedWidth, "bitonic sorter needs n a power of two");
  if (b == 0 || b > 31) throw Error(Errc::UnsupportedWidth, "key width must be in [1, 31]");
  Circuit c;
  std::vector<std::vector<std::size_t>> keys(n, std::vector<std::size_t>(b));
  for (auto& k : keys) {
    for (auto& bit : k) bit = c.add_input();
  }
  for (std::size_t k = 2; k <= n; k <<= 1) {
    for (std::size_t j = k >> 1; j > 0; j >>= 1) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t l = i ^ j;
        if (l > i) compare_exchange(c, keys[i], keys[l], (i & k) == 0);
      }
    }
  }
  for (auto& k : keys) {
    for (auto bit : k) c.add_output(bit);
  }
  return c;
}

Circuit build_inversion_circuit(std::size_t n) {
  if (n < 2 || n > (std::size_t{1} << 16)) throw Error(Errc::UnsupportedWidth, "inversion circuit needs 2 <= n <= 2^16");
  const unsigned w = ceil_log2(n);
  Circuit c;
  std::vector<std::vector<std::size_t>> f(n, std::vector<std::size_t>(w));
  std::vector<std::vector<std::size_t>> nf(n, std::vector<std::size_t>(w));
  for (auto& x : f) {
    for (auto& bit : x) bit = c.add_input();
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (unsigned k = 0; k < w; ++k) nf[x][k] = c.add_not(f[x][k]);
  }
  const std::size_t zero = c.add_zero(f[0][0]);

  std::vector<std::vector<std::size_t>> out_bits(n, std::vector<std::size_t>(w, zero));
  for (std::size_t y = 0; y < n; ++y) {
    std::vector<bool> have(w, false);
    std::size_t seen = 0;  // OR of eq[x'][y] for x' < x
    for (std::size_t x = 0; x < n; ++x) {
      // eq = [f(x) == y], literal k is f bit or its negation
      std::size_t eq = 0;
      for (unsigned k = 0; k < w; ++k) {
        const bool yk = ((y >> (w - 1 - k)) & 1U) != 0;
        const std::size_t lit = yk ? f[x][k] : nf[x][k];
        eq = k == 0 ? lit : c.add_and(eq, lit);
      }
      const std::size_t first = x == 0 ? eq : c.add_and(eq, c.add_not(seen));
      seen = x == 0 ? eq : c.add_or(seen, eq);
      for (unsigned k = 0; k < w; ++k) {
        if (((x >> (w - 1 - k)) & 1U) == 0) continue;
        out_bits[y][k] = have[k] ? c.add_or(out_bits[y][k], first) : first;
        have[k] = true;
      }
    }
  }
  for (auto& block : out_bits) {
    for (auto bit : block) c.add_output(bit);
  }
  return c;
}

Circuit build_hub_circuit(std::size_t n) {
  if (n < 2) throw Error(Errc::UnsupportedWidth, "hub circuit needs n >= 2");
  Circuit c;
  std::vector<std::size_t> x(n);
  for (auto& v : x) v = c.add_input();
  const std::size_t g = c.add_and(x[0], x[1]);
  std::vector<std::size_t> ors;
  for (std::size_t j = 0; j < n; ++j) ors.push_back(c.add_or(g, x[j]));
  for (auto o : ors) c.add_output(o);
  return c;
}

Circuit build_identity_circuit(std::size_t n) {
  Circuit c;
  std::vector<std::size_t> x(n);
  for (auto& v : x) v = c.add_input();
  for (auto v : x) c.add_output(v);
  return c;
}

}  // namespace ncclab
