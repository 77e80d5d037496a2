#include "ncclab/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "ncclab/error.hpp"

namespace ncclab {

namespace {

std::uint32_t lookup_fix(const std::vector<std::pair<std::size_t, std::uint32_t>>& fixes, std::size_t key,
                         const char* what) {
  auto it = std::lower_bound(fixes.begin(), fixes.end(), std::make_pair(key, std::uint32_t{0}),
                             [](const auto& a, const auto& b) { return a.first < b.first; });
  if (it == fixes.end() || it->first != key) {
    throw Error(Errc::MissingMessage, std::string(what) + " " + std::to_string(key) + " is not fixed");
  }
  return it->second;
}

// in-neighbours per middle vertex (sources) and per last-layer vertex (middles)
struct Incidence {
  std::vector<std::vector<std::size_t>> into_middle;
  std::vector<std::vector<std::size_t>> into_last;
};

Incidence incidence(const LayeredGraph& g) {
  Incidence inc;
  inc.into_middle.resize(g.n);
  inc.into_last.resize(g.n);
  for (auto [a, b] : g.edges) {
    if (b < 2 * g.n) {
      inc.into_middle[b - g.n].push_back(a);
    } else {
      inc.into_last[b - 2 * g.n].push_back(a - g.n);
    }
  }
  return inc;
}

}  // namespace

std::vector<std::size_t> LayeredGraph::out_degrees() const {
  std::vector<std::size_t> deg(vertex_count(), 0);
  for (auto [a, b] : edges) ++deg[a];
  return deg;
}

LayeredGraph build_layered_graph(const DSDescriptor& first, const DSDescriptor& second,
                                 std::span<const std::size_t> second_query, unsigned capacity_bits) {
  if (first.adaptive || second.adaptive) {
    throw Error(Errc::AdaptiveDSRejected,
                (first.adaptive ? first.name : second.name) + " is adaptive; the reduction needs fixed query sets");
  }
  first.validate();
  second.validate();
  const std::size_t n = first.n;
  if (n == 0 || second.n != n) throw Error(Errc::InvalidArgument, "both passes need the same n >= 1");
  if (!second_query.empty() && second_query.size() != n) {
    throw Error(Errc::InvalidArgument, "second query map must have n entries");
  }
  LayeredGraph g;
  g.n = n;
  g.t = std::max(first.t_queries, second.t_queries);
  g.capacity_bits = capacity_bits ? capacity_bits : std::max(1U, ceil_log2(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i : first.query_sets[j]) g.edges.emplace_back(LayeredGraph::source(i), g.middle(j));
  }
  for (std::size_t l = 0; l < n; ++l) {
    const std::size_t q = second_query.empty() ? l : second_query[l];
    for (std::size_t j : second.query_sets.at(q)) g.edges.emplace_back(g.middle(j), g.last(l));
  }
  return g;
}

LayeredGraph build_layered_graph(const DSDescriptor& ds) { return build_layered_graph(ds, ds); }

Network PrunedNetwork::network() const {
  Network net(graph.vertex_count(), true);
  for (auto [a, b] : graph.edges) net.add_edge(a, b, graph.capacity_bits);
  for (std::size_t i = 0; i < graph.n; ++i) {
    net.add_pair(LayeredGraph::source(i), targets.empty() ? graph.last(i) : targets[i]);
  }
  return net;
}

PrunedNetwork prune_high_degree(const LayeredGraph& g, std::size_t q) {
  if (q == 0) throw Error(Errc::InvalidArgument, "q must be at least 1");
  PrunedNetwork p;
  p.q = q;
  p.edges_before = g.edges.size();
  const auto deg = g.out_degrees();
  p.max_out_degree_before = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  p.in_w.assign(g.vertex_count(), false);
  for (std::size_t v = 0; v < deg.size(); ++v) {
    if (deg[v] > q * g.t) {
      p.in_w[v] = true;
      p.W.push_back(v);
    }
  }
  p.graph = g;
  p.graph.edges.clear();
  for (auto e : g.edges) {
    if (!p.in_w[e.first] && !p.in_w[e.second]) p.graph.edges.push_back(e);
  }
  return p;
}

std::size_t default_distance(std::size_t n, std::size_t q, std::size_t t) {
  const double base = q * t < 2 ? 2.0 : static_cast<double>(q * t);
  const double d = 0.5 * std::log(static_cast<double>(n)) / std::log(base);
  return static_cast<std::size_t>(std::ceil(d - 1e-12));
}

namespace {

std::vector<std::vector<std::size_t>> source_distances(const PrunedNetwork& net) {
  Network plain(net.graph.vertex_count(), true);
  for (auto [a, b] : net.graph.edges) plain.add_edge(a, b, 1.0);
  std::vector<std::vector<std::size_t>> dist;
  for (std::size_t i = 0; i < net.graph.n; ++i) dist.push_back(plain.undirected_distances(i));
  return dist;
}

}  // namespace

void apply_shift(PrunedNetwork& net, std::size_t b, std::size_t d) {
  const std::size_t n = net.graph.n;
  const auto dist = source_distances(net);
  std::size_t count = 0;
  net.targets.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    net.targets[i] = net.graph.last((i + b) % n);
    if (dist[i][net.targets[i]] >= d) ++count;
  }
  net.b = b % n;
  net.d = d;
  net.delta = static_cast<double>(count) / static_cast<double>(n);
}

std::size_t choose_shift(PrunedNetwork& net, std::size_t d) {
  const std::size_t n = net.graph.n;
  const auto dist = source_distances(net);
  std::size_t best_b = 0;
  std::size_t best = 0;
  for (std::size_t b = 0; b < n; ++b) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (dist[i][net.graph.last((i + b) % n)] >= d) ++count;
    }
    if (b == 0 || count > best) {
      best = count;
      best_b = b;
    }
  }
  apply_shift(net, best_b, d);
  return best_b;
}

std::size_t Fixing::fixed_bits(unsigned value_bits) const {
  return advice_1.size() + advice_2.size() + (source_fixes.size() + middle_fixes.size()) * value_bits;
}

// --- two-pass scheme ---------------------------------------------------------

TwoPassScheme TwoPassScheme::inversion(std::shared_ptr<const SystematicDS> ds) {
  if (!ds) throw Error(Errc::InvalidArgument, "null data structure");
  if (ds->descriptor().problem != ProblemKind::Inversion) {
    throw Error(Errc::InvalidArgument, ds->descriptor().name + " does not solve inversion");
  }
  TwoPassScheme s;
  s.variant_ = SchemeVariant::Inversion;
  s.n_ = ds->n();
  s.first_ = ds;
  s.second_ = ds;
  s.second_query_.resize(s.n_);
  std::iota(s.second_query_.begin(), s.second_query_.end(), std::size_t{0});
  s.value_bits_ = std::max(1U, ceil_log2(s.n_));
  return s;
}

TwoPassScheme TwoPassScheme::polynomial(SchemeVariant variant, const RootOfUnity& root, const DSFactory& make) {
  if (variant == SchemeVariant::Inversion) throw Error(Errc::InvalidArgument, "use TwoPassScheme::inversion");
  const PrimeField field = root.sigma.field();
  TwoPassScheme s;
  s.variant_ = variant;
  s.n_ = root.n;
  s.root_ = root;
  s.value_bits_ = field.element_bits();
  s.second_query_.resize(s.n_);
  const FieldElement n_elem = field.element(root.n);
  if (variant == SchemeVariant::PolyEval) {
    std::shared_ptr<const SystematicDS> ds = make(root);
    if (ds->descriptor().problem != ProblemKind::PolyEval) {
      throw Error(Errc::InvalidArgument, ds->descriptor().name + " does not evaluate polynomials");
    }
    s.first_ = ds;
    s.second_ = ds;
    for (std::size_t l = 0; l < s.n_; ++l) s.second_query_[l] = (s.n_ - l) % s.n_;
    s.output_scale_ = n_elem.inv().value();
  } else {
    s.first_ = make(root.inverse());
    s.second_ = make(root);
    if (s.first_->descriptor().problem != ProblemKind::PolyInterp ||
        s.second_->descriptor().problem != ProblemKind::PolyInterp) {
      throw Error(Errc::InvalidArgument, "interpolation variant needs interpolation structures");
    }
    std::iota(s.second_query_.begin(), s.second_query_.end(), std::size_t{0});
    s.first_scale_ = n_elem.value();
  }
  if (s.first_->n() != s.n_ || s.second_->n() != s.n_) {
    throw Error(Errc::LengthMismatch, "data structure size differs from the root order");
  }
  s.set_shift(0);
  return s;
}

void TwoPassScheme::set_shift(std::size_t b) {
  b_ = n_ ? b % n_ : 0;
  if (root_) {
    twiddle_.resize(n_);
    const FieldElement step = root_->sigma.pow(b_);
    FieldElement cur = root_->sigma.field().one();
    for (std::size_t j = 0; j < n_; ++j) {
      twiddle_[j] = cur.value();
      cur *= step;
    }
  }
}

LayeredGraph TwoPassScheme::layered_graph() const {
  return build_layered_graph(first_->descriptor(), second_->descriptor(), second_query_, value_bits_);
}

std::uint32_t TwoPassScheme::middle(std::size_t j, std::uint32_t answer) const {
  if (variant_ == SchemeVariant::Inversion) return static_cast<std::uint32_t>((answer + b_) % n_);
  const std::uint64_t p = root_->sigma.modulus();
  const std::uint64_t v = (std::uint64_t{answer} * first_scale_) % p;
  return static_cast<std::uint32_t>((v * twiddle_[j]) % p);
}

std::uint32_t TwoPassScheme::output(std::size_t, std::uint32_t answer) const {
  if (variant_ == SchemeVariant::Inversion) return answer;
  const std::uint64_t p = root_->sigma.modulus();
  return static_cast<std::uint32_t>((std::uint64_t{answer} * output_scale_) % p);
}

void TwoPassScheme::validate_input(std::span<const std::uint32_t> x) const {
  if (x.size() != n_) throw Error(Errc::LengthMismatch, "input must have n entries");
  if (variant_ == SchemeVariant::Inversion) {
    if (!is_permutation(x)) throw Error(Errc::NotAPermutation, "input is not a permutation of [n]");
    return;
  }
  const std::uint32_t p = root_->sigma.modulus();
  for (auto v : x) {
    if (v >= p) throw Error(Errc::InvalidArgument, "coefficient outside the field");
  }
}

TwoPassScheme::Trace TwoPassScheme::trace(std::span<const std::uint32_t> x) const {
  validate_input(x);
  Trace tr;
  tr.advice_1 = first_->preprocess(x);
  OracleTape tape(std::vector<std::uint32_t>(x.begin(), x.end()));
  tr.h.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) tr.h[j] = middle(j, first_->answer(tr.advice_1, j, tape));
  tr.advice_2 = second_->preprocess(tr.h);
  return tr;
}

Fixing compute_fixing(const PrunedNetwork& net, const TwoPassScheme& scheme, std::span<const std::uint32_t> x) {
  const auto tr = scheme.trace(x);
  Fixing f;
  f.advice_1 = tr.advice_1.bits;
  f.advice_2 = tr.advice_2.bits;
  const std::size_t n = net.graph.n;
  for (std::size_t i = 0; i < n; ++i) {
    if (net.removed(LayeredGraph::source(i))) f.source_fixes.emplace_back(i, x[i]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (net.removed(net.graph.middle(j))) f.middle_fixes.emplace_back(j, tr.h[j]);
  }
  return f;
}

SchemeRun run_scheme(const PrunedNetwork& net, const TwoPassScheme& scheme, const Fixing& fixing,
                     std::span<const std::uint32_t> x) {
  scheme.validate_input(x);
  const std::size_t n = net.graph.n;
  if (scheme.n() != n) throw Error(Errc::LengthMismatch, "scheme and network sizes differ");
  if (net.targets.size() != n || net.b != scheme.shift()) {
    throw Error(Errc::InvalidArgument, "network shift does not match the scheme's shift");
  }
  for (auto [i, c] : fixing.source_fixes) {
    if (x[i] != c) {
      throw Error(Errc::InconsistentInput, "x_" + std::to_string(i) + " differs from its fixed value");
    }
  }
  const Incidence inc = incidence(net.graph);
  const AdviceString adv1{fixing.advice_1, scheme.first().descriptor().s_bits};
  const AdviceString adv2{fixing.advice_2, scheme.second().descriptor().s_bits};

  SchemeRun run;
  run.h.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (net.removed(net.graph.middle(j))) {
      run.h[j] = lookup_fix(fixing.middle_fixes, j, "middle value");
      continue;
    }
    std::vector<std::optional<std::uint32_t>> known(n);
    for (std::size_t i : inc.into_middle[j]) known[i] = x[i];
    for (auto [i, c] : fixing.source_fixes) known[i] = c;
    OracleTape tape(std::move(known));
    run.h[j] = scheme.middle(j, scheme.first().answer(adv1, j, tape));
  }
  run.layer_out.resize(n);
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<std::optional<std::uint32_t>> known(n);
    for (std::size_t j : inc.into_last[l]) known[j] = run.h[j];
    for (auto [j, d] : fixing.middle_fixes) known[j] = d;
    OracleTape tape(std::move(known));
    run.layer_out[l] = scheme.output(l, scheme.second().answer(adv2, scheme.second_query()[l], tape));
  }
  run.outputs.resize(n);
  for (std::size_t i = 0; i < n; ++i) run.outputs[i] = run.layer_out[net.targets[i] - 2 * n];
  for (auto [a, b] : net.graph.edges) {
    run.messages.push_back(a < n ? x[a] : run.h[a - n]);
  }
  return run;
}

SchemeRun run_inversion_scheme(const PrunedNetwork& net, const TwoPassScheme& scheme, const Fixing& fixing,
                               std::span<const std::uint32_t> x) {
  if (scheme.variant() != SchemeVariant::Inversion) {
    throw Error(Errc::InvalidArgument, "not an inversion scheme");
  }
  return run_scheme(net, scheme, fixing, x);
}

SchemeRun run_poly_scheme(const PrunedNetwork& net, const TwoPassScheme& scheme, const Fixing& fixing,
                          std::span<const FieldElement> alpha) {
  if (scheme.variant() == SchemeVariant::Inversion) throw Error(Errc::InvalidArgument, "not a polynomial scheme");
  for (const auto& a : alpha) {
    if (a.modulus() != scheme.root()->sigma.modulus()) throw Error(Errc::MixedFields, "alpha over another field");
  }
  return run_scheme(net, scheme, fixing, to_values(alpha));
}

CodingScheme to_coding_scheme(const PrunedNetwork& net, const TwoPassScheme& scheme, const Fixing& fixing) {
  const Network network = net.network();
  const std::size_t n = net.graph.n;
  auto sch = std::make_shared<const TwoPassScheme>(scheme);
  auto fix = std::make_shared<const Fixing>(fixing);
  const std::size_t s1 = scheme.first().descriptor().s_bits;
  const std::size_t s2 = scheme.second().descriptor().s_bits;

  CodingScheme cs = CodingScheme::sized_for(network);
  for (std::size_t e = 0; e < network.edge_count(); ++e) {
    cs.alphabet_size[e] = std::uint64_t{1} << net.graph.capacity_bits;
    const std::size_t from = network.edge(e).u;
    if (from < n) {
      cs.edge_arity[e] = 1;
      cs.edge_fn[e] = [](std::span<const Symbol> in) { return in[0]; };
      continue;
    }
    const std::size_t j = from - n;
    std::vector<std::size_t> senders;
    for (std::size_t x : network.in_edges(from)) senders.push_back(network.edge(x).u);
    cs.edge_arity[e] = senders.size();
    cs.edge_fn[e] = [sch, fix, senders, j, n, s1](std::span<const Symbol> in) -> Symbol {
      std::vector<std::optional<std::uint32_t>> known(n);
      for (std::size_t a = 0; a < senders.size(); ++a) known[senders[a]] = static_cast<std::uint32_t>(in[a]);
      for (auto [i, c] : fix->source_fixes) known[i] = c;
      OracleTape tape(std::move(known));
      const AdviceString adv{fix->advice_1, s1};
      return sch->middle(j, sch->first().answer(adv, j, tape));
    };
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t t = network.pairs()[i].target;
    const std::size_t l = t - 2 * n;
    std::vector<std::size_t> senders;
    for (std::size_t x : network.in_edges(t)) senders.push_back(network.edge(x).u - n);
    cs.decoder_arity[i] = senders.size();
    cs.decoders[i] = [sch, fix, senders, l, n, s2](std::span<const Symbol> in) -> Symbol {
      std::vector<std::optional<std::uint32_t>> known(n);
      for (std::size_t a = 0; a < senders.size(); ++a) known[senders[a]] = static_cast<std::uint32_t>(in[a]);
      for (auto [j, d] : fix->middle_fixes) known[j] = d;
      OracleTape tape(std::move(known));
      const AdviceString adv{fix->advice_2, s2};
      return sch->output(l, sch->second().answer(adv, sch->second_query()[l], tape));
    };
  }
  return cs;
}

std::vector<FieldElement> telescoping_outputs(std::span<const FieldElement> alpha, const RootOfUnity& root,
                                              std::size_t b) {
  const std::size_t n = root.n;
  if (alpha.size() != n) throw Error(Errc::LengthMismatch, "alpha must have n coefficients");
  const PrimeField field = root.sigma.field();
  std::vector<FieldElement> h(n);
  for (std::size_t j = 0; j < n; ++j) {
    const FieldElement x = root.sigma.pow(j);
    h[j] = poly_eval(alpha, x) * x.pow(b);
  }
  const FieldElement inv_sigma = root.sigma.inv();
  const FieldElement inv_n = field.element(n).inv();
  std::vector<FieldElement> out(n);
  for (std::size_t l = 0; l < n; ++l) out[l] = poly_eval(h, inv_sigma.pow(l)) * inv_n;
  return out;
}

std::vector<std::vector<std::uint32_t>> census_inputs(const TwoPassScheme& scheme, std::size_t samples,
                                                      std::uint64_t seed, bool& exhaustive) {
  const std::size_t n = scheme.n();
  std::vector<std::vector<std::uint32_t>> out;
  std::mt19937_64 rng(seed);
  if (scheme.variant() == SchemeVariant::Inversion) {
    std::vector<std::uint32_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0U);
    exhaustive = n <= 8;
    if (exhaustive) {
      do {
        out.push_back(perm);
      } while (std::next_permutation(perm.begin(), perm.end()));
    } else {
      for (std::size_t s = 0; s < samples; ++s) {
        std::shuffle(perm.begin(), perm.end(), rng);
        out.push_back(perm);
      }
    }
    return out;
  }
  const std::uint32_t p = scheme.root()->sigma.modulus();
  const double space = std::pow(static_cast<double>(p), static_cast<double>(n));
  exhaustive = space <= static_cast<double>(samples);
  if (exhaustive) {
    std::vector<std::uint32_t> v(n, 0);
    for (;;) {
      out.push_back(v);
      std::size_t j = 0;
      while (j < n && ++v[j] == p) v[j++] = 0;
      if (j == n) break;
    }
  } else {
    std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
    for (std::size_t s = 0; s < samples; ++s) {
      std::vector<std::uint32_t> v(n);
      for (auto& c : v) c = coef(rng);
      out.push_back(std::move(v));
    }
  }
  return out;
}

Bucket select_bucket(const PrunedNetwork& net, const TwoPassScheme& scheme,
                     const std::vector<std::vector<std::uint32_t>>& inputs) {
  if (inputs.empty()) throw Error(Errc::EmptyInput, "no inputs to bucket");
  std::map<Fixing, std::vector<std::size_t>> buckets;
  for (std::size_t idx = 0; idx < inputs.size(); ++idx) {
    buckets[compute_fixing(net, scheme, inputs[idx])].push_back(idx);
  }
  auto best = buckets.begin();
  for (auto it = buckets.begin(); it != buckets.end(); ++it) {
    if (it->second.size() > best->second.size()) best = it;
  }
  Bucket b;
  b.fixing = best->first;
  for (std::size_t idx : best->second) b.members.push_back(inputs[idx]);
  b.inputs_examined = inputs.size();
  b.bucket_count = buckets.size();
  return b;
}

bool ReductionAudit::structure_ok() const {
  return edges_before <= edges_bound && max_out_degree <= degree_bound &&
         static_cast<double>(w_size) <= w_bound + 1e-9;
}

ReductionAudit audit_reduction(const PrunedNetwork& net, const TwoPassScheme& scheme, const Bucket& bucket,
                               const ReductionConfig& config) {
  ReductionAudit a;
  const std::size_t n = net.graph.n;
  a.n = n;
  a.t = net.graph.t;
  a.q = net.q;
  a.r = net.graph.capacity_bits;
  a.s_bits = scheme.first().descriptor().s_bits;
  a.edges_before = net.edges_before;
  a.edges_bound = 2 * a.t * n;
  a.edges_after = net.graph.edges.size();
  const auto deg = net.graph.out_degrees();
  a.max_out_degree = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
  a.degree_bound = net.q * a.t;
  a.w_size = net.W.size();
  a.w_bound = 2.0 * static_cast<double>(n) / static_cast<double>(net.q);
  a.b = net.b;
  a.d = net.d;
  a.delta = net.delta;
  const Network network = net.network();
  a.delta_bfs = is_delta_d_long(network, net.d).delta;
  a.sqrt_bound = 1.0 - 2.0 / std::sqrt(static_cast<double>(n));

  a.bucket_size = bucket.members.size();
  a.inputs_examined = bucket.inputs_examined;
  a.bucket_count = bucket.bucket_count;
  a.exhaustive = bucket.exhaustive;
  a.seed = bucket.seed;

  const double nlogn = static_cast<double>(n) * scheme.value_bits();
  const double qd = static_cast<double>(net.q);
  a.eps = config.eps;
  a.eps_measured = static_cast<double>(a.s_bits) / nlogn;
  a.eps_prime = 2.0 * a.eps_measured + 2.0 / qd + 2.0 / std::log2(static_cast<double>(n));
  a.log2_bucket_fraction =
      std::log2(static_cast<double>(a.bucket_size)) - std::log2(static_cast<double>(a.inputs_examined));
  a.log2_fraction_bound = -(2.0 * a.eps_measured + 2.0 / qd) * nlogn;
  a.log2_bucket_bound = (1.0 - a.eps_prime) * nlogn;
  a.fixed_bits = bucket.fixing.fixed_bits(scheme.value_bits());
  a.fixed_bits_bound = 2.0 * static_cast<double>(a.s_bits) + (2.0 / qd) * nlogn;

  const CodingScheme coding = to_coding_scheme(net, scheme, bucket.fixing);
  std::vector<std::vector<Symbol>> per_edge(network.edge_count());
  for (const auto& x : bucket.members) {
    ++a.members_checked;
    const SchemeRun run = run_scheme(net, scheme, bucket.fixing, x);
    if (std::equal(run.outputs.begin(), run.outputs.end(), x.begin(), x.end())) ++a.members_correct;
    const std::vector<Symbol> w(x.begin(), x.end());
    const Execution ex = execute_scheme(network, coding, w);
    const bool same_out = std::equal(ex.outputs.begin(), ex.outputs.end(), run.outputs.begin(), run.outputs.end());
    const bool same_msg = std::equal(ex.messages.begin(), ex.messages.end(), run.messages.begin(), run.messages.end());
    if (same_out && same_msg) ++a.replay_agreements;
    for (std::size_t e = 0; e < ex.messages.size(); ++e) per_edge[e].push_back(ex.messages[e]);
  }
  for (const auto& msgs : per_edge) {
    a.max_edge_entropy = std::max(a.max_edge_entropy, empirical_entropy(msgs));
  }
  a.capacity_respected = a.max_edge_entropy <= static_cast<double>(a.r) + 1e-9;
  a.edge_bound = edge_bound_check(a.edges_after, n, a.delta, static_cast<double>(a.d));
  return a;
}

ReductionResult run_reduction(TwoPassScheme& scheme, const ReductionConfig& config) {
  const std::size_t n = scheme.n();
  if (n < 4) throw Error(Errc::DegenerateSize, "the reduction needs n >= 4");
  const LayeredGraph g = scheme.layered_graph();
  ReductionResult res;
  res.net = prune_high_degree(g, config.q);
  const std::size_t d = config.d.value_or(default_distance(n, config.q, g.t));
  if (config.shift) {
    apply_shift(res.net, *config.shift, d);
  } else {
    choose_shift(res.net, d);
  }
  scheme.set_shift(res.net.b);
  bool exhaustive = false;
  const auto inputs = census_inputs(scheme, config.samples, config.seed, exhaustive);
  res.bucket = select_bucket(res.net, scheme, inputs);
  res.bucket.exhaustive = exhaustive;
  res.bucket.seed = config.seed;
  res.audit = audit_reduction(res.net, scheme, res.bucket, config);
  return res;
}

}  // namespace ncclab
