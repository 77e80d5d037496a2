#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "ncclab/error.hpp"
#include "ncclab/reduction.hpp"

using namespace ncclab;

namespace {

DSDescriptor fixed_queries(std::size_t n, std::vector<std::vector<std::size_t>> q) {
  DSDescriptor d;
  d.name = "fixture";
  d.problem = ProblemKind::Inversion;
  d.n = n;
  d.adaptive = false;
  for (const auto& s : q) d.t_queries = std::max(d.t_queries, s.size());
  d.query_sets = std::move(q);
  return d;
}

std::vector<std::vector<std::size_t>> diagonal(std::size_t n) {
  std::vector<std::vector<std::size_t>> q;
  for (std::size_t j = 0; j < n; ++j) q.push_back({j});
  return q;
}

TwoPassScheme block_scheme(std::size_t n, std::size_t t) {
  return TwoPassScheme::inversion(std::shared_ptr<const SystematicDS>(make_inv_block(n, t)));
}

}  // namespace

TEST_CASE("layered graph edge counts") {
  const auto g = build_layered_graph(make_inv_block(4, 2)->descriptor());
  CHECK(g.edges.size() == 16);
  CHECK(g.vertex_count() == 12);

  CHECK(build_layered_graph(make_eval_table(PrimeField(17), 16)->descriptor()).edges.size() == 0);

  const auto diag = build_layered_graph(fixed_queries(4, diagonal(4)));
  std::vector<std::pair<std::size_t, std::size_t>> expect;
  for (std::size_t j = 0; j < 4; ++j) expect.emplace_back(j, diag.middle(j));
  for (std::size_t j = 0; j < 4; ++j) expect.emplace_back(diag.middle(j), diag.last(j));
  auto got = diag.edges;
  std::sort(got.begin(), got.end());
  std::sort(expect.begin(), expect.end());
  CHECK(got == expect);

  try {
    (void)build_layered_graph(make_hellman(8, 2)->descriptor());
    FAIL("adaptive accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AdaptiveDSRejected);
  }
}

TEST_CASE("pruning") {
  // every query reads position 0
  std::vector<std::vector<std::size_t>> q(8, std::vector<std::size_t>{0});
  const auto g = build_layered_graph(fixed_queries(8, q));
  const auto p = prune_high_degree(g, 4);
  CHECK(p.removed(LayeredGraph::source(0)));
  CHECK(p.removed(g.middle(0)));
  CHECK(p.W.size() == 2);
  for (auto deg : p.graph.out_degrees()) CHECK(deg <= 4);

  const auto g2 = build_layered_graph(make_inv_block(8, 2)->descriptor());
  const auto p2 = prune_high_degree(g2, 4);
  CHECK(p2.W.empty());
  CHECK(p2.graph.edges == g2.edges);

  for (std::size_t n : {4, 8, 16}) {
    for (std::size_t q : {2, 4, 8}) {
      for (const auto& ds : {make_inv_block(n, 2), make_inv_trivial_scan(n), make_inv_block(n, n / 2)}) {
        const auto pr = prune_high_degree(build_layered_graph(ds->descriptor()), q);
        CHECK(static_cast<double>(pr.W.size()) <= 2.0 * static_cast<double>(n) / static_cast<double>(q));
      }
    }
  }
}

TEST_CASE("distance and shift") {
  CHECK(default_distance(8, 4, 2) == 1);
  CHECK(default_distance(16, 8, 2) == 1);
  CHECK(default_distance(64, 2, 1) == 3);

  auto empty = prune_high_degree(build_layered_graph(make_eval_table(PrimeField(17), 16)->descriptor()), 8);
  CHECK(choose_shift(empty, 2) == 0);
  CHECK(empty.delta == 1.0);

  auto diag = prune_high_degree(build_layered_graph(fixed_queries(8, diagonal(8))), 4);
  const std::size_t b = choose_shift(diag, 3);
  CHECK(b != 0);
  CHECK(diag.delta == 1.0);
  for (std::size_t i = 0; i < 8; ++i) CHECK(diag.targets[i] == diag.graph.last((i + b) % 8));

  auto blk = prune_high_degree(build_layered_graph(make_inv_block(16, 2)->descriptor()), 8);
  choose_shift(blk, default_distance(16, 8, 2));
  CHECK(blk.delta >= 1.0 - 2.0 / std::sqrt(16.0));
  const auto longness = is_delta_d_long(blk.network(), blk.d);
  CHECK(longness.delta == doctest::Approx(blk.delta));
}

TEST_CASE("buckets") {
  auto table = TwoPassScheme::inversion(std::shared_ptr<const SystematicDS>(make_inv_trivial_table(3)));
  auto net = prune_high_degree(table.layered_graph(), 8);
  choose_shift(net, 1);
  bool exhaustive = false;
  const auto inputs = census_inputs(table, 1000, 1, exhaustive);
  CHECK(exhaustive);
  CHECK(inputs.size() == 6);
  const auto bucket = select_bucket(net, table, inputs);
  CHECK(bucket.members.size() == 1);
  CHECK(bucket.bucket_count == 6);

  auto blk = block_scheme(4, 2);
  auto pn = prune_high_degree(blk.layered_graph(), 8);
  choose_shift(pn, 1);
  const auto perms = census_inputs(blk, 1000, 1, exhaustive);
  CHECK(perms.size() == 24);
  const auto bb = select_bucket(pn, blk, perms);
  const double fixed = static_cast<double>(bb.fixing.fixed_bits(blk.value_bits()));
  CHECK(static_cast<double>(bb.members.size()) >= 24.0 / std::exp2(fixed));
  for (const auto& x : bb.members) CHECK(compute_fixing(pn, blk, x) == bb.fixing);
  CHECK(24.0 >= std::exp2(4.0 * 2.0 - 2.0 * 4.0));
}

TEST_CASE("inversion scheme recovers inputs") {
  auto table = TwoPassScheme::inversion(std::shared_ptr<const SystematicDS>(make_inv_trivial_table(4)));
  ReductionConfig cfg;
  const auto res = run_reduction(table, cfg);
  CHECK(res.bucket.members.size() == 1);
  for (const auto& x : res.bucket.members) {
    const auto run = run_inversion_scheme(res.net, table, res.bucket.fixing, x);
    CHECK(run.outputs == x);
  }
  CHECK(res.audit.scheme_ok());

  auto blk = block_scheme(4, 2);
  auto pn = prune_high_degree(blk.layered_graph(), 8);
  apply_shift(pn, 1, 1);
  blk.set_shift(1);
  std::vector<std::uint32_t> x{3, 1, 0, 2};
  const auto fix = compute_fixing(pn, blk, x);
  const auto run = run_inversion_scheme(pn, blk, fix, x);
  CHECK(run.outputs == x);
  // h^-1(i + b) = x_i
  for (std::size_t i = 0; i < 4; ++i) CHECK(run.h[x[i]] == (i + 1) % 4);

  try {
    ReductionConfig small;
    auto tiny = block_scheme(2, 1);
    (void)run_reduction(tiny, small);
    FAIL("n < 4 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DegenerateSize);
  }
}

TEST_CASE("polynomial scheme") {
  const PrimeField f(17);
  const auto root = find_root_of_unity(f, 16);
  auto eval = TwoPassScheme::polynomial(SchemeVariant::PolyEval, root,
                                        [](const RootOfUnity& r) { return make_eval_scan(r); });
  auto net = prune_high_degree(eval.layered_graph(), 8);
  apply_shift(net, 5, 1);
  eval.set_shift(5);

  std::vector<std::uint32_t> c(16, 0);
  c[0] = 9;
  const auto tele = telescoping_outputs(to_elements(f, c), root, 5);
  for (std::size_t l = 0; l < 16; ++l) CHECK(tele[l].value() == (l == 5 ? 9U : 0U));

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint32_t> d(0, 16);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::uint32_t> a(16);
    for (auto& v : a) v = d(rng);
    const auto fix = compute_fixing(net, eval, a);
    const auto run = run_poly_scheme(net, eval, fix, to_elements(f, a));
    CHECK(run.outputs == a);
  }

  auto interp = TwoPassScheme::polynomial(SchemeVariant::PolyInterp, root,
                                          [](const RootOfUnity& r) { return make_interp_scan(r); });
  auto inet = prune_high_degree(interp.layered_graph(), 8);
  apply_shift(inet, 5, 1);
  interp.set_shift(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::uint32_t> a(16);
    for (auto& v : a) v = d(rng);
    const auto fix = compute_fixing(inet, interp, a);
    CHECK(run_poly_scheme(inet, interp, fix, to_elements(f, a)).outputs == a);
  }
}

TEST_CASE("audit arithmetic") {
  auto blk = block_scheme(8, 2);
  ReductionConfig cfg;
  cfg.q = 4;
  const auto res = run_reduction(blk, cfg);
  const auto& a = res.audit;
  CHECK(a.edges_before == 32);
  CHECK(a.edges_bound == 32);
  CHECK(a.degree_bound == 8);
  CHECK(a.d == 1);
  CHECK(a.structure_ok());
  CHECK(a.scheme_ok());
  CHECK(a.delta == a.delta_bfs);
  CHECK(a.edge_bound.edges == a.edges_after);
  CHECK(a.edge_bound.pairs == 8);
  CHECK(static_cast<double>(a.fixed_bits) <= a.fixed_bits_bound + 1e-9);

  const auto l = edge_bound_check(40, 100, 0.9, 5.0);
  CHECK(l.delta_prime == doctest::Approx(1.0 / 150.0));
  CHECK(l.bound == doctest::Approx(1.0 / 30.0));
  CHECK(l.holds);
  CHECK(edge_bound_check(0, 8, 0.8, 1.0).vacuous);
}
