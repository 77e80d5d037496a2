#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

#include "ncclab/circuit.hpp"
#include "ncclab/error.hpp"

using namespace ncclab;

TEST_CASE("evaluation basics") {
  Circuit nn;
  const auto x = nn.add_input();
  nn.add_output(nn.add_not(nn.add_not(x)));
  CHECK(eval_circuit(nn, {true}) == std::vector<bool>{true});
  CHECK(eval_circuit(nn, {false}) == std::vector<bool>{false});
  CHECK(nn.depth() == 3);

  Circuit a;
  const auto p = a.add_input();
  const auto q = a.add_input();
  a.add_output(a.add_and(p, q));
  CHECK(eval_circuit(a, {true, true}) == std::vector<bool>{true});
  CHECK(eval_circuit(a, {true, false}) == std::vector<bool>{false});
  try {
    (void)eval_circuit(a, {true});
    FAIL("width accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::WidthMismatch);
  }
}

TEST_CASE("netlist round trip") {
  const auto c = build_sorting_network(4, 2);
  std::stringstream ss;
  write_circuit(ss, c);
  const auto back = parse_circuit(ss);
  CHECK(back.size() == c.size());
  for (std::size_t code = 0; code < 256; code += 7) {
    std::vector<bool> in(8);
    for (std::size_t i = 0; i < 8; ++i) in[i] = ((code >> i) & 1U) != 0;
    CHECK(eval_circuit(back, in) == eval_circuit(c, in));
  }
  std::stringstream bad("circuit 1 1\ngate 0 INPUT\ngate 1 AND 0 5\n");
  try {
    (void)parse_circuit(bad);
    FAIL("forward reference accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
  }
}

TEST_CASE("sorting network") {
  const auto c = build_sorting_network(4, 2);
  std::vector<std::uint32_t> keys(4);
  for (std::size_t code = 0; code < 256; ++code) {
    for (std::size_t i = 0; i < 4; ++i) keys[i] = static_cast<std::uint32_t>((code >> (2 * i)) & 3U);
    auto sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    CHECK(bits_to_blocks(eval_circuit(c, blocks_to_bits(keys, 2)), 2) == sorted);
    CHECK(bits_to_blocks(eval_circuit(c, blocks_to_bits(sorted, 2)), 2) == sorted);
  }
  const auto c8 = build_sorting_network(8, 3);
  const std::vector<std::uint32_t> k8{7, 3, 5, 0, 6, 1, 4, 2};
  auto s8 = k8;
  std::sort(s8.begin(), s8.end());
  CHECK(bits_to_blocks(eval_circuit(c8, blocks_to_bits(k8, 3)), 3) == s8);
}

TEST_CASE("inversion circuit") {
  const auto c = build_inversion_circuit(4);
  std::vector<std::uint32_t> f{0, 1, 2, 3};
  CHECK(bits_to_blocks(eval_circuit(c, blocks_to_bits(f, 2)), 2) == f);
  do {
    CHECK(bits_to_blocks(eval_circuit(c, blocks_to_bits(f, 2)), 2) == min_preimage_inverse(f));
  } while (std::next_permutation(f.begin(), f.end()));
  const std::vector<std::uint32_t> g{3, 3, 1, 1};
  CHECK(bits_to_blocks(eval_circuit(c, blocks_to_bits(g, 2)), 2) == min_preimage_inverse(g));
}

TEST_CASE("common bits") {
  const auto id = build_identity_circuit(6);
  const auto cid = find_common_bits(id, 1);
  CHECK(cid.cut.empty());
  const auto dsid = circuit_to_ds(id, cid, 1);
  CHECK(dsid->descriptor().t_queries == 1);
  CHECK(dsid->descriptor().s_bits == 0);
  for (std::size_t j = 0; j < 6; ++j) CHECK(dsid->descriptor().query_sets[j] == std::vector<std::size_t>{j});

  const auto hub = build_hub_circuit(4);
  const auto ch = find_common_bits(hub, 1);
  REQUIRE(ch.cut.size() == 1);
  CHECK(hub.gate(ch.cut[0]).kind == GateKind::And);
  const auto exact = exact_common_bits(hub, 1);
  REQUIRE(exact);
  CHECK(exact->cut == ch.cut);
  const auto uncut = block_connectivity(hub, {}, 1);
  for (std::size_t j = 0; j < 4; ++j) CHECK(ch.connectivity[j].size() < uncut[j].size());
  const auto dsh = circuit_to_ds(hub, ch, 1);
  CHECK(dsh->descriptor().s_bits == 1);

  // heuristic never beats the exhaustive optimum on small fixtures
  for (const auto& c : {build_hub_circuit(3), build_identity_circuit(4), build_sorting_network(2, 2)}) {
    const std::size_t bits = c.n_out() / (c.n_in() / 2 == 0 ? 1 : c.n_in() / 2);
    for (std::size_t bound : {1, 2}) {
      const auto ex = exact_common_bits(c, bound, bits);
      if (!ex) continue;
      CHECK(find_common_bits(c, bound, bits).cut.size() >= ex->cut.size());
    }
  }

  CommonBitsCut wrong = ch;
  wrong.cut.clear();
  try {
    (void)circuit_to_ds(hub, wrong, 1);
    FAIL("stale connectivity accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidCut);
  }
}

TEST_CASE("derived inversion structure") {
  const auto c = build_inversion_circuit(4);
  const auto cut = find_common_bits(c, 4, 2);
  CHECK(cut.bound_met);
  const auto ds = circuit_to_ds(c, cut, 2, ProblemKind::Inversion);
  std::vector<std::uint32_t> f{0, 1, 2, 3};
  do {
    const auto adv = ds->preprocess(f);
    CHECK(adv.size() == cut.cut.size());
    const auto inv = min_preimage_inverse(f);
    for (std::size_t y = 0; y < 4; ++y) {
      OracleTape tape(f);
      CHECK(ds->answer(adv, y, tape) == inv[y]);
    }
  } while (std::next_permutation(f.begin(), f.end()));
}
