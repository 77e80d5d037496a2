#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "fixtures.hpp"
#include "ncclab/coding.hpp"
#include "ncclab/correction.hpp"
#include "ncclab/error.hpp"
#include "ncclab/supervisor.hpp"

using namespace ncclab;

namespace {

Symbol pass_through(std::span<const Symbol> in) { return in[0]; }

CodingScheme forwarding(const Network& path) {
  CodingScheme s = CodingScheme::sized_for(path);
  for (std::size_t e = 0; e < path.edge_count(); ++e) {
    s.edge_fn[e] = pass_through;
    s.edge_arity[e] = 1;
  }
  s.decoders[0] = pass_through;
  s.decoder_arity[0] = 1;
  return s;
}

// butterfly edge ids: 0 s1->m1, 1 s2->m1, 2 m1->m2, 3 m2->t1, 4 m2->t2, 5 s1->t2, 6 s2->t1
CodingScheme xor_butterfly(const Network& net) {
  CodingScheme s = CodingScheme::sized_for(net);
  for (std::size_t e : {0, 1, 3, 4, 5, 6}) {
    s.edge_fn[e] = pass_through;
    s.edge_arity[e] = 1;
  }
  s.edge_fn[2] = [](std::span<const Symbol> in) { return in[0] ^ in[1]; };
  s.edge_arity[2] = 2;
  // t1 = vertex 4 sees in-edges {3, 6}; t2 = vertex 5 sees {4, 5}
  s.decoders[0] = [](std::span<const Symbol> in) { return in[0] ^ in[1]; };
  s.decoders[1] = [](std::span<const Symbol> in) { return in[0] ^ in[1]; };
  s.decoder_arity = {2, 2};
  for (auto& a : s.alphabet_size) a = 2;
  return s;
}

}  // namespace

TEST_CASE("forwarding on a path") {
  const Network path = fixtures::path({2, 2, 2});
  const auto scheme = forwarding(path);
  for (Symbol w = 0; w < 4; ++w) {
    const Symbol in[] = {w};
    CHECK(execute_scheme(path, scheme, in).outputs == std::vector<Symbol>{w});
  }
  const auto audit = audit_scheme(path, scheme, all_inputs(1, 2), 2.0, 0.0);
  CHECK(audit.correct_count == 4);
  for (double h : audit.edge_entropy) CHECK(h == doctest::Approx(2.0));
  CHECK(audit.capacity_respected);
  CHECK(audit.eps_r_scheme);
}

TEST_CASE("butterfly XOR") {
  const Network bf = fixtures::butterfly();
  const auto scheme = xor_butterfly(bf);
  const auto inputs = all_inputs(2, 1);
  CHECK(inputs.size() == 4);
  for (const auto& w : inputs) CHECK(execute_scheme(bf, scheme, w).outputs == w);
  const auto audit = audit_scheme(bf, scheme, inputs, 1.0, 0.0);
  CHECK(audit.correct_count == 4);
  for (double h : audit.edge_entropy) CHECK(h == doctest::Approx(1.0));
  CHECK(audit.capacity_respected);
  CHECK(audit.strict_respected);
}

TEST_CASE("executor errors") {
  Network cyc(2, true);
  cyc.add_edge(0, 1, 1);
  cyc.add_edge(1, 0, 1);
  cyc.add_pair(0, 1);
  auto s = CodingScheme::sized_for(cyc);
  const Symbol w[] = {0};
  try {
    (void)execute_scheme(cyc, s, w);
    FAIL("cycle accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CyclicNetwork);
  }
  const Network path = fixtures::path({1});
  auto bad = forwarding(path);
  bad.edge_arity[0] = 2;
  try {
    (void)execute_scheme(path, bad, w);
    FAIL("arity mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ArityMismatch);
  }
}

TEST_CASE("longness") {
  Network edgeless(4, true);
  edgeless.add_pair(0, 1);
  edgeless.add_pair(2, 3);
  CHECK(is_delta_d_long(edgeless, 5).delta == 1.0);
  const Network path = fixtures::path({1, 1, 1});
  CHECK(is_delta_d_long(path, 3).delta == 1.0);
  CHECK(is_delta_d_long(path, 4).delta == 0.0);
}

TEST_CASE("coding search") {
  CHECK(search_coding_rate(fixtures::path({1})).rate == 1);
  const auto bf = search_coding_rate(fixtures::butterfly(), 1);
  CHECK(bf.rate == 1);
  REQUIRE(bf.witness);
  const Network net = fixtures::butterfly();
  const auto audit = audit_scheme(net, bf.witness->to_scheme(net), all_inputs(2, 1), 1.0, 0.0);
  CHECK(audit.correct_count == 4);

  std::stringstream ss;
  write_table_scheme(ss, net, *bf.witness);
  const auto parsed = parse_table_scheme(ss, net);
  const auto again = audit_scheme(net, parsed.to_scheme(net), all_inputs(2, 1), 1.0, 0.0);
  CHECK(again.correct_count == 4);

  CHECK(search_coding_rate(fixtures::butterfly(false), 1).rate == 0);
  try {
    (void)search_coding_rate(net, 3);
    FAIL("3-bit alphabets accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SearchSpaceTooLarge);
  }
}

TEST_CASE("supervisor augmentation structure") {
  const Network path = fixtures::path({1, 1});
  const double budget[] = {0.5};
  const auto sup = augment_with_supervisor(path, 2.0, budget);
  CHECK(sup.new_sources.size() == 1);
  CHECK(sup.net.vertex_count() == path.vertex_count() + 2);
  CHECK(sup.net.edge_count() == path.edge_count() + 4);
  CHECK(sup.net.pairs()[0].source == sup.new_sources[0]);
  CHECK(sup.net.is_acyclic());
}

TEST_CASE("correction block code") {
  for (unsigned m : {1U, 4U, 8U, 16U}) {
    std::vector<BitVector> codes;
    for (Block x = 0; x < (Block{1} << std::min(m, 10U)); ++x) {
      const auto c = encode_correction(x, m);
      CHECK(c.size() == correction_length(x, m));
      CHECK(c.size() <= m + 1);
      BitReader r(c);
      CHECK(decode_correction(r, m) == x);
      CHECK(r.remaining() == 0);
      codes.push_back(c);
    }
    CHECK(is_prefix_free(codes));
  }
  BitVector g;
  append_elias_gamma(g, 5);
  CHECK(g.to_string() == "00101");
  BitReader rg(g);
  CHECK(read_elias_gamma(rg) == 5);
}

TEST_CASE("correction protocol examples") {
  const ExplicitCodebook book(2, 2, {{0b00, 0b00}, {0b11, 0b11}});
  const Block in_f[] = {0b11, 0b11};
  const auto same = correction_protocol(book, in_f);
  CHECK(same.w == Codeword{0b11, 0b11});
  CHECK(same.gamma == std::vector<Block>{0, 0});

  const Block alpha[] = {0b01, 0b10};
  const auto out = correction_protocol(book, alpha);
  CHECK(out.w == Codeword{0b00, 0b00});
  CHECK(out.gamma == std::vector<Block>{0b01, 0b10});
  for (std::size_t i = 0; i < 2; ++i) CHECK(player_decode(out.beta[i], 2) == out.gamma[i]);

  const HashedCodebook hashed(8, 8, 4, 99);
  const Block a[] = {1, 2, 3, 4, 5, 6, 7, 8};
  const auto s1 = correction_by_search(hashed, a);
  std::vector<Block> corrected(8);
  for (std::size_t i = 0; i < 8; ++i) corrected[i] = a[i] ^ s1.gamma[i];
  CHECK(hashed.contains(corrected));
  CHECK(hashed.log2_size() == doctest::Approx(60.0));

  // scan and search agree on explicit books
  const ExplicitCodebook small(3, 2, {{1, 2}, {5, 5}, {7, 0}, {2, 6}});
  for (Block x = 0; x < 8; ++x) {
    for (Block y = 0; y < 8; ++y) {
      const Block al[] = {x, y};
      CHECK(correction_by_scan(small, al).w == correction_by_search(small, al).w);
    }
  }
  try {
    const ExplicitCodebook empty(2, 2, {});
    (void)correction_protocol(empty, alpha);
    FAIL("empty codebook accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyCodebook);
  }
  CHECK(correction_length_bound(8, 8, 1.0 / 16.0) > 0.0);
}

TEST_CASE("supervised butterfly decodes every input") {
  const Network bf = fixtures::butterfly();
  const auto base = xor_butterfly(bf);
  const ExplicitCodebook book(1, 2, {{0, 0}, {1, 1}});
  const auto sup = build_supervised_scheme(bf, base, book);
  for (const auto& w : all_inputs(2, 1)) {
    CHECK(execute_scheme(sup.network.net, sup.scheme, w).outputs == w);
  }
  for (double b : sup.expected_beta) CHECK(b > 0.0);
  const auto audit = audit_supervisor_flow(sup);
  CHECK(audit.flow_residual < 1e-9);
  CHECK(audit.u_capacity_bound == doctest::Approx(1.5 * 2 * 1));
}
