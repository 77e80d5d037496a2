#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "ncclab/error.hpp"
#include "ncclab/field.hpp"
#include "ncclab/systematic_ds.hpp"

using namespace ncclab;

namespace {

std::vector<std::uint32_t> identity(std::size_t n) {
  std::vector<std::uint32_t> v(n);
  std::iota(v.begin(), v.end(), 0U);
  return v;
}

// every (f, y): correct answer and read log equal to Q_y
void exhaustive_replay(const SystematicDS& ds) {
  auto perm = identity(ds.n());
  do {
    const auto inv = min_preimage_inverse(perm);
    const auto adv = ds.preprocess(perm);
    for (std::size_t y = 0; y < ds.n(); ++y) {
      OracleTape tape(perm);
      CHECK(ds.answer(adv, y, tape) == inv[y]);
      auto reads = tape.read_log();
      std::sort(reads.begin(), reads.end());
      if (!ds.descriptor().adaptive) CHECK(reads == ds.descriptor().query_sets[y]);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

TEST_CASE("min_preimage_inverse uses 0 for missing preimages") {
  CHECK(min_preimage_inverse(std::vector<std::uint32_t>{2, 0, 1}) == std::vector<std::uint32_t>{1, 2, 0});
  CHECK(min_preimage_inverse(std::vector<std::uint32_t>{1, 1, 1}) == std::vector<std::uint32_t>{0, 0, 0});
  CHECK(is_permutation(std::vector<std::uint32_t>{2, 0, 1}));
  CHECK_FALSE(is_permutation(std::vector<std::uint32_t>{1, 1, 0}));
}

TEST_CASE("oracle tape budget and allowed set") {
  OracleTape tape(std::vector<std::uint32_t>{5, 6, 7});
  const std::vector<std::size_t> allowed{1};
  tape.arm(1, &allowed);
  CHECK(tape.read(1) == 6);
  try {
    tape.read(0);
    FAIL("read outside Q");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NonAdaptivityViolation);
  }
  try {
    tape.read(1);
    FAIL("over budget");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BudgetExceeded);
  }
  tape.disarm();
  OracleTape partial(std::vector<std::optional<std::uint32_t>>{1, std::nullopt});
  try {
    partial.read(1);
    FAIL("missing cell");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::MissingMessage);
  }
}

TEST_CASE("inv_trivial_table") {
  const auto ds = make_inv_trivial_table(4);
  const auto adv = ds->preprocess(identity(4));
  CHECK(adv.size() == 8);
  CHECK(adv.bits.read(0, 2) == 0);
  CHECK(adv.bits.read(6, 2) == 3);

  const auto ds3 = make_inv_trivial_table(3);
  const std::vector<std::uint32_t> f{2, 0, 1};
  OracleTape tape(f);
  CHECK(ds3->answer(ds3->preprocess(f), 0, tape) == 1);
  CHECK(tape.read_log().empty());
  CHECK(ds3->descriptor().t_queries == 0);
}

TEST_CASE("inv_trivial_scan") {
  const auto ds = make_inv_trivial_scan(3);
  const std::vector<std::uint32_t> f{2, 0, 1};
  const auto adv = ds->preprocess(f);
  CHECK(adv.size() == 0);
  OracleTape tape(f);
  CHECK(ds->answer(adv, 2, tape) == 0);
  CHECK(tape.read_log() == std::vector<std::size_t>{0, 1, 2});
  exhaustive_replay(*make_inv_trivial_scan(4));
}

TEST_CASE("inv_block") {
  const auto ds = make_inv_block(4, 2);
  CHECK(ds->descriptor().query_sets[0] == std::vector<std::size_t>{0, 1});
  CHECK(ds->descriptor().query_sets[3] == std::vector<std::size_t>{2, 3});
  CHECK(ds->preprocess(identity(4)).size() == 4);

  const std::vector<std::uint32_t> f{2, 3, 0, 1};
  const auto adv = ds->preprocess(f);
  CHECK(adv.bits[0] == false);  // f^-1(0) = 2 lies outside {0, 1}
  OracleTape tape(f);
  CHECK(ds->answer(adv, 0, tape) == 2);
  CHECK(tape.read_log().size() == 2);

  exhaustive_replay(*ds);
  exhaustive_replay(*make_inv_block(8, 2));
  const std::vector<std::uint32_t> g{1, 0, 3, 2};
  const auto advg = ds->preprocess(g);
  for (std::size_t y = 0; y < 4; ++y) {
    OracleTape t(g);
    CHECK(ds->answer(advg, y, t) == min_preimage_inverse(g)[y]);
  }
}

TEST_CASE("hellman") {
  const std::vector<std::uint32_t> cycle{1, 2, 3, 4, 5, 6, 7, 0};
  const auto ds = make_hellman(8, 2);
  CHECK(ds->descriptor().adaptive);
  const auto adv = ds->preprocess(cycle);
  OracleTape tape(cycle);
  CHECK(ds->answer(adv, 5, tape) == 4);
  CHECK(tape.read_log().size() <= 4);

  for (std::size_t t : {1, 2, 4}) {
    const auto h = make_hellman(8, t);
    const auto id = identity(8);
    const auto a = h->preprocess(id);
    for (std::size_t y = 0; y < 8; ++y) {
      OracleTape tp(id);
      CHECK(h->answer(a, y, tp) == y);
    }
  }
  exhaustive_replay(*make_hellman(6, 2));
  try {
    (void)ds->preprocess(std::vector<std::uint32_t>{0, 0, 1, 2, 3, 4, 5, 6});
    FAIL("not a permutation");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotAPermutation);
  }
}

TEST_CASE("polynomial tables") {
  const PrimeField f(17);
  const auto root = find_root_of_unity(f, 16);
  std::vector<std::uint32_t> px(16, 0);
  px[1] = 1;
  const auto eval = make_eval_table(root);
  CHECK(eval->descriptor().t_queries == 0);
  const auto adv = eval->preprocess(px);
  for (std::size_t j = 0; j < 16; ++j) {
    OracleTape tape(px);
    CHECK(eval->answer(adv, j, tape) == root.sigma.pow(j).value());
    CHECK(tape.read_log().empty());
  }

  const std::vector<std::uint32_t> alpha{3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9, 3};
  const auto transform = to_values(ffft(to_elements(f, alpha), root));
  const auto scan = make_eval_scan(root);
  const auto eval_adv = eval->preprocess(alpha);
  const auto scan_adv = scan->preprocess(alpha);
  for (std::size_t j = 0; j < 16; ++j) {
    OracleTape t1(alpha);
    OracleTape t2(alpha);
    CHECK(eval->answer(eval_adv, j, t1) == transform[j]);
    CHECK(scan->answer(scan_adv, j, t2) == transform[j]);
  }

  // interpolation: the input is a value table, answers are coefficients
  const auto interp = make_interp_table(root);
  const auto interp_scan = make_interp_scan(root);
  const auto ia = interp->preprocess(transform);
  const auto isa = interp_scan->preprocess(transform);
  for (std::size_t j = 0; j < 16; ++j) {
    OracleTape t1(transform);
    OracleTape t2(transform);
    CHECK(interp->answer(ia, j, t1) == alpha[j]);
    CHECK(interp_scan->answer(isa, j, t2) == alpha[j]);
  }
}

TEST_CASE("named construction") {
  CHECK(make_named_ds("inv_block", 8, 2)->descriptor().t_queries == 2);
  CHECK(make_named_ds("hellman", 8, 2)->descriptor().adaptive);
  try {
    (void)make_named_ds("eval_table", 16, 0);
    FAIL("missing root");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidArgument);
  }
  try {
    (void)make_named_ds("nope", 4, 0);
    FAIL("unknown name");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InvalidArgument);
  }
}
