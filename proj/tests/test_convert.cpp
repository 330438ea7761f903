#include <doctest.h>

#include <random>

#include "idcodes/convert.hpp"
#include "idcodes/exact.hpp"
#include "idcodes/heuristics.hpp"
#include "idcodes/signature.hpp"

using namespace idcodes;

TEST_CASE("parity append on the (1,2) code") {
  const Code c(2, {0b00, 0b01, 0b10});
  REQUIRE(is_identifying(c, 1));
  const Code d = to_discriminating(c);
  CHECK(d == Code(3, {0b000, 0b011, 0b101}));
  CHECK(is_discriminating(d, 1));
  CHECK(to_identifying(d) == c);
  CHECK(is_identifying(to_identifying(d, 3), 1));
}

TEST_CASE("sides") {
  CHECK(BipartiteSides::is_attribute(0b11));
  CHECK(BipartiteSides::is_individual(0b100));
  CHECK(BipartiteSides{5}.side_size() == 16);
}

TEST_CASE("discriminating check diagnostics") {
  const auto chk = check_discriminating(Code(4, {0}), 1);
  CHECK_FALSE(chk.discriminating);
  CHECK(chk.uncovered_individuals == 4);  // the weight-3 vectors
  REQUIRE(chk.uncovered.has_value());
  CHECK(parity(*chk.uncovered) == 1);
  CHECK_FALSE(is_discriminating(Code(3, {0}), 1));
}

TEST_CASE("contract violations") {
  CHECK_THROWS_AS(check_discriminating(Code(3, {0, 3}), 2), std::invalid_argument);
  CHECK_THROWS_AS(check_discriminating(Code(3, {0, 1}), 1), std::invalid_argument);
  CHECK_THROWS_AS(to_identifying(Code(3, {0, 1})), std::invalid_argument);
  CHECK_THROWS(to_identifying(Code(3, {0, 3}), 4));
  CHECK_THROWS(to_identifying(Code(1, {0})));
}

TEST_CASE("round trips on greedy+pruned codes") {
  std::mt19937_64 rng(31);
  int tested = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int r = (trial % 2 == 0) ? 1 : 3;
    const int n = r + 2 + static_cast<int>(rng() % (10 - r - 1));
    const Code c = prune(greedy_construct(r, n, rng()), r, 2, rng());
    REQUIRE(is_identifying(c, r));
    const Code d = to_discriminating(c);
    CHECK(d.size() == c.size());
    CHECK(is_discriminating(d, r));
    for (int pos = 1; pos <= n + 1; ++pos) {
      const Code back = to_identifying(d, pos);
      CHECK(back.size() == c.size());
      CHECK(is_identifying(back, r));
    }
    CHECK(to_identifying(d) == c);
    ++tested;
  }
  CHECK(tested == 60);
}

TEST_CASE("minimum discriminating size in F^(n+1) equals M_1(n)") {
  for (int n = 2; n <= 5; ++n) {
    const auto m = min_identifying(1, n);
    const auto d = min_discriminating(1, n + 1);
    REQUIRE(m.proven_minimal);
    REQUIRE(d.proven_minimal);
    CHECK(d.code.size() == m.code.size());
    CHECK(is_discriminating(d.code, 1));
  }
}
