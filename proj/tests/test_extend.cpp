#include <doctest.h>

#include <algorithm>
#include <random>

#include "idcodes/errors.hpp"
#include "idcodes/exact.hpp"
#include "idcodes/extend.hpp"
#include "idcodes/heuristics.hpp"
#include "idcodes/signature.hpp"

using namespace idcodes;

namespace {

// x_1..x_5 of F^10: disjoint pairs of ones.
const std::vector<Word> kPairs = {0b1100000000, 0b0011000000, 0b0000110000, 0b0000001100, 0b0000000011};

bool subset(const std::vector<Word>& a, const std::vector<Word>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("annulus covers for disjoint pairs in F^10") {
  const auto at2 = cover_annulus(kPairs, 2, 2, 10);
  CHECK(at2 == std::vector<Word>{0});
  const auto at0 = cover_annulus(kPairs, 0, 0, 10);
  CHECK(at0.size() == 5);
  std::vector<Word> sorted_x = kPairs;
  std::sort(sorted_x.begin(), sorted_x.end());
  CHECK(at0 == sorted_x);
  CHECK(cover_annulus(kPairs, 1, 1, 10).size() > 1);
  CHECK(cover_annulus(kPairs, 3, 3, 10).size() > 1);
  CHECK(cover_annulus({}, 1, 2, 10).empty());
  CHECK_THROWS(cover_annulus(kPairs, 3, 2, 10));
  CHECK_THROWS(cover_annulus(kPairs, 0, 11, 10));
}

TEST_CASE("annulus covers reach every target") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 6 + static_cast<int>(rng() % 4);
    std::vector<Word> targets;
    for (int i = 0; i < 12; ++i) targets.push_back(static_cast<Word>(rng()) & low_mask(n));
    const int lo = static_cast<int>(rng() % 3);
    const int hi = lo + static_cast<int>(rng() % 3);
    const auto y = cover_annulus(targets, lo, hi, n);
    for (Word x : targets) {
      CHECK(std::any_of(y.begin(), y.end(), [&](Word v) { return hamming(x, v) >= lo && hamming(x, v) <= hi; }));
    }
  }
}

TEST_CASE("problem sets") {
  for (int n = 2; n <= 8; ++n) CHECK(compute_x_set(Code::full_space(n), 1, 1).empty());

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const int r = 1 + static_cast<int>(rng() % 3);
    const int n = r + 3 + static_cast<int>(rng() % (10 - r - 3));
    const Code c = prune(greedy_construct(r, n, rng()), r, 2, rng());
    CHECK(compute_x_set(c, r, r + 1).empty());
    CHECK(compute_x_set(c, r, r + 3).empty());
    std::vector<Word> prev = compute_x_set(c, r, 1);
    for (int p = 2; p <= r; ++p) {
      const auto cur = compute_x_set(c, r, p);
      CHECK(subset(cur, prev));
      prev = cur;
    }
  }
}

TEST_CASE("empty problem set gives the plain direct sum") {
  const Code base = min_identifying(1, 4).code;
  const auto res = extend_c1(base, 1, 2);
  CHECK(res.plan.x_set.empty());
  CHECK(res.plan.y_set.empty());
  CHECK(res.code.size() == 28);
  CHECK(res.code == direct_sum(base, Code::full_space(2)));
  CHECK(res.radius == 1);
  CHECK(is_identifying(res.code, 1));
  CHECK(res.report().find("verified yes") != std::string::npos);
}

TEST_CASE("C1 from the (1,5)10 code") {
  const Code base = min_identifying(1, 5).code;
  const auto res = extend_c1(base, 1, 1);
  CHECK(res.code.dim() == 6);
  CHECK(is_identifying(res.code, 1));
  CHECK(res.code.size() <= 2 * 10 + res.plan.y_set.size());
  // M_1(6) is 18 or 19.
  CHECK(res.code.size() >= 18);
}

TEST_CASE("C1 size accounting") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int r = 2 + static_cast<int>(rng() % 2);
    const int n = r + 3 + static_cast<int>(rng() % 3);
    const int p = 1 + static_cast<int>(rng() % r);
    const Code c = prune(greedy_construct(r, n, rng()), r, 2, rng());
    const auto res = extend_c1(c, r, p);
    const std::size_t bound = (c.size() << p) + res.plan.y_set.size() * ((std::size_t{1} << p) - 1);
    CHECK(res.code.size() <= bound);
    CHECK(is_identifying(res.code, r));
    const bool disjoint = std::none_of(res.plan.y_set.begin(), res.plan.y_set.end(), [&](Word y) { return c.contains(y); });
    if (disjoint) CHECK(res.code.size() == bound);
  }
}

TEST_CASE("C2 with the {000,001,100} separating code") {
  const Code base = min_identifying(3, 6).code;
  REQUIRE(base.size() == 7);
  const Code separ(3, {0b000, 0b001, 0b100});
  const auto res = extend_c2(base, 3, 3, 0, 1, separ);
  CHECK(res.code.dim() == 9);
  CHECK(res.radius == 3);
  CHECK(is_identifying(res.code, 3));
  CHECK(res.plan.k == 1);
  CHECK(res.report().find("construction C2") != std::string::npos);
}

TEST_CASE("C2 with k = 0 or p-1 costs what C1 costs") {
  const Code base = prune(greedy_construct(3, 7, 5), 3);
  for (int k : {0, 2}) {
    const auto s = min_separating(3, k).code;
    CHECK(s.size() == 7);
    const auto res = extend_c2(base, 3, 3, 0, k, s);
    CHECK(is_identifying(res.code, 3));
  }
  // F^p minus zero is admissible for every k.
  for (int k = 0; k <= 2; ++k) CHECK(is_identifying(extend_c2(base, 3, 3, 0, k, Code::punctured_space(3)).code, 3));
}

TEST_CASE("radius gain: r1 = p = r2 = 1") {
  for (int n = 2; n <= 5; ++n) {
    const Code base = min_identifying(1, n).code;
    const auto res = extend_c1(base, 1, 1, 1);
    CHECK(res.code.dim() == n + 1);
    CHECK(res.radius == 2);
    CHECK(is_identifying(res.code, 2));
  }
}

TEST_CASE("radius gain with C2") {
  const Code base = prune(greedy_construct(3, 7, 2), 3);
  const auto res = extend_c2(base, 3, 3, 1, 1, Code(3, {0b000, 0b001, 0b100}));
  CHECK(res.radius == 4);
  CHECK(is_identifying(res.code, 4));
}

TEST_CASE("range checks") {
  const Code base = min_identifying(1, 4).code;
  CHECK_THROWS_AS(extend_c1(base, 1, 2, 1), std::invalid_argument);  // r2 >= 1 needs r1 >= p
  CHECK_THROWS_AS(extend_c1(base, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(extend_c2(base, 1, 2, 0, 2, Code::punctured_space(2)), std::invalid_argument);
  CHECK_THROWS_AS(extend_c2(base, 1, 2, 0, 1, Code::punctured_space(3)), std::invalid_argument);
  CHECK_THROWS_AS(extend_c2(base, 1, 3, 0, 1, Code(3, {0})), std::invalid_argument);
  CHECK_THROWS_AS(extend_c1(Code(4, {0, 1}), 1, 1), VerificationError);

  // Forced past the range check, the verification still decides.
  ExtendOptions force;
  force.force = true;
  bool verified_or_refused = true;
  try {
    const auto res = extend_c1(base, 1, 2, 1, force);
    verified_or_refused = is_identifying(res.code, 2);
  } catch (const VerificationError&) {
  }
  CHECK(verified_or_refused);
}

TEST_CASE("matrix of extensions with n + p <= 12") {
  std::mt19937_64 rng(77);
  int combos = 0;
  for (int r1 = 1; r1 <= 3; ++r1) {
    for (int n = r1 + 2; n <= 8; n += 2) {
      const Code base = prune(greedy_construct(r1, n, rng()), r1, 2, rng());
      for (int p = 1; p <= r1 + 1 && n + p <= 12; ++p) {
        for (int r2 = 0; r2 <= std::min(p, r1); ++r2) {
          if (r2 >= 1 && !(r1 >= p)) continue;
          const auto res = extend_c1(base, r1, p, r2);
          CHECK(check_signatures(res.code.words(), n + p, r1 + r2).identifying());
          ++combos;
          if (p >= 2 && r2 == 0) {
            const auto c2 = extend_c2(base, r1, p, 0, p - 1, Code::punctured_space(p));
            CHECK(is_identifying(c2.code, r1));
            ++combos;
          }
        }
      }
    }
  }
  CHECK(combos >= 20);
}
