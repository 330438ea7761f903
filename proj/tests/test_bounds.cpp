#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "idcodes/bounds.hpp"
#include "idcodes/code_io.hpp"
#include "idcodes/errors.hpp"
#include "idcodes/exact.hpp"

using namespace idcodes;

namespace {

const BoundsRegistry& registry() {
  static const BoundsRegistry reg = BoundsRegistry::load(std::string(IDCODES_TEST_DATA) + "/bounds.txt");
  return reg;
}

}  // namespace

TEST_CASE("lookups") {
  const auto& a = registry().lookup(1, 9);
  CHECK(a.lower == 101);
  CHECK(a.upper == 114);
  CHECK(a.upper_key == "*");
  CHECK(registry().lookup(2, 17).lower == 1761);
  CHECK(registry().lookup(2, 17).upper == 3785);
  CHECK(registry().lookup(5, 18).lower == 77);
  CHECK(registry().lookup(5, 18).upper == 454);
  CHECK(registry().lookup(1, 7).exact());
  CHECK_FALSE(registry().lookup(1, 6).exact());
  CHECK(registry().lookup(3, 5).lower_key == "ℓ");
  CHECK_THROWS_AS(static_cast<void>(registry().lookup(6, 9)), std::out_of_range);
  CHECK_THROWS_AS(static_cast<void>(registry().lookup(2, 2)), std::out_of_range);
  CHECK_THROWS_AS(static_cast<void>(registry().lookup(1, 22)), std::out_of_range);
  CHECK(registry().records().size() == 90);
}

TEST_CASE("full-space rows") {
  for (const auto& rec : registry().records()) {
    if (rec.lower_key == "f" || rec.upper_key == "B") {
      CHECK(rec.n == rec.r + 1);
      CHECK(rec.lower == (std::int64_t{1} << rec.n) - 1);
      CHECK(rec.exact());
    }
  }
  CHECK(registry().lookup(3, 4).upper == 15);
}

TEST_CASE("shipped registry is consistent") {
  const auto rep = registry().check_consistency();
  for (const auto& f : rep.failures) MESSAGE(f);
  CHECK(rep.ok());
  CHECK(rep.checks > 400);
}

TEST_CASE("relations") {
  const auto rels = extension_relations();
  CHECK(rels.size() == 40);
  auto find = [&](const char* label, int r, int n) -> const ExtensionRelation* {
    for (const auto& rel : rels) {
      if (rel.label == label && rel.r == r && rel.n == n) return &rel;
    }
    return nullptr;
  };
  const auto* r29 = find("(29)", 2, 21);
  REQUIRE(r29 != nullptr);
  CHECK(2 * r29->base_size == 58692);
  CHECK(registry().lookup(2, 21).upper == 58692);
  const auto* r35 = find("(35)", 5, 21);
  REQUIRE(r35 != nullptr);
  CHECK(8 * r35->base_size == 3632);
  const auto* r19 = find("(19)", 2, 18);
  REQUIRE(r19 != nullptr);
  CHECK(4 * 1858 + 105 * 3 == r19->stated);
  CHECK(known_separating_size(3, 1) == 3);
  CHECK(known_separating_size(4, 1) == 6);
  CHECK_FALSE(known_separating_size(5, 2).has_value());
}

TEST_CASE("known separating sizes agree with the exact search") {
  CHECK(static_cast<std::int64_t>(min_separating(3, 1).code.size()) == *known_separating_size(3, 1));
  CHECK(static_cast<std::int64_t>(min_separating(4, 1).code.size()) == *known_separating_size(4, 1));
}

TEST_CASE("tampered registries are caught") {
  std::ostringstream text;
  for (const auto& rec : registry().records()) {
    std::int64_t upper = rec.upper;
    if (rec.r == 5 && rec.n == 21) upper = 3631;  // relation (35) says 3632
    text << rec.r << ' ' << rec.n << ' ' << rec.lower << ' ' << upper << ' ' << rec.lower_key << ' '
         << rec.upper_key << '\n';
  }
  std::istringstream in(text.str());
  const auto bad = BoundsRegistry::parse(in, "tampered");
  const auto rep = bad.check_consistency();
  CHECK_FALSE(rep.ok());

  std::istringstream missing("1 2 3 3 a B\n");
  CHECK_FALSE(BoundsRegistry::parse(missing).check_consistency().ok());
}

TEST_CASE("registry parse errors carry line numbers") {
  std::istringstream dup("# header\n1 2 3 3 a B\n1 2 3 3 a B\n");
  try {
    BoundsRegistry::parse(dup, "dup");
    FAIL("duplicate accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream inverted("1 5 11 10 b A\n");
  CHECK_THROWS_AS(BoundsRegistry::parse(inverted), ParseError);
  std::istringstream short_line("1 5 10 10 b\n");
  CHECK_THROWS_AS(BoundsRegistry::parse(short_line), ParseError);
  std::istringstream range("6 8 1 1 a A\n");
  CHECK_THROWS_AS(BoundsRegistry::parse(range), ParseError);
}

TEST_CASE("discriminating transposition") {
  const auto d = registry().discriminating(1, 8);
  CHECK(d.n == 8);
  CHECK(d.lower == 32);
  CHECK(d.upper == 32);
  CHECK_THROWS(static_cast<void>(registry().discriminating(2, 8)));
}

TEST_CASE("classification") {
  const Code c114 = read_code_file(std::string(IDCODES_TEST_DATA) + "/codes/r1_n9_114.txt").code;
  CHECK(compare(c114, 1, registry()) == Classification::matches_upper);
  CHECK(classify_size(100, registry().lookup(1, 9)) == Classification::violates_lower);
  CHECK(classify_size(110, registry().lookup(1, 9)) == Classification::beats_upper);
  CHECK(classify_size(130, registry().lookup(1, 9)) == Classification::above_upper);
  const Code m14 = min_identifying(1, 4).code;
  CHECK(compare(m14, 1, registry()) == Classification::matches_upper);
  CHECK(registry().lookup(1, 4).exact());
  CHECK_THROWS_AS(compare(Code(4, {0, 1, 2}), 1, registry()), VerificationError);
  CHECK(to_string(Classification::beats_upper) == "beats-upper");
}

TEST_CASE("default registry path honours the environment") {
  CHECK(default_registry_path().filename() == "bounds.txt");
  ::setenv("IDCODES_BOUNDS", "/nonexistent/elsewhere.txt", 1);
  CHECK(default_registry_path() == "/nonexistent/elsewhere.txt");
  CHECK_THROWS(BoundsRegistry::load_default());
  ::unsetenv("IDCODES_BOUNDS");
}
