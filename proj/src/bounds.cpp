#include "idcodes/bounds.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "idcodes/errors.hpp"
#include "idcodes/signature.hpp"

namespace idcodes {

namespace {

constexpr int kMinR = 1;
constexpr int kMaxR = 5;
constexpr int kMaxN = 21;

using K = ExtensionRelation::Kind;

ExtensionRelation rel(std::string label, int r, int n, int p, std::int64_t base, std::int64_t y,
                      std::int64_t factor, K kind, std::int64_t stated, int k = 0) {
  return ExtensionRelation{std::move(label), r, n, p, base, y, factor, kind, k, stated};
}

const std::vector<ExtensionRelation>& relation_table() {
  static const std::vector<ExtensionRelation> table = {
      rel("(6)", 1, 21, 2, 65536, 0, 0, K::wide, 262144),
      rel("(7)", 2, 19, 3, 1858, 0, 0, K::wide, 14864),
      rel("(7)", 2, 20, 4, 1858, 0, 0, K::wide, 29728),
      rel("(8)", 2, 21, 5, 1858, 0, 0, K::wide, 59456),
      rel("(9)", 3, 18, 4, 181, 0, 0, K::wide, 2896),
      rel("(9)", 3, 19, 5, 181, 0, 0, K::wide, 5792),
      rel("(10)", 3, 20, 6, 181, 0, 0, K::wide, 11584),
      rel("(10)", 3, 21, 7, 181, 0, 0, K::wide, 23168),
      rel("(11)", 4, 19, 5, 76, 0, 0, K::wide, 2432),
      rel("(11)", 4, 20, 6, 76, 0, 0, K::wide, 4864),
      rel("(12)", 4, 21, 7, 76, 0, 0, K::wide, 9728),
      rel("(13)", 5, 19, 6, 28, 0, 0, K::wide, 1792),
      rel("(13)", 5, 20, 7, 28, 0, 0, K::wide, 3584),
      rel("(14)", 5, 21, 8, 28, 0, 0, K::wide, 7168),
      rel("(15)", 1, 14, 1, 1322, 0, 0, K::empty_x, 2644),
      rel("(16)", 1, 16, 1, 4848, 128, 1, K::c1, 9824),
      rel("(17)", 1, 20, 1, 65536, 0, 0, K::empty_x, 131072),
      rel("(18)", 2, 17, 1, 1858, 151, 1, K::c1, 3867),
      rel("(19)", 2, 18, 2, 1858, 105, 3, K::c1, 7747),
      rel("(20)", 3, 15, 1, 181, 13, 1, K::c1, 375),
      rel("(21)", 3, 16, 2, 181, 4, 3, K::c1, 736),
      rel("(22)", 3, 17, 3, 181, 0, 0, K::empty_x, 1448),
      rel("(23)", 4, 15, 1, 76, 4, 1, K::c1, 156),
      rel("(24)", 4, 16, 2, 76, 2, 3, K::c1, 310),
      rel("(25)", 4, 17, 3, 76, 2, 3, K::c2, 614, 1),
      rel("(25)", 4, 18, 4, 76, 2, 6, K::c2, 1228, 1),
      rel("(26)", 5, 14, 1, 28, 4, 1, K::c1, 60),
      rel("(27)", 5, 15, 2, 28, 1, 3, K::c1, 115),
      rel("(28)", 5, 16, 3, 28, 0, 0, K::empty_x, 224),
      rel("(28)", 5, 17, 4, 28, 0, 0, K::empty_x, 448),
      rel("(28)", 5, 18, 5, 28, 0, 0, K::empty_x, 896),
      rel("(29)", 2, 21, 1, 29346, 0, 0, K::empty_x, 58692),
      rel("(30)", 3, 20, 1, 5532, 0, 0, K::empty_x, 11064),
      rel("(30)", 3, 21, 2, 5532, 0, 0, K::empty_x, 22128),
      rel("(31)", 4, 19, 1, 1045, 2, 1, K::c1, 2092),
      rel("(32)", 4, 20, 2, 1045, 0, 0, K::empty_x, 4180),
      rel("(32)", 4, 21, 3, 1045, 0, 0, K::empty_x, 8360),
      rel("(33)", 5, 19, 1, 454, 1, 1, K::c1, 909),
      rel("(34)", 5, 20, 2, 454, 1, 3, K::c1, 1819),
      rel("(35)", 5, 21, 3, 454, 0, 0, K::empty_x, 3632),
  };
  return table;
}

std::string cell(int r, int n) { return "(" + std::to_string(r) + "," + std::to_string(n) + ")"; }

class Checker {
 public:
  explicit Checker(ConsistencyReport& report) : report_(report) {}

  void expect(bool ok, const std::string& what) {
    ++report_.checks;
    if (!ok) report_.failures.push_back(what);
  }

 private:
  ConsistencyReport& report_;
};

bool is_relation_key(const std::string& key) {
  return key.size() >= 3 && key.front() == '(' && key.back() == ')';
}

}  // namespace

std::span<const ExtensionRelation> extension_relations() { return relation_table(); }

std::optional<std::int64_t> known_separating_size(int p, int k) {
  // 1-separating in F^3: M_1(3) - 1. In F^4, 1-separating is 2-separating and
  // M_2(4) = 6 leaves no room for one fewer.
  if (p == 3 && k == 1) return 3;
  if (p == 4 && k == 1) return 6;
  return std::nullopt;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::violates_lower: return "violates-lower";
    case Classification::beats_upper: return "beats-upper";
    case Classification::matches_upper: return "matches-upper";
    case Classification::above_upper: return "above-upper";
  }
  return "?";
}

BoundsRegistry BoundsRegistry::parse(std::istream& in, const std::string& source) {
  BoundsRegistry reg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    BoundRecord rec;
    if (!(fields >> rec.r)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError(source, lineno, "expected `r n lower upper lower_key upper_key`");
    }
    if (!(fields >> rec.n >> rec.lower >> rec.upper >> rec.lower_key >> rec.upper_key)) {
      throw ParseError(source, lineno, "expected `r n lower upper lower_key upper_key`");
    }
    std::string extra;
    if (fields >> extra) throw ParseError(source, lineno, "trailing field '" + extra + "'");
    if (rec.r < kMinR || rec.r > kMaxR || rec.n < rec.r + 1 || rec.n > kMaxN) {
      throw ParseError(source, lineno, "cell " + cell(rec.r, rec.n) + " out of range");
    }
    if (rec.lower < 1 || rec.lower > rec.upper) {
      throw ParseError(source, lineno, "need 1 <= lower <= upper");
    }
    if (reg.find(rec.r, rec.n) != nullptr) {
      throw ParseError(source, lineno, "duplicate cell " + cell(rec.r, rec.n));
    }
    reg.records_.push_back(std::move(rec));
  }
  std::sort(reg.records_.begin(), reg.records_.end(),
            [](const BoundRecord& a, const BoundRecord& b) { return std::tie(a.r, a.n) < std::tie(b.r, b.n); });
  return reg;
}

BoundsRegistry BoundsRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bounds registry " + path.string());
  return parse(in, path.string());
}

BoundsRegistry BoundsRegistry::load_default() { return load(default_registry_path()); }

std::filesystem::path default_registry_path() {
  if (const char* env = std::getenv("IDCODES_BOUNDS"); env != nullptr && *env != '\0') return env;
  return std::filesystem::path(IDCODES_DATA_DIR) / "bounds.txt";
}

const BoundRecord* BoundsRegistry::find(int r, int n) const {
  for (const auto& rec : records_) {
    if (rec.r == r && rec.n == n) return &rec;
  }
  return nullptr;
}

const BoundRecord& BoundsRegistry::lookup(int r, int n) const {
  if (r < kMinR || r > kMaxR || n < r + 1 || n > kMaxN) {
    throw std::out_of_range("no registry cell " + cell(r, n) + ": need 1 <= r <= 5, r+1 <= n <= 21");
  }
  const BoundRecord* rec = find(r, n);
  if (rec == nullptr) throw std::out_of_range("registry has no record for " + cell(r, n));
  return *rec;
}

BoundRecord BoundsRegistry::discriminating(int r, int n) const {
  if (r % 2 == 0) throw std::invalid_argument("discriminating bounds need odd r");
  BoundRecord out = lookup(r, n - 1);
  out.n = n;
  return out;
}

ConsistencyReport BoundsRegistry::check_consistency() const {
  ConsistencyReport report;
  Checker check(report);

  for (int r = kMinR; r <= kMaxR; ++r) {
    for (int n = r + 1; n <= kMaxN; ++n) check.expect(find(r, n) != nullptr, "missing cell " + cell(r, n));
  }

  for (const auto& rec : records_) {
    const std::string at = cell(rec.r, rec.n);
    check.expect(rec.lower <= rec.upper, at + ": lower exceeds upper");
    const std::int64_t full = (std::int64_t{1} << rec.n) - 1;
    const bool full_row = rec.n == rec.r + 1;
    if (rec.lower_key == "f") check.expect(full_row, at + ": key f outside the n = r+1 row");
    if (rec.upper_key == "B") check.expect(full_row, at + ": key B outside the n = r+1 row");
    if (full_row) check.expect(rec.exact() && rec.lower == full, at + ": M_{n-1}(n) must be 2^n - 1");
  }

  // M_max(n) <= M_min(n) <= M_max(n) + 1 for radii r and n-r-1.
  for (const auto& rec : records_) {
    const int s = rec.n - rec.r - 1;
    if (s <= rec.r) continue;
    const BoundRecord* big = find(s, rec.n);
    if (big == nullptr) continue;
    const std::string at = cell(rec.r, rec.n) + " vs " + cell(s, rec.n);
    check.expect(big->lower <= rec.upper, at + ": M_max lower exceeds M_min upper");
    check.expect(rec.lower <= big->upper + 1, at + ": M_min lower exceeds M_max upper + 1");
  }

  for (const auto& rec : records_) {
    if (rec.lower_key != "ℓ") continue;
    const int s = rec.n - rec.r - 1;
    const BoundRecord* small = find(std::min(rec.r, s), rec.n);
    const std::string at = cell(rec.r, rec.n) + ": key ℓ";
    check.expect(s < rec.r && small != nullptr && small->exact() && rec.lower == small->lower - 1,
                 at + " needs lower = M_min(n) - 1 with M_min(n) exact");
  }

  // D_r(n+1) bounds are those of M_r(n) for odd r.
  for (const auto& rec : records_) {
    if (rec.r % 2 == 0) continue;
    const BoundRecord d = discriminating(rec.r, rec.n + 1);
    check.expect(d.lower == rec.lower && d.upper == rec.upper, cell(rec.r, rec.n + 1) + ": D transposition");
  }

  for (const auto& rel : relation_table()) {
    const std::string at = rel.label + " " + cell(rel.r, rel.n);
    const BoundRecord* target = find(rel.r, rel.n);
    const BoundRecord* base = find(rel.r, rel.n - rel.p);
    check.expect(target != nullptr && base != nullptr, at + ": cells present");
    if (target == nullptr || base == nullptr) continue;

    std::int64_t factor = 0;
    switch (rel.kind) {
      case K::wide:
        check.expect(rel.p >= rel.r + 1, at + ": needs p >= r+1");
        [[fallthrough]];
      case K::empty_x:
        check.expect(rel.y_size == 0, at + ": no repair set expected");
        break;
      case K::c1:
        factor = (std::int64_t{1} << rel.p) - 1;
        break;
      case K::c2: {
        const auto sep = known_separating_size(rel.p, rel.k);
        check.expect(sep.has_value() && rel.k >= 0 && rel.k <= rel.p - 1, at + ": C2 multiplier");
        factor = sep.value_or(-1);
        break;
      }
    }
    if (rel.y_size > 0) check.expect(rel.y_factor == factor, at + ": multiplier size");

    check.expect(rel.base_size == base->upper, at + ": base is the upper bound of " + cell(rel.r, rel.n - rel.p));
    const std::int64_t value = (std::int64_t{1} << rel.p) * rel.base_size + rel.y_size * rel.y_factor;
    check.expect(value == rel.stated, at + ": arithmetic gives " + std::to_string(value) + ", stated " +
                                          std::to_string(rel.stated));
    check.expect(target->upper <= rel.stated, at + ": registry upper above the relation");
    if (target->upper_key == rel.label) {
      check.expect(target->upper == rel.stated, at + ": upper keyed to this relation must equal it");
    }
  }

  for (const auto& rec : records_) {
    if (!is_relation_key(rec.upper_key)) continue;
    const bool found = std::any_of(relation_table().begin(), relation_table().end(), [&](const auto& rel) {
      return rel.label == rec.upper_key && rel.r == rec.r && rel.n == rec.n;
    });
    check.expect(found, cell(rec.r, rec.n) + ": upper key " + rec.upper_key + " names no relation for this cell");
  }
  return report;
}

Classification classify_size(std::int64_t size, const BoundRecord& record) {
  if (size < record.lower) return Classification::violates_lower;
  if (size < record.upper) return Classification::beats_upper;
  if (size == record.upper) return Classification::matches_upper;
  return Classification::above_upper;
}

Classification compare(const Code& c, int r, const BoundsRegistry& registry) {
  const BoundRecord& rec = registry.lookup(r, c.dim());
  require_identifying(c, r, "compare");
  return classify_size(static_cast<std::int64_t>(c.size()), rec);
}

}  // namespace idcodes
