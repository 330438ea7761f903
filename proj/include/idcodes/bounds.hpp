#pragma once

// Registry of known lower and upper bounds on M_r(n), with arithmetic
// consistency checks and classification of newly built codes.
//
// The registry is a plain-text file, one record per line:
//   r n lower upper lower_key upper_key
// with `#` comments. Lower bounds are trusted data and never recomputed.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idcodes/hypercube.hpp"

namespace idcodes {

struct BoundRecord {
  int r = 0;
  int n = 0;
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  std::string lower_key;
  std::string upper_key;

  [[nodiscard]] bool exact() const { return lower == upper; }
};

/// An upper bound obtained by extending a code of size `base_size` in
/// F^(n-p) by p coordinates: stated = 2^p * base_size + y_size * y_factor.
struct ExtensionRelation {
  enum class Kind {
    /// p >= r + 1, so no vertex needs repair.
    wide,
    /// The base code happened to leave nothing to repair.
    empty_x,
    /// Repair vertices multiplied by F^p \ {0^p}.
    c1,
    /// Repair vertices multiplied by a minimum k-separating code of F^p.
    c2,
  };

  std::string label;
  int r = 0;
  int n = 0;
  int p = 0;
  std::int64_t base_size = 0;
  std::int64_t y_size = 0;
  std::int64_t y_factor = 0;
  Kind kind = Kind::wide;
  int k = 0;
  std::int64_t stated = 0;
};

/// The published extension relations between registry cells.
std::span<const ExtensionRelation> extension_relations();

/// Minimum k-separating code sizes in F^p used by the C2 relations.
std::optional<std::int64_t> known_separating_size(int p, int k);

struct ConsistencyReport {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  [[nodiscard]] bool ok() const { return failures.empty(); }
};

enum class Classification { violates_lower, beats_upper, matches_upper, above_upper };

std::string_view to_string(Classification c);

class BoundsRegistry {
 public:
  static BoundsRegistry parse(std::istream& in, const std::string& source = "<registry>");
  static BoundsRegistry load(const std::filesystem::path& path);
  /// $IDCODES_BOUNDS if set, else the registry shipped in data/.
  static BoundsRegistry load_default();

  [[nodiscard]] const BoundRecord& lookup(int r, int n) const;
  [[nodiscard]] const BoundRecord* find(int r, int n) const;
  /// D_r(n) bounds: for odd r they are those of M_r(n-1).
  [[nodiscard]] BoundRecord discriminating(int r, int n) const;
  [[nodiscard]] std::span<const BoundRecord> records() const { return records_; }

  [[nodiscard]] ConsistencyReport check_consistency() const;

 private:
  std::vector<BoundRecord> records_;
};

std::filesystem::path default_registry_path();

/// Verifies `c` is r-identifying (VerificationError otherwise) and places its
/// size against the registry cell for (r, c.dim()).
Classification compare(const Code& c, int r, const BoundsRegistry& registry);
Classification classify_size(std::int64_t size, const BoundRecord& record);

}  // namespace idcodes
