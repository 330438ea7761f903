#pragma once

// Identifying codes in F^n and discriminating codes in F^{n+1} (odd radius)
// are in bijection: append a parity bit one way, delete a coordinate the
// other way.
//
// Even vectors play the attributes, odd vectors the individuals. Flipping the
// sides is a translation by a weight-one vector and is left to the caller.

#include <cstdint>
#include <optional>
#include <utility>

#include "idcodes/hypercube.hpp"

namespace idcodes {

struct BipartiteSides {
  int dim;

  [[nodiscard]] static bool is_attribute(Word w) { return parity(w) == 0; }
  [[nodiscard]] static bool is_individual(Word w) { return parity(w) == 1; }
  /// |E^n| = |O^n| = 2^(n-1).
  [[nodiscard]] std::uint64_t side_size() const { return std::uint64_t{1} << (dim - 1); }
};

struct DiscriminatingCheck {
  bool discriminating = false;
  std::int64_t uncovered_individuals = 0;
  std::int64_t unseparated_pairs = 0;
  std::optional<Word> uncovered;
  std::optional<std::pair<Word, Word>> unseparated;
};

/// Checks the odd vertices only. Throws std::invalid_argument when `r` is even
/// or when some codeword is odd.
DiscriminatingCheck check_discriminating(const Code& c, int r);
bool is_discriminating(const Code& c, int r);

/// { c|π(c) : c in C }.
Code to_discriminating(const Code& c);

/// Deletes coordinate `pos` (default: the last one) from every
/// codeword. Requires every codeword to be even, which makes the deletion
/// injective.
Code to_identifying(const Code& c, std::optional<int> pos = std::nullopt);

}  // namespace idcodes
