#pragma once

// Certified minimum identifying, separating and discriminating codes for
// small dimensions (n <= 6, so a vertex set fits in one 64-bit mask).
//
// Every instance is a minimum hitting set: each "constraint" is the set of
// vertices that could cover one vertex or separate one pair, and a code is
// feasible iff it meets every constraint. The search ascends the size and
// runs a depth-first branch and bound at each size, branching on the
// constraint with the fewest surviving candidates.

#include <cstdint>
#include <optional>

#include "idcodes/hypercube.hpp"

namespace idcodes {

inline constexpr int kMaxExactDim = 6;

struct ExactOptions {
  std::uint64_t node_budget = 1'000'000'000;
  /// First size tried. Sizes below it are assumed infeasible, so a registry
  /// lower bound makes the minimality proof relative to that registry.
  int start_size = 1;
  /// Place a closest codeword pair at {0^n, 0^(n-d)1^d}. Unset: on for n <= 5.
  std::optional<bool> symmetry;
};

struct ExactResult {
  Code code;
  bool proven_minimal = false;
  std::uint64_t nodes = 0;
};

/// Every pair of vertices is k-separated; vertices need not be covered.
bool is_separating(const Code& c, int k);

ExactResult min_identifying(int r, int n, const ExactOptions& options = {});
/// Minimum k-separating code in F^p, 0 <= k <= p-1, p <= 5.
ExactResult min_separating(int p, int k, const ExactOptions& options = {});
/// Minimum r-discriminating code in F^n (codewords even, odd vertices
/// identified), r odd.
ExactResult min_discriminating(int r, int n, const ExactOptions& options = {});

}  // namespace idcodes
