#pragma once

// Length (and radius) extension of identifying codes by direct sums.
//
// From an r1-identifying code C in F^n, p extra coordinates and a radius gain
// r2 >= 0:
//   C1: C' = (C ⊕ F^p) ∪ (Y ⊕ (F^p \ {0^p}))
//   C2: C' = (C ⊕ F^p) ∪ (Y ⊕ C_{p,k}),  C_{p,k} k-separating in F^p
// is (r1 + r2)-identifying in F^(n+p), where Y repairs the "problem" vertices
// X that no codeword reaches within the band (r1 - p + r2, r1 + r2].
//
// r2 = 0 requires p >= 1 (p >= r1 + 1 always gives X = ∅). r2 >= 1 requires
// r1 >= p >= r2. C2 requires 0 <= k <= p - 1; only 1 <= k <= p - 2 can beat
// C1. Base-code choice is the caller's: smaller bases usually win because the
// result carries a factor 2^p, but a larger base with a smaller X can too.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "idcodes/hypercube.hpp"

namespace idcodes {

struct ExtendOptions {
  /// Skip the parameter-range checks; the output is still verified.
  bool force = false;
};

struct ExtensionPlan {
  Code base;
  int r1 = 1;
  int p = 1;
  int r2 = 0;
  /// Set for construction C2.
  std::optional<int> k;
  std::vector<Word> x_set;
  std::vector<Word> y_set;
  std::optional<Code> separ;
};

struct ExtensionResult {
  Code code;
  ExtensionPlan plan;
  /// Radius at which `code` was verified identifying.
  int radius = 0;

  /// |X|, |Y|, |separ|, final size and verification status, one per line.
  [[nodiscard]] std::string report() const;
};

/// { x in F^n : no codeword c has r1 - p + r2 < d(x, c) <= r1 + r2 }.
std::vector<Word> compute_x_set(const Code& c, int r1, int p, int r2 = 0);

/// Greedy set cover of `targets` by vertices at distance in [lo, hi]: each
/// step takes the vertex reaching the most uncovered targets, ties to the
/// smallest word.
std::vector<Word> cover_annulus(std::span<const Word> targets, int lo, int hi, int n);

ExtensionResult extend_c1(const Code& c, int r1, int p, int r2 = 0, const ExtendOptions& options = {});
ExtensionResult extend_c2(const Code& c, int r1, int p, int r2, int k, const Code& separ,
                          const ExtendOptions& options = {});

}  // namespace idcodes
