#pragma once

// Construction heuristics for r-identifying codes: noising (a swap local
// search with a noised acceptance rule), greedy growth from the empty code,
// and pruning of useless codewords.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "idcodes/hypercube.hpp"

namespace idcodes {

/// One codeword visit, as seen by NoisingParams::trace.
struct NoisingStep {
  std::uint64_t iteration = 0;
  double rho = 0.0;
  /// Best plain delta over the non-codewords.
  std::int64_t delta = 0;
  bool accepted = false;
  /// f after the visit (before any shrink on reaching 0).
  std::int64_t f = 0;
};

struct NoisingParams {
  /// Initial code size c.
  std::size_t target_size = 0;
  /// Initial noise rate; the rate falls arithmetically to exactly 0 in
  /// `rho_steps` steps, then the schedule starts over.
  double rho_init = 3.0;
  int rho_steps = 100;
  /// Full passes over the codewords at each noise rate.
  int sweeps_per_rho = 1;
  /// Budget in codeword visits (elementary-transformation attempts).
  std::uint64_t max_iterations = 2'000'000;
  std::uint64_t seed = 1;
  /// Stop once an identifying code with at most this many codewords is found;
  /// 0 keeps shrinking until the budget runs out.
  std::size_t stop_size = 0;
  /// Called after every visit when set.
  std::function<void(const NoisingStep&)> trace;

  /// rho_init = 2r + 1, the remaining fields at their defaults.
  static NoisingParams defaults(int r, std::size_t size);
  void validate() const;
};

struct SearchReport {
  /// Smallest identifying code found, verified by the explicit-set check.
  std::optional<Code> best_code;
  /// 0 iff best_code is present; otherwise the lowest f seen.
  std::int64_t best_f = 0;
  std::uint64_t iterations_used = 0;
  /// (size, iteration) of each identifying code found while shrinking.
  std::vector<std::pair<std::size_t, std::uint64_t>> sizes_achieved;

  /// Line-oriented `key value` summary.
  [[nodiscard]] std::string to_text() const;
};

SearchReport noising_search(int r, int n, const NoisingParams& params);

struct GreedyOptions {
  /// Price only this many random non-codewords per step (0 = all of them).
  std::size_t candidate_sample = 0;
};

Code greedy_construct(int r, int n, std::uint64_t seed, const GreedyOptions& options = {});

/// Removes codewords while the code stays r-identifying, over `restarts`
/// random removal orders; returns the smallest 1-minimal result.
Code prune(const Code& c, int r, int restarts = 16, std::uint64_t seed = 1);

}  // namespace idcodes
