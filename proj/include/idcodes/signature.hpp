#pragma once

// Signatures K_{C,r}(v) = C ∩ B_r(v), the evaluation f = NC + NS, and an
// incremental table that prices single-codeword additions, removals and
// swaps without rebuilding.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "idcodes/hypercube.hpp"

namespace idcodes {

/// NC = vertices with an empty signature, NS = unordered vertex pairs with
/// identical signatures (two uncovered vertices count as such a pair).
struct Evaluation {
  std::int64_t nc = 0;
  std::int64_t ns = 0;
  std::int64_t f = 0;

  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

enum class VertexSet { all, odd };

/// Result of the explicit-set signature check.
struct SignatureCheck {
  std::int64_t nc = 0;
  std::int64_t ns = 0;
  std::optional<Word> uncovered;
  std::optional<std::pair<Word, Word>> unseparated;

  [[nodiscard]] bool separating() const { return ns == 0; }
  [[nodiscard]] bool identifying() const { return nc == 0 && ns == 0; }
  [[nodiscard]] Evaluation evaluation() const { return {nc, ns, nc + ns}; }
};

/// Materializes every signature over `vertices` as a sorted codeword list and
/// compares the lists directly. This is the definitional route; it shares no
/// code with SignatureTable's fingerprints.
SignatureCheck check_signatures(std::span<const Word> codewords, int dim, int r,
                                VertexSet vertices = VertexSet::all);

bool is_identifying(const Code& c, int r);

/// Throws VerificationError naming a witness unless `c` is r-identifying.
void require_identifying(const Code& c, int r, const char* what);

struct FingerprintOptions {
  std::uint64_t salt = 0x9e3779b97f4a7c15ULL;
  /// Width of the class key. Values below 64 exist to exercise the collision
  /// fallback in tests.
  int key_bits = 64;
};

/// Per-vertex signature fingerprints plus class counters for one code at one
/// radius. The table owns the code as a list of slots: swap(m, s) writes `s`
/// into slot m, remove(m) moves the last slot into m.
///
/// A signature's class key is the sum of a 64-bit hash of each covering
/// codeword. A second independent sum per class detects key collisions; once
/// one is seen the table drops to exact mode and answers every query by
/// explicit-set recomputation.
///
/// Not thread-safe: delta queries reuse an internal scratch buffer.
class SignatureTable {
 public:
  SignatureTable(const Code& code, int radius, FingerprintOptions options = {});
  SignatureTable(int dim, std::span<const Word> codewords, int radius,
                 FingerprintOptions options = {});

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int radius() const { return radius_; }
  [[nodiscard]] std::size_t size() const { return slots_.size(); }
  [[nodiscard]] Word codeword(std::size_t index) const { return slots_.at(index); }
  [[nodiscard]] std::span<const Word> codewords() const { return slots_; }
  [[nodiscard]] bool is_codeword(Word w) const { return slot_of_[w] >= 0; }
  [[nodiscard]] std::optional<std::size_t> index_of(Word w) const;
  /// Canonical (sorted) copy of the current code.
  [[nodiscard]] Code code() const;

  [[nodiscard]] Evaluation evaluation() const { return {nc_, ns_, nc_ + ns_}; }
  [[nodiscard]] std::int64_t f() const { return nc_ + ns_; }
  [[nodiscard]] bool exact_mode() const { return exact_; }

  /// Sorted slot indices of the codewords r-covering `v`.
  [[nodiscard]] std::vector<std::size_t> cover_set(Word v) const;
  [[nodiscard]] int cover_count(Word v) const;
  /// Number of vertices whose signature equals that of `v` (including v).
  [[nodiscard]] std::int64_t class_size(Word v) const;
  [[nodiscard]] std::size_t num_classes() const;

  /// f(C \ {C[m]} ∪ {s}) - f(C); the table is not modified.
  [[nodiscard]] std::int64_t swap_delta(std::size_t m, Word s) const;
  [[nodiscard]] std::int64_t add_delta(Word s) const;
  [[nodiscard]] std::int64_t remove_delta(std::size_t m) const;

  void swap(std::size_t m, Word s);
  void add(Word s);
  void remove(std::size_t m);

  /// Recounts every aggregate from the per-vertex state; false on any
  /// inconsistency. O(2^n).
  [[nodiscard]] bool consistent() const;

 private:
  struct ClassInfo {
    std::int64_t count = 0;
    std::uint64_t check = 0;
  };
  struct Entry {
    std::uint64_t key;
    std::uint64_t check;
    std::int32_t delta;
  };

  [[nodiscard]] std::uint64_t hash_key(Word w) const;
  [[nodiscard]] std::uint64_t hash_check(Word w) const;
  [[nodiscard]] std::uint64_t key_of(std::uint64_t fp) const { return fp & key_mask_; }
  void check_vertex(Word w) const;
  void check_slot(std::size_t m) const;

  void rebuild();
  [[nodiscard]] std::int64_t change_delta(const Word* removed, const Word* added) const;
  [[nodiscard]] std::int64_t exact_change_delta(const Word* removed, const Word* added) const;
  void apply_change(const Word* removed, const Word* added);
  void leave_class(std::uint64_t key, std::uint64_t check);
  void join_class(std::uint64_t key, std::uint64_t check);
  void enter_exact_mode();

  int dim_;
  int radius_;
  FingerprintOptions options_;
  std::uint64_t key_mask_;
  std::vector<Word> offsets_;

  std::vector<Word> slots_;
  std::vector<std::int32_t> slot_of_;

  std::vector<std::uint64_t> key_sum_;
  std::vector<std::uint64_t> check_sum_;
  std::vector<std::int32_t> cover_;
  absl::flat_hash_map<std::uint64_t, ClassInfo> classes_;

  std::int64_t nc_ = 0;
  std::int64_t ns_ = 0;
  bool exact_ = false;

  mutable std::vector<Entry> scratch_;
};

SignatureTable build_signatures(const Code& c, int r);
Evaluation evaluate(const Code& c, int r);

}  // namespace idcodes
