#pragma once

// Primitives of the binary Hamming space F^n.
//
// Coordinate convention: coordinate 1 of a row-vector is the most significant
// of the `dim` bits and coordinate `dim` is the least significant bit, so a
// decimal listing of codewords reads directly as unsigned integers.

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace idcodes {

using Word = std::uint32_t;

/// Hard cap on the dimension; every enumeration is O(2^dim).
inline constexpr int kMaxDim = 30;

inline constexpr Word low_mask(int dim) {
  return dim >= 32 ? ~Word{0} : (Word{1} << dim) - 1;
}

inline int popcount(Word w) { return std::popcount(w); }
inline int hamming(Word a, Word b) { return std::popcount(a ^ b); }

/// Bit index of coordinate `pos` (1-based, MSB first).
inline constexpr int bit_of_coordinate(int dim, int pos) { return dim - pos; }

void check_dim(int dim);

/// A vertex of F^n: `dim` coordinates packed into the low bits of `word`.
class BitVector {
 public:
  BitVector(Word word, int dim);

  static BitVector zeros(int dim) { return {0, dim}; }
  static BitVector ones(int dim) { return {low_mask(dim), dim}; }

  [[nodiscard]] Word word() const { return word_; }
  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int weight() const { return popcount(word_); }
  /// Value (0 or 1) of coordinate `pos`, 1 <= pos <= dim.
  [[nodiscard]] int coordinate(int pos) const;
  /// Binary row-vector, coordinate 1 first.
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  Word word_;
  int dim_;
};

int distance(const BitVector& x, const BitVector& y);
int parity(const BitVector& x);
inline int parity(Word w) { return popcount(w) & 1; }

/// x|y: x occupies the high coordinates.
BitVector concat(const BitVector& x, const BitVector& y);
/// Removes coordinate `pos`; the others keep their relative order.
BitVector delete_coordinate(const BitVector& x, int pos);
Word delete_coordinate(Word w, int dim, int pos);

/// V(n, r) = sum_{i <= r} C(n, i).
std::uint64_t ball_volume(int n, int r);
std::uint64_t binomial(int n, int k);

/// XOR masks of weight exactly `radius` in F^dim, increasing word order.
std::vector<Word> sphere_offsets(int dim, int radius);
/// XOR masks of weight <= r, layered by weight (sphere 0, sphere 1, ...).
std::vector<Word> ball_offsets(int dim, int r);

template <class F>
void for_each_in_sphere(Word center, int dim, int radius, F&& f) {
  if (radius < 0 || radius > dim) return;
  if (radius == 0) {
    f(center);
    return;
  }
  // Gosper's hack over the radius-subsets of the dim coordinates.
  const std::uint64_t limit = std::uint64_t{1} << dim;
  std::uint64_t m = (std::uint64_t{1} << radius) - 1;
  while (m < limit) {
    f(center ^ static_cast<Word>(m));
    const std::uint64_t c = m & (~m + 1);
    const std::uint64_t rr = m + c;
    m = (((rr ^ m) >> 2) / c) | rr;
  }
}

template <class F>
void for_each_in_ball(Word center, int dim, int r, F&& f) {
  for (int i = 0; i <= r && i <= dim; ++i) for_each_in_sphere(center, dim, i, f);
}

std::vector<BitVector> ball(const BitVector& x, int r);
std::vector<BitVector> sphere(const BitVector& x, int r);

/// A nonempty-when-used, duplicate-free set of vertices of F^dim kept in
/// strictly increasing word order.
class Code {
 public:
  Code() = default;
  /// Sorts `words`; throws on duplicates or words wider than `dim`.
  Code(int dim, std::vector<Word> words);

  static Code full_space(int dim);
  /// F^dim minus the all-zero vector.
  static Code punctured_space(int dim);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] std::size_t size() const { return words_.size(); }
  [[nodiscard]] bool empty() const { return words_.empty(); }
  [[nodiscard]] std::span<const Word> words() const { return words_; }
  [[nodiscard]] Word operator[](std::size_t i) const { return words_[i]; }
  [[nodiscard]] bool contains(Word w) const;
  [[nodiscard]] auto begin() const { return words_.begin(); }
  [[nodiscard]] auto end() const { return words_.end(); }

  friend bool operator==(const Code&, const Code&) = default;

 private:
  int dim_ = 1;
  std::vector<Word> words_;
};

/// X ⊕ Y = { x|y : x in X, y in Y }.
Code direct_sum(const Code& x, const Code& y);

/// Coordinate permutation: result coordinate i takes source coordinate
/// perm[i-1] (1-based positions).
using Permutation = std::vector<int>;

Word permute_word(Word w, int dim, std::span<const int> perm);
/// Permutes every codeword, then XORs it with `translate`.
Code apply_isometry(const Code& c, const BitVector& translate, std::span<const int> perm);
Permutation identity_permutation(int dim);

}  // namespace idcodes
