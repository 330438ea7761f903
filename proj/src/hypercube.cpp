#include "idcodes/hypercube.hpp"

#include <algorithm>
#include <stdexcept>

namespace idcodes {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw std::invalid_argument("dimension " + std::to_string(dim) + " outside [1, " +
                                std::to_string(kMaxDim) + "]");
  }
}

BitVector::BitVector(Word word, int dim) : word_(word), dim_(dim) {
  check_dim(dim);
  if ((word & ~low_mask(dim)) != 0) {
    throw std::invalid_argument("word " + std::to_string(word) + " does not fit in " +
                                std::to_string(dim) + " coordinates");
  }
}

int BitVector::coordinate(int pos) const {
  if (pos < 1 || pos > dim_) throw std::out_of_range("coordinate position out of range");
  return static_cast<int>((word_ >> bit_of_coordinate(dim_, pos)) & 1U);
}

std::string BitVector::to_string() const {
  std::string s(static_cast<std::size_t>(dim_), '0');
  for (int pos = 1; pos <= dim_; ++pos) {
    if (coordinate(pos) != 0) s[static_cast<std::size_t>(pos - 1)] = '1';
  }
  return s;
}

int distance(const BitVector& x, const BitVector& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("distance: dimension mismatch");
  return hamming(x.word(), y.word());
}

int parity(const BitVector& x) { return parity(x.word()); }

BitVector concat(const BitVector& x, const BitVector& y) {
  const int dim = x.dim() + y.dim();
  if (dim > kMaxDim) throw std::invalid_argument("concat: dimension cap exceeded");
  return {(x.word() << y.dim()) | y.word(), dim};
}

Word delete_coordinate(Word w, int dim, int pos) {
  if (dim < 2) throw std::invalid_argument("delete_coordinate: dimension must be at least 2");
  if (pos < 1 || pos > dim) throw std::out_of_range("delete_coordinate: position out of range");
  const int bit = bit_of_coordinate(dim, pos);
  const Word low = w & low_mask(bit);
  const Word high = (w >> (bit + 1)) << bit;
  return high | low;
}

BitVector delete_coordinate(const BitVector& x, int pos) {
  return {delete_coordinate(x.word(), x.dim(), pos), x.dim() - 1};
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t b = 1;
  for (int i = 1; i <= k; ++i) b = b * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return b;
}

std::uint64_t ball_volume(int n, int r) {
  std::uint64_t v = 0;
  for (int i = 0; i <= r && i <= n; ++i) v += binomial(n, i);
  return v;
}

std::vector<Word> sphere_offsets(int dim, int radius) {
  std::vector<Word> out;
  if (radius < 0 || radius > dim) return out;
  out.reserve(binomial(dim, radius));
  for_each_in_sphere(0, dim, radius, [&](Word w) { out.push_back(w); });
  return out;
}

std::vector<Word> ball_offsets(int dim, int r) {
  std::vector<Word> out;
  out.reserve(ball_volume(dim, r));
  for_each_in_ball(0, dim, r, [&](Word w) { out.push_back(w); });
  return out;
}

std::vector<BitVector> ball(const BitVector& x, int r) {
  if (r < 0 || r > x.dim()) throw std::out_of_range("ball: radius out of range");
  std::vector<BitVector> out;
  out.reserve(ball_volume(x.dim(), r));
  for_each_in_ball(x.word(), x.dim(), r, [&](Word w) { out.emplace_back(w, x.dim()); });
  return out;
}

std::vector<BitVector> sphere(const BitVector& x, int r) {
  if (r < 0 || r > x.dim()) throw std::out_of_range("sphere: radius out of range");
  std::vector<BitVector> out;
  for_each_in_sphere(x.word(), x.dim(), r, [&](Word w) { out.emplace_back(w, x.dim()); });
  return out;
}

Code::Code(int dim, std::vector<Word> words) : dim_(dim), words_(std::move(words)) {
  check_dim(dim);
  std::sort(words_.begin(), words_.end());
  if (std::adjacent_find(words_.begin(), words_.end()) != words_.end()) {
    throw std::invalid_argument("code contains a duplicate codeword");
  }
  if (!words_.empty() && (words_.back() & ~low_mask(dim)) != 0) {
    throw std::invalid_argument("codeword " + std::to_string(words_.back()) + " does not fit in " +
                                std::to_string(dim) + " coordinates");
  }
}

Code Code::full_space(int dim) {
  check_dim(dim);
  std::vector<Word> w(std::size_t{1} << dim);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = static_cast<Word>(i);
  return {dim, std::move(w)};
}

Code Code::punctured_space(int dim) {
  check_dim(dim);
  std::vector<Word> w;
  w.reserve((std::size_t{1} << dim) - 1);
  for (Word i = 1; i <= low_mask(dim); ++i) w.push_back(i);
  return {dim, std::move(w)};
}

bool Code::contains(Word w) const { return std::binary_search(words_.begin(), words_.end(), w); }

Code direct_sum(const Code& x, const Code& y) {
  const int dim = x.dim() + y.dim();
  if (dim > kMaxDim) throw std::invalid_argument("direct_sum: dimension cap exceeded");
  std::vector<Word> w;
  w.reserve(x.size() * y.size());
  for (Word a : x) {
    for (Word b : y) w.push_back((a << y.dim()) | b);
  }
  return {dim, std::move(w)};
}

Permutation identity_permutation(int dim) {
  Permutation p(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) p[static_cast<std::size_t>(i)] = i + 1;
  return p;
}

namespace {

void check_permutation(std::span<const int> perm, int dim) {
  if (static_cast<int>(perm.size()) != dim) throw std::invalid_argument("permutation has wrong length");
  std::vector<bool> seen(static_cast<std::size_t>(dim) + 1, false);
  for (int p : perm) {
    if (p < 1 || p > dim || seen[static_cast<std::size_t>(p)]) {
      throw std::invalid_argument("malformed coordinate permutation");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
}

}  // namespace

Word permute_word(Word w, int dim, std::span<const int> perm) {
  Word out = 0;
  for (int i = 1; i <= dim; ++i) {
    const Word bit = (w >> bit_of_coordinate(dim, perm[static_cast<std::size_t>(i - 1)])) & 1U;
    out |= bit << bit_of_coordinate(dim, i);
  }
  return out;
}

Code apply_isometry(const Code& c, const BitVector& translate, std::span<const int> perm) {
  if (translate.dim() != c.dim()) throw std::invalid_argument("apply_isometry: dimension mismatch");
  check_permutation(perm, c.dim());
  std::vector<Word> w;
  w.reserve(c.size());
  for (Word x : c) w.push_back(permute_word(x, c.dim(), perm) ^ translate.word());
  return {c.dim(), std::move(w)};
}

}  // namespace idcodes
