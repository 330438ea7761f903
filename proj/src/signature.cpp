#include "idcodes/signature.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "idcodes/errors.hpp"

namespace idcodes {

namespace {

/// Per-vertex tables cost 2^n entries; this keeps them under a few hundred MB.
constexpr int kMaxTableDim = 24;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::int64_t pairs(std::int64_t c) { return c * (c - 1) / 2; }

void check_radius(int r, int dim) {
  if (r < 0 || r > dim) {
    throw std::invalid_argument("radius " + std::to_string(r) + " outside [0, " + std::to_string(dim) + "]");
  }
}

std::string bits(Word w, int dim) { return BitVector(w, dim).to_string(); }

}  // namespace

SignatureCheck check_signatures(std::span<const Word> codewords, int dim, int r, VertexSet vertices) {
  check_dim(dim);
  check_radius(r, dim);
  const std::size_t n_vert = std::size_t{1} << dim;
  std::vector<bool> member(n_vert, false);
  for (Word w : codewords) {
    if (w >= n_vert) throw std::invalid_argument("codeword does not fit the dimension");
    member[w] = true;
  }

  std::vector<Word> verts;
  verts.reserve(vertices == VertexSet::all ? n_vert : n_vert / 2);
  for (std::size_t v = 0; v < n_vert; ++v) {
    if (vertices == VertexSet::all || parity(static_cast<Word>(v)) == 1) verts.push_back(static_cast<Word>(v));
  }

  const std::vector<Word> offsets = ball_offsets(dim, r);
  std::vector<std::size_t> start(verts.size() + 1, 0);
  std::vector<Word> flat;
  flat.reserve(codewords.size() * offsets.size());
  SignatureCheck out;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    start[i] = flat.size();
    for (Word off : offsets) {
      const Word w = verts[i] ^ off;
      if (member[w]) flat.push_back(w);
    }
    std::sort(flat.begin() + static_cast<std::ptrdiff_t>(start[i]), flat.end());
    if (flat.size() == start[i]) {
      ++out.nc;
      if (!out.uncovered) out.uncovered = verts[i];
    }
  }
  start[verts.size()] = flat.size();

  auto sig = [&](std::size_t i) {
    return std::span<const Word>(flat.data() + start[i], start[i + 1] - start[i]);
  };
  std::vector<std::size_t> order(verts.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto sa = sig(a);
    const auto sb = sig(b);
    if (sa.size() != sb.size()) return sa.size() < sb.size();
    return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
  });
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    const auto si = sig(order[i]);
    while (j < order.size()) {
      const auto sj = sig(order[j]);
      if (!std::equal(si.begin(), si.end(), sj.begin(), sj.end())) break;
      ++j;
    }
    const auto run = static_cast<std::int64_t>(j - i);
    out.ns += pairs(run);
    if (run > 1 && !out.unseparated) {
      out.unseparated = std::pair{std::min(verts[order[i]], verts[order[i + 1]]),
                                  std::max(verts[order[i]], verts[order[i + 1]])};
    }
    i = j;
  }
  return out;
}

bool is_identifying(const Code& c, int r) {
  if (c.empty()) return false;
  return check_signatures(c.words(), c.dim(), r).identifying();
}

void require_identifying(const Code& c, int r, const char* what) {
  if (c.empty()) throw VerificationError(std::string(what) + ": empty code");
  const SignatureCheck chk = check_signatures(c.words(), c.dim(), r);
  if (chk.identifying()) return;
  std::string msg = std::string(what) + ": code is not " + std::to_string(r) + "-identifying in F^" +
                    std::to_string(c.dim()) + " (NC=" + std::to_string(chk.nc) +
                    ", NS=" + std::to_string(chk.ns) + ")";
  if (chk.uncovered) msg += "; vertex " + bits(*chk.uncovered, c.dim()) + " is not covered";
  if (chk.unseparated) {
    msg += "; vertices " + bits(chk.unseparated->first, c.dim()) + " and " +
           bits(chk.unseparated->second, c.dim()) + " are not separated";
  }
  throw VerificationError(msg);
}

SignatureTable::SignatureTable(const Code& code, int radius, FingerprintOptions options)
    : SignatureTable(code.dim(), code.words(), radius, options) {}

SignatureTable::SignatureTable(int dim, std::span<const Word> codewords, int radius,
                               FingerprintOptions options)
    : dim_(dim),
      radius_(radius),
      options_(options),
      key_mask_(options.key_bits >= 64 ? ~std::uint64_t{0}
                                       : (std::uint64_t{1} << options.key_bits) - 1),
      slots_(codewords.begin(), codewords.end()) {
  check_dim(dim);
  if (dim > kMaxTableDim) {
    throw std::invalid_argument("signature table limited to dimension " + std::to_string(kMaxTableDim));
  }
  check_radius(radius, dim);
  if (options.key_bits < 1) throw std::invalid_argument("key_bits must be positive");
  offsets_ = ball_offsets(dim, radius);
  rebuild();
}

std::uint64_t SignatureTable::hash_key(Word w) const { return splitmix64(w ^ options_.salt); }

std::uint64_t SignatureTable::hash_check(Word w) const {
  return splitmix64(splitmix64(w + 0x632be59bd9b4e019ULL) ^ ~options_.salt);
}

void SignatureTable::check_vertex(Word w) const {
  if (w >= slot_of_.size()) throw std::invalid_argument("vertex does not fit the dimension");
}

void SignatureTable::check_slot(std::size_t m) const {
  if (m >= slots_.size()) throw std::out_of_range("codeword index out of range");
}

std::optional<std::size_t> SignatureTable::index_of(Word w) const {
  check_vertex(w);
  if (slot_of_[w] < 0) return std::nullopt;
  return static_cast<std::size_t>(slot_of_[w]);
}

Code SignatureTable::code() const { return {dim_, slots_}; }

void SignatureTable::rebuild() {
  const std::size_t n_vert = std::size_t{1} << dim_;
  slot_of_.assign(n_vert, -1);
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    check_vertex(slots_[i]);
    if (slot_of_[slots_[i]] >= 0) throw std::invalid_argument("code contains a duplicate codeword");
    slot_of_[slots_[i]] = static_cast<std::int32_t>(i);
  }
  if (exact_) {
    const Evaluation e = check_signatures(slots_, dim_, radius_).evaluation();
    nc_ = e.nc;
    ns_ = e.ns;
    return;
  }
  key_sum_.assign(n_vert, 0);
  check_sum_.assign(n_vert, 0);
  cover_.assign(n_vert, 0);
  for (Word w : slots_) {
    const std::uint64_t hk = hash_key(w);
    const std::uint64_t hc = hash_check(w);
    for (Word off : offsets_) {
      const Word v = w ^ off;
      key_sum_[v] += hk;
      check_sum_[v] += hc;
      ++cover_[v];
    }
  }
  classes_.clear();
  nc_ = 0;
  ns_ = 0;
  for (std::size_t v = 0; v < n_vert; ++v) {
    if (cover_[v] == 0) ++nc_;
    join_class(key_of(key_sum_[v]), check_sum_[v]);
  }
  // A key collision merges two classes and so strictly raises NS; comparing
  // with the explicit count catches every collision present at build time.
  const SignatureCheck exact = check_signatures(slots_, dim_, radius_);
  if (exact.ns != ns_ || exact.nc != nc_) enter_exact_mode();
}

void SignatureTable::enter_exact_mode() {
  exact_ = true;
  classes_.clear();
  key_sum_.clear();
  check_sum_.clear();
  cover_.clear();
  const Evaluation e = check_signatures(slots_, dim_, radius_).evaluation();
  nc_ = e.nc;
  ns_ = e.ns;
}

void SignatureTable::leave_class(std::uint64_t key, std::uint64_t check) {
  auto it = classes_.find(key);
  it->second.count -= 1;
  it->second.check -= check;
  ns_ -= it->second.count;
  if (it->second.count == 0) classes_.erase(it);
}

void SignatureTable::join_class(std::uint64_t key, std::uint64_t check) {
  ClassInfo& ci = classes_[key];
  ns_ += ci.count;
  ci.count += 1;
  ci.check += check;
}

std::int64_t SignatureTable::exact_change_delta(const Word* removed, const Word* added) const {
  std::vector<Word> words;
  words.reserve(slots_.size() + 1);
  for (Word w : slots_) {
    if (removed == nullptr || w != *removed) words.push_back(w);
  }
  if (added != nullptr) words.push_back(*added);
  return check_signatures(words, dim_, radius_).evaluation().f - f();
}

std::int64_t SignatureTable::change_delta(const Word* removed, const Word* added) const {
  if (exact_) return exact_change_delta(removed, added);
  const int r = radius_;
  const std::uint64_t kr = removed ? hash_key(*removed) : 0;
  const std::uint64_t cr = removed ? hash_check(*removed) : 0;
  const std::uint64_t ka = added ? hash_key(*added) : 0;
  const std::uint64_t ca = added ? hash_check(*added) : 0;

  std::vector<Entry>& entries = scratch_;
  entries.clear();
  std::int64_t dnc = 0;
  if (removed != nullptr) {
    for (Word off : offsets_) {
      const Word v = *removed ^ off;
      const bool gains = added != nullptr && hamming(v, *added) <= r;
      const std::uint64_t nk = key_sum_[v] - kr + (gains ? ka : 0);
      const std::uint64_t nc = check_sum_[v] - cr + (gains ? ca : 0);
      const int cov = cover_[v] - 1 + (gains ? 1 : 0);
      dnc += static_cast<int>(cov == 0) - static_cast<int>(cover_[v] == 0);
      entries.push_back({key_of(key_sum_[v]), check_sum_[v], -1});
      entries.push_back({key_of(nk), nc, +1});
    }
  }
  if (added != nullptr) {
    for (Word off : offsets_) {
      const Word v = *added ^ off;
      if (removed != nullptr && hamming(v, *removed) <= r) continue;
      dnc -= static_cast<int>(cover_[v] == 0);
      entries.push_back({key_of(key_sum_[v]), check_sum_[v], -1});
      entries.push_back({key_of(key_sum_[v] + ka), check_sum_[v] + ca, +1});
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.key < b.key; });

  std::int64_t dns = 0;
  for (std::size_t i = 0; i < entries.size();) {
    const std::uint64_t key = entries[i].key;
    std::int64_t d = 0;
    std::uint64_t dcheck = 0;
    std::optional<std::uint64_t> joined;
    bool mixed = false;
    std::size_t j = i;
    for (; j < entries.size() && entries[j].key == key; ++j) {
      d += entries[j].delta;
      if (entries[j].delta > 0) {
        dcheck += entries[j].check;
        if (joined && *joined != entries[j].check) mixed = true;
        joined = entries[j].check;
      } else {
        dcheck -= entries[j].check;
      }
    }
    std::int64_t c = 0;
    std::uint64_t base = 0;
    if (auto it = classes_.find(key); it != classes_.end()) {
      c = it->second.count;
      base = it->second.check;
    }
    dns += pairs(c + d) - pairs(c);
    if (joined && (mixed || base + dcheck != static_cast<std::uint64_t>(c + d) * *joined)) {
      return exact_change_delta(removed, added);
    }
    i = j;
  }
  return dnc + dns;
}

void SignatureTable::apply_change(const Word* removed, const Word* added) {
  if (exact_) {
    const Evaluation e = check_signatures(slots_, dim_, radius_).evaluation();
    nc_ = e.nc;
    ns_ = e.ns;
    return;
  }
  const int r = radius_;
  const std::uint64_t kr = removed ? hash_key(*removed) : 0;
  const std::uint64_t cr = removed ? hash_check(*removed) : 0;
  const std::uint64_t ka = added ? hash_key(*added) : 0;
  const std::uint64_t ca = added ? hash_check(*added) : 0;

  auto move_vertex = [&](Word v, bool loses, bool gains) {
    leave_class(key_of(key_sum_[v]), check_sum_[v]);
    const bool was_empty = cover_[v] == 0;
    if (loses) {
      key_sum_[v] -= kr;
      check_sum_[v] -= cr;
      --cover_[v];
    }
    if (gains) {
      key_sum_[v] += ka;
      check_sum_[v] += ca;
      ++cover_[v];
    }
    nc_ += static_cast<int>(cover_[v] == 0) - static_cast<int>(was_empty);
    join_class(key_of(key_sum_[v]), check_sum_[v]);
  };
  if (removed != nullptr) {
    for (Word off : offsets_) {
      const Word v = *removed ^ off;
      move_vertex(v, true, added != nullptr && hamming(v, *added) <= r);
    }
  }
  if (added != nullptr) {
    for (Word off : offsets_) {
      const Word v = *added ^ off;
      if (removed != nullptr && hamming(v, *removed) <= r) continue;
      move_vertex(v, false, true);
    }
  }

  auto collided = [&](Word v) {
    const ClassInfo& ci = classes_.find(key_of(key_sum_[v]))->second;
    return ci.check != static_cast<std::uint64_t>(ci.count) * check_sum_[v];
  };
  for (const Word* center : {removed, added}) {
    if (center == nullptr) continue;
    for (Word off : offsets_) {
      if (collided(*center ^ off)) {
        enter_exact_mode();
        return;
      }
    }
  }
}

std::int64_t SignatureTable::swap_delta(std::size_t m, Word s) const {
  check_slot(m);
  check_vertex(s);
  if (slot_of_[s] >= 0) throw std::invalid_argument("swap target is already a codeword");
  const Word old = slots_[m];
  return change_delta(&old, &s);
}

std::int64_t SignatureTable::add_delta(Word s) const {
  check_vertex(s);
  if (slot_of_[s] >= 0) throw std::invalid_argument("vertex is already a codeword");
  return change_delta(nullptr, &s);
}

std::int64_t SignatureTable::remove_delta(std::size_t m) const {
  check_slot(m);
  const Word old = slots_[m];
  return change_delta(&old, nullptr);
}

void SignatureTable::swap(std::size_t m, Word s) {
  check_slot(m);
  check_vertex(s);
  if (slot_of_[s] >= 0) throw std::invalid_argument("swap target is already a codeword");
  const Word old = slots_[m];
  slots_[m] = s;
  slot_of_[old] = -1;
  slot_of_[s] = static_cast<std::int32_t>(m);
  apply_change(&old, &s);
}

void SignatureTable::add(Word s) {
  check_vertex(s);
  if (slot_of_[s] >= 0) throw std::invalid_argument("vertex is already a codeword");
  slots_.push_back(s);
  slot_of_[s] = static_cast<std::int32_t>(slots_.size() - 1);
  apply_change(nullptr, &s);
}

void SignatureTable::remove(std::size_t m) {
  check_slot(m);
  const Word old = slots_[m];
  const Word last = slots_.back();
  slots_[m] = last;
  slot_of_[last] = static_cast<std::int32_t>(m);
  slots_.pop_back();
  slot_of_[old] = -1;
  apply_change(&old, nullptr);
}

std::vector<std::size_t> SignatureTable::cover_set(Word v) const {
  check_vertex(v);
  std::vector<std::size_t> out;
  for (Word off : offsets_) {
    if (const std::int32_t i = slot_of_[v ^ off]; i >= 0) out.push_back(static_cast<std::size_t>(i));
  }
  std::sort(out.begin(), out.end());
  return out;
}

int SignatureTable::cover_count(Word v) const {
  check_vertex(v);
  if (!exact_) return cover_[v];
  int c = 0;
  for (Word off : offsets_) c += static_cast<int>(slot_of_[v ^ off] >= 0);
  return c;
}

std::int64_t SignatureTable::class_size(Word v) const {
  check_vertex(v);
  if (!exact_) return classes_.find(key_of(key_sum_[v]))->second.count;
  auto words_of = [&](Word u) {
    std::vector<Word> w;
    for (std::size_t i : cover_set(u)) w.push_back(slots_[i]);
    std::sort(w.begin(), w.end());
    return w;
  };
  const std::vector<Word> mine = words_of(v);
  std::int64_t c = 0;
  for (std::size_t u = 0; u < slot_of_.size(); ++u) c += static_cast<std::int64_t>(words_of(static_cast<Word>(u)) == mine);
  return c;
}

std::size_t SignatureTable::num_classes() const {
  if (!exact_) return classes_.size();
  std::vector<std::vector<Word>> sigs;
  sigs.reserve(slot_of_.size());
  for (std::size_t u = 0; u < slot_of_.size(); ++u) {
    std::vector<Word> w;
    for (std::size_t i : cover_set(static_cast<Word>(u))) w.push_back(slots_[i]);
    std::sort(w.begin(), w.end());
    sigs.push_back(std::move(w));
  }
  std::sort(sigs.begin(), sigs.end());
  return static_cast<std::size_t>(std::unique(sigs.begin(), sigs.end()) - sigs.begin());
}

bool SignatureTable::consistent() const {
  const Evaluation exact = check_signatures(slots_, dim_, radius_).evaluation();
  if (exact_) return exact.nc == nc_ && exact.ns == ns_;
  const std::size_t n_vert = slot_of_.size();
  std::vector<std::uint64_t> ks(n_vert, 0);
  std::vector<std::uint64_t> cs(n_vert, 0);
  std::vector<std::int32_t> cov(n_vert, 0);
  for (Word w : slots_) {
    for (Word off : offsets_) {
      ks[w ^ off] += hash_key(w);
      cs[w ^ off] += hash_check(w);
      ++cov[w ^ off];
    }
  }
  if (ks != key_sum_ || cs != check_sum_ || cov != cover_) return false;
  absl::flat_hash_map<std::uint64_t, std::int64_t> counts;
  std::int64_t nc = 0;
  for (std::size_t v = 0; v < n_vert; ++v) {
    ++counts[key_of(ks[v])];
    nc += static_cast<std::int64_t>(cov[v] == 0);
  }
  std::int64_t total = 0;
  std::int64_t ns = 0;
  for (const auto& [key, c] : counts) {
    auto it = classes_.find(key);
    if (it == classes_.end() || it->second.count != c) return false;
    total += c;
    ns += pairs(c);
  }
  if (counts.size() != classes_.size()) return false;
  if (total != static_cast<std::int64_t>(n_vert) || ns != ns_ || nc != nc_) return false;
  if (nc > 0) {
    auto it = classes_.find(0);
    if (it == classes_.end() || it->second.count != nc) return false;
  }
  return exact.nc == nc_ && exact.ns == ns_;
}

SignatureTable build_signatures(const Code& c, int r) { return {c, r}; }

Evaluation evaluate(const Code& c, int r) { return build_signatures(c, r).evaluation(); }

}  // namespace idcodes
