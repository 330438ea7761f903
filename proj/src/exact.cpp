#include "idcodes/exact.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <vector>

#include "idcodes/signature.hpp"

namespace idcodes {

namespace {

using Mask = std::uint64_t;

struct HittingProblem {
  int dim = 0;
  Mask candidates = 0;
  std::vector<Mask> constraints;
};

Mask bit(Word w) { return Mask{1} << w; }

std::vector<Mask> ball_masks(int dim, int r) {
  const std::size_t n_vert = std::size_t{1} << dim;
  std::vector<Mask> out(n_vert, 0);
  for (std::size_t v = 0; v < n_vert; ++v) {
    for_each_in_ball(static_cast<Word>(v), dim, r, [&](Word w) { out[v] |= bit(w); });
  }
  return out;
}

/// Drops duplicates and every constraint that contains another one.
void reduce(std::vector<Mask>& sets) {
  std::sort(sets.begin(), sets.end(),
            [](Mask a, Mask b) { return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b; });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<Mask> kept;
  for (Mask s : sets) {
    bool dominated = false;
    for (Mask k : kept) {
      if ((k & s) == k) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(s);
  }
  sets = std::move(kept);
}

/// Candidate vertices, covering constraints for `covered` vertices, and
/// separating constraints for all pairs of `separated` vertices.
HittingProblem make_problem(int dim, int r, Mask candidates, Mask covered, Mask separated) {
  HittingProblem p;
  p.dim = dim;
  p.candidates = candidates;
  const std::vector<Mask> balls = ball_masks(dim, r);
  const std::size_t n_vert = balls.size();
  for (std::size_t u = 0; u < n_vert; ++u) {
    if (covered & bit(static_cast<Word>(u))) p.constraints.push_back(balls[u] & candidates);
    if (!(separated & bit(static_cast<Word>(u)))) continue;
    for (std::size_t v = u + 1; v < n_vert; ++v) {
      if (separated & bit(static_cast<Word>(v))) p.constraints.push_back((balls[u] ^ balls[v]) & candidates);
    }
  }
  reduce(p.constraints);
  return p;
}

Mask all_vertices(int dim) { return dim == 6 ? ~Mask{0} : (Mask{1} << (1U << dim)) - 1; }

Mask even_vertices(int dim) {
  Mask m = 0;
  for (Word v = 0; v < (1U << dim); ++v) {
    if (parity(v) == 0) m |= bit(v);
  }
  return m;
}

struct BudgetExhausted {};

class HittingSearch {
 public:
  HittingSearch(const HittingProblem& problem, std::uint64_t budget, bool symmetry)
      : p_(problem), budget_(budget), symmetry_(symmetry) {}

  /// A feasible solution of size exactly `size`, if one exists.
  std::optional<Mask> solve(int size) {
    if (size < 1) return std::nullopt;
    if (!symmetry_) {
      near_.assign(std::size_t{1} << p_.dim, 0);
      return run(0, p_.candidates, size);
    }
    // Any feasible code is isometric to one that contains 0^n and
    // 0^(n-d)1^d, where d is its minimum distance.
    if (!(p_.candidates & 1U)) return std::nullopt;
    if (size == 1) {
      near_.assign(std::size_t{1} << p_.dim, 0);
      return run(bit(0), 0, 0);
    }
    for (int d = 1; d <= p_.dim; ++d) {
      const Word second = low_mask(d);
      if (!(p_.candidates & bit(second))) continue;
      near_ = ball_masks(p_.dim, d - 1);
      const Mask avail = p_.candidates & ~near_[0] & ~near_[second];
      if (auto s = run(bit(0) | bit(second), avail, size - 2)) return s;
    }
    return std::nullopt;
  }

  [[nodiscard]] std::uint64_t nodes() const { return nodes_; }

 private:
  std::optional<Mask> run(Mask chosen, Mask avail, int left) {
    if (dfs(chosen, avail, left)) return found_;
    return std::nullopt;
  }

  bool dfs(Mask chosen, Mask avail, int left) {
    if (++nodes_ > budget_) throw BudgetExhausted{};
    std::size_t best = p_.constraints.size();
    int best_count = 65;
    for (std::size_t i = 0; i < p_.constraints.size(); ++i) {
      const Mask s = p_.constraints[i];
      if (s & chosen) continue;
      const int c = std::popcount(s & avail);
      if (c == 0) return false;
      if (c < best_count) {
        best_count = c;
        best = i;
      }
    }
    if (best == p_.constraints.size()) {
      found_ = chosen;
      return true;
    }
    if (left == 0) return false;
    // Disjoint open constraints each need their own codeword.
    Mask used = 0;
    int disjoint = 0;
    for (Mask s : p_.constraints) {
      if (s & chosen) continue;
      const Mask a = s & avail;
      if (a & used) continue;
      used |= a;
      if (++disjoint > left) return false;
    }
    Mask branch = p_.constraints[best] & avail;
    while (branch) {
      const auto c = static_cast<Word>(std::countr_zero(branch));
      branch &= branch - 1;
      if (dfs(chosen | bit(c), avail & ~bit(c) & ~near_[c], left - 1)) return true;
      avail &= ~bit(c);
    }
    return false;
  }

  const HittingProblem& p_;
  std::uint64_t budget_;
  bool symmetry_;
  std::uint64_t nodes_ = 0;
  std::vector<Mask> near_;
  Mask found_ = 0;
};

std::optional<Mask> greedy_hitting_set(const HittingProblem& p) {
  Mask chosen = 0;
  for (;;) {
    std::vector<int> gain(std::size_t{1} << p.dim, 0);
    bool open = false;
    for (Mask s : p.constraints) {
      if (s & chosen) continue;
      if (s == 0) return std::nullopt;
      open = true;
      for (Mask m = s; m; m &= m - 1) ++gain[static_cast<std::size_t>(std::countr_zero(m))];
    }
    if (!open) return chosen;
    const auto it = std::max_element(gain.begin(), gain.end());
    chosen |= bit(static_cast<Word>(it - gain.begin()));
  }
}

Code to_code(int dim, Mask m) {
  std::vector<Word> w;
  for (; m; m &= m - 1) w.push_back(static_cast<Word>(std::countr_zero(m)));
  return {dim, std::move(w)};
}

ExactResult minimize(const HittingProblem& p, const ExactOptions& options) {
  ExactResult out;
  const std::optional<Mask> incumbent = greedy_hitting_set(p);
  if (!incumbent) throw std::invalid_argument("no feasible code exists for these parameters");
  const int upper = std::popcount(*incumbent);
  if (options.start_size > upper) {
    throw std::logic_error("start size " + std::to_string(options.start_size) +
                           " exceeds a feasible code of size " + std::to_string(upper));
  }
  const bool symmetry = options.symmetry.value_or(p.dim <= 5);
  HittingSearch search(p, options.node_budget, symmetry);
  try {
    for (int size = std::max(1, options.start_size); size < upper; ++size) {
      if (auto s = search.solve(size)) {
        out.code = to_code(p.dim, *s);
        out.proven_minimal = true;
        out.nodes = search.nodes();
        return out;
      }
    }
  } catch (const BudgetExhausted&) {
    out.code = to_code(p.dim, *incumbent);
    out.proven_minimal = false;
    out.nodes = search.nodes();
    return out;
  }
  out.code = to_code(p.dim, *incumbent);
  out.proven_minimal = true;
  out.nodes = search.nodes();
  return out;
}

void check_exact_dim(int n) {
  if (n < 1 || n > kMaxExactDim) {
    throw std::invalid_argument("exact search supports 1 <= n <= " + std::to_string(kMaxExactDim));
  }
}

}  // namespace

bool is_separating(const Code& c, int k) {
  if (k < 0 || k > c.dim()) throw std::invalid_argument("separating radius out of range");
  return check_signatures(c.words(), c.dim(), k).separating();
}

ExactResult min_identifying(int r, int n, const ExactOptions& options) {
  check_exact_dim(n);
  if (r < 1 || r >= n) throw std::invalid_argument("identifying codes in F^n need 1 <= r < n");
  const Mask all = all_vertices(n);
  return minimize(make_problem(n, r, all, all, all), options);
}

ExactResult min_separating(int p, int k, const ExactOptions& options) {
  if (p < 1 || p > 5) throw std::invalid_argument("min_separating supports 1 <= p <= 5");
  if (k < 0 || k > p - 1) throw std::invalid_argument("min_separating needs 0 <= k <= p-1");
  const Mask all = all_vertices(p);
  return minimize(make_problem(p, k, all, 0, all), options);
}

ExactResult min_discriminating(int r, int n, const ExactOptions& options) {
  check_exact_dim(n);
  if (r < 1 || r % 2 == 0) throw std::invalid_argument("discriminating codes need an odd radius");
  if (r + 1 >= n) throw std::invalid_argument("discriminating codes in F^n need r + 1 < n");
  const Mask even = even_vertices(n);
  const Mask odd = all_vertices(n) & ~even;
  return minimize(make_problem(n, r, even, odd, odd), options);
}

}  // namespace idcodes
