#include "idcodes/extend.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "idcodes/errors.hpp"
#include "idcodes/exact.hpp"
#include "idcodes/signature.hpp"

namespace idcodes {

namespace {

void check_ranges(const Code& c, int r1, int p, int r2, std::optional<int> k, const ExtendOptions& options) {
  if (p < 1) throw std::invalid_argument("extend: p must be at least 1");
  if (r1 < 1 || r2 < 0) throw std::invalid_argument("extend: need r1 >= 1 and r2 >= 0");
  if (c.dim() + p > kMaxDim) throw std::invalid_argument("extend: dimension cap exceeded");
  if (k && (*k < 0 || r1 + r2 - *k < 0)) throw std::invalid_argument("extend: k out of range");
  if (options.force) return;
  if (r2 >= 1 && !(r1 >= p && p >= r2)) {
    throw std::invalid_argument("extend: a radius gain r2 >= 1 requires r1 >= p >= r2");
  }
  if (k && *k > p - 1) throw std::invalid_argument("extend: construction C2 requires 0 <= k <= p-1");
}

std::vector<Word> direct_sum_words(std::span<const Word> x, const Code& y) {
  std::vector<Word> out;
  out.reserve(x.size() * y.size());
  for (Word a : x) {
    for (Word b : y) out.push_back((a << y.dim()) | b);
  }
  return out;
}

ExtensionResult finish(ExtensionPlan plan, const Code& multiplier) {
  const int dim = plan.base.dim() + plan.p;
  std::vector<Word> words = direct_sum_words(plan.base.words(), Code::full_space(plan.p));
  const std::vector<Word> extra = direct_sum_words(plan.y_set, multiplier);
  words.insert(words.end(), extra.begin(), extra.end());
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  ExtensionResult out{Code(dim, std::move(words)), std::move(plan), 0};
  out.radius = out.plan.r1 + out.plan.r2;
  require_identifying(out.code, out.radius, "extension output");
  return out;
}

}  // namespace

std::string ExtensionResult::report() const {
  std::ostringstream os;
  os << "construction " << (plan.k ? "C2" : "C1") << '\n';
  os << "base " << plan.base.size() << " n=" << plan.base.dim() << " r=" << plan.r1 << '\n';
  os << "p " << plan.p << "\nr2 " << plan.r2 << '\n';
  if (plan.k) os << "k " << *plan.k << '\n';
  os << "x_size " << plan.x_set.size() << '\n';
  os << "y_size " << plan.y_set.size() << '\n';
  if (plan.separ) os << "separ_size " << plan.separ->size() << '\n';
  os << "size " << code.size() << " n=" << code.dim() << " r=" << radius << '\n';
  os << "verified yes\n";
  return os.str();
}

std::vector<Word> compute_x_set(const Code& c, int r1, int p, int r2) {
  const int n = c.dim();
  const int lo = std::max(0, r1 - p + r2 + 1);
  const int hi = std::min(n, r1 + r2);
  std::vector<bool> reached(std::size_t{1} << n, false);
  for (Word w : c) {
    for (int d = lo; d <= hi; ++d) for_each_in_sphere(w, n, d, [&](Word v) { reached[v] = true; });
  }
  std::vector<Word> out;
  for (std::size_t v = 0; v < reached.size(); ++v) {
    if (!reached[v]) out.push_back(static_cast<Word>(v));
  }
  return out;
}

std::vector<Word> cover_annulus(std::span<const Word> targets, int lo, int hi, int n) {
  check_dim(n);
  if (lo < 0 || lo > hi || hi > n) throw std::invalid_argument("cover_annulus: need 0 <= lo <= hi <= n");
  std::vector<Word> open(targets.begin(), targets.end());
  std::sort(open.begin(), open.end());
  open.erase(std::unique(open.begin(), open.end()), open.end());
  if (!open.empty() && open.back() > low_mask(n)) throw std::invalid_argument("cover_annulus: target too wide");

  std::vector<std::int32_t> gain(std::size_t{1} << n, 0);
  auto annulus = [&](Word x, auto&& f) {
    for (int d = lo; d <= hi; ++d) for_each_in_sphere(x, n, d, f);
  };
  for (Word x : open) annulus(x, [&](Word y) { ++gain[y]; });

  std::vector<bool> covered(open.size(), false);
  std::size_t remaining = open.size();
  std::vector<Word> chosen;
  while (remaining > 0) {
    const auto best = static_cast<Word>(std::max_element(gain.begin(), gain.end()) - gain.begin());
    chosen.push_back(best);
    for (std::size_t i = 0; i < open.size(); ++i) {
      if (covered[i]) continue;
      const int d = hamming(open[i], best);
      if (d < lo || d > hi) continue;
      covered[i] = true;
      --remaining;
      annulus(open[i], [&](Word y) { --gain[y]; });
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

ExtensionResult extend_c1(const Code& c, int r1, int p, int r2, const ExtendOptions& options) {
  check_ranges(c, r1, p, r2, std::nullopt, options);
  require_identifying(c, r1, "extension base");
  ExtensionPlan plan{c, r1, p, r2, std::nullopt, compute_x_set(c, r1, p, r2), {}, std::nullopt};
  plan.y_set = cover_annulus(plan.x_set, std::max(0, r1 - p + r2 + 1), std::min(c.dim(), r1 + r2), c.dim());
  return finish(std::move(plan), Code::punctured_space(p));
}

ExtensionResult extend_c2(const Code& c, int r1, int p, int r2, int k, const Code& separ,
                          const ExtendOptions& options) {
  check_ranges(c, r1, p, r2, k, options);
  if (separ.dim() != p) throw std::invalid_argument("extend_c2: separating code must live in F^p");
  if (!is_separating(separ, k)) {
    throw std::invalid_argument("extend_c2: multiplier code is not " + std::to_string(k) + "-separating");
  }
  require_identifying(c, r1, "extension base");
  const int dist = r1 + r2 - k;
  if (dist > c.dim()) throw std::invalid_argument("extend_c2: exact distance r1+r2-k exceeds n");
  ExtensionPlan plan{c, r1, p, r2, k, compute_x_set(c, r1, p, r2), {}, separ};
  plan.y_set = cover_annulus(plan.x_set, dist, dist, c.dim());
  return finish(std::move(plan), separ);
}

}  // namespace idcodes
