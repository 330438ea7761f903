#include "idcodes/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "idcodes/errors.hpp"
#include "idcodes/signature.hpp"

namespace idcodes {

namespace {

void check_params(int r, int n) {
  check_dim(n);
  if (r < 1 || r >= n) throw std::invalid_argument("identifying codes in F^n need 1 <= r < n");
}

/// Uniform in the open interval (0, 1).
double open_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double x = 0.0;
  while (x == 0.0) x = u(rng);
  return x;
}

/// Keeps a uniformly random element among those sharing the best score.
class TieBreak {
 public:
  explicit TieBreak(std::mt19937_64& rng) : rng_(rng) {}

  template <class T>
  void offer(std::int64_t score, T value, T& slot) {
    if (ties_ == 0 || score < best_) {
      best_ = score;
      ties_ = 1;
      slot = value;
    } else if (score == best_) {
      ++ties_;
      if (std::uniform_int_distribution<std::uint64_t>(0, ties_ - 1)(rng_) == 0) slot = value;
    }
  }

  [[nodiscard]] bool any() const { return ties_ > 0; }
  [[nodiscard]] std::int64_t best() const { return best_; }

 private:
  std::mt19937_64& rng_;
  std::int64_t best_ = 0;
  std::uint64_t ties_ = 0;
};

std::vector<Word> random_code(int n, std::size_t size, std::mt19937_64& rng) {
  std::vector<Word> all(std::size_t{1} << n);
  std::iota(all.begin(), all.end(), Word{0});
  for (std::size_t i = 0; i < size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
    std::swap(all[i], all[pick(rng)]);
  }
  all.resize(size);
  return all;
}

}  // namespace

NoisingParams NoisingParams::defaults(int r, std::size_t size) {
  NoisingParams p;
  p.target_size = size;
  p.rho_init = 2.0 * r + 1.0;
  return p;
}

void NoisingParams::validate() const {
  if (target_size < 1) throw std::invalid_argument("noising: target size must be positive");
  if (!(rho_init >= 0.0) || !std::isfinite(rho_init)) throw std::invalid_argument("noising: rho_init must be >= 0");
  if (rho_steps < 1 || sweeps_per_rho < 1 || max_iterations < 1) {
    throw std::invalid_argument("noising: step, sweep and iteration counts must be positive");
  }
}

std::string SearchReport::to_text() const {
  std::ostringstream os;
  os << "found " << (best_code ? "yes" : "no") << '\n';
  os << "best_f " << best_f << '\n';
  if (best_code) os << "best_size " << best_code->size() << '\n';
  os << "iterations " << iterations_used << '\n';
  for (const auto& [size, iter] : sizes_achieved) os << "achieved " << size << ' ' << iter << '\n';
  return os.str();
}

SearchReport noising_search(int r, int n, const NoisingParams& params) {
  check_params(r, n);
  params.validate();
  const std::size_t n_vert = std::size_t{1} << n;
  if (params.target_size > n_vert) throw std::invalid_argument("noising: target size exceeds 2^n");

  std::mt19937_64 rng(params.seed);
  SignatureTable table(n, random_code(n, params.target_size, rng), r);
  SearchReport report;
  report.best_f = table.f();

  std::vector<double> schedule(static_cast<std::size_t>(params.rho_steps) + 1);
  for (int j = 0; j <= params.rho_steps; ++j) {
    schedule[static_cast<std::size_t>(j)] =
        params.rho_init * static_cast<double>(params.rho_steps - j) / static_cast<double>(params.rho_steps);
  }

  std::size_t step = 0;
  std::uint64_t visits_at_rho = 0;
  std::size_t m = 0;

  // Records an identifying current code and shrinks it by the codeword whose
  // removal hurts least. Returns false when the search should stop.
  auto on_identifying = [&]() {
    Code found = table.code();
    if (!check_signatures(found.words(), n, r).identifying()) {
      throw std::logic_error("noising: incremental f = 0 on a code that is not identifying");
    }
    report.sizes_achieved.emplace_back(found.size(), report.iterations_used);
    report.best_code = std::move(found);
    report.best_f = 0;
    if (table.size() <= 1 || (params.stop_size > 0 && table.size() <= params.stop_size)) return false;
    TieBreak tie(rng);
    std::size_t victim = 0;
    for (std::size_t i = 0; i < table.size(); ++i) tie.offer(table.remove_delta(i), i, victim);
    table.remove(victim);
    m = table.size() == 0 ? 0 : m % table.size();
    return true;
  };

  if (table.f() == 0 && !on_identifying()) return report;

  while (report.iterations_used < params.max_iterations) {
    const double rho = schedule[step];
    ++report.iterations_used;
    const double noise = rho * std::log(open_unit(rng));

    TieBreak tie(rng);
    Word target = 0;
    for (std::size_t s = 0; s < n_vert; ++s) {
      const auto w = static_cast<Word>(s);
      if (table.is_codeword(w)) continue;
      tie.offer(table.swap_delta(m, w), w, target);
    }
    // With R fixed per transformation the noised minimum sits at the same s
    // as the plain minimum.
    const bool accept = tie.any() && (tie.best() < 0 || static_cast<double>(tie.best()) + noise < 0.0);
    if (accept) {
      table.swap(m, target);
      if (!report.best_code) report.best_f = std::min(report.best_f, table.f());
    }
    if (params.trace) params.trace({report.iterations_used, rho, tie.any() ? tie.best() : 0, accept, table.f()});
    if (accept && table.f() == 0 && !on_identifying()) break;

    m = (m + 1) % table.size();
    if (++visits_at_rho >= static_cast<std::uint64_t>(params.sweeps_per_rho) * table.size()) {
      visits_at_rho = 0;
      step = (step + 1) % schedule.size();
    }
  }
  return report;
}

Code greedy_construct(int r, int n, std::uint64_t seed, const GreedyOptions& options) {
  check_params(r, n);
  std::mt19937_64 rng(seed);
  const std::size_t n_vert = std::size_t{1} << n;
  SignatureTable table(n, std::span<const Word>{}, r);
  std::vector<Word> pool;
  while (table.f() > 0) {
    TieBreak tie(rng);
    Word pick = 0;
    auto consider = [&](Word s) {
      if (!table.is_codeword(s)) tie.offer(table.add_delta(s), s, pick);
    };
    const std::size_t open = n_vert - table.size();
    if (options.candidate_sample > 0 && options.candidate_sample < open) {
      pool.clear();
      for (std::size_t s = 0; s < n_vert; ++s) {
        if (!table.is_codeword(static_cast<Word>(s))) pool.push_back(static_cast<Word>(s));
      }
      std::shuffle(pool.begin(), pool.end(), rng);
      for (std::size_t i = 0; i < options.candidate_sample; ++i) consider(pool[i]);
    } else {
      for (std::size_t s = 0; s < n_vert; ++s) consider(static_cast<Word>(s));
    }
    table.add(pick);
  }
  Code out = table.code();
  require_identifying(out, r, "greedy_construct");
  return out;
}

Code prune(const Code& c, int r, int restarts, std::uint64_t seed) {
  require_identifying(c, r, "prune");
  if (restarts < 1) throw std::invalid_argument("prune: restarts must be positive");
  std::mt19937_64 rng(seed);
  Code best = c;
  for (int t = 0; t < restarts; ++t) {
    SignatureTable table(c, r);
    std::vector<Word> order(c.begin(), c.end());
    std::shuffle(order.begin(), order.end(), rng);
    bool removed = true;
    while (removed) {
      removed = false;
      for (Word w : order) {
        const auto idx = table.index_of(w);
        if (!idx || table.size() == 1) continue;
        if (table.remove_delta(*idx) == 0) {
          table.remove(*idx);
          removed = true;
        }
      }
    }
    if (table.size() < best.size()) best = table.code();
  }
  require_identifying(best, r, "prune");
  return best;
}

}  // namespace idcodes
