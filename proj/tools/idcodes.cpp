// idcodes: command-line front end for building, checking and transforming
// identifying and discriminating codes in F^n.
//
// Exit status: 0 success / property holds, 1 property fails, 2 usage or
// parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "idcodes/bounds.hpp"
#include "idcodes/code_io.hpp"
#include "idcodes/convert.hpp"
#include "idcodes/errors.hpp"
#include "idcodes/exact.hpp"
#include "idcodes/extend.hpp"
#include "idcodes/heuristics.hpp"
#include "idcodes/signature.hpp"

namespace {

using idcodes::Code;
using idcodes::Word;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kFails = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  bool json = false;
  bool unchecked = false;
  unsigned threads = 1;
};

unsigned default_threads() {
  if (const char* env = std::getenv("IDCODES_THREADS"); env != nullptr && *env != '\0') {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw UsageError("IDCODES_THREADS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string bits(Word w, int dim) { return idcodes::BitVector(w, dim).to_string(); }

/// Prints `j` as JSON, or as `key value` lines in text mode.
void emit(const Global& g, const json& j, std::ostream& os = std::cout) {
  if (g.json) {
    os << j.dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : j.items()) {
    if (key == "codewords" || (value.is_array() && value.empty())) continue;
    os << key << ' ';
    if (value.is_string()) {
      os << value.get<std::string>();
    } else if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) os << ' ';
        os << (value[i].is_string() ? value[i].get<std::string>() : value[i].dump());
      }
    } else {
      os << value.dump();
    }
    os << '\n';
  }
}

int resolve_r(std::optional<int> flag, const idcodes::CodeFile& file, const char* cmd) {
  if (flag) return *flag;
  if (file.r) return *file.r;
  throw UsageError(std::string(cmd) + ": --r is required (the code file has no r=)");
}

/// Writes `code` to `out` if given, else to stdout. With a file destination the
/// report goes to stdout; otherwise it goes to stderr.
void deliver(const Global& g, const Code& code, std::optional<int> r, const std::string& out, json report) {
  report["size"] = code.size();
  report["n"] = code.dim();
  if (!out.empty()) {
    idcodes::write_code_file(out, code, r);
    report["out"] = out;
    emit(g, report);
    return;
  }
  if (g.json) {
    report["codewords"] = std::vector<Word>(code.begin(), code.end());
    emit(g, report);
    return;
  }
  emit(g, report, std::cerr);
  idcodes::write_code(std::cout, code, r);
}

void require_before_write(const Global& g, const Code& code, int r, const char* what) {
  if (!g.unchecked) idcodes::require_identifying(code, r, what);
}

// ---- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string file;
  std::optional<int> r;
  bool discriminating = false;
};

int run_verify(const Global& g, const VerifyArgs& a) {
  const auto file = idcodes::read_code_file(a.file);
  const int r = resolve_r(a.r, file, "verify");
  const Code& c = file.code;
  json j{{"file", a.file}, {"n", c.dim()}, {"r", r}, {"size", c.size()}};

  if (a.discriminating) {
    j["property"] = "discriminating";
    if (r % 2 == 0) throw UsageError("verify --discriminating needs odd r");
    const auto odd = std::find_if(c.begin(), c.end(), [](Word w) { return idcodes::parity(w) == 1; });
    if (odd != c.end()) {
      j["verdict"] = "FAIL";
      j["reason"] = "odd codeword " + bits(*odd, c.dim());
      emit(g, j);
      return kFails;
    }
    const auto res = idcodes::check_discriminating(c, r);
    j["nc"] = res.uncovered_individuals;
    j["ns"] = res.unseparated_pairs;
    j["verdict"] = res.discriminating ? "PASS" : "FAIL";
    if (res.uncovered) j["uncovered"] = bits(*res.uncovered, c.dim());
    if (res.unseparated) {
      j["unseparated"] = {bits(res.unseparated->first, c.dim()), bits(res.unseparated->second, c.dim())};
    }
    emit(g, j);
    return res.discriminating ? kOk : kFails;
  }

  j["property"] = "identifying";
  if (r < 0) throw UsageError("verify: r must be non-negative");
  const auto res = idcodes::check_signatures(c.words(), c.dim(), r);
  j["nc"] = res.nc;
  j["ns"] = res.ns;
  j["verdict"] = res.identifying() ? "PASS" : "FAIL";
  if (res.uncovered) j["uncovered"] = bits(*res.uncovered, c.dim());
  if (res.unseparated) {
    j["unseparated"] = {bits(res.unseparated->first, c.dim()), bits(res.unseparated->second, c.dim())};
  }
  emit(g, j);
  return res.identifying() ? kOk : kFails;
}

// ---- construct ------------------------------------------------------------

struct ConstructArgs {
  std::string method = "greedy";
  int r = 1;
  int n = 0;
  std::optional<std::size_t> size;
  std::uint64_t seed = 1;
  unsigned seeds = 1;
  std::optional<double> rho_init;
  int rho_steps = 100;
  int sweeps = 1;
  std::uint64_t max_iterations = 2'000'000;
  std::size_t stop_size = 0;
  std::size_t candidate_sample = 0;
  int prune_restarts = 0;
  std::string out;
};

/// Runs one noising engine per seed, `threads` at a time. The smallest code
/// wins, ties to the lowest seed, so the result does not depend on timing.
std::vector<idcodes::SearchReport> noising_portfolio(const ConstructArgs& a, unsigned threads) {
  std::vector<idcodes::SearchReport> reports(a.seeds);
  std::vector<std::exception_ptr> errors(a.seeds);
  std::atomic<unsigned> next{0};
  auto worker = [&] {
    for (unsigned i = next++; i < a.seeds; i = next++) {
      try {
        auto p = idcodes::NoisingParams::defaults(a.r, *a.size);
        if (a.rho_init) p.rho_init = *a.rho_init;
        p.rho_steps = a.rho_steps;
        p.sweeps_per_rho = a.sweeps;
        p.max_iterations = a.max_iterations;
        p.stop_size = a.stop_size;
        p.seed = a.seed + i;
        reports[i] = idcodes::noising_search(a.r, a.n, p);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min(threads, a.seeds); ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

int run_construct(const Global& g, const ConstructArgs& a) {
  json j{{"method", a.method}, {"r", a.r}};
  std::optional<Code> code;

  if (a.method == "greedy") {
    idcodes::GreedyOptions opts;
    opts.candidate_sample = a.candidate_sample;
    code = idcodes::greedy_construct(a.r, a.n, a.seed, opts);
    j["greedy_size"] = code->size();
  } else {
    if (!a.size) throw UsageError("construct --method noising needs --size");
    if (a.seeds < 1) throw UsageError("--seeds must be positive");
    const auto reports = noising_portfolio(a, g.threads);
    std::int64_t best_f = -1;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& rep = reports[i];
      if (rep.best_code && (!code || rep.best_code->size() < code->size())) {
        code = rep.best_code;
        j["seed"] = a.seed + i;
        j["iterations"] = rep.iterations_used;
      }
      if (best_f < 0 || rep.best_f < best_f) best_f = rep.best_f;
    }
    j["seeds"] = a.seeds;
    if (!code) {
      j["found"] = false;
      j["best_f"] = best_f;
      j["n"] = a.n;
      emit(g, j);
      return kFails;
    }
    j["found"] = true;
  }

  if (a.prune_restarts > 0) code = idcodes::prune(*code, a.r, a.prune_restarts, a.seed);
  require_before_write(g, *code, a.r, "construct");
  j["verified"] = !g.unchecked;
  deliver(g, *code, a.r, a.out, j);
  return kOk;
}

// ---- extend ---------------------------------------------------------------

struct ExtendArgs {
  std::string file;
  std::optional<int> r;
  int p = 1;
  int r2 = 0;
  std::optional<int> k;
  std::string separ_file;
  bool force = false;
  std::string out;
};

int run_extend(const Global& g, const ExtendArgs& a) {
  const auto file = idcodes::read_code_file(a.file);
  const int r1 = resolve_r(a.r, file, "extend");
  idcodes::ExtendOptions opts;
  opts.force = a.force;

  std::optional<idcodes::ExtensionResult> res;
  if (a.k) {
    Code separ;
    if (!a.separ_file.empty()) {
      separ = idcodes::read_code_file(a.separ_file).code;
    } else {
      if (a.p > 5) throw UsageError("extend: give --separ for p > 5");
      separ = idcodes::min_separating(a.p, *a.k).code;
    }
    res = idcodes::extend_c2(file.code, r1, a.p, a.r2, *a.k, separ, opts);
  } else {
    res = idcodes::extend_c1(file.code, r1, a.p, a.r2, opts);
  }

  json j{{"construction", a.k ? "C2" : "C1"},
         {"base_size", file.code.size()},
         {"base_n", file.code.dim()},
         {"r1", r1},
         {"p", a.p},
         {"r2", a.r2},
         {"x_size", res->plan.x_set.size()},
         {"y_size", res->plan.y_set.size()},
         {"r", res->radius},
         {"verified", true}};
  if (a.k) {
    j["k"] = *a.k;
    j["separ_size"] = res->plan.separ->size();
  }
  deliver(g, res->code, res->radius, a.out, j);
  return kOk;
}

// ---- prune ----------------------------------------------------------------

struct PruneArgs {
  std::string file;
  std::optional<int> r;
  int restarts = 16;
  std::uint64_t seed = 1;
  std::string out;
};

int run_prune(const Global& g, const PruneArgs& a) {
  const auto file = idcodes::read_code_file(a.file);
  const int r = resolve_r(a.r, file, "prune");
  const Code pruned = idcodes::prune(file.code, r, a.restarts, a.seed);
  json j{{"r", r}, {"input_size", file.code.size()}, {"removed", file.code.size() - pruned.size()}, {"verified", true}};
  deliver(g, pruned, r, a.out, j);
  return kOk;
}

// ---- convert --------------------------------------------------------------

struct ConvertArgs {
  std::string file;
  std::string to;
  std::optional<int> r;
  std::optional<int> pos;
  std::string out;
};

int run_convert(const Global& g, const ConvertArgs& a) {
  const auto file = idcodes::read_code_file(a.file);
  json j{{"to", a.to}};
  if (a.to == "discriminating") {
    if (file.code.dim() + 1 > idcodes::kMaxDim) throw UsageError("convert: n + 1 exceeds the dimension cap");
    const Code out = idcodes::to_discriminating(file.code);
    std::optional<int> r = a.r ? a.r : file.r;
    if (!g.unchecked) {
      if (!r) throw UsageError("convert: --r is required to verify the result");
      if (*r % 2 == 0) throw UsageError("convert: discriminating codes need odd r");
      const auto chk = idcodes::check_discriminating(out, *r);
      if (!chk.discriminating) {
        throw idcodes::VerificationError("convert: result is not " + std::to_string(*r) +
                                         "-discriminating (input not identifying?)");
      }
    }
    if (r) j["r"] = *r;
    j["verified"] = !g.unchecked;
    deliver(g, out, r, a.out, j);
    return kOk;
  }
  const Code out = idcodes::to_identifying(file.code, a.pos);
  std::optional<int> r = a.r ? a.r : file.r;
  if (!g.unchecked) {
    if (!r) throw UsageError("convert: --r is required to verify the result");
    idcodes::require_identifying(out, *r, "convert");
  }
  if (r) j["r"] = *r;
  j["verified"] = !g.unchecked;
  deliver(g, out, r, a.out, j);
  return kOk;
}

// ---- exact ----------------------------------------------------------------

struct ExactArgs {
  int r = 1;
  int n = 0;
  std::string kind = "identifying";
  std::optional<int> start;
  std::uint64_t budget = 1'000'000'000;
  std::optional<bool> symmetry;
  std::string out;
};

int run_exact(const Global& g, const ExactArgs& a) {
  idcodes::ExactOptions opts;
  opts.node_budget = a.budget;
  opts.symmetry = a.symmetry;
  json j{{"kind", a.kind}, {"r", a.r}, {"n", a.n}};

  if (a.start) {
    opts.start_size = *a.start;
  } else if (a.kind != "separating") {
    // Registry lower bounds are trusted; start there.
    const auto reg = idcodes::BoundsRegistry::load_default();
    const idcodes::BoundRecord* rec =
        a.kind == "identifying" ? reg.find(a.r, a.n) : (a.r % 2 == 1 ? reg.find(a.r, a.n - 1) : nullptr);
    if (rec != nullptr) {
      opts.start_size = static_cast<int>(rec->lower);
      j["start_from"] = "registry lower bound";
    }
  }
  j["start_size"] = opts.start_size;

  idcodes::ExactResult res;
  if (a.kind == "identifying") {
    res = idcodes::min_identifying(a.r, a.n, opts);
  } else if (a.kind == "discriminating") {
    res = idcodes::min_discriminating(a.r, a.n, opts);
  } else {
    res = idcodes::min_separating(a.n, a.r, opts);
  }
  j["minimum"] = res.code.size();
  j["proven_minimal"] = res.proven_minimal;
  j["nodes"] = res.nodes;
  std::optional<int> r_out = a.kind == "separating" ? std::nullopt : std::optional<int>(a.r);
  deliver(g, res.code, r_out, a.out, j);
  return res.proven_minimal ? kOk : kFails;
}

// ---- bounds ---------------------------------------------------------------

struct BoundsArgs {
  bool check = false;
  std::string compare;
  std::optional<int> r;
  std::optional<int> lookup_r;
  std::optional<int> lookup_n;
  std::string registry;
};

int run_bounds(const Global& g, const BoundsArgs& a) {
  const auto reg = a.registry.empty() ? idcodes::BoundsRegistry::load_default() : idcodes::BoundsRegistry::load(a.registry);
  int status = kOk;
  json j = json::object();

  if (a.check) {
    const auto rep = reg.check_consistency();
    j["checks"] = rep.checks;
    j["failures"] = rep.failures;
    j["consistent"] = rep.ok();
    if (!rep.ok()) status = kFails;
  }
  if (!a.compare.empty()) {
    const auto file = idcodes::read_code_file(a.compare);
    const int r = resolve_r(a.r, file, "bounds --compare");
    const auto& rec = reg.lookup(r, file.code.dim());
    const auto cls = idcodes::compare(file.code, r, reg);
    j["r"] = r;
    j["n"] = file.code.dim();
    j["size"] = file.code.size();
    j["lower"] = rec.lower;
    j["upper"] = rec.upper;
    j["exact"] = rec.exact();
    j["classification"] = std::string(idcodes::to_string(cls));
    if (cls == idcodes::Classification::violates_lower) status = kFails;
  }
  if (a.lookup_r || a.lookup_n) {
    if (!a.lookup_r || !a.lookup_n) throw UsageError("bounds: --lookup-r and --lookup-n go together");
    const auto& rec = reg.lookup(*a.lookup_r, *a.lookup_n);
    j["r"] = rec.r;
    j["n"] = rec.n;
    j["lower"] = rec.lower;
    j["upper"] = rec.upper;
    j["lower_key"] = rec.lower_key;
    j["upper_key"] = rec.upper_key;
    j["exact"] = rec.exact();
  }
  if (!a.check && a.compare.empty() && !a.lookup_r && !a.lookup_n) {
    if (g.json) {
      json rows = json::array();
      for (const auto& rec : reg.records()) {
        rows.push_back({{"r", rec.r}, {"n", rec.n}, {"lower", rec.lower}, {"upper", rec.upper},
                        {"lower_key", rec.lower_key}, {"upper_key", rec.upper_key}});
      }
      std::cout << rows.dump(2) << '\n';
    } else {
      for (const auto& rec : reg.records()) {
        std::cout << rec.r << ' ' << rec.n << ' ' << rec.lower << ' ' << rec.upper << ' ' << rec.lower_key << ' '
                  << rec.upper_key << '\n';
      }
    }
    return kOk;
  }
  emit(g, j);
  if (!g.json && a.check) {
    for (const auto& f : j["failures"]) std::cout << "failure " << f.get<std::string>() << '\n';
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Identifying and discriminating codes in the binary Hamming space"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_flag("--unchecked", g.unchecked, "Write codes without the final verification");
  std::optional<unsigned> threads;
  app.add_option("--threads", threads, "Worker threads (default: $IDCODES_THREADS or all cores)")
      ->check(CLI::PositiveNumber);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a code file");
  verify->add_option("file", va.file)->required()->check(CLI::ExistingFile);
  verify->add_option("--r", va.r, "Radius (default: the file's r=)");
  verify->add_flag("--discriminating", va.discriminating, "Check r-discriminating instead");

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "Build a code heuristically");
  construct->add_option("--method", ca.method)->check(CLI::IsMember({"greedy", "noising"}));
  construct->add_option("--r", ca.r)->required();
  construct->add_option("--n", ca.n)->required();
  construct->add_option("--size", ca.size, "Code size for noising");
  construct->add_option("--seed", ca.seed);
  construct->add_option("--seeds", ca.seeds, "Noising runs with seeds seed, seed+1, ...");
  construct->add_option("--rho-init", ca.rho_init, "Initial noise rate (default 2r+1)");
  construct->add_option("--rho-steps", ca.rho_steps);
  construct->add_option("--sweeps", ca.sweeps, "Passes over the codewords per noise rate");
  construct->add_option("--max-iterations", ca.max_iterations, "Codeword visits per run");
  construct->add_option("--stop-size", ca.stop_size, "Stop once this size is reached");
  construct->add_option("--candidate-sample", ca.candidate_sample, "Greedy: candidates priced per step");
  construct->add_option("--prune", ca.prune_restarts, "Prune the result with this many restarts");
  construct->add_option("--out", ca.out);

  ExtendArgs ea;
  auto* extend = app.add_subcommand("extend", "Extend a code by p coordinates");
  extend->add_option("file", ea.file)->required()->check(CLI::ExistingFile);
  extend->add_option("--r", ea.r, "Base radius (default: the file's r=)");
  extend->add_option("--p", ea.p)->required();
  extend->add_option("--r2", ea.r2, "Radius gain");
  extend->add_option("--k", ea.k, "Use construction C2 with a k-separating multiplier");
  extend->add_option("--separ", ea.separ_file, "k-separating multiplier code (default: exact minimum)");
  extend->add_flag("--force", ea.force, "Skip parameter-range checks");
  extend->add_option("--out", ea.out);

  PruneArgs pa;
  auto* prune = app.add_subcommand("prune", "Remove useless codewords");
  prune->add_option("file", pa.file)->required()->check(CLI::ExistingFile);
  prune->add_option("--r", pa.r);
  prune->add_option("--restarts", pa.restarts)->check(CLI::PositiveNumber);
  prune->add_option("--seed", pa.seed);
  prune->add_option("--out", pa.out);

  ConvertArgs cva;
  auto* convert = app.add_subcommand("convert", "Identifying <-> discriminating");
  convert->add_option("file", cva.file)->required()->check(CLI::ExistingFile);
  convert->add_option("--to", cva.to)->required()->check(CLI::IsMember({"discriminating", "identifying"}));
  convert->add_option("--r", cva.r);
  convert->add_option("--pos", cva.pos, "Coordinate to delete (1-based, default last)");
  convert->add_option("--out", cva.out);

  ExactArgs xa;
  auto* exact = app.add_subcommand("exact", "Certified minimum code for small n");
  exact->add_option("--r", xa.r, "Radius (k for separating)")->required();
  exact->add_option("--n", xa.n)->required();
  exact->add_option("--kind", xa.kind)->check(CLI::IsMember({"identifying", "discriminating", "separating"}));
  exact->add_option("--start", xa.start, "First size tried (default: registry lower bound)");
  exact->add_option("--budget", xa.budget, "Node budget");
  exact->add_option("--symmetry", xa.symmetry, "Fix a closest codeword pair (true/false)");
  exact->add_option("--out", xa.out);

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "Bounds registry: list, check, compare");
  bounds->add_flag("--check", ba.check, "Verify the registry's relations");
  bounds->add_option("--compare", ba.compare, "Classify a code file against the registry")
      ->check(CLI::ExistingFile);
  bounds->add_option("--r", ba.r);
  bounds->add_option("--lookup-r", ba.lookup_r);
  bounds->add_option("--lookup-n", ba.lookup_n);
  bounds->add_option("--registry", ba.registry, "Registry file (default: $IDCODES_BOUNDS or the shipped one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    g.threads = threads ? *threads : default_threads();
    if (*verify) return run_verify(g, va);
    if (*construct) return run_construct(g, ca);
    if (*extend) return run_extend(g, ea);
    if (*prune) return run_prune(g, pa);
    if (*convert) return run_convert(g, cva);
    if (*exact) return run_exact(g, xa);
    if (*bounds) return run_bounds(g, ba);
  } catch (const idcodes::VerificationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFails;
  } catch (const idcodes::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
