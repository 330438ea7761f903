#include "idcodes/code_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <unistd.h>

#include "idcodes/errors.hpp"

namespace idcodes {

namespace {

std::string strip(std::string line) {
  if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

template <class T>
std::optional<T> to_number(std::string_view s) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

CodeFile parse_code(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<int> dim;
  CodeFile out;
  std::vector<Word> words;
  std::vector<std::size_t> where;

  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = strip(line);
    if (body.empty()) continue;

    if (!dim) {
      std::istringstream fields(body);
      std::string tok;
      while (fields >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw ParseError(source, lineno, "expected header `n=<N> r=<R>`");
        const std::string key = tok.substr(0, eq);
        const auto value = to_number<int>(std::string_view(tok).substr(eq + 1));
        if (!value) throw ParseError(source, lineno, "bad number in '" + tok + "'");
        if (key == "n") {
          if (*value < 1 || *value > kMaxDim) {
            throw ParseError(source, lineno, "n must be in 1.." + std::to_string(kMaxDim));
          }
          dim = *value;
        } else if (key == "r") {
          if (*value < 0) throw ParseError(source, lineno, "r must be non-negative");
          out.r = *value;
        } else {
          throw ParseError(source, lineno, "unknown header field '" + key + "'");
        }
      }
      if (!dim) throw ParseError(source, lineno, "header lacks n=<N>");
      continue;
    }

    const auto w = to_number<std::uint64_t>(body);
    if (!w) throw ParseError(source, lineno, "expected a decimal codeword, got '" + body + "'");
    if (*w > low_mask(*dim)) {
      throw ParseError(source, lineno, "codeword " + body + " does not fit in " + std::to_string(*dim) + " bits");
    }
    words.push_back(static_cast<Word>(*w));
    where.push_back(lineno);
  }
  if (!dim) throw ParseError(source, lineno == 0 ? 1 : lineno, "empty code file");

  std::vector<std::size_t> order(words.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return words[a] != words[b] ? words[a] < words[b] : a < b;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (words[order[i]] == words[order[i - 1]]) {
      throw ParseError(source, where[order[i]], "duplicate codeword " + std::to_string(words[order[i]]));
    }
  }
  out.code = Code(*dim, std::move(words));
  return out;
}

CodeFile read_code_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_code(in, path.string());
}

void write_code(std::ostream& out, const Code& code, std::optional<int> r) {
  out << "n=" << code.dim();
  if (r) out << " r=" << *r;
  out << '\n';
  for (Word w : code) out << w << '\n';
}

std::string format_code(const Code& code, std::optional<int> r) {
  std::ostringstream os;
  write_code(os, code, r);
  return os.str();
}

void write_code_file(const std::filesystem::path& path, const Code& code, std::optional<int> r) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    write_code(out, code, r);
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

}  // namespace idcodes
