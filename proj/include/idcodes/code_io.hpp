#pragma once

// Code files: a header line `n=<N> r=<R>` (r optional and advisory), then one
// decimal codeword per line. `#` starts a comment. Input order is free;
// output is sorted.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "idcodes/hypercube.hpp"

namespace idcodes {

struct CodeFile {
  Code code;
  std::optional<int> r;
};

CodeFile parse_code(std::istream& in, const std::string& source = "<input>");
CodeFile read_code_file(const std::filesystem::path& path);

void write_code(std::ostream& out, const Code& code, std::optional<int> r = std::nullopt);
std::string format_code(const Code& code, std::optional<int> r = std::nullopt);
/// Writes to a sibling temporary file, then renames it over `path`.
void write_code_file(const std::filesystem::path& path, const Code& code, std::optional<int> r = std::nullopt);

}  // namespace idcodes
