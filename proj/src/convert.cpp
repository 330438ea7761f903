#include "idcodes/convert.hpp"

#include <stdexcept>
#include <string>
#include <vector>

#include "idcodes/signature.hpp"

namespace idcodes {

namespace {

void require_even(const Code& c, const char* what) {
  for (Word w : c) {
    if (parity(w) != 0) {
      throw std::invalid_argument(std::string(what) + ": codeword " + BitVector(w, c.dim()).to_string() +
                                  " is odd");
    }
  }
}

}  // namespace

DiscriminatingCheck check_discriminating(const Code& c, int r) {
  if (r < 1 || r % 2 == 0) throw std::invalid_argument("discriminating codes need an odd radius");
  require_even(c, "check_discriminating");
  const SignatureCheck chk = check_signatures(c.words(), c.dim(), r, VertexSet::odd);
  DiscriminatingCheck out;
  out.uncovered_individuals = chk.nc;
  out.unseparated_pairs = chk.ns;
  out.uncovered = chk.uncovered;
  out.unseparated = chk.unseparated;
  out.discriminating = !c.empty() && chk.identifying();
  return out;
}

bool is_discriminating(const Code& c, int r) { return check_discriminating(c, r).discriminating; }

Code to_discriminating(const Code& c) {
  if (c.dim() + 1 > kMaxDim) throw std::invalid_argument("to_discriminating: dimension cap exceeded");
  std::vector<Word> w;
  w.reserve(c.size());
  for (Word x : c) w.push_back((x << 1) | static_cast<Word>(parity(x)));
  return {c.dim() + 1, std::move(w)};
}

Code to_identifying(const Code& c, std::optional<int> pos) {
  require_even(c, "to_identifying");
  const int p = pos.value_or(c.dim());
  std::vector<Word> w;
  w.reserve(c.size());
  for (Word x : c) w.push_back(delete_coordinate(x, c.dim(), p));
  return {c.dim() - 1, std::move(w)};
}

}  // namespace idcodes
