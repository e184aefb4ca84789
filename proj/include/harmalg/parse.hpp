#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "harmalg/poly.hpp"
#include "harmalg/rational.hpp"

namespace harmalg {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Polynomial text grammar (whitespace insignificant):
//   poly   := ['-'] term (('+'|'-') term)*
//   term   := coeff ['*' factor ('*' factor)*] | factor ('*' factor)*
//   factor := ('z'|'w') index ['^' int]          w_j is conj(z_j)
//   coeff  := rat | '(' ['-'] rat [('+'|'-') rat 'i'] ')'
//   rat    := int ['/' int]
// A bare "i" or "(... i)" with no real part is accepted as well.
BiPoly parse_poly(std::string_view text, std::size_t n);

// Canonical text, highest graded-lex term first. parse_poly(render_poly(f)) == f.
std::string render_poly(const BiPoly& f);

// Comma-separated Gaussian rationals, e.g. "(1/3+2/3i),2/3".
std::vector<GaussRational> parse_gauss_list(std::string_view text);

}  // namespace harmalg
