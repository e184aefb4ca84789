#include "harmalg/parse.hpp"

#include <cctype>
#include <string>

namespace harmalg {

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  std::size_t pos() const { return pos_; }

  mpz_class integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Rational rational() {
    mpz_class num = integer();
    mpz_class den = 1;
    if (accept('/')) {
      std::size_t at = pos_;
      den = integer();
      if (den == 0) throw ParseError("zero denominator", at);
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  // rat ['i'] -- returns the value and whether it carried the imaginary unit.
  std::pair<Rational, bool> rational_or_imag() {
    if (peek() == 'i') {
      ++pos_;
      return {Rational(1), true};
    }
    Rational r = rational();
    return {r, accept('i')};
  }

  // '(' ['-'] rat [('+'|'-') rat 'i'] ')'  (opening paren already consumed)
  GaussRational paren_coeff() {
    bool neg = accept('-');
    auto [first, first_imag] = rational_or_imag();
    if (neg) first = -first;
    GaussRational v = first_imag ? GaussRational(0, first) : GaussRational(first);
    if (!first_imag && (peek() == '+' || peek() == '-')) {
      bool minus = s_[pos_++] == '-';
      auto [second, imag] = rational_or_imag();
      if (!imag) fail("expected imaginary part ending in 'i'");
      v = GaussRational(first, minus ? Rational(-second) : second);
    }
    expect(')');
    return v;
  }

  // Bare Gaussian rational, used for sphere points: coeff or signed real or
  // "a+bi" without parentheses.
  GaussRational gauss() {
    if (accept('(')) return paren_coeff();
    bool neg = accept('-');
    auto [first, first_imag] = rational_or_imag();
    if (neg) first = -first;
    if (first_imag) return GaussRational(0, first);
    if (peek() == '+' || peek() == '-') {
      bool minus = s_[pos_++] == '-';
      auto [second, imag] = rational_or_imag();
      if (!imag) fail("expected imaginary part ending in 'i'");
      return GaussRational(first, minus ? Rational(-second) : second);
    }
    return GaussRational(first);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

bool parse_factor(Lexer& lx, std::size_t n, BiMonomial& m) {
  char c = lx.peek();
  if (c != 'z' && c != 'w') return false;
  lx.accept(c);
  std::size_t at = lx.pos();
  mpz_class idx = lx.integer();
  if (idx < 1 || idx > static_cast<long>(n))
    throw ParseError("variable index " + idx.get_str() + " out of range 1.." + std::to_string(n), at);
  int e = 1;
  if (lx.accept('^')) e = static_cast<int>(lx.integer().get_si());
  auto j = static_cast<std::size_t>(idx.get_ui() - 1);
  (c == 'z' ? m.alpha : m.beta)[j] += e;
  return true;
}

}  // namespace

BiPoly parse_poly(std::string_view text, std::size_t n) {
  Lexer lx(text);
  BiPoly out(n);
  bool negate = lx.accept('-');
  if (lx.at_end()) lx.fail("empty polynomial");
  for (;;) {
    BiMonomial m{MultiIndex(n), MultiIndex(n)};
    GaussRational c = 1;
    bool have_factor = false;
    char ch = lx.peek();
    if (ch == '(') {
      lx.accept('(');
      c = lx.paren_coeff();
      if (lx.accept('*')) {
        if (!parse_factor(lx, n, m)) lx.fail("expected factor");
        have_factor = true;
      }
    } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == 'i') {
      auto [r, imag] = lx.rational_or_imag();
      c = imag ? GaussRational(0, r) : GaussRational(r);
      if (lx.accept('*')) {
        if (!parse_factor(lx, n, m)) lx.fail("expected factor");
        have_factor = true;
      }
    } else {
      if (!parse_factor(lx, n, m)) lx.fail("expected term");
      have_factor = true;
    }
    if (have_factor)
      while (lx.accept('*'))
        if (!parse_factor(lx, n, m)) lx.fail("expected factor");
    out.add_term(m, negate ? -c : c);

    if (lx.at_end()) break;
    if (lx.accept('+')) negate = false;
    else if (lx.accept('-')) negate = true;
    else lx.fail("expected '+' or '-'");
  }
  return out;
}

std::string render_poly(const BiPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    std::string factors;
    for (int pass = 0; pass < 2; ++pass) {
      const MultiIndex& idx = pass == 0 ? m.alpha : m.beta;
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if (idx[j] == 0) continue;
        if (!factors.empty()) factors += "*";
        factors += (pass == 0 ? "z" : "w") + std::to_string(j + 1);
        if (idx[j] > 1) factors += "^" + std::to_string(idx[j]);
      }
    }
    std::string coeff;
    bool neg = false;
    if (c.is_real()) {
      neg = sgn(c.re()) < 0;
      Rational a = abs(c.re());
      if (a != 1 || factors.empty()) coeff = to_short_string(a);
    } else {
      coeff = to_string(c);
    }
    if (first) out += neg ? "-" : "";
    else out += neg ? " - " : " + ";
    first = false;
    out += coeff;
    if (!coeff.empty() && !factors.empty()) out += "*";
    out += factors;
  }
  return out;
}

GaussRational parse_gauss(std::string_view text) {
  Lexer lx(text);
  GaussRational v = lx.gauss();
  if (!lx.at_end()) lx.fail("trailing characters");
  return v;
}

std::vector<GaussRational> parse_gauss_list(std::string_view text) {
  Lexer lx(text);
  std::vector<GaussRational> out;
  if (lx.at_end()) return out;
  do out.push_back(lx.gauss());
  while (lx.accept(','));
  if (!lx.at_end()) lx.fail("expected ','");
  return out;
}

}  // namespace harmalg
