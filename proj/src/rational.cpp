#include "harmalg/rational.hpp"

#include <stdexcept>
#include <string>

#include "harmalg/parse.hpp"

namespace harmalg {

Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(s));
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'", slash + 1);
    Rational r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational '" + s + "'", 0);
  }
}

std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_short_string(const Rational& r) { return r.get_str(); }

GaussRational GaussRational::inverse() const {
  Rational n = norm2();
  if (sgn(n) == 0) throw std::domain_error("division by zero in Q(i)");
  return {re_ / n, -im_ / n};
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (sgn(o.im_) == 0) {
    if (sgn(o.re_) == 0) throw std::domain_error("division by zero in Q(i)");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string to_string(const GaussRational& x) {
  if (x.is_real()) return to_short_string(x.re());
  std::string out = "(" + to_short_string(x.re());
  out += sgn(x.im()) < 0 ? "-" : "+";
  out += to_short_string(abs(x.im()));
  out += "i)";
  return out;
}

std::ostream& operator<<(std::ostream& os, const GaussRational& x) { return os << to_string(x); }

}  // namespace harmalg
