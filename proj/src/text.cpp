#include "kforge/text.hpp"

namespace kforge {

void TermWriter::add(const GaussRat &c, const std::string &factor) {
  if (c.is_zero())
    return;
  bool negative = false;
  std::string mag;
  if (c.is_real()) {
    negative = c.re().sign() < 0;
    mag = c.re().abs().str();
  } else if (c.re().is_zero()) {
    negative = c.im().sign() < 0;
    Rational m = c.im().abs();
    mag = m.is_one() ? "i" : m.str() + "*i";
  } else {
    mag = "(" + c.str() + ")";
  }
  std::string body;
  if (factor.empty())
    body = mag;
  else if (mag == "1")
    body = factor;
  else
    body = mag + "*" + factor;
  if (out_.empty())
    out_ = negative ? "-" + body : body;
  else
    out_ += (negative ? " - " : " + ") + body;
}

std::string a_power(int k) {
  if (k == 0)
    return "";
  if (k == 1)
    return "a";
  return "a^" + std::to_string(k);
}

std::string join_factors(const std::string &l, const std::string &r) {
  if (l.empty())
    return r;
  if (r.empty())
    return l;
  return l + "*" + r;
}

} // namespace kforge
