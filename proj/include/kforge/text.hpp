#pragma once

#include <string>

#include "kforge/rational.hpp"

namespace kforge {

/// Accumulates "coefficient * factor" terms into canonical sum notation:
/// unit coefficients are omitted, negative terms are joined with " - ",
/// coefficients with both a real and an imaginary part are parenthesized.
class TermWriter {
public:
  void add(const GaussRat &c, const std::string &factor);
  bool empty() const { return out_.empty(); }
  /// "0" when nothing was added.
  std::string str() const { return out_.empty() ? "0" : out_; }

private:
  std::string out_;
};

/// "a", "a^k" or "" for k = 0.
std::string a_power(int k);

/// Joins two factors with "*", skipping empty ones.
std::string join_factors(const std::string &l, const std::string &r);

} // namespace kforge
