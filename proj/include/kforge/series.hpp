#pragma once

#include <string>
#include <vector>

#include "kforge/rational.hpp"

namespace kforge {

/// Default truncation order used when nothing else is requested.
inline constexpr int kDefaultOrder = 6;

/// Truncated formal power series c0 + c1 t + ... + cN t^N over Gaussian
/// rationals. The indeterminate is anonymous: it stands for the deformation
/// parameter a or for the symbol A = i a d0, depending on the caller.
class Series {
public:
  explicit Series(int order = kDefaultOrder);
  Series(int order, std::vector<GaussRat> coeffs);

  static Series constant(int order, GaussRat c);
  /// c * t^power; the zero series when power > order.
  static Series monomial(int order, int power, GaussRat c = GaussRat(1));

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const GaussRat &operator[](int m) const { return c_[static_cast<size_t>(m)]; }
  void set(int m, GaussRat v) { c_[static_cast<size_t>(m)] = std::move(v); }
  const std::vector<GaussRat> &coeffs() const { return c_; }

  bool is_zero() const;
  /// Index of the lowest nonzero coefficient, or -1 for the zero series.
  int valuation() const;
  /// True when the only nonzero coefficient (if any) is the constant term.
  bool is_constant() const;

  Series operator-() const;
  Series &operator+=(const Series &o);
  Series &operator-=(const Series &o);
  Series &operator*=(const GaussRat &k);
  friend Series operator+(Series a, const Series &b) { return a += b; }
  friend Series operator-(Series a, const Series &b) { return a -= b; }
  friend Series operator*(const Series &a, const Series &b);
  friend Series operator*(Series a, const GaussRat &k) { return a *= k; }
  friend Series operator*(const GaussRat &k, Series a) { return a *= k; }
  friend bool operator==(const Series &a, const Series &b);

  /// Multiplies by t^k, discarding what falls beyond the order.
  Series shifted(int k) const;
  /// Exact division by t^k. The result has order N-k since the top k
  /// coefficients are not determined; throws DivisibilityError when one of
  /// the first k coefficients is nonzero.
  Series divided_by_t(int k) const;
  Series derivative() const;
  /// Term-by-term antiderivative vanishing at t = 0.
  Series integral() const;
  /// Truncates or zero-extends to a new order.
  Series with_order(int order) const;
  /// f(t) -> f(k t).
  Series scaled(const GaussRat &k) const;

  /// Evaluates the real part at a real point (Horner).
  double evaluate_real(double t) const;

  /// Canonical text "c0 + c1*t + c2*t^2".
  std::string str(const std::string &var = "t") const;

private:
  std::vector<GaussRat> c_;
};

/// Multiplicative inverse; throws NonInvertibleConstantTerm when c0 = 0.
Series invert(const Series &s);
/// exp(s) for s with zero constant term.
Series exp_series(const Series &s);
/// log(1 + s) for s with zero constant term.
Series log1p_series(const Series &s);
/// s^exponent for s with constant term 1 (generalized binomial series).
Series binom_pow(const Series &s, const Rational &exponent);

/// Throws OrderMismatch unless both series share a truncation order.
void require_same_order(const Series &a, const Series &b);

} // namespace kforge
