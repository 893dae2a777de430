#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace kforge {

/// Exact rational number.
///
/// Values that fit in a pair of 64-bit integers are kept inline; anything
/// larger is promoted to a GMP rational and demoted again as soon as it fits.
/// No operation ever rounds.
class Rational {
public:
  Rational() = default;
  Rational(long long n) : n_(n) { // NOLINT(google-explicit-constructor)
    if (n == INT64_MIN)
      big_ = std::make_unique<mpq_class>(mpz_class(static_cast<long>(n)));
  }
  Rational(long long n, long long d);
  explicit Rational(const mpq_class &q);

  Rational(const Rational &o)
      : n_(o.n_), d_(o.d_),
        big_(o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr) {}
  Rational(Rational &&) noexcept = default;
  Rational &operator=(const Rational &o) {
    if (this != &o) {
      n_ = o.n_;
      d_ = o.d_;
      big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
    }
    return *this;
  }
  Rational &operator=(Rational &&) noexcept = default;

  /// Parses "p", "-p" or "p/q".
  static Rational parse(const std::string &text);

  bool is_zero() const { return !big_ && n_ == 0; }
  bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
  bool is_integer() const;
  int sign() const;
  bool is_small() const { return !big_; }

  mpq_class to_mpq() const;
  double to_double() const;
  std::string str() const;

  Rational operator-() const;
  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational inverse() const;

  friend Rational operator+(const Rational &a, const Rational &b);
  friend Rational operator-(const Rational &a, const Rational &b);
  friend Rational operator*(const Rational &a, const Rational &b);
  friend Rational operator/(const Rational &a, const Rational &b);
  Rational &operator+=(const Rational &o) { return *this = *this + o; }
  Rational &operator-=(const Rational &o) { return *this = *this - o; }
  Rational &operator*=(const Rational &o) { return *this = *this * o; }
  Rational &operator/=(const Rational &o) { return *this = *this / o; }

  friend bool operator==(const Rational &a, const Rational &b);
  friend std::strong_ordering operator<=>(const Rational &a,
                                          const Rational &b);

private:
  static Rational from_big(mpq_class q);

  int64_t n_ = 0;
  int64_t d_ = 1; // > 0, coprime with n_
  std::unique_ptr<mpq_class> big_;
};

std::ostream &operator<<(std::ostream &os, const Rational &q);

/// Exact complex rational re + im*i.
class GaussRat {
public:
  GaussRat() = default;
  GaussRat(long long n) : re_(n) {} // NOLINT(google-explicit-constructor)
  GaussRat(Rational re) : re_(std::move(re)) {} // NOLINT
  GaussRat(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussRat i() { return {Rational(0), Rational(1)}; }

  const Rational &re() const { return re_; }
  const Rational &im() const { return im_; }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_one() const { return re_.is_one() && im_.is_zero(); }
  bool is_real() const { return im_.is_zero(); }

  GaussRat conj() const { return {re_, -im_}; }
  GaussRat inverse() const;
  GaussRat operator-() const { return {-re_, -im_}; }

  friend GaussRat operator+(const GaussRat &a, const GaussRat &b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend GaussRat operator-(const GaussRat &a, const GaussRat &b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend GaussRat operator*(const GaussRat &a, const GaussRat &b);
  friend GaussRat operator/(const GaussRat &a, const GaussRat &b) {
    return a * b.inverse();
  }
  GaussRat &operator+=(const GaussRat &o);
  GaussRat &operator-=(const GaussRat &o);
  GaussRat &operator*=(const GaussRat &o) { return *this = *this * o; }

  friend bool operator==(const GaussRat &a, const GaussRat &b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "p/q", "r/s*i" or "p/q + r/s*i" (integers print without denominator).
  std::string str() const;

private:
  Rational re_, im_;
};

std::ostream &operator<<(std::ostream &os, const GaussRat &z);

} // namespace kforge
