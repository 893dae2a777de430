#include "kforge/rational.hpp"

#include <numeric>
#include <ostream>

#include "kforge/errors.hpp"

namespace kforge {

namespace {

using i128 = __int128;

bool fits(i128 v) { return v > INT64_MIN && v <= INT64_MAX; }

uint64_t uabs(int64_t v) {
  return v < 0 ? uint64_t(0) - uint64_t(v) : uint64_t(v);
}

uint64_t uabs128_mod(i128 v, uint64_t m) {
  auto u = v < 0 ? static_cast<unsigned __int128>(-v)
                 : static_cast<unsigned __int128>(v);
  return static_cast<uint64_t>(u % m);
}

} // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0)
    throw DivisionByZero("rational with zero denominator");
  if (n == INT64_MIN || d == INT64_MIN) {
    *this = from_big(mpq_class(mpz_class(static_cast<long>(n)),
                               mpz_class(static_cast<long>(d))));
    return;
  }
  if (d < 0) {
    n = -n;
    d = -d;
  }
  auto g = static_cast<int64_t>(std::gcd(uabs(n), uabs(d)));
  n_ = n / g;
  d_ = d / g;
}

Rational::Rational(const mpq_class &q) { *this = from_big(q); }

Rational Rational::from_big(mpq_class q) {
  q.canonicalize();
  Rational r;
  const auto &num = q.get_num();
  const auto &den = q.get_den();
  if (num.fits_slong_p() && den.fits_slong_p() && num != LONG_MIN &&
      den != LONG_MIN) {
    r.n_ = num.get_si();
    r.d_ = den.get_si();
  } else {
    r.big_ = std::make_unique<mpq_class>(std::move(q));
  }
  return r;
}

Rational Rational::parse(const std::string &text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw std::invalid_argument("not a rational: '" + text + "'");
  if (q.get_den() == 0)
    throw DivisionByZero("rational with zero denominator: '" + text + "'");
  return from_big(q);
}

bool Rational::is_integer() const { return big_ ? false : d_ == 1; }

int Rational::sign() const {
  if (big_)
    return sgn(*big_);
  return (n_ > 0) - (n_ < 0);
}

mpq_class Rational::to_mpq() const {
  if (big_)
    return *big_;
  return mpq_class(mpz_class(static_cast<long>(n_)),
                   mpz_class(static_cast<long>(d_)));
}

double Rational::to_double() const {
  if (big_)
    return big_->get_d();
  return static_cast<double>(n_) / static_cast<double>(d_);
}

std::string Rational::str() const {
  if (big_)
    return big_->get_str();
  if (d_ == 1)
    return std::to_string(n_);
  return std::to_string(n_) + "/" + std::to_string(d_);
}

Rational Rational::operator-() const {
  if (big_)
    return from_big(-*big_);
  Rational r;
  r.n_ = -n_;
  r.d_ = d_;
  return r;
}

Rational Rational::inverse() const {
  if (is_zero())
    throw DivisionByZero("inverse of zero");
  if (big_)
    return from_big(1 / *big_);
  return Rational(n_ < 0 ? -d_ : d_, n_ < 0 ? -n_ : n_);
}

Rational operator+(const Rational &a, const Rational &b) {
  if (!a.big_ && !b.big_) {
    if (a.d_ == 1 && b.d_ == 1) {
      int64_t s;
      if (!__builtin_add_overflow(a.n_, b.n_, &s) && s != INT64_MIN) {
        Rational r;
        r.n_ = s;
        return r;
      }
    } else {
      auto g = static_cast<int64_t>(std::gcd(a.d_, b.d_));
      i128 t = i128(a.n_) * (b.d_ / g) + i128(b.n_) * (a.d_ / g);
      if (t == 0)
        return {};
      auto g2 = static_cast<int64_t>(
          std::gcd(uabs128_mod(t, static_cast<uint64_t>(g)),
                   static_cast<uint64_t>(g)));
      i128 num = t / g2;
      i128 den = i128(a.d_ / g) * (b.d_ / g2);
      if (fits(num) && fits(den)) {
        Rational r;
        r.n_ = static_cast<int64_t>(num);
        r.d_ = static_cast<int64_t>(den);
        return r;
      }
    }
  }
  return Rational::from_big(a.to_mpq() + b.to_mpq());
}

Rational operator-(const Rational &a, const Rational &b) { return a + (-b); }

Rational operator*(const Rational &a, const Rational &b) {
  if (!a.big_ && !b.big_) {
    if (a.n_ == 0 || b.n_ == 0)
      return {};
    auto g1 = static_cast<int64_t>(std::gcd(uabs(a.n_), uabs(b.d_)));
    auto g2 = static_cast<int64_t>(std::gcd(uabs(b.n_), uabs(a.d_)));
    i128 num = i128(a.n_ / g1) * (b.n_ / g2);
    i128 den = i128(a.d_ / g2) * (b.d_ / g1);
    if (fits(num) && fits(den)) {
      Rational r;
      r.n_ = static_cast<int64_t>(num);
      r.d_ = static_cast<int64_t>(den);
      return r;
    }
  }
  return Rational::from_big(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational &a, const Rational &b) {
  return a * b.inverse();
}

bool operator==(const Rational &a, const Rational &b) {
  if (!a.big_ && !b.big_)
    return a.n_ == b.n_ && a.d_ == b.d_;
  if (a.big_ && b.big_)
    return *a.big_ == *b.big_;
  return false; // canonical: a value is big only when it does not fit
}

std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
  if (!a.big_ && !b.big_) {
    i128 l = i128(a.n_) * b.d_;
    i128 r = i128(b.n_) * a.d_;
    return l <=> r;
  }
  int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::ostream &operator<<(std::ostream &os, const Rational &q) {
  return os << q.str();
}

GaussRat GaussRat::inverse() const {
  if (is_zero())
    throw DivisionByZero("inverse of zero");
  if (im_.is_zero())
    return {re_.inverse()};
  Rational norm = re_ * re_ + im_ * im_;
  return {re_ / norm, -im_ / norm};
}

GaussRat operator*(const GaussRat &a, const GaussRat &b) {
  if (a.im_.is_zero()) {
    if (b.im_.is_zero())
      return {a.re_ * b.re_};
    return {a.re_ * b.re_, a.re_ * b.im_};
  }
  if (a.re_.is_zero()) {
    if (b.im_.is_zero())
      return {Rational(), a.im_ * b.re_};
    return {-(a.im_ * b.im_), a.im_ * b.re_};
  }
  if (b.im_.is_zero())
    return {a.re_ * b.re_, a.im_ * b.re_};
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

GaussRat &GaussRat::operator+=(const GaussRat &o) {
  if (!o.re_.is_zero())
    re_ += o.re_;
  if (!o.im_.is_zero())
    im_ += o.im_;
  return *this;
}

GaussRat &GaussRat::operator-=(const GaussRat &o) {
  if (!o.re_.is_zero())
    re_ -= o.re_;
  if (!o.im_.is_zero())
    im_ -= o.im_;
  return *this;
}

std::string GaussRat::str() const {
  if (im_.is_zero())
    return re_.str();
  std::string imag;
  if (im_.is_one())
    imag = "i";
  else if (im_ == Rational(-1))
    imag = "-i";
  else
    imag = im_.str() + "*i";
  if (re_.is_zero())
    return imag;
  if (im_.sign() < 0) {
    auto mag = (-im_).is_one() ? std::string("i") : (-im_).str() + "*i";
    return re_.str() + " - " + mag;
  }
  return re_.str() + " + " + imag;
}

std::ostream &operator<<(std::ostream &os, const GaussRat &z) {
  return os << z.str();
}

} // namespace kforge
