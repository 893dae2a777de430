#include "kforge/series.hpp"

#include <sstream>

#include "kforge/errors.hpp"
#include "kforge/text.hpp"

namespace kforge {

void require_same_order(const Series &a, const Series &b) {
  if (a.order() != b.order())
    throw OrderMismatch("series orders " + std::to_string(a.order()) +
                        " and " + std::to_string(b.order()));
}

Series::Series(int order) {
  if (order < 0)
    throw InvalidSpec("negative truncation order");
  c_.resize(static_cast<size_t>(order) + 1);
}

Series::Series(int order, std::vector<GaussRat> coeffs) : Series(order) {
  if (coeffs.size() > c_.size())
    throw OrderMismatch("more coefficients than the truncation order allows");
  for (size_t m = 0; m < coeffs.size(); ++m)
    c_[m] = std::move(coeffs[m]);
}

Series Series::constant(int order, GaussRat c) {
  Series s(order);
  s.c_[0] = std::move(c);
  return s;
}

Series Series::monomial(int order, int power, GaussRat c) {
  Series s(order);
  if (power <= order)
    s.c_[static_cast<size_t>(power)] = std::move(c);
  return s;
}

bool Series::is_zero() const { return valuation() < 0; }

int Series::valuation() const {
  for (size_t m = 0; m < c_.size(); ++m)
    if (!c_[m].is_zero())
      return static_cast<int>(m);
  return -1;
}

bool Series::is_constant() const {
  for (size_t m = 1; m < c_.size(); ++m)
    if (!c_[m].is_zero())
      return false;
  return true;
}

Series Series::operator-() const {
  Series r(order());
  for (size_t m = 0; m < c_.size(); ++m)
    if (!c_[m].is_zero())
      r.c_[m] = -c_[m];
  return r;
}

Series &Series::operator+=(const Series &o) {
  require_same_order(*this, o);
  for (size_t m = 0; m < c_.size(); ++m)
    if (!o.c_[m].is_zero())
      c_[m] += o.c_[m];
  return *this;
}

Series &Series::operator-=(const Series &o) {
  require_same_order(*this, o);
  for (size_t m = 0; m < c_.size(); ++m)
    if (!o.c_[m].is_zero())
      c_[m] -= o.c_[m];
  return *this;
}

Series &Series::operator*=(const GaussRat &k) {
  if (k.is_one())
    return *this;
  for (auto &c : c_)
    if (!c.is_zero())
      c = c * k;
  return *this;
}

Series operator*(const Series &a, const Series &b) {
  require_same_order(a, b);
  const int n = a.order();
  Series r(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i].is_zero())
      continue;
    for (int j = 0; i + j <= n; ++j) {
      if (b[j].is_zero())
        continue;
      r.c_[static_cast<size_t>(i + j)] += a[i] * b[j];
    }
  }
  return r;
}

bool operator==(const Series &a, const Series &b) {
  require_same_order(a, b);
  return a.c_ == b.c_;
}

Series Series::shifted(int k) const {
  Series r(order());
  for (int m = 0; m + k <= order(); ++m)
    r.c_[static_cast<size_t>(m + k)] = c_[static_cast<size_t>(m)];
  return r;
}

Series Series::divided_by_t(int k) const {
  if (k > order())
    throw DivisibilityError("division by t^" + std::to_string(k) +
                            " exceeds truncation order");
  for (int m = 0; m < k; ++m)
    if (!c_[static_cast<size_t>(m)].is_zero())
      throw DivisibilityError("coefficient of t^" + std::to_string(m) +
                              " is nonzero");
  Series r(order() - k);
  for (int m = 0; m <= order() - k; ++m)
    r.c_[static_cast<size_t>(m)] = c_[static_cast<size_t>(m + k)];
  return r;
}

Series Series::derivative() const {
  Series r(order());
  for (int m = 1; m <= order(); ++m)
    if (!c_[static_cast<size_t>(m)].is_zero())
      r.c_[static_cast<size_t>(m - 1)] = c_[static_cast<size_t>(m)] * GaussRat(m);
  return r;
}

Series Series::integral() const {
  Series r(order());
  for (int m = 0; m + 1 <= order(); ++m)
    if (!c_[static_cast<size_t>(m)].is_zero())
      r.c_[static_cast<size_t>(m + 1)] =
          c_[static_cast<size_t>(m)] * GaussRat(Rational(1, m + 1));
  return r;
}

Series Series::with_order(int order) const {
  Series r(order);
  for (int m = 0; m <= order && m <= this->order(); ++m)
    r.c_[static_cast<size_t>(m)] = c_[static_cast<size_t>(m)];
  return r;
}

Series Series::scaled(const GaussRat &k) const {
  Series r(order());
  GaussRat p(1);
  for (size_t m = 0; m < c_.size(); ++m) {
    if (!c_[m].is_zero())
      r.c_[m] = c_[m] * p;
    p = p * k;
  }
  return r;
}

double Series::evaluate_real(double t) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * t + it->re().to_double();
  return acc;
}

std::string Series::str(const std::string &var) const {
  TermWriter w;
  for (int m = 0; m <= order(); ++m) {
    const auto &c = c_[static_cast<size_t>(m)];
    if (c.is_zero())
      continue;
    std::string factor;
    if (m == 1)
      factor = var;
    else if (m > 1)
      factor = var + "^" + std::to_string(m);
    w.add(c, factor);
  }
  return w.str();
}

Series invert(const Series &s) {
  if (s[0].is_zero())
    throw NonInvertibleConstantTerm("constant term is zero");
  const int n = s.order();
  const GaussRat inv0 = s[0].inverse();
  Series r(n);
  r.set(0, inv0);
  for (int m = 1; m <= n; ++m) {
    GaussRat acc;
    for (int j = 1; j <= m; ++j)
      if (!s[j].is_zero() && !r[m - j].is_zero())
        acc += s[j] * r[m - j];
    if (!acc.is_zero())
      r.set(m, -(acc * inv0));
  }
  return r;
}

Series exp_series(const Series &s) {
  if (!s[0].is_zero())
    throw NonNilpotentArgument("exp of a series with nonzero constant term");
  // E' = s' E  =>  m E_m = sum_j j s_j E_{m-j}
  const int n = s.order();
  Series e(n);
  e.set(0, GaussRat(1));
  for (int m = 1; m <= n; ++m) {
    GaussRat acc;
    for (int j = 1; j <= m; ++j)
      if (!s[j].is_zero() && !e[m - j].is_zero())
        acc += GaussRat(j) * s[j] * e[m - j];
    if (!acc.is_zero())
      e.set(m, acc * GaussRat(Rational(1, m)));
  }
  return e;
}

Series log1p_series(const Series &s) {
  if (!s[0].is_zero())
    throw NonNilpotentArgument("log1p of a series with nonzero constant term");
  Series one_plus = s;
  one_plus.set(0, GaussRat(1));
  return (s.derivative() * invert(one_plus)).integral();
}

Series binom_pow(const Series &s, const Rational &exponent) {
  if (!s[0].is_one())
    throw ConstantTermNotOne("binomial power needs constant term 1");
  // (1+u) P' = beta u' P  =>  m P_m = sum_j (beta j - (m-j)) u_j P_{m-j}
  const int n = s.order();
  const GaussRat beta(exponent);
  Series p(n);
  p.set(0, GaussRat(1));
  for (int m = 1; m <= n; ++m) {
    GaussRat acc;
    for (int j = 1; j <= m; ++j) {
      if (s[j].is_zero() || p[m - j].is_zero())
        continue;
      GaussRat w = beta * GaussRat(j) - GaussRat(m - j);
      acc += w * s[j] * p[m - j];
    }
    if (!acc.is_zero())
      p.set(m, acc * GaussRat(Rational(1, m)));
  }
  return p;
}

} // namespace kforge
