#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kforge/series.hpp"

namespace kforge {

/// Largest supported spacetime dimension.
inline constexpr int kMaxDim = 8;

using MultiIndex = std::array<uint8_t, kMaxDim>;

/// x^alpha d^beta in normal order (every x to the left of every d).
struct Monomial {
  std::array<uint8_t, 2 * kMaxDim> e{};

  uint8_t x(int mu) const { return e[static_cast<size_t>(mu)]; }
  uint8_t d(int mu) const { return e[static_cast<size_t>(kMaxDim + mu)]; }
  uint8_t &x(int mu) { return e[static_cast<size_t>(mu)]; }
  uint8_t &d(int mu) { return e[static_cast<size_t>(kMaxDim + mu)]; }

  int x_degree() const;
  int d_degree() const;
  bool is_one() const;
  MultiIndex x_part() const;

  /// "x0^2*x1*d0", or "" for the unit monomial.
  std::string str(int dim) const;

  auto operator<=>(const Monomial &) const = default;
};

struct MonomialHash {
  size_t operator()(const Monomial &m) const noexcept;
};

/// One term of a normal-ordered monomial product.
struct MonomialTerm {
  Monomial mono;
  int64_t coeff;
};

/// Normal-ordered expansion of (x^a d^b)(x^c d^e): sum over k of
/// prod_i C(b_i,k_i) C(c_i,k_i) k_i! x^{a+c-k} d^{b+e-k}. Results are
/// memoized per thread.
const std::vector<MonomialTerm> &monomial_product(const Monomial &l,
                                                  const Monomial &r);

/// Polynomial in x^0..x^{n-1} with series coefficients.
class Poly {
public:
  using Terms = std::map<MultiIndex, Series>;

  Poly(int dim, int order);
  static Poly constant(int dim, const Series &c);
  static Poly variable(int dim, int order, int mu);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Highest total degree in x, or -1 for zero.
  int degree() const;

  void add_term(const MultiIndex &idx, const Series &c);
  const Series *coeff(const MultiIndex &idx) const;

  Poly operator-() const;
  Poly &operator+=(const Poly &o);
  Poly &operator-=(const Poly &o);
  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator*(const Poly &a, const Poly &b);
  friend Poly operator*(const Series &c, const Poly &p);
  friend bool operator==(const Poly &a, const Poly &b);

  /// Canonical text; terms ordered by a-power ascending, then monomial
  /// descending.
  std::string str() const;

private:
  int dim_;
  int order_;
  Terms terms_;
};

/// Normal-ordered polynomial differential operator with series
/// coefficients in the deformation parameter.
class DiffOp {
public:
  using Terms = std::map<Monomial, Series>;

  DiffOp(int dim, int order);
  static DiffOp one(int dim, int order);
  static DiffOp constant(int dim, const Series &c);
  static DiffOp scalar(int dim, int order, const GaussRat &c);
  static DiffOp x(int dim, int order, int mu);
  static DiffOp d(int dim, int order, int mu);
  static DiffOp monomial(int dim, const Monomial &m, const Series &c);
  /// f(A) with A = i a d0, i.e. sum_m f_m i^m a^m d0^m.
  static DiffOp of_A(int dim, const Series &f);

  int dim() const { return dim_; }
  int order() const { return order_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  /// Adds c * m, dropping the term if it cancels.
  void add_term(const Monomial &m, const Series &c);
  /// Lowest a-power over all coefficients, -1 for zero.
  int valuation() const;
  /// Coefficient of the unit monomial.
  Series constant_term() const;

  DiffOp operator-() const;
  DiffOp &operator+=(const DiffOp &o);
  DiffOp &operator-=(const DiffOp &o);
  DiffOp &operator*=(const GaussRat &k);
  friend DiffOp operator+(DiffOp a, const DiffOp &b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp &b) { return a -= b; }
  friend DiffOp operator*(const DiffOp &a, const DiffOp &b);
  friend DiffOp operator*(DiffOp a, const GaussRat &k) { return a *= k; }
  friend DiffOp operator*(const GaussRat &k, DiffOp a) { return a *= k; }
  friend DiffOp operator*(const Series &c, const DiffOp &a);
  friend bool operator==(const DiffOp &a, const DiffOp &b);

  /// Truncates or extends every coefficient to a new order.
  DiffOp with_order(int order) const;
  /// Keeps only the coefficients of a^k, returned at order 0.
  DiffOp a_coefficient(int k) const;
  /// Formal adjoint under x* = x, d* = -d and complex conjugation.
  DiffOp adjoint() const;

  std::string str() const;

private:
  void check_degree(const Monomial &m) const;

  int dim_;
  int order_;
  Terms terms_;
};

/// Serial reference product; the operator* above dispatches to the
/// OpenMP kernel for large operands and gives identical results.
DiffOp mul_serial(const DiffOp &a, const DiffOp &b);
DiffOp mul_parallel(const DiffOp &a, const DiffOp &b);

DiffOp commutator(const DiffOp &a, const DiffOp &b);
/// Integer power by repeated multiplication.
DiffOp power(const DiffOp &a, int k);
/// Inverse of an operator whose constant term is invertible and whose
/// remaining part has positive a-valuation.
DiffOp invert(const DiffOp &a);

/// Action of an operator on a polynomial.
Poly apply(const DiffOp &op, const Poly &f);
/// Multiplication operator by a polynomial.
DiffOp multiplication_op(const Poly &f);

/// Lowest a-order at which two operators differ, -1 when equal.
int first_difference_order(const DiffOp &a, const DiffOp &b);

void require_same_shape(int dim_a, int order_a, int dim_b, int order_b);

} // namespace kforge
