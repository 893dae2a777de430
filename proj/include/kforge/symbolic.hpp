#pragma once

#include <map>
#include <string>
#include <vector>

#include "kforge/tensor.hpp"

namespace kforge {

/// A named primitive element of the operator algebra.
struct Symbol {
  std::string name;
  DiffOp op;
};

/// Mutually commuting primitive elements available on one tensor leg.
using Alphabet = std::vector<Symbol>;

/// Tensor expressed as a polynomial in per-leg alphabets of commuting
/// primitive elements. Because the symbols are primitive and commute, the
/// coproduct, antipode and counit act on this form exactly as they do in the
/// enveloping algebra, which the normal-ordered operator image does not
/// support for compound elements.
class SymbolicTensor {
public:
  using Exponents = std::vector<uint8_t>;
  using Terms = std::map<Exponents, Series>;

  SymbolicTensor(int dim, int order, std::vector<Alphabet> legs);
  static SymbolicTensor one(int dim, int order, std::vector<Alphabet> legs);

  int dim() const { return dim_; }
  int order() const { return order_; }
  int legs() const { return static_cast<int>(legs_.size()); }
  const std::vector<Alphabet> &alphabets() const { return legs_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int valuation() const;

  /// Offset of a leg's exponents inside the concatenated exponent vector.
  size_t offset(int leg) const;
  size_t width() const { return offset(legs()); }

  void add_term(const Exponents &e, const Series &c);
  /// Overwrites a coefficient (used to build deliberately broken inputs).
  void set_term(const Exponents &e, const Series &c);

  SymbolicTensor operator-() const;
  SymbolicTensor &operator+=(const SymbolicTensor &o);
  SymbolicTensor &operator-=(const SymbolicTensor &o);
  friend SymbolicTensor operator+(SymbolicTensor a, const SymbolicTensor &b) { return a += b; }
  friend SymbolicTensor operator-(SymbolicTensor a, const SymbolicTensor &b) { return a -= b; }
  friend SymbolicTensor operator*(const SymbolicTensor &a, const SymbolicTensor &b);
  friend SymbolicTensor operator*(const Series &s, const SymbolicTensor &a);
  friend bool operator==(const SymbolicTensor &a, const SymbolicTensor &b);

  /// exp of an element with positive a-valuation.
  SymbolicTensor exp() const;
  /// Inverse of 1 + X with X of positive a-valuation.
  SymbolicTensor invert() const;

  /// Coproduct on one leg: the leg splits into two copies of its alphabet.
  SymbolicTensor delta(int leg) const;
  /// Antipode on one leg.
  SymbolicTensor antipode(int leg) const;
  /// Counit on one leg: the leg disappears.
  SymbolicTensor counit(int leg) const;
  /// Inserts a leg carrying the unit at the given position.
  SymbolicTensor insert_unit_leg(int pos) const;
  /// Reorders legs: new leg j is old leg perm[j].
  SymbolicTensor permute(const std::vector<int> &perm) const;

  /// Operator image of a single-leg tensor.
  DiffOp materialize1() const;
  Tensor2 materialize2() const;
  Tensor3 materialize3() const;
  /// Image of the product of the legs of a two-leg tensor.
  DiffOp multiply_legs() const;

  std::string str() const;

private:
  void require_compatible(const SymbolicTensor &o) const;
  /// Operator image of a leg's monomial, memoized in cache.
  const DiffOp &leg_power(int leg, const Exponents &e,
                          std::map<Exponents, DiffOp> &cache) const;
  template <int K> Tensor<K> materialize() const;

  int dim_;
  int order_;
  std::vector<Alphabet> legs_;
  Terms terms_;
};

} // namespace kforge
