#pragma once

#include <string>
#include <vector>

#include "kforge/generators.hpp"
#include "kforge/symbolic.hpp"

namespace kforge {

enum class Family { Jordanian, Abelian };

struct TwistSpec {
  Family family = Family::Jordanian;
  Rational param = Rational(-1); // r for Jordanian, s for Abelian
  int dim = 4;
  int order = kDefaultOrder;

  static TwistSpec jordanian(Rational r, int dim = 4, int order = kDefaultOrder);
  static TwistSpec abelian(Rational s, int dim = 4, int order = kDefaultOrder);

  /// Throws InvalidSpec for r = 0, n < 2 or a negative order.
  void validate() const;
  /// "jordanian r=-1" / "abelian s=1/2".
  std::string label() const;
  std::string family_name() const;
};

/// A twist exp(Z) held both symbolically (per-leg commuting alphabets) and
/// as a materialized two-leg operator tensor, together with its inverse.
class Twist {
public:
  explicit Twist(const TwistSpec &spec);
  /// Wraps an arbitrary symbolic element (used for negative controls).
  Twist(const TwistSpec &spec, SymbolicTensor f);

  const TwistSpec &spec() const { return spec_; }
  const Generators &gens() const { return gens_; }
  /// The exponent Z with F = exp(Z).
  const SymbolicTensor &exponent() const { return z_; }
  const SymbolicTensor &symbolic() const { return f_; }
  const SymbolicTensor &symbolic_inverse() const { return finv_; }
  const Tensor2 &tensor() const { return ft_; }
  const Tensor2 &inverse() const { return finvt_; }

private:
  TwistSpec spec_;
  Generators gens_;
  SymbolicTensor z_, f_, finv_;
  Tensor2 ft_, finvt_;
};

/// The exponent of the twist for a spec: J_r (x) sigma_r or
/// -ia(s d0 (x) D - (1-s) D (x) d0).
SymbolicTensor twist_exponent(const TwistSpec &spec, const Generators &g);

/// Copy of the twist with the sign of one a^2 coefficient flipped.
Twist corrupted_twist(const TwistSpec &spec);

struct CocycleReport {
  bool pass = false;
  /// Lowest a-order at which the two sides differ, -1 if none.
  int first_failure = -1;
  bool normalized = false;
};

/// F12 (Delta x id)F == F23 (id x Delta)F through the truncation order,
/// plus (eps x id)F = 1 = (id x eps)F.
CocycleReport verify_cocycle(const Twist &t);
/// The two sides of the cocycle condition.
std::pair<Tensor3, Tensor3> cocycle_sides(const Twist &t);

/// f * g = mu o F^{-1}(f (x) g).
Poly star_product(const Twist &t, const Poly &f, const Poly &g);
/// [x^mu, f]_* = x^mu * f - f * x^mu.
Poly star_commutator(const Twist &t, int mu, const Poly &f);

struct StarAlgebraReport {
  int dim = 0;
  int order = 0;
  /// theta_const[mu][nu] with [x^mu, x^nu]_* = i theta + i theta_l x^l + ...
  std::vector<std::vector<Series>> theta_const;
  /// theta_lin[mu][nu][lambda].
  std::vector<std::vector<std::vector<Series>>> theta_lin;
  /// Terms of degree two and higher, per pair.
  std::vector<std::vector<Poly>> residual;

  /// theta_lin^{0m}_m = a (and its antisymmetric partner), everything else
  /// zero.
  bool is_kappa_minkowski() const;
  bool is_antisymmetric() const;
};

StarAlgebraReport extract_theta(const Twist &t);

/// Order-a coefficient of F21 F^{-1} - 1 (x) 1, at order 0.
Tensor2 r_matrix(const Twist &t);
/// pi^{mu nu}(x) = sum (l x^mu)(r x^nu) for a tensor of vector fields.
std::vector<std::vector<Poly>> poisson_bivector(const Tensor2 &r);

enum class Side { Left, Right };

/// Operator implementing x^mu * (.) (left) or (.) * x^mu (right), read off
/// directly from the inverse twist.
DiffOp coordinate_realization(const Twist &t, int mu, Side side);
/// The same operator reconstructed only from star products with monomials
/// up to the given degree, solving the triangular action system.
DiffOp realization_by_matching(const Twist &t, int mu, Side side, int max_degree);

} // namespace kforge
