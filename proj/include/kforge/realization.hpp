#pragma once

#include <string>
#include <vector>

#include "kforge/generators.hpp"
#include "kforge/twist.hpp"

namespace kforge {

/// Parameters of the ansatz x^i = x^i phi(A), x^0 = x^0 psi(A) + i a D gamma.
/// psi is a series in A; its coefficients beyond the order are taken as zero.
struct RealizationSpec {
  Series psi = Series::constant(kDefaultOrder, GaussRat(1));
  Rational gamma;
  int tau = 1;
  /// eta_00; -1 is Lorentzian, +1 Euclidean.
  int epsilon = -1;
  int dim = 4;

  int order() const { return psi.order(); }

  /// psi = 1 + r A.
  static RealizationSpec linear(const Rational &r, const Rational &gamma, int tau, int dim = 4,
                                int order = kDefaultOrder, int epsilon = -1);
  /// Throws NonUnitPsiConstantTerm or InvalidSpec.
  void validate() const;
  std::string label() const;
};

/// Spec reproducing the left or right realization of a twist.
RealizationSpec realization_spec_for(const TwistSpec &t, Side side);

struct DerivedFunctions {
  Series Psi, phi;
  Series F1, F2, F3, F4;
  Series G1, G2, G3;
  Series H1, H2;
};

/// Psi = exp(int dA / psi), from the closed forms when psi is 1 or 1 + rA.
Series psi_exponential(const RealizationSpec &s);
/// The same series by term-by-term integration of 1/psi, for any psi.
Series psi_exponential_general(const RealizationSpec &s);

DerivedFunctions derive_functions(const RealizationSpec &s);

/// Operators of the extended algebra. Indices are lowered with
/// eta = diag(epsilon, 1, ..., 1) where the name says so.
struct RealizationOps {
  std::vector<DiffOp> x_up;
  std::vector<DiffOp> x_low;
  /// M[mu][nu], antisymmetric.
  std::vector<std::vector<DiffOp>> M;
  std::vector<DiffOp> D;
  DiffOp box;
  /// Spatial Laplacian.
  DiffOp laplacian;
};

RealizationOps build_generators(const RealizationSpec &s);

struct IdentityResult {
  std::string id;
  bool pass = false;
  /// Lowest order at which the two sides differ, -1 if none.
  int first_failure = -1;
};

struct IdentityReport {
  std::string spec;
  std::vector<IdentityResult> results;
  bool pass() const;
};

/// Coordinate brackets, Lorentz covariance of x, D and box, the Dirac
/// derivative relations and the Casimir identity, as operator identities.
IdentityReport verify_extended_algebra(const RealizationSpec &s);
/// The ODEs for phi, F1, F3 and the Dirac derivative system (Lorentzian only)
/// together with the closed-form relations between the functions, through
/// order N-1.
IdentityReport verify_ode_systems(const RealizationSpec &s);

/// psi' + (n-1) gamma = 0.
bool check_hermiticity(const RealizationSpec &s);
/// x^0 equal to its formal adjoint.
bool x0_is_self_adjoint(const RealizationSpec &s);
/// Membership in the published list: (psi = 1, gamma = 0) or
/// (psi = 1 +- (n-1) A, gamma = -+1).
bool listed_hermitian_case(const RealizationSpec &s);

/// Compares build_generators' x^mu with the twist's coordinate realization.
IdentityReport cross_check_twist(const TwistSpec &t, Side side);

} // namespace kforge
