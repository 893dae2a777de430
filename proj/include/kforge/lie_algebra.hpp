#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kforge/rational.hpp"

namespace kforge {

using Vec = std::vector<GaussRat>;

/// Finite-dimensional Lie algebra given by structure constants
/// [e_i, e_j] = sum_k c[i][j][k] e_k.
class LieAlgebra {
public:
  LieAlgebra(std::vector<std::string> labels);

  size_t dim() const { return labels_.size(); }
  const std::vector<std::string> &labels() const { return labels_; }
  size_t index(const std::string &label) const;

  void set_bracket(size_t i, size_t j, const Vec &v);
  const Vec &bracket(size_t i, size_t j) const { return c_[i][j]; }
  Vec bracket(const Vec &x, const Vec &y) const;
  Vec basis_vector(size_t i) const;

  bool is_antisymmetric() const;
  /// Number of basis triples violating the Jacobi identity.
  int jacobi_failures() const;

private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Vec>> c_;
};

/// The algebra of M_{mu nu} (mu < nu) and x_mu (lowered index) defined by
/// the coordinate, Lorentz and Lorentz-coordinate brackets in Lorentzian
/// signature, with a frozen to a value.
LieAlgebra kappa_lorentz_algebra(int n, int tau, const Rational &a);
/// so(p, q) on J_{AB} (A < B) for a diagonal metric.
LieAlgebra orthogonal_algebra(const std::vector<int> &metric);

struct IsomorphismReport {
  int n = 0;
  int tau = 1;
  Rational a;
  bool antisymmetric = false;
  int jacobi_failures = 0;
  int target_jacobi_failures = 0;
  /// x_i -> alpha J_{0i} + beta J_{in}, solved from the brackets.
  std::optional<GaussRat> alpha, beta;
  bool bijective = false;
  int bracket_checks = 0;
  int bracket_failures = 0;
  /// Whether beta = -alpha, the relative sign of M_{0i} - M_{in}.
  bool printed_relative_sign = false;
  bool pass() const;
};

/// Maps M_{mu nu} -> J_{mu nu}, x_0 -> i a tau J_{0n} and x_i -> alpha J_{0i} +
/// beta J_{in} into so(n, 1) with metric diag(-1, 1, ..., 1) on 0..n and
/// checks that the map is a Lie algebra isomorphism.
IsomorphismReport check_so_n1_isomorphism(int n, int tau, const Rational &a = Rational(1));
/// The same checks for fixed constants alpha, beta.
IsomorphismReport check_substitution(int n, int tau, const Rational &a, const GaussRat &alpha,
                                     const GaussRat &beta);

/// Solves the linear system sum_j cols[j] * t_j = rhs exactly.
std::optional<Vec> solve_linear(const std::vector<Vec> &cols, const Vec &rhs);
/// Rank of the matrix with the given columns.
int rank(const std::vector<Vec> &cols);

} // namespace kforge
