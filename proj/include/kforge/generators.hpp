#pragma once

#include <string>
#include <vector>

#include "kforge/weyl.hpp"

namespace kforge {

/// Schwinger realization of igl(n) and the named elements built from it.
/// Index 0 is the time direction; k = 1..n-1 are spatial.
class Generators {
public:
  Generators(int dim, int order);

  int dim() const { return dim_; }
  int order() const { return order_; }

  DiffOp one() const { return DiffOp::one(dim_, order_); }
  DiffOp scalar(const GaussRat &c) const { return DiffOp::scalar(dim_, order_, c); }
  DiffOp x(int mu) const { return DiffOp::x(dim_, order_, mu); }
  DiffOp d(int mu) const { return DiffOp::d(dim_, order_, mu); }

  /// L^mu_nu = x^mu d_nu.
  DiffOp L(int mu, int nu) const;
  /// P_mu = d_mu.
  DiffOp P(int mu) const { return d(mu); }
  /// Trace L = sum_mu L^mu_mu.
  DiffOp trace() const;
  /// Traceless diagonal L_mu = L^mu_mu - L/n.
  DiffOp traceless(int mu) const;
  /// Spatial dilatation D = x^k d_k.
  DiffOp D() const;
  /// J_r = -x^0 d_0 + (1/r) x^k d_k.
  DiffOp J(const Rational &r) const;
  /// M_{mu nu} = g_{mu l} L^l_nu - g_{nu l} L^l_mu for a diagonal metric.
  DiffOp M(const std::vector<int> &metric, int mu, int nu) const;
  /// Spatial Laplacian sum_k d_k d_k.
  DiffOp laplacian() const;
  /// f(A) with A = i a d0.
  DiffOp of_A(const Series &f) const { return DiffOp::of_A(dim_, f); }
  /// A itself.
  DiffOp A() const;

  /// Every igl(n) basis element: the n^2 L^mu_nu followed by the n P_mu.
  std::vector<std::pair<std::string, DiffOp>> igl_basis() const;

  /// Looks up "P<mu>", "L<mu><nu>" (= x^mu d_nu), "D", "L", "T<mu>"
  /// (traceless diagonal). Throws UnknownGenerator.
  DiffOp by_name(const std::string &name) const;

private:
  int dim_;
  int order_;
};

/// Lorentzian metric diag(-1, 1, ..., 1) of the given dimension.
std::vector<int> lorentzian_metric(int dim);
/// Euclidean metric diag(1, ..., 1).
std::vector<int> euclidean_metric(int dim);

} // namespace kforge
