#include "kforge/generators.hpp"

#include <cctype>

#include "kforge/errors.hpp"

namespace kforge {

Generators::Generators(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 2 || dim > kMaxDim)
    throw InvalidSpec("dimension must be in 2.." + std::to_string(kMaxDim));
  if (order < 0)
    throw InvalidSpec("negative truncation order");
}

DiffOp Generators::L(int mu, int nu) const { return x(mu) * d(nu); }

DiffOp Generators::trace() const {
  DiffOp r(dim_, order_);
  for (int mu = 0; mu < dim_; ++mu)
    r += L(mu, mu);
  return r;
}

DiffOp Generators::traceless(int mu) const {
  return L(mu, mu) - trace() * GaussRat(Rational(1, dim_));
}

DiffOp Generators::D() const {
  DiffOp r(dim_, order_);
  for (int k = 1; k < dim_; ++k)
    r += L(k, k);
  return r;
}

DiffOp Generators::J(const Rational &r) const {
  if (r.is_zero())
    throw InvalidSpec("Jordanian parameter r must be nonzero");
  return -L(0, 0) + D() * GaussRat(r.inverse());
}

DiffOp Generators::M(const std::vector<int> &metric, int mu, int nu) const {
  if (static_cast<int>(metric.size()) != dim_)
    throw DimMismatch("metric size");
  return L(mu, nu) * GaussRat(metric[static_cast<size_t>(mu)]) -
         L(nu, mu) * GaussRat(metric[static_cast<size_t>(nu)]);
}

DiffOp Generators::laplacian() const {
  DiffOp r(dim_, order_);
  for (int k = 1; k < dim_; ++k)
    r += d(k) * d(k);
  return r;
}

DiffOp Generators::A() const {
  return of_A(Series::monomial(order_, 1));
}

std::vector<std::pair<std::string, DiffOp>> Generators::igl_basis() const {
  std::vector<std::pair<std::string, DiffOp>> out;
  for (int mu = 0; mu < dim_; ++mu)
    for (int nu = 0; nu < dim_; ++nu)
      out.emplace_back("L" + std::to_string(mu) + std::to_string(nu), L(mu, nu));
  for (int mu = 0; mu < dim_; ++mu)
    out.emplace_back("P" + std::to_string(mu), P(mu));
  return out;
}

DiffOp Generators::by_name(const std::string &name) const {
  auto index = [&](char c) {
    if (!std::isdigit(static_cast<unsigned char>(c)) || c - '0' >= dim_)
      throw UnknownGenerator("'" + name + "'");
    return c - '0';
  };
  if (name == "D")
    return D();
  if (name == "L")
    return trace();
  if (name.size() == 2 && name[0] == 'P')
    return P(index(name[1]));
  if (name.size() == 2 && name[0] == 'T')
    return traceless(index(name[1]));
  if (name.size() == 3 && name[0] == 'L')
    return L(index(name[1]), index(name[2]));
  throw UnknownGenerator("'" + name + "'");
}

std::vector<int> lorentzian_metric(int dim) {
  std::vector<int> g(static_cast<size_t>(dim), 1);
  g[0] = -1;
  return g;
}

std::vector<int> euclidean_metric(int dim) {
  return std::vector<int>(static_cast<size_t>(dim), 1);
}

} // namespace kforge
