#include "kforge/twist.hpp"

#include <algorithm>

#include "kforge/errors.hpp"

namespace kforge {

TwistSpec TwistSpec::jordanian(Rational r, int dim, int order) {
  TwistSpec s{Family::Jordanian, std::move(r), dim, order};
  s.validate();
  return s;
}

TwistSpec TwistSpec::abelian(Rational s, int dim, int order) {
  TwistSpec t{Family::Abelian, std::move(s), dim, order};
  t.validate();
  return t;
}

void TwistSpec::validate() const {
  if (family == Family::Jordanian && param.is_zero())
    throw InvalidSpec("Jordanian parameter r must be nonzero");
  if (dim < 2 || dim > kMaxDim)
    throw InvalidSpec("dimension must be in 2.." + std::to_string(kMaxDim));
  if (order < 0)
    throw InvalidSpec("negative truncation order");
}

std::string TwistSpec::family_name() const {
  return family == Family::Jordanian ? "jordanian" : "abelian";
}

std::string TwistSpec::label() const {
  return family_name() + (family == Family::Jordanian ? " r=" : " s=") +
         param.str();
}

SymbolicTensor twist_exponent(const TwistSpec &spec, const Generators &g) {
  const int n = spec.order;
  const GaussRat i = GaussRat::i();
  if (spec.family == Family::Jordanian) {
    Alphabet left{{"J", g.J(spec.param)}}, right{{"P0", g.P(0)}};
    SymbolicTensor z(spec.dim, n, {left, right});
    // sigma_r = log(1 + i a r P0) = sum_m (-1)^{m+1} (i r)^m a^m P0^m / m
    GaussRat ir = i * GaussRat(spec.param), p(1);
    for (int m = 1; m <= n; ++m) {
      p = p * ir;
      GaussRat c = p * GaussRat(Rational(m % 2 ? 1 : -1, m));
      z.add_term({1, static_cast<uint8_t>(m)}, Series::monomial(n, m, c));
    }
    return z;
  }
  Alphabet both{{"P0", g.P(0)}, {"D", g.D()}};
  SymbolicTensor z(spec.dim, n, {both, both});
  const Rational &s = spec.param;
  // -i a s P0 (x) D + i a (1-s) D (x) P0
  z.add_term({1, 0, 0, 1}, Series::monomial(n, 1, -(i * GaussRat(s))));
  z.add_term({0, 1, 1, 0}, Series::monomial(n, 1, i * GaussRat(Rational(1) - s)));
  return z;
}

Twist::Twist(const TwistSpec &spec)
    : Twist(spec, twist_exponent(spec, Generators(spec.dim, spec.order)).exp()) {
  z_ = twist_exponent(spec, gens_);
}

Twist::Twist(const TwistSpec &spec, SymbolicTensor f)
    : spec_(spec), gens_(spec.dim, spec.order), z_(f - f), f_(std::move(f)),
      finv_(f_.invert()), ft_(f_.materialize2()), finvt_(finv_.materialize2()) {
  spec_.validate();
}

Twist corrupted_twist(const TwistSpec &spec) {
  Twist base(spec);
  SymbolicTensor f = base.symbolic();
  const SymbolicTensor::Exponents *target = nullptr;
  for (const auto &[e, c] : f.terms())
    if (c.order() >= 2 && !c[2].is_zero())
      target = &e;
  if (!target)
    throw InvalidSpec("twist has no a^2 coefficient to corrupt");
  SymbolicTensor::Exponents key = *target;
  Series c = f.terms().at(key);
  c.set(2, -c[2]);
  f.set_term(key, c);
  return Twist(spec, f);
}

std::pair<Tensor3, Tensor3> cocycle_sides(const Twist &t) {
  const SymbolicTensor &f = t.symbolic();
  Tensor3 lhs = embed12(t.tensor()) * f.delta(0).materialize3();
  Tensor3 rhs = embed23(t.tensor()) * f.delta(1).materialize3();
  return {std::move(lhs), std::move(rhs)};
}

CocycleReport verify_cocycle(const Twist &t) {
  CocycleReport rep;
  auto [lhs, rhs] = cocycle_sides(t);
  rep.first_failure = first_difference_order(lhs, rhs);
  const SymbolicTensor &f = t.symbolic();
  SymbolicTensor e0 = f.counit(0), e1 = f.counit(1);
  rep.normalized = e0 == SymbolicTensor::one(f.dim(), f.order(), e0.alphabets()) &&
                   e1 == SymbolicTensor::one(f.dim(), f.order(), e1.alphabets());
  rep.pass = rep.first_failure < 0 && rep.normalized;
  return rep;
}

Poly star_product(const Twist &t, const Poly &f, const Poly &g) {
  return act_and_multiply(t.inverse(), f, g);
}

Poly star_commutator(const Twist &t, int mu, const Poly &f) {
  Poly x = Poly::variable(t.spec().dim, t.spec().order, mu);
  return star_product(t, x, f) - star_product(t, f, x);
}

StarAlgebraReport extract_theta(const Twist &t) {
  const int n = t.spec().dim, N = t.spec().order;
  StarAlgebraReport rep;
  rep.dim = n;
  rep.order = N;
  rep.theta_const.assign(static_cast<size_t>(n), std::vector<Series>(static_cast<size_t>(n), Series(N)));
  rep.theta_lin.assign(static_cast<size_t>(n),
                       std::vector<std::vector<Series>>(static_cast<size_t>(n),
                                                        std::vector<Series>(static_cast<size_t>(n), Series(N))));
  rep.residual.assign(static_cast<size_t>(n), std::vector<Poly>(static_cast<size_t>(n), Poly(n, N)));
  const GaussRat minus_i = -GaussRat::i();
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      Poly xm = Poly::variable(n, N, mu), xn = Poly::variable(n, N, nu);
      Poly c = star_product(t, xm, xn) - star_product(t, xn, xm);
      auto umu = static_cast<size_t>(mu), unu = static_cast<size_t>(nu);
      for (const auto &[idx, coeff] : c.terms()) {
        int deg = 0, which = -1;
        for (int l = 0; l < n; ++l) {
          deg += idx[static_cast<size_t>(l)];
          if (idx[static_cast<size_t>(l)])
            which = l;
        }
        if (deg == 0)
          rep.theta_const[umu][unu] = coeff * minus_i;
        else if (deg == 1)
          rep.theta_lin[umu][unu][static_cast<size_t>(which)] = coeff * minus_i;
        else
          rep.residual[umu][unu].add_term(idx, coeff);
      }
    }
  return rep;
}

bool StarAlgebraReport::is_kappa_minkowski() const {
  const Series zero(order), a = Series::monomial(order, 1);
  for (int mu = 0; mu < dim; ++mu)
    for (int nu = 0; nu < dim; ++nu) {
      auto umu = static_cast<size_t>(mu), unu = static_cast<size_t>(nu);
      if (!(theta_const[umu][unu] == zero) || !residual[umu][unu].is_zero())
        return false;
      for (int l = 0; l < dim; ++l) {
        Series expected = zero;
        if (mu == 0 && nu != 0 && l == nu)
          expected = a;
        if (nu == 0 && mu != 0 && l == mu)
          expected = -a;
        if (!(theta_lin[umu][unu][static_cast<size_t>(l)] == expected))
          return false;
      }
    }
  return true;
}

bool StarAlgebraReport::is_antisymmetric() const {
  for (int mu = 0; mu < dim; ++mu)
    for (int nu = 0; nu < dim; ++nu) {
      auto umu = static_cast<size_t>(mu), unu = static_cast<size_t>(nu);
      if (!(theta_const[umu][unu] == -theta_const[unu][umu]))
        return false;
      for (int l = 0; l < dim; ++l)
        if (!(theta_lin[umu][unu][static_cast<size_t>(l)] ==
              -theta_lin[unu][umu][static_cast<size_t>(l)]))
          return false;
    }
  return true;
}

Tensor2 r_matrix(const Twist &t) {
  Tensor2 R = flip(t.tensor()) * t.inverse();
  R -= Tensor2::one(R.dim(), R.order());
  return R.a_coefficient(1);
}

std::vector<std::vector<Poly>> poisson_bivector(const Tensor2 &r) {
  const int n = r.dim(), N = r.order();
  std::vector<std::vector<Poly>> pi(static_cast<size_t>(n),
                                    std::vector<Poly>(static_cast<size_t>(n), Poly(n, N)));
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu)
      pi[static_cast<size_t>(mu)][static_cast<size_t>(nu)] =
          act_and_multiply(r, Poly::variable(n, N, mu), Poly::variable(n, N, nu));
  return pi;
}

DiffOp coordinate_realization(const Twist &t, int mu, Side side) {
  const int n = t.spec().dim, N = t.spec().order;
  const Series one = Series::constant(N, GaussRat(1));
  Poly x = Poly::variable(n, N, mu);
  DiffOp out(n, N);
  for (const auto &[k, c] : t.inverse().terms()) {
    const Monomial &on_x = side == Side::Left ? k[0] : k[1];
    const Monomial &on_f = side == Side::Left ? k[1] : k[0];
    Poly px = apply(DiffOp::monomial(n, on_x, one), x);
    if (px.is_zero())
      continue;
    out += c * (multiplication_op(px) * DiffOp::monomial(n, on_f, one));
  }
  return out;
}

DiffOp realization_by_matching(const Twist &t, int mu, Side side, int max_degree) {
  const int n = t.spec().dim, N = t.spec().order;
  Poly x = Poly::variable(n, N, mu);
  // every multi-index of total degree <= max_degree, by increasing degree
  std::vector<MultiIndex> basis{MultiIndex{}};
  for (size_t start = 0; start < basis.size(); ++start) {
    MultiIndex b = basis[start];
    int deg = 0, last = 0;
    for (int l = 0; l < n; ++l) {
      deg += b[static_cast<size_t>(l)];
      if (b[static_cast<size_t>(l)])
        last = l;
    }
    if (deg == max_degree)
      continue;
    for (int l = last; l < n; ++l) {
      MultiIndex c = b;
      ++c[static_cast<size_t>(l)];
      basis.push_back(c);
    }
  }
  DiffOp q(n, N);
  for (const auto &gamma : basis) {
    Poly f(n, N);
    f.add_term(gamma, Series::constant(N, GaussRat(1)));
    Poly target = side == Side::Left ? star_product(t, x, f) : star_product(t, f, x);
    Poly rest = target - apply(q, f);
    Rational fact(1);
    Monomial dpart;
    for (int l = 0; l < n; ++l) {
      int g = gamma[static_cast<size_t>(l)];
      dpart.d(l) = static_cast<uint8_t>(g);
      for (int j = 2; j <= g; ++j)
        fact *= Rational(j);
    }
    const GaussRat inv(fact.inverse());
    for (const auto &[alpha, c] : rest.terms()) {
      Monomial m = dpart;
      for (int l = 0; l < n; ++l)
        m.x(l) = alpha[static_cast<size_t>(l)];
      q.add_term(m, c * inv);
    }
  }
  return q;
}

} // namespace kforge
