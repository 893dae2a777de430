#include <gtest/gtest.h>

#include "kforge/errors.hpp"
#include "kforge/twist.hpp"
#include "test_support.hpp"

using namespace kforge;
using namespace kforge::testing;

namespace {

std::vector<TwistSpec> grid(int order, int dim = 4) {
  std::vector<TwistSpec> out;
  for (int r : {-1, 1, 2, 3})
    out.push_back(TwistSpec::jordanian(Rational(r), dim, order));
  for (Rational s : {Rational(0), Rational(1, 2), Rational(1)})
    out.push_back(TwistSpec::abelian(s, dim, order));
  return out;
}

Series unit(int order) { return Series::constant(order, GaussRat(1)); }

GaussRat i_times(const Rational &q) { return GaussRat::i() * GaussRat(q); }

Poly var(const TwistSpec &s, int mu) { return Poly::variable(s.dim, s.order, mu); }

// (1 + t)^beta as a series in A = i a d0, scaled by t
DiffOp binom_A(const Generators &g, const Rational &scale, const Rational &beta) {
  Series u = Series::monomial(g.order(), 1, GaussRat(scale));
  return g.of_A(binom_pow(unit(g.order()) + u, beta));
}

DiffOp exp_A(const Generators &g, const Rational &scale) {
  return g.of_A(exp_series(Series::monomial(g.order(), 1, GaussRat(scale))));
}

} // namespace

TEST(TwistSpec, Validation) {
  EXPECT_THROW(TwistSpec::jordanian(Rational(0)), InvalidSpec);
  EXPECT_THROW(TwistSpec::abelian(Rational(1), 1), InvalidSpec);
  EXPECT_NO_THROW(TwistSpec::abelian(Rational(0)));
  EXPECT_EQ(TwistSpec::abelian(Rational(1, 2)).label(), "abelian s=1/2");
  EXPECT_EQ(TwistSpec::jordanian(Rational(-1)).label(), "jordanian r=-1");
}

TEST(Twist, JordanianFirstOrderTerm) {
  // J_{-1} (x) sigma_{-1} = (-L) (x) (-i a d0) to first order
  TwistSpec spec = TwistSpec::jordanian(Rational(-1), 4, 3);
  Twist t(spec);
  const Generators &g = t.gens();
  Tensor2 expected = tensor(g.trace(), g.P(0)) * GaussRat::i();
  EXPECT_EQ(t.tensor().a_coefficient(1), expected.a_coefficient(0));
}

TEST(Twist, AbelianFirstOrderTerm) {
  for (Rational s : {Rational(0), Rational(1, 2), Rational(1), Rational(-3, 5)}) {
    Twist t(TwistSpec::abelian(s, 4, 2));
    const Generators &g = t.gens();
    Tensor2 expected = tensor(g.P(0), g.D()) * -i_times(s) +
                       tensor(g.D(), g.P(0)) * i_times(Rational(1) - s);
    EXPECT_EQ(t.tensor().a_coefficient(1), expected.a_coefficient(0)) << s.str();
  }
}

TEST(Twist, ClassicalLimitIsUnit) {
  for (const auto &spec : grid(0)) {
    Twist t(spec);
    EXPECT_EQ(t.tensor(), Tensor2::one(4, 0));
    EXPECT_EQ(t.inverse(), Tensor2::one(4, 0));
  }
}

TEST(Twist, InverseMatchesTensorInverse) {
  for (const auto &spec : grid(3, 3)) {
    Twist t(spec);
    EXPECT_EQ(t.inverse(), tensor_invert(t.tensor())) << spec.label();
    EXPECT_EQ(t.tensor() * t.inverse(), Tensor2::one(3, 3));
  }
}

TEST(Cocycle, JordanianMinusOneOrderFour) {
  CocycleReport rep = verify_cocycle(Twist(TwistSpec::jordanian(Rational(-1), 4, 4)));
  EXPECT_TRUE(rep.pass);
  EXPECT_TRUE(rep.normalized);
  EXPECT_EQ(rep.first_failure, -1);
}

TEST(Cocycle, AbelianHalfOrderFour) {
  CocycleReport rep = verify_cocycle(Twist(TwistSpec::abelian(Rational(1, 2), 4, 4)));
  EXPECT_TRUE(rep.pass);
  EXPECT_EQ(rep.first_failure, -1);
}

TEST(Cocycle, WholeGridOrderThree) {
  for (const auto &spec : grid(3, 3))
    EXPECT_TRUE(verify_cocycle(Twist(spec)).pass) << spec.label();
}

TEST(Cocycle, CorruptedTwistFailsAtOrderTwo) {
  for (const auto &spec : {TwistSpec::jordanian(Rational(-1), 4, 4),
                           TwistSpec::abelian(Rational(1, 2), 4, 4),
                           TwistSpec::jordanian(Rational(2), 3, 3)}) {
    CocycleReport rep = verify_cocycle(corrupted_twist(spec));
    EXPECT_FALSE(rep.pass) << spec.label();
    EXPECT_EQ(rep.first_failure, 2) << spec.label();
    EXPECT_TRUE(rep.normalized) << spec.label();
  }
}

TEST(StarProduct, AbelianCoordinates) {
  // F^{-1} = 1 + i a (s d0 (x) D - (1-s) D (x) d0) + ...; on x0 (x) x1 only
  // the first-order s-term survives.
  for (Rational s : {Rational(0), Rational(1, 2), Rational(1), Rational(2, 7)}) {
    TwistSpec spec = TwistSpec::abelian(s, 4, 4);
    Twist t(spec);
    Poly x0 = var(spec, 0), x1 = var(spec, 1);
    Poly expected = x0 * x1 + Series::monomial(4, 1, i_times(s)) * x1;
    EXPECT_EQ(star_product(t, x0, x1), expected) << s.str();
  }
  Twist half(TwistSpec::abelian(Rational(1, 2), 4, 6));
  EXPECT_EQ(star_product(half, var(half.spec(), 0), var(half.spec(), 1)).str(),
            "x0*x1 + 1/2*i*a*x1");
}

TEST(StarProduct, KappaMinkowskiCommutator) {
  for (const auto &spec : grid(4)) {
    Twist t(spec);
    for (int m = 1; m < 4; ++m) {
      Poly xm = var(spec, m);
      EXPECT_EQ(star_commutator(t, 0, xm), Series::monomial(4, 1, GaussRat::i()) * xm)
          << spec.label();
    }
  }
}

TEST(StarProduct, UnitAndClassicalLimit) {
  std::mt19937 rng(21);
  for (const auto &spec : grid(3, 3)) {
    Twist t(spec);
    Poly f = random_poly(rng, 3, 3, 3), g = random_poly(rng, 3, 3, 3);
    Poly one = Poly::constant(3, unit(3));
    EXPECT_EQ(star_product(t, f, one), f);
    EXPECT_EQ(star_product(t, one, f), f);
    Twist t0(TwistSpec{spec.family, spec.param, 3, 0});
    Poly f0(3, 0), g0(3, 0);
    for (const auto &[k, c] : f.terms())
      f0.add_term(k, c.with_order(0));
    for (const auto &[k, c] : g.terms())
      g0.add_term(k, c.with_order(0));
    EXPECT_EQ(star_product(t0, f0, g0), f0 * g0);
  }
}

TEST(StarProduct, Associative) {
  std::mt19937 rng(22);
  for (const auto &spec : grid(4, 3)) {
    Twist t(spec);
    for (int trial = 0; trial < 2; ++trial) {
      Poly f = random_poly(rng, 3, 4, 3), g = random_poly(rng, 3, 4, 3),
           h = random_poly(rng, 3, 4, 3);
      EXPECT_EQ(star_product(t, star_product(t, f, g), h),
                star_product(t, f, star_product(t, g, h)))
          << spec.label();
    }
  }
}

TEST(StarProduct, DimensionMismatchThrows) {
  Twist t(TwistSpec::abelian(Rational(0), 4, 2));
  EXPECT_THROW(star_product(t, Poly::variable(3, 2, 0), Poly::variable(4, 2, 0)),
               DimMismatch);
}

TEST(Theta, KappaMinkowskiForWholeGrid) {
  for (const auto &spec : grid(6)) {
    StarAlgebraReport rep = extract_theta(Twist(spec));
    EXPECT_TRUE(rep.is_kappa_minkowski()) << spec.label();
    EXPECT_TRUE(rep.is_antisymmetric()) << spec.label();
  }
}

TEST(Theta, OrderZeroIsCommutative) {
  StarAlgebraReport rep = extract_theta(Twist(TwistSpec::jordanian(Rational(3), 4, 0)));
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      auto a = static_cast<size_t>(mu), b = static_cast<size_t>(nu);
      EXPECT_TRUE(rep.theta_const[a][b].is_zero());
      EXPECT_TRUE(rep.residual[a][b].is_zero());
      for (int l = 0; l < 4; ++l)
        EXPECT_TRUE(rep.theta_lin[a][b][static_cast<size_t>(l)].is_zero());
    }
}

TEST(Theta, TracialObstructionForJordanianMinusOne) {
  // [x^mu, f] = d_nu(i theta^{mu nu}_l x^l f) - i theta^{mu nu}_nu f with
  // theta^{0m}_m = a, theta^{m0}_m = -a.
  const int n = 4, N = 4;
  TwistSpec spec = TwistSpec::jordanian(Rational(-1), n, N);
  Twist t(spec);
  std::mt19937 rng(23);
  const Series ia = Series::monomial(N, 1, GaussRat::i());
  for (int trial = 0; trial < 3; ++trial) {
    Poly f = random_poly(rng, n, N, 3);
    // mu = 0
    DiffOp rhs0(n, N);
    for (int m = 1; m < n; ++m)
      rhs0 += t.gens().d(m) * t.gens().x(m);
    Poly expected0 = ia * apply(rhs0, f) - Series::monomial(N, 1, i_times(Rational(n - 1))) * f;
    EXPECT_EQ(star_commutator(t, 0, f), expected0);
    for (int m = 1; m < n; ++m) {
      Poly expected = -(ia * apply(t.gens().d(0) * t.gens().x(m), f));
      EXPECT_EQ(star_commutator(t, m, f), expected);
    }
  }
}

TEST(RMatrix, RawTensors) {
  Twist jt(TwistSpec::jordanian(Rational(-1), 4, 3));
  const Generators &g = jt.gens();
  // r = i(P0 (x) L - L (x) P0)
  Tensor2 rj = (tensor(g.P(0), g.trace()) - tensor(g.trace(), g.P(0))) * GaussRat::i();
  EXPECT_EQ(r_matrix(jt), rj.a_coefficient(0));
  Tensor2 ra = (tensor(g.P(0), g.D()) - tensor(g.D(), g.P(0))) * GaussRat::i();
  for (Rational s : {Rational(0), Rational(1, 2), Rational(1)})
    EXPECT_EQ(r_matrix(Twist(TwistSpec::abelian(s, 4, 3))), ra.a_coefficient(0));
}

TEST(RMatrix, SameBivectorForEverySpec) {
  auto reference = poisson_bivector(r_matrix(Twist(TwistSpec::abelian(Rational(1, 2), 4, 2))));
  for (int k = 1; k < 4; ++k)
    EXPECT_EQ(reference[0][static_cast<size_t>(k)],
              Series::constant(0, GaussRat::i()) * Poly::variable(4, 0, k));
  for (const auto &spec : grid(2)) {
    auto pi = poisson_bivector(r_matrix(Twist(spec)));
    EXPECT_EQ(pi, reference) << spec.label();
  }
}

TEST(RMatrix, FlippedTwistNegates) {
  for (Rational s : {Rational(0), Rational(1, 3)}) {
    TwistSpec spec = TwistSpec::abelian(s, 3, 3);
    Twist t(spec);
    Twist flipped(spec, t.symbolic().permute({1, 0}));
    EXPECT_EQ(r_matrix(flipped), -r_matrix(t));
  }
}

TEST(Realization, JordanianClosedForms) {
  for (int r : {-1, 1, 2, 3}) {
    TwistSpec spec = TwistSpec::jordanian(Rational(r), 4, 5);
    Twist t(spec);
    const Generators &g = t.gens();
    DiffOp oneplus = g.one() + Rational(r) * g.A();
    EXPECT_EQ(coordinate_realization(t, 0, Side::Left), g.x(0) * oneplus);
    EXPECT_EQ(coordinate_realization(t, 0, Side::Right),
              g.x(0) * oneplus - Series::monomial(5, 1, GaussRat::i()) * g.D());
    for (int i = 1; i < 4; ++i) {
      EXPECT_EQ(coordinate_realization(t, i, Side::Left),
                g.x(i) * binom_A(g, Rational(r), Rational(-1) / Rational(r)))
          << r;
      EXPECT_EQ(coordinate_realization(t, i, Side::Right), g.x(i));
    }
  }
}

TEST(Realization, AbelianClosedForms) {
  for (Rational s : {Rational(0), Rational(1, 2), Rational(1)}) {
    TwistSpec spec = TwistSpec::abelian(s, 4, 5);
    Twist t(spec);
    const Generators &g = t.gens();
    EXPECT_EQ(coordinate_realization(t, 0, Side::Left),
              g.x(0) + Series::monomial(5, 1, i_times(s)) * g.D());
    EXPECT_EQ(coordinate_realization(t, 0, Side::Right),
              g.x(0) + Series::monomial(5, 1, i_times(s - Rational(1))) * g.D());
    for (int i = 1; i < 4; ++i) {
      EXPECT_EQ(coordinate_realization(t, i, Side::Left), g.x(i) * exp_A(g, s - Rational(1)));
      EXPECT_EQ(coordinate_realization(t, i, Side::Right), g.x(i) * exp_A(g, s));
    }
  }
}

TEST(Realization, MatchingReproducesDirectForm) {
  for (const auto &spec : {TwistSpec::jordanian(Rational(2), 3, 3),
                           TwistSpec::abelian(Rational(1, 2), 3, 3),
                           TwistSpec::jordanian(Rational(-1), 3, 3)}) {
    Twist t(spec);
    for (int mu = 0; mu < 3; ++mu)
      for (Side side : {Side::Left, Side::Right})
        EXPECT_EQ(realization_by_matching(t, mu, side, 2 * spec.order),
                  coordinate_realization(t, mu, side))
            << spec.label() << " mu=" << mu;
  }
}

TEST(Realization, ClassicalLimit) {
  for (const auto &spec : grid(0)) {
    Twist t(spec);
    for (int mu = 0; mu < 4; ++mu) {
      EXPECT_EQ(coordinate_realization(t, mu, Side::Left), t.gens().x(mu));
      EXPECT_EQ(coordinate_realization(t, mu, Side::Right), t.gens().x(mu));
    }
  }
}

TEST(Realization, OperatorAlgebra) {
  for (const auto &spec : grid(4)) {
    Twist t(spec);
    const Series ia = Series::monomial(4, 1, GaussRat::i());
    std::vector<DiffOp> L, R;
    for (int mu = 0; mu < 4; ++mu) {
      L.push_back(coordinate_realization(t, mu, Side::Left));
      R.push_back(coordinate_realization(t, mu, Side::Right));
    }
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) {
        auto a = static_cast<size_t>(mu), b = static_cast<size_t>(nu);
        EXPECT_TRUE(commutator(L[a], R[b]).is_zero()) << spec.label();
        DiffOp thl(4, 4), thr(4, 4);
        if (mu == 0 && nu > 0) {
          thl = ia * L[b];
          thr = ia * R[b];
        } else if (nu == 0 && mu > 0) {
          thl = -(ia * L[a]);
          thr = -(ia * R[a]);
        }
        EXPECT_EQ(commutator(L[a], L[b]), thl) << spec.label();
        EXPECT_EQ(commutator(R[a], R[b]), -thr) << spec.label();
      }
  }
}
