#include <gtest/gtest.h>

#include "kforge/errors.hpp"
#include "kforge/generators.hpp"
#include "kforge/symbolic.hpp"
#include "test_support.hpp"

using namespace kforge;
using namespace kforge::testing;

namespace {

Tensor2 random_tensor(std::mt19937 &rng, int dim, int order, int terms) {
  Tensor2 t(dim, order);
  for (int j = 0; j < terms; ++j)
    t += tensor(random_op(rng, dim, order, 2, 2), random_op(rng, dim, order, 2, 2));
  return t;
}

SymbolicTensor jordanian_like(const Generators &g) {
  Alphabet left{{"J", g.J(Rational(2))}}, right{{"P0", g.P(0)}};
  SymbolicTensor z(g.dim(), g.order(), {left, right});
  z.add_term({1, 1}, Series::monomial(g.order(), 1, GaussRat::i()));
  z.add_term({1, 2}, Series::monomial(g.order(), 2, GaussRat(Rational(1, 3))));
  return z;
}

} // namespace

TEST(Tensor, UnitIsNeutral) {
  std::mt19937 rng(11);
  Tensor2 t = random_tensor(rng, 3, 3, 3);
  Tensor2 one = Tensor2::one(3, 3);
  EXPECT_EQ(one * t, t);
  EXPECT_EQ(t * one, t);
  EXPECT_EQ(tensor_invert(one), one);
}

TEST(Tensor, ProductIsLegwise) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    DiffOp a = random_op(rng, 3, 3, 2, 3), b = random_op(rng, 3, 3, 2, 3);
    DiffOp c = random_op(rng, 3, 3, 2, 3), d = random_op(rng, 3, 3, 2, 3);
    EXPECT_EQ(tensor(a, b) * tensor(c, d), tensor(a * c, b * d));
  }
}

TEST(Tensor, SerialAndParallelAgree) {
  std::mt19937 rng(13);
  Tensor2 a = random_tensor(rng, 3, 3, 6), b = random_tensor(rng, 3, 3, 6);
  EXPECT_EQ(tensor_mul_serial(a, b), tensor_mul_parallel(a, b));
  Tensor3 a3 = embed12(a) * embed23(b), b3 = embed23(a);
  EXPECT_EQ(tensor_mul_serial(a3, b3), tensor_mul_parallel(a3, b3));
}

TEST(Tensor, InverseIsTwoSided) {
  std::mt19937 rng(14);
  Tensor2 x = random_tensor(rng, 2, 3, 3);
  Tensor2 t = Tensor2::one(2, 3) + Series::monomial(3, 1) * x;
  Tensor2 inv = tensor_invert(t);
  EXPECT_EQ(t * inv, Tensor2::one(2, 3));
  EXPECT_EQ(inv * t, Tensor2::one(2, 3));
  Tensor2 bad = Series::constant(3, GaussRat(2)) * Tensor2::one(2, 3);
  EXPECT_THROW(tensor_invert(bad), NonInvertibleTensor);
}

TEST(Tensor, FlipAndEmbeddings) {
  Generators g(2, 1);
  Tensor2 t = tensor(g.x(0), g.d(1));
  EXPECT_EQ(flip(t), tensor(g.d(1), g.x(0)));
  EXPECT_EQ(embed12(t), tensor(g.x(0), g.d(1), g.one()));
  EXPECT_EQ(embed23(t), tensor(g.one(), g.x(0), g.d(1)));
  EXPECT_EQ(multiply_legs(t), g.x(0) * g.d(1));
  EXPECT_EQ(counit_left(tensor(g.one(), g.d(1)) + t), g.d(1));
}

TEST(Tensor, ActAndMultiply) {
  Generators g(2, 1);
  Poly x0 = Poly::variable(2, 1, 0), x1 = Poly::variable(2, 1, 1);
  EXPECT_EQ(act_and_multiply(Tensor2::one(2, 1), x0, x1), x0 * x1);
  EXPECT_EQ(act_and_multiply(tensor(g.d(0), g.x(1)), x0, x1), x1 * x1);
}

TEST(Tensor, Printing) {
  Generators g(2, 1);
  EXPECT_EQ(Tensor2::one(2, 1).str(), "1 ⊗ 1");
  Tensor2 t = tensor(g.x(0), g.d(1)) + tensor(g.x(0), g.one());
  EXPECT_EQ(t.str(), "x0 ⊗ (d1 + 1)");
}

TEST(Symbolic, CoproductOfPrimitive) {
  Generators g(4, 2);
  Alphabet p{{"P0", g.P(0)}};
  SymbolicTensor s(4, 2, {p});
  s.add_term({1}, Series::constant(2, GaussRat(1)));
  EXPECT_EQ(s.delta(0).materialize2(), primitive_coproduct(g.P(0)));
  EXPECT_EQ(s.antipode(0).materialize1(), -g.P(0));
  EXPECT_EQ(s.counit(0).legs(), 0);
  EXPECT_TRUE(s.counit(0).is_zero());
}

TEST(Symbolic, CoproductIsMultiplicative) {
  // Delta of a product of symbols against the product of materialized
  // coproducts of the generators.
  Generators g(3, 2);
  Alphabet ab{{"P0", g.P(0)}, {"D", g.D()}};
  SymbolicTensor s(3, 2, {ab});
  s.add_term({2, 1}, Series::constant(2, GaussRat(1)));
  Tensor2 dp = primitive_coproduct(g.P(0)), dd = primitive_coproduct(g.D());
  EXPECT_EQ(s.delta(0).materialize2(), dp * dp * dd);
}

TEST(Symbolic, InverseAgreesWithTensorInverseAndExp) {
  Generators g(3, 4);
  SymbolicTensor z = jordanian_like(g);
  SymbolicTensor f = z.exp();
  Tensor2 byseries = f.invert().materialize2();
  EXPECT_EQ(byseries, tensor_invert(f.materialize2()));
  EXPECT_EQ(byseries, (-z).exp().materialize2());
  EXPECT_EQ(f.materialize2() * byseries, Tensor2::one(3, 4));
}

TEST(Symbolic, AntipodeIsAntiMultiplicativeOnLeg) {
  // On commuting symbols S reduces to X -> -X, so S(e^Z) on a leg equals
  // e^{-Z} taken on that leg only.
  Generators g(3, 3);
  Alphabet p{{"P0", g.P(0)}};
  SymbolicTensor z(3, 3, {p});
  z.add_term({1}, Series::monomial(3, 1, GaussRat::i()));
  EXPECT_EQ(z.exp().antipode(0), (-z).exp());
}

TEST(Symbolic, PermuteAndInsert) {
  Generators g(2, 1);
  Alphabet l{{"J", g.J(Rational(1))}}, r{{"P0", g.P(0)}};
  SymbolicTensor t(2, 1, {l, r});
  t.add_term({1, 1}, Series::constant(1, GaussRat(1)));
  EXPECT_EQ(t.permute({1, 0}).materialize2(), flip(t.materialize2()));
  EXPECT_EQ(t.insert_unit_leg(2).materialize3(), embed12(t.materialize2()));
  EXPECT_EQ(t.multiply_legs(), g.J(Rational(1)) * g.P(0));
}

TEST(Symbolic, MismatchedAlphabetsThrow) {
  Generators g(2, 1);
  SymbolicTensor a(2, 1, {Alphabet{{"P0", g.P(0)}}});
  SymbolicTensor b(2, 1, {Alphabet{{"D", g.D()}}});
  EXPECT_THROW(a + b, DimMismatch);
}
