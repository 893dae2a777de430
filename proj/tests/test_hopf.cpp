#include <gtest/gtest.h>

#include <set>

#include "kforge/errors.hpp"
#include "kforge/hopf.hpp"

using namespace kforge;

namespace {

std::vector<TwistSpec> grid(int order, int dim = 4) {
  std::vector<TwistSpec> out;
  for (int r : {-1, 1, 2, 3})
    out.push_back(TwistSpec::jordanian(Rational(r), dim, order));
  for (Rational s : {Rational(0), Rational(1, 2), Rational(1)})
    out.push_back(TwistSpec::abelian(s, dim, order));
  return out;
}

// (1 + cA)^{-1} as a geometric sum.
DiffOp geometric_inverse(const Generators &g, const GaussRat &c) {
  DiffOp out = g.one(), term = g.one();
  for (int m = 1; m <= g.order(); ++m) {
    term = term * (g.A() * (-c));
    out += term;
  }
  return out;
}

DiffOp exp_of(const Generators &g, const DiffOp &x) {
  DiffOp out = g.one(), term = g.one();
  for (int m = 1; m <= g.order(); ++m) {
    term = term * x * GaussRat(Rational(1, m));
    out += term;
  }
  return out;
}

} // namespace

TEST(Coproduct, AbelianTimeMomentumIsPrimitive) {
  for (Rational s : {Rational(0), Rational(1, 3), Rational(1)}) {
    Twist t(TwistSpec::abelian(s, 4, 4));
    const auto &g = t.gens();
    EXPECT_EQ(deformed_coproduct(t, g.P(0)), tensor(g.one(), g.P(0)) + tensor(g.P(0), g.one()))
        << s.str();
  }
}

TEST(Coproduct, JordanianSpatialMomentum) {
  // r = -1: e^{-sigma/r} = e^{sigma} = 1 - A.
  {
    Twist t(TwistSpec::jordanian(Rational(-1), 4, 4));
    const auto &g = t.gens();
    DiffOp e = g.one() - g.A();
    for (int k = 1; k < 4; ++k)
      EXPECT_EQ(deformed_coproduct(t, g.P(k)), tensor(g.one(), g.P(k)) + tensor(g.P(k), e));
  }
  // r = 1: e^{-sigma} = (1 + A)^{-1}.
  {
    Twist t(TwistSpec::jordanian(Rational(1), 3, 4));
    const auto &g = t.gens();
    DiffOp e = geometric_inverse(g, GaussRat(1));
    EXPECT_EQ(deformed_coproduct(t, g.P(2)), tensor(g.one(), g.P(2)) + tensor(g.P(2), e));
  }
}

TEST(Coproduct, JordanianTimeMomentum) {
  Twist t(TwistSpec::jordanian(Rational(3), 3, 4));
  const auto &g = t.gens();
  EXPECT_EQ(deformed_coproduct(t, g.P(0)),
            tensor(g.one(), g.P(0)) + tensor(g.P(0), g.one() + g.A() * GaussRat(3)));
}

TEST(Coproduct, SpatialRotationsStayPrimitive) {
  for (const auto &spec : grid(3, 3)) {
    Twist t(spec);
    const auto &g = t.gens();
    DiffOp x = g.L(1, 2);
    EXPECT_EQ(deformed_coproduct(t, x), primitive_coproduct(x)) << spec.label();
  }
}

TEST(Coproduct, ConjugationMatchesAdjointRoute) {
  for (const auto &spec : grid(3, 3)) {
    Twist t(spec);
    for (const auto &[name, x] : t.gens().igl_basis())
      EXPECT_EQ(deformed_coproduct(t, x), deformed_coproduct_by_adjoint(t, x))
          << spec.label() << " " << name;
  }
}

TEST(Coproduct, ClassicalLimit) {
  for (const auto &spec : grid(0, 3)) {
    Twist t(spec);
    for (const auto &[name, x] : t.gens().igl_basis())
      EXPECT_EQ(deformed_coproduct(t, x), primitive_coproduct(x)) << name;
  }
}

TEST(Antipode, JordanianTimeMomentum) {
  // S(P0) = -P0 e^{-sigma} = -P0 (1 + rA)^{-1}.
  for (int r : {-1, 2}) {
    Twist t(TwistSpec::jordanian(Rational(r), 3, 4));
    const auto &g = t.gens();
    EXPECT_EQ(deformed_antipode(t, g.P(0)), -(g.P(0) * geometric_inverse(g, GaussRat(r))))
        << r;
  }
}

TEST(Antipode, AbelianSpatialMomentum) {
  // S(Pk) = -Pk e^{ia(1-2s)P0}; at s = 1 this is -Pk e^{-A}.
  Twist t(TwistSpec::abelian(Rational(1), 3, 4));
  const auto &g = t.gens();
  EXPECT_EQ(deformed_antipode(t, g.P(1)), -(g.P(1) * exp_of(g, -g.A())));
  Twist h(TwistSpec::abelian(Rational(1, 2), 3, 4));
  EXPECT_EQ(deformed_antipode(h, h.gens().P(1)), -h.gens().P(1));
}

TEST(Antipode, ReducesToMinusIdentityAtZeroDeformation) {
  for (const auto &spec : grid(0, 3)) {
    Twist t(spec);
    for (const auto &[name, x] : t.gens().igl_basis())
      EXPECT_EQ(deformed_antipode(t, x), -x) << spec.label() << " " << name;
  }
}

TEST(Antipode, UIsInvertible) {
  Twist t(TwistSpec::jordanian(Rational(2), 3, 4));
  DiffOp u = twist_u(t);
  EXPECT_EQ(u * invert(u), t.gens().one());
}

TEST(Axioms, JordanianMinusOnePassesAtOrderFour) {
  Twist t(TwistSpec::jordanian(Rational(-1), 4, 4));
  AxiomReport rep = verify_hopf_axioms(t);
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.generators, 20);
  EXPECT_GT(rep.checks, 20);
}

TEST(Axioms, WholeGridPasses) {
  for (const auto &spec : grid(3, 3)) {
    AxiomReport rep = verify_hopf_axioms(Twist(spec));
    EXPECT_TRUE(rep.pass()) << spec.label();
    for (const auto &f : rep.failures)
      ADD_FAILURE() << spec.label() << " " << f.axiom << " " << f.generator << " @" << f.order;
  }
}

TEST(Axioms, UndeformedAntipodeFailsAtFirstOrder) {
  Twist t(TwistSpec::jordanian(Rational(-1), 4, 4));
  const auto &g = t.gens();
  int worst = -1;
  for (const auto &[name, x] : g.igl_basis()) {
    EXPECT_TRUE(antipode_axiom_lhs(t, x, true).is_zero()) << name;
    DiffOp bad = antipode_axiom_lhs(t, x, false);
    if (!bad.is_zero())
      worst = worst < 0 ? bad.valuation() : std::min(worst, bad.valuation());
  }
  EXPECT_EQ(worst, 1);
}

TEST(Axioms, CorruptedTwistBreaksCoassociativity) {
  Twist bad = corrupted_twist(TwistSpec::jordanian(Rational(-1), 3, 3));
  AxiomReport rep = verify_hopf_axioms(bad);
  ASSERT_FALSE(rep.pass());
  bool coassoc = false;
  for (const auto &f : rep.failures)
    coassoc |= f.axiom == "coassociativity" && f.order == 2;
  EXPECT_TRUE(coassoc);
}

TEST(ClosedForms, CorrectedTablesMatchEverySpec) {
  for (const auto &spec : grid(4)) {
    for (const auto &r : check_closed_forms(Twist(spec))) {
      EXPECT_TRUE(r.corrected_match) << spec.label() << " " << r.generator << " " << r.formula;
      if (r.correction.empty())
        EXPECT_TRUE(r.match) << spec.label() << " " << r.generator << " " << r.formula;
    }
  }
}

TEST(ClosedForms, WeylPoincareTable) {
  auto rows = weyl_poincare_table(4);
  std::set<std::string> names;
  for (const auto &r : rows) {
    names.insert(r.generator);
    EXPECT_TRUE(r.corrected_match) << r.generator << " " << r.formula;
    if (r.correction.empty())
      EXPECT_TRUE(r.match) << r.generator;
  }
  EXPECT_EQ(names.size(), 11u);
}

TEST(ClosedForms, PrintedEntriesWithCorrectionsDisagree) {
  // Every correction on the table is needed by at least one spec.
  std::set<std::string> needed, listed;
  for (const auto &c : closed_form_table())
    if (!c.correction.empty())
      listed.insert(c.formula);
  for (const auto &spec : grid(4))
    for (const auto &r : check_closed_forms(Twist(spec)))
      if (!r.match)
        needed.insert(r.formula);
  for (const auto &r : weyl_poincare_table(4))
    if (!r.match)
      needed.insert(r.formula);
  EXPECT_EQ(needed, listed);
}

TEST(ClosedForms, AbelianPrintedSpatialMomentumAntipodeHoldsOnlyAtSEqualsOne) {
  for (Rational s : {Rational(0), Rational(1, 2), Rational(1)}) {
    for (const auto &r : check_closed_forms(Twist(TwistSpec::abelian(s, 3, 3))))
      if (r.kind == FormKind::Antipode && r.generator == "P1")
        EXPECT_EQ(r.match, s == Rational(1)) << s.str();
  }
}

TEST(ClosedForms, PrintedTablesViolateBrackets) {
  // Independent of any twist: the printed maps fail to be (anti)homomorphisms,
  // the corrected ones do not.
  for (const auto &spec : grid(3)) {
    for (FormKind kind : {FormKind::Coproduct, FormKind::Antipode}) {
      EXPECT_FALSE(table_bracket_defects(spec.family, false, kind, spec.param, 4, 3, false).empty())
          << spec.label();
      EXPECT_TRUE(table_bracket_defects(spec.family, false, kind, spec.param, 4, 3, true).empty())
          << spec.label();
    }
  }
  for (FormKind kind : {FormKind::Coproduct, FormKind::Antipode}) {
    EXPECT_FALSE(table_bracket_defects(Family::Jordanian, true, kind, Rational(-1), 4, 3, false).empty());
    EXPECT_TRUE(table_bracket_defects(Family::Jordanian, true, kind, Rational(-1), 4, 3, true).empty());
  }
}

TEST(Decompose, RecoversCoordinates) {
  Generators g(3, 2);
  std::vector<DiffOp> basis{g.P(0), g.L(1, 2), g.D()};
  DiffOp op = g.P(0) * GaussRat(2) + g.D() * GaussRat::i();
  auto c = decompose(op, basis);
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)[0], GaussRat(2));
  EXPECT_TRUE((*c)[1].is_zero());
  EXPECT_EQ((*c)[2], GaussRat::i());
  EXPECT_FALSE(decompose(g.x(0), basis));
}

TEST(PhysicalBasis, Brackets) {
  Generators g(4, 2);
  PhysicalBasis b = physical_basis(g);
  auto br = [](const DiffOp &x, const DiffOp &y) { return x * y - y * x; };
  const GaussRat i = GaussRat::i();
  // Rotations: [M_k, M_l] = i eps_klm M_m; boosts: [N_k, N_l] = -i eps_klm M_m.
  EXPECT_EQ(br(b.M[0], b.M[1]), b.M[2] * i);
  EXPECT_EQ(br(b.N[0], b.N[1]), b.M[2] * (-i));
  EXPECT_EQ(br(b.M[0], b.N[1]), b.N[2] * i);
  // Momenta: [M_1, P_2] = i P_3, [M_j, P_0] = 0, [N_1, P_1] = -i P_0,
  // [N_1, P_0] = -i P_1.
  EXPECT_EQ(br(b.M[0], b.P[2]), b.P[3] * i);
  EXPECT_TRUE(br(b.M[1], b.P[0]).is_zero());
  EXPECT_EQ(br(b.N[0], b.P[1]), b.P[0] * (-i));
  EXPECT_TRUE(br(b.N[0], b.P[2]).is_zero());
  EXPECT_EQ(br(b.N[0], b.P[0]), b.P[1] * (-i));
  // Dilatation: [P_mu, L] = P_mu, [L, M] = [L, N] = 0.
  for (int mu = 0; mu < 4; ++mu)
    EXPECT_EQ(br(b.P[static_cast<size_t>(mu)], b.L), b.P[static_cast<size_t>(mu)]);
  for (int k = 0; k < 3; ++k) {
    EXPECT_TRUE(br(b.L, b.M[static_cast<size_t>(k)]).is_zero());
    EXPECT_TRUE(br(b.L, b.N[static_cast<size_t>(k)]).is_zero());
  }
  EXPECT_THROW(physical_basis(Generators(3, 2)), InvalidSpec);
}

TEST(PhysicalBasis, NamesResolve) {
  Generators g(4, 2);
  PhysicalBasis b = physical_basis(g);
  EXPECT_EQ(generator_by_name(g, "Mrot1"), b.M[0]);
  EXPECT_EQ(generator_by_name(g, "N3"), b.N[2]);
  EXPECT_EQ(generator_by_name(g, "Ptil0"), b.P[0]);
  EXPECT_EQ(generator_by_name(g, "L01"), g.L(0, 1));
  EXPECT_THROW(generator_by_name(g, "Q9"), UnknownGenerator);
}

TEST(Axioms, IteratedCoproductRoutesAgree) {
  // A wrapped twist carries no exponent and is conjugated directly.
  for (const auto &spec : {TwistSpec::jordanian(Rational(2), 3, 3), TwistSpec::abelian(Rational(1, 2), 3, 3)}) {
    Twist t(spec);
    Twist wrapped(spec, t.symbolic());
    ASSERT_TRUE(wrapped.exponent().is_zero());
    const DiffOp x = t.gens().L(0, 1);
    EXPECT_EQ(iterated_coproduct_left(t, x), iterated_coproduct_left(wrapped, x)) << spec.label();
    EXPECT_EQ(iterated_coproduct_right(t, x), iterated_coproduct_right(wrapped, x)) << spec.label();
  }
}
