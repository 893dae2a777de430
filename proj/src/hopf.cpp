#include "kforge/hopf.hpp"

#include <map>
#include <string>

#include "kforge/errors.hpp"

namespace kforge {

namespace {

template <int K> Tensor<K> commutator(const Tensor<K> &a, const Tensor<K> &b) {
  return a * b - b * a;
}

// exp(ad w)(y) = e^w y e^{-w} for w of positive a-valuation
template <int K> Tensor<K> conjugate_by_exp(const Tensor<K> &w, const Tensor<K> &y) {
  Tensor<K> out = y, term = y;
  for (int k = 1; k <= y.order(); ++k) {
    term = commutator(w, term) * GaussRat(Rational(1, k));
    if (term.is_zero())
      break;
    out += term;
  }
  return out;
}

Series ia_times(int order, const Rational &c) {
  return Series::monomial(order, 1, GaussRat::i() * GaussRat(c));
}

// (1 + r t)^beta evaluated at t = A
DiffOp jordanian_exp(const Generators &g, const Rational &r, const Rational &beta) {
  Series u = Series::constant(g.order(), GaussRat(1)) + Series::monomial(g.order(), 1, GaussRat(r));
  return g.of_A(binom_pow(u, beta));
}

// e^{beta t} evaluated at t = A
DiffOp abelian_exp(const Generators &g, const Rational &beta) {
  return g.of_A(exp_series(Series::monomial(g.order(), 1, GaussRat(beta))));
}

std::vector<Index2> no_index(int) { return {Index2{0, 0}}; }

std::vector<Index2> spatial(int dim) {
  std::vector<Index2> out;
  for (int k = 1; k < dim; ++k)
    out.push_back({k, 0});
  return out;
}

std::vector<Index2> spacetime(int dim) {
  std::vector<Index2> out;
  for (int mu = 0; mu < dim; ++mu)
    out.push_back({mu, 0});
  return out;
}

std::vector<Index2> spatial_pairs(int dim) {
  std::vector<Index2> out;
  for (int m = 1; m < dim; ++m)
    for (int k = 1; k < dim; ++k)
      out.push_back({m, k});
  return out;
}

ClosedForm entry(Family f, bool weyl_table, FormKind kind, std::string formula,
                 std::function<std::vector<Index2>(int)> indices,
                 std::function<std::string(Index2)> name,
                 std::function<DiffOp(const Generators &, Index2)> gen,
                 std::string correction = {}) {
  ClosedForm c;
  c.family = f;
  c.weyl_table = weyl_table;
  c.kind = kind;
  c.formula = std::move(formula);
  c.correction = std::move(correction);
  c.indices = std::move(indices);
  c.name = std::move(name);
  c.generator = std::move(gen);
  return c;
}

std::string idx_name(const std::string &stem, int k) { return stem + std::to_string(k); }

Series sgn(int order, bool flip) { return Series::constant(order, GaussRat(flip ? -1 : 1)); }

std::vector<ClosedForm> build_table() {
  using F = Family;
  const auto cop = FormKind::Coproduct;
  const auto ant = FormKind::Antipode;
  std::vector<ClosedForm> t;

  auto P0 = [](const Generators &g, Index2) { return g.P(0); };
  auto Pk = [](const Generators &g, Index2 i) { return g.P(i[0]); };
  auto Lmk = [](const Generators &g, Index2 i) { return g.L(i[0], i[1]); };
  auto Lk0 = [](const Generators &g, Index2 i) { return g.L(i[0], 0); };
  auto L0k = [](const Generators &g, Index2 i) { return g.L(0, i[0]); };
  auto L00 = [](const Generators &g, Index2) { return g.L(0, 0); };
  auto nP0 = [](Index2) { return std::string("P0"); };
  auto nPk = [](Index2 i) { return idx_name("P", i[0]); };
  auto nLmk = [](Index2 i) { return "L" + std::to_string(i[0]) + std::to_string(i[1]); };
  auto nLk0 = [](Index2 i) { return "L" + std::to_string(i[0]) + "0"; };
  auto nL0k = [](Index2 i) { return "L0" + std::to_string(i[0]); };
  auto nL00 = [](Index2) { return std::string("L00"); };

  // Jordanian family, e^{beta sigma_r} = (1 + rA)^beta
  {
    ClosedForm c = entry(F::Jordanian, false, cop, "Δ(P0) = 1⊗P0 + P0⊗e^{σ}", no_index, nP0, P0);
    c.coproduct = [](const Generators &g, const Rational &r, Index2, bool) {
      return tensor(g.one(), g.P(0)) + tensor(g.P(0), jordanian_exp(g, r, Rational(1)));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, false, cop, "Δ(Pk) = 1⊗Pk + Pk⊗e^{-σ/r}", spatial, nPk, Pk);
    c.coproduct = [](const Generators &g, const Rational &r, Index2 i, bool) {
      return tensor(g.one(), g.P(i[0])) +
             tensor(g.P(i[0]), jordanian_exp(g, r, Rational(-1) / r));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, false, cop, "Δ(L^m_k) = 1⊗L^m_k + L^m_k⊗1", spatial_pairs,
                         nLmk, Lmk);
    c.coproduct = [](const Generators &g, const Rational &, Index2 i, bool) {
      return primitive_coproduct(g.L(i[0], i[1]));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, false, cop, "Δ(L^k_0) = 1⊗L^k_0 + L^k_0⊗e^{(r+1)σ/r}",
                         spatial, nLk0, Lk0);
    c.coproduct = [](const Generators &g, const Rational &r, Index2 i, bool) {
      DiffOp x = g.L(i[0], 0);
      return tensor(g.one(), x) + tensor(x, jordanian_exp(g, r, (r + Rational(1)) / r));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, false, cop,
                         "Δ(L^0_k) = 1⊗L^0_k + L^0_k⊗e^{-(r+1)σ/r} - iar J⊗Pk e^{-σ}", spatial,
                         nL0k, L0k, "Δ(L^0_k) = 1⊗L^0_k + L^0_k⊗e^{-(r+1)σ/r} + iar J⊗Pk e^{-σ}");
    c.coproduct = [](const Generators &g, const Rational &r, Index2 i, bool fix) {
      DiffOp x = g.L(0, i[0]);
      Tensor2 out = tensor(g.one(), x) + tensor(x, jordanian_exp(g, r, -(r + Rational(1)) / r));
      Tensor2 extra = tensor(g.J(r), g.P(i[0]) * jordanian_exp(g, r, Rational(-1)));
      return out - sgn(g.order(), fix) * (ia_times(g.order(), r) * extra);
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, false, cop,
                         "Δ(L^0_0) = 1⊗L^0_0 + L^0_0⊗1 - iar J⊗P0 e^{-σ}", no_index, nL00, L00,
                         "Δ(L^0_0) = 1⊗L^0_0 + L^0_0⊗1 + iar J⊗P0 e^{-σ}");
    c.coproduct = [](const Generators &g, const Rational &r, Index2, bool fix) {
      Tensor2 extra = tensor(g.J(r), g.P(0) * jordanian_exp(g, r, Rational(-1)));
      return primitive_coproduct(g.L(0, 0)) - sgn(g.order(), fix) * (ia_times(g.order(), r) * extra);
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, false, ant, "S(P0) = -P0 e^{-σ}", no_index, nP0, P0);
    c.antipode = [](const Generators &g, const Rational &r, Index2, bool) {
      return -(g.P(0) * jordanian_exp(g, r, Rational(-1)));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, false, ant, "S(Pk) = -Pk e^{σ/r}", spatial, nPk, Pk);
    c.antipode = [](const Generators &g, const Rational &r, Index2 i, bool) {
      return -(g.P(i[0]) * jordanian_exp(g, r, Rational(1) / r));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, false, ant, "S(L^k_0) = -L^k_0 e^{-(r+1)σ/r}", spatial,
                         nLk0, Lk0);
    c.antipode = [](const Generators &g, const Rational &r, Index2 i, bool) {
      return -(g.L(i[0], 0) * jordanian_exp(g, r, -(r + Rational(1)) / r));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, false, ant, "S(L^0_k) = -(L^0_k + iar J Pk) e^{(r+1)σ/r}",
                         spatial, nL0k, L0k, "S(L^0_k) = -(L^0_k - iar J Pk) e^{(r+1)σ/r}");
    c.antipode = [](const Generators &g, const Rational &r, Index2 i, bool fix) {
      DiffOp inner = g.L(0, i[0]) + sgn(g.order(), fix) * (ia_times(g.order(), r) * (g.J(r) * g.P(i[0])));
      return -(inner * jordanian_exp(g, r, (r + Rational(1)) / r));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, false, ant, "S(L^0_0) = -L^0_0 - iar J P0", no_index, nL00,
                         L00, "S(L^0_0) = -L^0_0 + iar J P0");
    c.antipode = [](const Generators &g, const Rational &r, Index2, bool fix) {
      return -g.L(0, 0) - sgn(g.order(), fix) * (ia_times(g.order(), r) * (g.J(r) * g.P(0)));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, false, ant, "S(L^m_k) = -L^m_k", spatial_pairs, nLmk, Lmk);
    c.antipode = [](const Generators &g, const Rational &, Index2 i, bool) {
      return -g.L(i[0], i[1]);
    };
    t.push_back(c);
  }

  // Abelian family, e^{i a beta P0} = e^{beta A}
  {
    ClosedForm c = entry(F::Abelian, false, cop, "Δ(P0) = 1⊗P0 + P0⊗1", no_index, nP0, P0);
    c.coproduct = [](const Generators &g, const Rational &, Index2, bool) {
      return primitive_coproduct(g.P(0));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Abelian, false, cop, "Δ(Pk) = e^{iasP0}⊗Pk + Pk⊗e^{-ia(1-s)P0}",
                         spatial, nPk, Pk);
    c.coproduct = [](const Generators &g, const Rational &s, Index2 i, bool) {
      return tensor(abelian_exp(g, s), g.P(i[0])) +
             tensor(g.P(i[0]), abelian_exp(g, s - Rational(1)));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Abelian, false, cop, "Δ(L^m_k) = 1⊗L^m_k + L^m_k⊗1", spatial_pairs,
                         nLmk, Lmk);
    c.coproduct = [](const Generators &g, const Rational &, Index2 i, bool) {
      return primitive_coproduct(g.L(i[0], i[1]));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Abelian, false, cop,
                         "Δ(L^k_0) = e^{-iasP0}⊗L^k_0 + L^k_0⊗e^{ia(1-s)P0}", spatial, nLk0, Lk0);
    c.coproduct = [](const Generators &g, const Rational &s, Index2 i, bool) {
      DiffOp x = g.L(i[0], 0);
      return tensor(abelian_exp(g, -s), x) + tensor(x, abelian_exp(g, Rational(1) - s));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Abelian, false, cop,
                         "Δ(L^0_k) = e^{iasP0}⊗L^0_k + L^0_k⊗e^{-ia(1-s)P0} - ias Pk⊗D + "
                         "ia(1-s) D⊗Pk",
                         spatial, nL0k, L0k,
                         "Δ(L^0_k) = e^{iasP0}⊗L^0_k + L^0_k⊗e^{-ia(1-s)P0} - ias Pk⊗D "
                         "e^{-ia(1-s)P0} + ia(1-s) D e^{iasP0}⊗Pk");
    c.coproduct = [](const Generators &g, const Rational &s, Index2 i, bool fix) {
      DiffOp x = g.L(0, i[0]);
      const int N = g.order();
      DiffOp left = fix ? abelian_exp(g, s) : g.one();
      DiffOp right = fix ? abelian_exp(g, s - Rational(1)) : g.one();
      Tensor2 out = tensor(abelian_exp(g, s), x) + tensor(x, abelian_exp(g, s - Rational(1)));
      return out + ia_times(N, -s) * tensor(g.P(i[0]), g.D() * right) +
             ia_times(N, Rational(1) - s) * tensor(g.D() * left, g.P(i[0]));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Abelian, false, cop,
                         "Δ(L^0_0) = 1⊗L^0_0 + L^0_0⊗1 + ias P0⊗D - ia(1-s) D⊗P0", no_index,
                         nL00, L00, "Δ(L^0_0) = 1⊗L^0_0 + L^0_0⊗1 - ias P0⊗D + ia(1-s) D⊗P0");
    c.coproduct = [](const Generators &g, const Rational &s, Index2, bool fix) {
      const int N = g.order();
      Tensor2 extra = ia_times(N, s) * tensor(g.P(0), g.D()) -
                      ia_times(N, Rational(1) - s) * tensor(g.D(), g.P(0));
      return primitive_coproduct(g.L(0, 0)) + sgn(N, fix) * extra;
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Abelian, false, ant, "S(P0) = -P0", no_index, nP0, P0);
    c.antipode = [](const Generators &g, const Rational &, Index2, bool) { return -g.P(0); };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Abelian, false, ant, "S(Pk) = -Pk e^{-iaP0}", spatial, nPk, Pk,
                         "S(Pk) = -Pk e^{ia(1-2s)P0}");
    c.antipode = [](const Generators &g, const Rational &s, Index2 i, bool fix) {
      return -(g.P(i[0]) * abelian_exp(g, fix ? Rational(1) - Rational(2) * s : Rational(-1)));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Abelian, false, ant, "S(L^m_k) = -L^m_k", spatial_pairs, nLmk, Lmk);
    c.antipode = [](const Generators &g, const Rational &, Index2 i, bool) {
      return -g.L(i[0], i[1]);
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Abelian, false, ant, "S(L^k_0) = -L^k_0 e^{iaP0}", spatial, nLk0, Lk0,
                         "S(L^k_0) = -L^k_0 e^{ia(2s-1)P0}");
    c.antipode = [](const Generators &g, const Rational &s, Index2 i, bool fix) {
      return -(g.L(i[0], 0) * abelian_exp(g, fix ? Rational(2) * s - Rational(1) : Rational(1)));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Abelian, false, ant, "S(L^0_0) = -L^0_0 - ia(1-2s) D P0", no_index,
                         nL00, L00, "S(L^0_0) = -L^0_0 + ia(1-2s) D P0");
    c.antipode = [](const Generators &g, const Rational &s, Index2, bool fix) {
      return -g.L(0, 0) - sgn(g.order(), fix) * (ia_times(g.order(), Rational(1) - Rational(2) * s) *
                                                   (g.D() * g.P(0)));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Abelian, false, ant,
                         "S(L^0_k) = -e^{-iasP0} L^0_k e^{ia(1-s)P0} - ia[s Pk D e^{-iasP0} - "
                         "(1-s) D Pk e^{ia(1-s)P0}]",
                         spatial, nL0k, L0k,
                         "S(L^0_k) = -e^{-iasP0} L^0_k e^{ia(1-s)P0} - ia[s Pk D - (1-s) D Pk] "
                         "e^{ia(1-2s)P0}");
    c.antipode = [](const Generators &g, const Rational &s, Index2 i, bool fix) {
      const int N = g.order();
      DiffOp em = abelian_exp(g, -s), ep = abelian_exp(g, Rational(1) - s);
      DiffOp both = abelian_exp(g, Rational(1) - Rational(2) * s);
      DiffOp pk = g.P(i[0]), d = g.D();
      DiffOp bracket = ia_times(N, s) * (pk * d * (fix ? both : em)) -
                       ia_times(N, Rational(1) - s) * (d * pk * (fix ? both : ep));
      return -(em * g.L(0, i[0]) * ep) - bracket;
    };
    t.push_back(c);
  }

  // Weyl-Poincare algebra, r = -1, n = 4: Ptil = -i d, e^{σ} = 1 - A
  auto phys = [](const Generators &g) { return physical_basis(g); };
  auto nPt = [](Index2 i) { return idx_name("Ptil", i[0]); };
  auto nM = [](Index2 i) { return idx_name("Mrot", i[0]); };
  auto nN = [](Index2 i) { return idx_name("N", i[0]); };
  auto nL = [](Index2) { return std::string("L"); };
  auto gPt = [phys](const Generators &g, Index2 i) { return phys(g).P[static_cast<size_t>(i[0])]; };
  auto gM = [phys](const Generators &g, Index2 i) { return phys(g).M[static_cast<size_t>(i[0] - 1)]; };
  auto gN = [phys](const Generators &g, Index2 i) { return phys(g).N[static_cast<size_t>(i[0] - 1)]; };
  auto gL = [](const Generators &g, Index2) { return g.trace(); };
  auto inv_sigma = [](const Generators &g) {
    return jordanian_exp(g, Rational(-1), Rational(-1));
  };
  // a (printed) or the corrected coefficient times a
  auto coeff = [](const Generators &g, bool fix, GaussRat fixed) {
    return Series::monomial(g.order(), 1, fix ? fixed : GaussRat(1));
  };
  const GaussRat minus_i = -GaussRat::i();
  {
    ClosedForm c = entry(F::Jordanian, true, cop, "Δ(Pμ) = 1⊗Pμ + Pμ⊗e^{σ}", spacetime, nPt, gPt);
    c.coproduct = [gPt](const Generators &g, const Rational &, Index2 i, bool) {
      DiffOp p = gPt(g, i);
      return tensor(g.one(), p) + tensor(p, jordanian_exp(g, Rational(-1), Rational(1)));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, true, cop, "Δ(Mk) = 1⊗Mk + Mk⊗1", spatial, nM, gM);
    c.coproduct = [gM](const Generators &g, const Rational &, Index2 i, bool) {
      return primitive_coproduct(gM(g, i));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, true, cop, "Δ(Nk) = 1⊗Nk + Nk⊗1 + (1/κ) L⊗Pk e^{-σ}",
                         spatial, nN, gN, "Δ(Nk) = 1⊗Nk + Nk⊗1 - (i/κ) L⊗Pk e^{-σ}");
    c.coproduct = [=](const Generators &g, const Rational &, Index2 i, bool fix) {
      Tensor2 extra = tensor(g.trace(), gPt(g, i) * inv_sigma(g));
      return primitive_coproduct(gN(g, i)) + coeff(g, fix, minus_i) * extra;
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, true, cop, "Δ(L) = 1⊗L + L⊗1 + (1/κ) L⊗P0 e^{-σ}", no_index,
                         nL, gL, "Δ(L) = 1⊗L + L⊗1 - (1/κ) L⊗P0 e^{-σ}");
    c.coproduct = [=](const Generators &g, const Rational &, Index2, bool fix) {
      Tensor2 extra = tensor(g.trace(), gPt(g, {0, 0}) * inv_sigma(g));
      return primitive_coproduct(g.trace()) + coeff(g, fix, GaussRat(-1)) * extra;
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, true, ant, "S(Pμ) = -Pμ e^{-σ}", spacetime, nPt, gPt);
    c.antipode = [gPt, inv_sigma](const Generators &g, const Rational &, Index2 i, bool) {
      return -(gPt(g, i) * inv_sigma(g));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, true, ant, "S(Mk) = -Mk", spatial, nM, gM);
    c.antipode = [gM](const Generators &g, const Rational &, Index2 i, bool) { return -gM(g, i); };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, true, ant, "S(Nk) = -Nk + (1/κ) L Pk", spatial, nN, gN,
                         "S(Nk) = -Nk - (i/κ) L Pk");
    c.antipode = [=](const Generators &g, const Rational &, Index2 i, bool fix) {
      return -gN(g, i) + coeff(g, fix, minus_i) * (g.trace() * gPt(g, i));
    };
    t.push_back(c);
  }
  {
    ClosedForm c = entry(F::Jordanian, true, ant, "S(L) = -L + (1/κ) L P0", no_index, nL, gL,
                         "S(L) = -L - (1/κ) L P0");
    c.antipode = [=](const Generators &g, const Rational &, Index2, bool fix) {
      return -g.trace() + coeff(g, fix, GaussRat(-1)) * (g.trace() * gPt(g, {0, 0}));
    };
    t.push_back(c);
  }
  return t;
}

HopfReport evaluate(const Twist &t, const ClosedForm &c, Index2 idx) {
  const Generators &g = t.gens();
  HopfReport rep;
  rep.spec = t.spec().label();
  rep.generator = c.name(idx);
  rep.kind = c.kind;
  rep.formula = c.formula;
  rep.correction = c.correction;
  const DiffOp x = c.generator(g, idx);
  const Rational &p = t.spec().param;
  const bool fixable = !c.correction.empty();
  if (c.kind == FormKind::Coproduct) {
    Tensor2 computed = deformed_coproduct(t, x);
    Tensor2 ref = c.coproduct(g, p, idx, false);
    rep.computed = computed.str();
    rep.reference = ref.str();
    rep.first_mismatch = first_difference_order(computed, ref);
    rep.corrected_match = (fixable ? c.coproduct(g, p, idx, true) : ref) == computed;
  } else {
    DiffOp computed = deformed_antipode(t, x);
    DiffOp ref = c.antipode(g, p, idx, false);
    rep.computed = computed.str();
    rep.reference = ref.str();
    rep.first_mismatch = first_difference_order(computed, ref);
    rep.corrected_match = (fixable ? c.antipode(g, p, idx, true) : ref) == computed;
  }
  rep.match = rep.first_mismatch < 0;
  return rep;
}

std::vector<HopfReport> evaluate_table(const Twist &t, bool weyl_table) {
  std::vector<HopfReport> out;
  for (const auto &c : closed_form_table()) {
    if (c.family != t.spec().family || c.weyl_table != weyl_table)
      continue;
    for (Index2 idx : c.indices(t.spec().dim))
      out.push_back(evaluate(t, c, idx));
  }
  return out;
}

} // namespace

Tensor2 deformed_coproduct(const Twist &t, const DiffOp &x) {
  return t.tensor() * primitive_coproduct(x) * t.inverse();
}

Tensor2 deformed_coproduct_by_adjoint(const Twist &t, const DiffOp &x) {
  return conjugate_by_exp(t.exponent().materialize2(), primitive_coproduct(x));
}

DiffOp twist_u(const Twist &t) { return t.symbolic().antipode(1).multiply_legs(); }

DiffOp deformed_antipode(const Twist &t, const DiffOp &x) {
  DiffOp u = twist_u(t);
  return -(u * x * invert(u));
}

namespace {

// F12 (Delta x id)F y ((Delta x id)F)^{-1} F12^{-1}, with the inverse of
// the coproduct of F taken as the coproduct of F^{-1}.
Tensor3 conjugate_directly(const Twist &t, const DiffOp &x, int leg) {
  Tensor3 outer = leg == 0 ? embed12(t.tensor()) : embed23(t.tensor());
  Tensor3 outer_inv = leg == 0 ? embed12(t.inverse()) : embed23(t.inverse());
  Tensor3 inner = t.symbolic().delta(leg).materialize3();
  Tensor3 inner_inv = t.symbolic_inverse().delta(leg).materialize3();
  return outer * inner * primitive_coproduct2(x) * inner_inv * outer_inv;
}

} // namespace

Tensor3 iterated_coproduct_left(const Twist &t, const DiffOp &x) {
  if (t.exponent().is_zero())
    return conjugate_directly(t, x, 0);
  Tensor3 y = primitive_coproduct2(x);
  y = conjugate_by_exp(t.exponent().delta(0).materialize3(), y);
  return conjugate_by_exp(embed12(t.exponent().materialize2()), y);
}

Tensor3 iterated_coproduct_right(const Twist &t, const DiffOp &x) {
  if (t.exponent().is_zero())
    return conjugate_directly(t, x, 1);
  Tensor3 y = primitive_coproduct2(x);
  y = conjugate_by_exp(t.exponent().delta(1).materialize3(), y);
  return conjugate_by_exp(embed23(t.exponent().materialize2()), y);
}

DiffOp antipode_axiom_lhs(const Twist &t, const DiffOp &x, bool deformed) {
  const int n = t.spec().dim, N = t.spec().order;
  const Series one = Series::constant(N, GaussRat(1));
  DiffOp u = deformed ? twist_u(t) : DiffOp::one(n, N);
  DiffOp uinv = invert(u);
  const Tensor2 sf = t.symbolic().antipode(0).materialize2();
  const Tensor2 sfinv = t.symbolic_inverse().antipode(0).materialize2();
  DiffOp w(n, N);
  for (const auto &[k, c] : sf.terms())
    w += DiffOp::monomial(n, k[0], c) * uinv * DiffOp::monomial(n, k[1], one);
  DiffOp bracket = commutator(w, x);
  DiffOp sum(n, N);
  for (const auto &[k, c] : sfinv.terms())
    sum += DiffOp::monomial(n, k[0], c) * bracket * DiffOp::monomial(n, k[1], one);
  return u * sum;
}

AxiomReport verify_hopf_axioms(const Twist &t) {
  AxiomReport rep;
  rep.spec = t.spec().label();
  rep.order = t.spec().order;
  auto basis = t.gens().igl_basis();
  rep.generators = static_cast<int>(basis.size());
  std::vector<Tensor2> cop;
  auto fail = [&rep](const std::string &axiom, const std::string &gen, int order) {
    rep.failures.push_back({axiom, gen, order});
  };
  for (const auto &[name, x] : basis) {
    Tensor2 d = deformed_coproduct(t, x);
    cop.push_back(d);
    int o = first_difference_order(iterated_coproduct_left(t, x), iterated_coproduct_right(t, x));
    if (o >= 0)
      fail("coassociativity", name, o);
    o = std::max(first_difference_order(counit_left(d), x), first_difference_order(counit_right(d), x));
    if (o >= 0)
      fail("counit", name, o);
    DiffOp lhs = antipode_axiom_lhs(t, x);
    if (!lhs.is_zero())
      fail("antipode", name, lhs.valuation());
    rep.checks += 3;
  }
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) {
      DiffOp br = commutator(basis[i].second, basis[j].second);
      int o = first_difference_order(deformed_coproduct(t, br), commutator(cop[i], cop[j]));
      if (o >= 0)
        fail("homomorphism", basis[i].first + "," + basis[j].first, o);
      ++rep.checks;
    }
  return rep;
}

const std::vector<ClosedForm> &closed_form_table() {
  static const std::vector<ClosedForm> table = build_table();
  return table;
}

std::vector<HopfReport> check_closed_forms(const Twist &t) { return evaluate_table(t, false); }

std::vector<HopfReport> weyl_poincare_table(int order) {
  return evaluate_table(Twist(TwistSpec::jordanian(Rational(-1), 4, order)), true);
}

PhysicalBasis physical_basis(const Generators &g) {
  if (g.dim() != 4)
    throw InvalidSpec("the physical basis is defined for n = 4");
  const std::vector<int> eta = lorentzian_metric(4);
  const GaussRat i = GaussRat::i();
  PhysicalBasis b{{}, {}, {}, g.trace()};
  for (int k = 1; k <= 3; ++k) {
    // M_k = -(i/2) eps_klm M_lm = -i M_lm for (k, l, m) cyclic
    int l = k % 3 + 1, m = (k + 1) % 3 + 1;
    b.M.push_back(-i * g.M(eta, l, m));
    b.N.push_back(i * g.M(eta, k, 0));
  }
  for (int mu = 0; mu < 4; ++mu)
    b.P.push_back(-i * g.P(mu));
  return b;
}

DiffOp generator_by_name(const Generators &g, const std::string &name) {
  auto index = [&](const std::string &stem, int lo, int hi) {
    if (name.size() != stem.size() + 1 || name.compare(0, stem.size(), stem) != 0)
      return -1;
    int k = name.back() - '0';
    return k >= lo && k <= hi ? k : -1;
  };
  int k;
  if (g.dim() == 4) {
    if ((k = index("Mrot", 1, 3)) >= 0)
      return physical_basis(g).M[static_cast<size_t>(k - 1)];
    if ((k = index("N", 1, 3)) >= 0)
      return physical_basis(g).N[static_cast<size_t>(k - 1)];
    if ((k = index("Ptil", 0, 3)) >= 0)
      return physical_basis(g).P[static_cast<size_t>(k)];
  }
  return g.by_name(name);
}

} // namespace kforge

namespace kforge {

std::optional<std::vector<GaussRat>> decompose(const DiffOp &op, const std::vector<DiffOp> &basis) {
  // rows indexed by (monomial, a-power), one column per basis element plus
  // the right-hand side
  std::map<std::pair<Monomial, int>, size_t> rows;
  auto row_of = [&rows](const Monomial &m, int p) {
    return rows.try_emplace({m, p}, rows.size()).first->second;
  };
  auto scatter = [&](const DiffOp &d, size_t col, std::vector<std::vector<GaussRat>> &mat) {
    for (const auto &[m, c] : d.terms())
      for (int p = 0; p <= c.order(); ++p)
        if (!c[p].is_zero()) {
          size_t r = row_of(m, p);
          if (r >= mat.size())
            mat.resize(r + 1, std::vector<GaussRat>(basis.size() + 1));
          mat[r][col] = c[p];
        }
  };
  std::vector<std::vector<GaussRat>> mat;
  for (size_t j = 0; j < basis.size(); ++j)
    scatter(basis[j], j, mat);
  scatter(op, basis.size(), mat);
  const size_t ncol = basis.size();
  std::vector<size_t> pivot_col;
  size_t rank = 0;
  for (size_t col = 0; col < ncol && rank < mat.size(); ++col) {
    size_t piv = rank;
    while (piv < mat.size() && mat[piv][col].is_zero())
      ++piv;
    if (piv == mat.size())
      continue;
    std::swap(mat[piv], mat[rank]);
    GaussRat inv = mat[rank][col].inverse();
    for (auto &v : mat[rank])
      v = v * inv;
    for (size_t r = 0; r < mat.size(); ++r)
      if (r != rank && !mat[r][col].is_zero()) {
        GaussRat f = mat[r][col];
        for (size_t c = 0; c <= ncol; ++c)
          mat[r][c] = mat[r][c] - f * mat[rank][c];
      }
    pivot_col.push_back(col);
    ++rank;
  }
  for (size_t r = rank; r < mat.size(); ++r)
    if (!mat[r][ncol].is_zero())
      return std::nullopt;
  std::vector<GaussRat> x(ncol);
  for (size_t r = 0; r < rank; ++r)
    x[pivot_col[r]] = mat[r][ncol];
  return x;
}

std::vector<BracketDefect> table_bracket_defects(Family family, bool weyl_table, FormKind kind,
                                                 const Rational &param, int dim, int order,
                                                 bool corrected) {
  Generators g(dim, order);
  std::vector<std::string> names;
  std::vector<DiffOp> ops, sops;
  std::vector<Tensor2> cops;
  for (const auto &c : closed_form_table()) {
    if (c.family != family || c.weyl_table != weyl_table || c.kind != kind)
      continue;
    const bool fix = corrected && !c.correction.empty();
    for (Index2 idx : c.indices(dim)) {
      names.push_back(c.name(idx));
      ops.push_back(c.generator(g, idx));
      if (kind == FormKind::Coproduct)
        cops.push_back(c.coproduct(g, param, idx, fix));
      else
        sops.push_back(c.antipode(g, param, idx, fix));
    }
  }
  std::vector<BracketDefect> out;
  for (size_t i = 0; i < ops.size(); ++i)
    for (size_t j = i + 1; j < ops.size(); ++j) {
      auto coords = decompose(commutator(ops[i], ops[j]), ops);
      if (!coords)
        continue;
      int o;
      if (kind == FormKind::Coproduct) {
        Tensor2 lhs(dim, order);
        for (size_t k = 0; k < ops.size(); ++k)
          if (!(*coords)[k].is_zero())
            lhs += cops[k] * (*coords)[k];
        o = first_difference_order(lhs, commutator(cops[i], cops[j]));
      } else {
        // S([X, Y]) = [S(Y), S(X)]
        DiffOp lhs(dim, order);
        for (size_t k = 0; k < ops.size(); ++k)
          if (!(*coords)[k].is_zero())
            lhs += sops[k] * (*coords)[k];
        o = first_difference_order(lhs, commutator(sops[j], sops[i]));
      }
      if (o >= 0)
        out.push_back({names[i], names[j], o});
    }
  return out;
}

} // namespace kforge
