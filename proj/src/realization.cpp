#include "kforge/realization.hpp"

#include <map>

#include "kforge/errors.hpp"

namespace kforge {

namespace {

Series linear_psi(int order, const Rational &r) {
  Series psi = Series::constant(order, GaussRat(1));
  if (order >= 1)
    psi.set(1, GaussRat(r));
  return psi;
}

// r when psi = 1 + r A with r real, otherwise false.
bool as_linear(const Series &psi, Rational &r) {
  for (int m = 2; m <= psi.order(); ++m)
    if (!psi[m].is_zero())
      return false;
  GaussRat c1 = psi.order() >= 1 ? psi[1] : GaussRat(0);
  if (!c1.is_real())
    return false;
  r = c1.re();
  return true;
}

class Collector {
public:
  explicit Collector(int limit) : limit_(limit) {}

  // Records the valuation of a residual; only orders up to the limit count.
  void note(const std::string &id, int valuation) {
    auto it = index_.find(id);
    if (it == index_.end()) {
      it = index_.emplace(id, results_.size()).first;
      results_.push_back({id, true, -1});
    }
    IdentityResult &r = results_[it->second];
    if (valuation < 0 || valuation > limit_)
      return;
    if (r.pass || valuation < r.first_failure)
      r.first_failure = valuation;
    r.pass = false;
  }
  void note(const std::string &id, const DiffOp &residual) { note(id, residual.valuation()); }
  void note(const std::string &id, const Series &residual) { note(id, residual.valuation()); }

  std::vector<IdentityResult> take() { return std::move(results_); }

private:
  int limit_;
  std::map<std::string, size_t> index_;
  std::vector<IdentityResult> results_;
};

} // namespace

RealizationSpec RealizationSpec::linear(const Rational &r, const Rational &gamma, int tau, int dim,
                                        int order, int epsilon) {
  RealizationSpec s;
  s.psi = linear_psi(order, r);
  s.gamma = gamma;
  s.tau = tau;
  s.dim = dim;
  s.epsilon = epsilon;
  return s;
}

void RealizationSpec::validate() const {
  if (!(psi[0] == GaussRat(1)))
    throw NonUnitPsiConstantTerm("psi(0) = " + psi[0].str());
  if (tau != 1 && tau != -1)
    throw InvalidSpec("tau must be +1 or -1");
  if (epsilon != 1 && epsilon != -1)
    throw InvalidSpec("epsilon must be +1 or -1");
  if (dim < 2 || dim > kMaxDim)
    throw InvalidSpec("dimension out of range");
}

std::string RealizationSpec::label() const {
  return "psi=" + psi.str("A") + " gamma=" + gamma.str() + " tau=" + std::to_string(tau) +
         " eps=" + std::to_string(epsilon) + " n=" + std::to_string(dim);
}

RealizationSpec realization_spec_for(const TwistSpec &t, Side side) {
  const bool left = side == Side::Left;
  if (t.family == Family::Jordanian)
    return RealizationSpec::linear(t.param, left ? Rational(0) : Rational(-1), left ? 1 : -1, t.dim,
                                   t.order);
  return RealizationSpec::linear(Rational(0), left ? t.param : t.param - Rational(1), left ? 1 : -1,
                                 t.dim, t.order);
}

Series psi_exponential(const RealizationSpec &s) {
  Rational r;
  if (!as_linear(s.psi, r))
    return psi_exponential_general(s);
  const int N = s.order();
  if (r.is_zero())
    return exp_series(Series::monomial(N, 1));
  return binom_pow(linear_psi(N, r), r.inverse());
}

Series psi_exponential_general(const RealizationSpec &s) {
  s.validate();
  return exp_series(invert(s.psi).integral());
}

DerivedFunctions derive_functions(const RealizationSpec &s) {
  s.validate();
  const int N = s.order();
  // Two extra orders absorb the divisions by A and A^2.
  const int W = N + 2;
  RealizationSpec wide = s;
  wide.psi = s.psi.with_order(W);
  const Series &psi = wide.psi;
  const GaussRat half(Rational(1, 2)), eps(s.epsilon), tau(s.tau), gamma(s.gamma);

  Series Psi = psi_exponential(wide);
  Series Pinv = invert(Psi);
  Series phi = binom_pow(Psi, s.gamma - Rational(s.tau));
  Series phinv = invert(phi);
  Series G2 = (Psi - Pinv).divided_by_t(1).with_order(W) * half;
  Series H1 = binom_pow(Psi, Rational(s.tau) - Rational(2) * s.gamma);

  DerivedFunctions f;
  f.Psi = Psi.with_order(N);
  f.phi = phi.with_order(N);
  f.F1 = (binom_pow(Psi, s.gamma) * G2).with_order(N);
  f.F2 = (psi * phinv).with_order(N);
  f.F3 = (phinv * (eps * tau * half)).with_order(N);
  f.F4 = (phinv * (-(eps * gamma))).with_order(N);
  f.G1 = binom_pow(Psi, -s.gamma).with_order(N);
  f.G2 = G2.with_order(N);
  f.G3 = (H1 * (-(tau * half))).with_order(N);
  f.H1 = H1.with_order(N);
  f.H2 = (Psi + Pinv - Series::constant(W, GaussRat(2))).divided_by_t(2).with_order(N);
  return f;
}

RealizationOps build_generators(const RealizationSpec &s) {
  const DerivedFunctions f = derive_functions(s);
  const int n = s.dim, N = s.order();
  const Generators g(n, N);
  const Series ia = Series::monomial(N, 1, GaussRat::i());
  const GaussRat eps(s.epsilon);
  auto of = [&g](const Series &h) { return g.of_A(h); };

  RealizationOps o{{}, {}, {}, {}, DiffOp(n, N), g.laplacian()};
  const DiffOp &lap = o.laplacian;
  const DiffOp dil = g.D();

  o.x_up.push_back(g.x(0) * of(s.psi) + ia * (dil * GaussRat(s.gamma)));
  for (int i = 1; i < n; ++i)
    o.x_up.push_back(g.x(i) * of(f.phi));
  o.x_low = o.x_up;
  o.x_low[0] *= eps;

  o.M.assign(static_cast<size_t>(n), std::vector<DiffOp>(static_cast<size_t>(n), DiffOp(n, N)));
  const DiffOp x0_low = g.x(0) * eps;
  for (int i = 1; i < n; ++i) {
    DiffOp m = g.x(i) * g.d(0) * of(f.F1) - x0_low * g.d(i) * of(f.F2) +
               ia * (g.x(i) * lap * of(f.F3)) + ia * (dil * g.d(i) * of(f.F4));
    o.M[static_cast<size_t>(i)][0] = m;
    o.M[0][static_cast<size_t>(i)] = -m;
    for (int j = i + 1; j < n; ++j) {
      DiffOp r = g.x(i) * g.d(j) - g.x(j) * g.d(i);
      o.M[static_cast<size_t>(i)][static_cast<size_t>(j)] = r;
      o.M[static_cast<size_t>(j)][static_cast<size_t>(i)] = -r;
    }
  }

  o.box = lap * of(f.H1) - g.d(0) * g.d(0) * of(f.H2);
  o.D.push_back(g.d(0) * of(f.G2) + ia * (lap * of(f.G3)));
  for (int i = 1; i < n; ++i)
    o.D.push_back(g.d(i) * of(f.G1));
  return o;
}

bool IdentityReport::pass() const {
  for (const auto &r : results)
    if (!r.pass)
      return false;
  return true;
}

IdentityReport verify_extended_algebra(const RealizationSpec &s) {
  const RealizationOps o = build_generators(s);
  const int n = s.dim, N = s.order();
  const auto u = [](int k) { return static_cast<size_t>(k); };
  const Series ia = Series::monomial(N, 1, GaussRat::i());
  const Series a2 = Series::monomial(N, 2);
  const GaussRat eps(s.epsilon), tau(s.tau);
  const DiffOp one = DiffOp::one(n, N);
  auto eta = [&](int m, int v) { return m != v ? GaussRat(0) : m == 0 ? eps : GaussRat(1); };
  // i a_mu with a_mu = eta_{mu nu} a^nu and a^nu = (tau a, 0, ..., 0)
  auto i_a_low = [&](int m) { return m == 0 ? ia * (eps * tau) : Series(N); };
  const auto &M = o.M;
  const auto &x = o.x_low;
  const auto &D = o.D;

  Collector c(N);
  for (int k = 1; k < n; ++k) {
    c.note("coordinate-brackets", commutator(o.x_up[0], o.x_up[u(k)]) - (ia * tau) * o.x_up[u(k)]);
    for (int j = k + 1; j < n; ++j)
      c.note("coordinate-brackets", commutator(o.x_up[u(j)], o.x_up[u(k)]));
  }

  for (int m = 0; m < n; ++m)
    for (int v = m + 1; v < n; ++v) {
      for (int r = 0; r < n; ++r)
        for (int l = r + 1; l < n; ++l) {
          DiffOp rhs = eta(v, r) * M[u(m)][u(l)] + eta(m, l) * M[u(v)][u(r)] -
                       eta(v, l) * M[u(m)][u(r)] - eta(m, r) * M[u(v)][u(l)];
          c.note("lorentz-closure", commutator(M[u(m)][u(v)], M[u(r)][u(l)]) - rhs);
        }
      for (int l = 0; l < n; ++l) {
        DiffOp rhs = eta(v, l) * x[u(m)] - eta(m, l) * x[u(v)] - i_a_low(m) * M[u(v)][u(l)] +
                     i_a_low(v) * M[u(m)][u(l)];
        c.note("lorentz-coordinates", commutator(M[u(m)][u(v)], x[u(l)]) - rhs);
        c.note("dirac-covariance", commutator(M[u(m)][u(v)], D[u(l)]) - (eta(v, l) * D[u(m)] - eta(m, l) * D[u(v)]));
      }
      c.note("box-invariance", commutator(M[u(m)][u(v)], o.box));
    }

  for (int m = 0; m < n; ++m) {
    c.note("box-coordinates", commutator(o.box, x[u(m)]) - D[u(m)] * GaussRat(2));
    c.note("box-coordinates", commutator(o.box, D[u(m)]));
    for (int v = m + 1; v < n; ++v)
      c.note("dirac-covariance", commutator(D[u(m)], D[u(v)]));
  }

  DiffOp dd = D[0] * D[0] * eps;
  for (int k = 1; k < n; ++k)
    dd += D[u(k)] * D[u(k)];
  const DiffOp root = one + (a2 * GaussRat(Rational(1, 2))) * o.box;
  c.note("casimir", dd - o.box * (one + (a2 * GaussRat(Rational(1, 4))) * o.box));
  c.note("casimir", root * root - (one + a2 * dd));
  const DerivedFunctions f = derive_functions(s);
  const DiffOp shifted = -((ia * tau) * D[0]) + root;
  c.note("casimir", DiffOp::of_A(n, binom_pow(f.Psi, Rational(-s.tau))) - shifted);

  for (int k = 1; k < n; ++k) {
    c.note("dirac-spatial-coordinates", commutator(D[u(k)], x[0]));
    for (int j = 1; j < n; ++j) {
      DiffOp rhs = j == k ? shifted : DiffOp(n, N);
      c.note("dirac-spatial-coordinates", commutator(D[u(k)], x[u(j)]) - rhs);
    }
    c.note("dirac-time-coordinates", commutator(D[0], x[u(k)]) + (ia * tau) * D[u(k)]);
  }
  c.note("dirac-time-coordinates", commutator(D[0], x[0]) + root);

  return {s.label(), c.take()};
}

IdentityReport verify_ode_systems(const RealizationSpec &s) {
  const DerivedFunctions f = derive_functions(s);
  const int N = s.order();
  const Series A = Series::monomial(N, 1);
  const Series one = Series::constant(N, GaussRat(1));
  const GaussRat eps(s.epsilon), tau(s.tau), gamma(s.gamma), two(2);
  const Series &psi = s.psi;

  // Derivatives lose the top coefficient.
  Collector c(N - 1);
  c.note("psi-exponential", f.Psi.derivative() * psi - f.Psi);
  c.note("phi-ode", f.phi.derivative() * psi - f.phi * (gamma - tau));
  c.note("boost-ode-f1", f.F1 * f.F2 + A * f.F1.derivative() * f.F2 + (A * f.F1 * f.F4) * eps -
                   (A * f.F1 * f.F3) * (two * eps) - one);
  c.note("boost-ode-f3", f.F3 * f.F3 * two - (f.F3.derivative() * f.F2) * eps + f.F3 * f.F4);
  c.note("boost-ode-phi", f.F1 * psi + A * f.F1.derivative() * psi - (A * f.F1) * (gamma + tau) - f.phi);
  c.note("g1-relation", f.G1 - f.H1 * f.phi);
  c.note("g3-relation", f.G3 + f.H1 * (tau * GaussRat(Rational(1, 2))));
  if (s.epsilon == -1) {
    const Series F34 = f.F3 + f.F4;
    c.note("dirac-system-1", f.G1 * f.F1 - f.G2);
    c.note("dirac-system-2", f.F3 * f.G1 - f.G3);
    c.note("dirac-system-3", f.G1.derivative() * f.F2 + f.F4 * f.G1);
    c.note("dirac-system-4", A * f.G2.derivative() * f.F2 + f.F2 * f.G2 + (A * f.F1 * f.G3) * two - f.G1);
    c.note("dirac-system-5", f.G3.derivative() * f.F2 + (f.G3 * F34) * two);
    c.note("dirac-system-6", A * f.H2.derivative() * f.F2 + (f.F2 * f.H2) * two - (f.F1 * f.H1) * two);
    c.note("dirac-system-7", f.H1.derivative() * f.F2 + (F34 * f.H1) * two);
  }
  return {s.label(), c.take()};
}

bool check_hermiticity(const RealizationSpec &s) {
  s.validate();
  // psi has no coefficients beyond its order, so psi' is known through N.
  const int N = s.order();
  Series r = s.psi.with_order(N + 1).derivative() +
             Series::constant(N + 1, GaussRat(s.gamma * Rational(s.dim - 1)));
  return r.with_order(N).is_zero();
}

bool x0_is_self_adjoint(const RealizationSpec &s) {
  s.validate();
  const Generators g(s.dim, s.order());
  const Series ia = Series::monomial(s.order(), 1, GaussRat::i());
  DiffOp x0 = g.x(0) * g.of_A(s.psi) + ia * (g.D() * GaussRat(s.gamma));
  return x0.adjoint() == x0;
}

bool listed_hermitian_case(const RealizationSpec &s) {
  Rational r;
  if (!as_linear(s.psi, r))
    return false;
  const Rational n1(s.dim - 1);
  return (r.is_zero() && s.gamma.is_zero()) || (r == n1 && s.gamma == Rational(-1)) ||
         (r == -n1 && s.gamma == Rational(1));
}

IdentityReport cross_check_twist(const TwistSpec &t, Side side) {
  const Twist tw(t);
  const RealizationOps o = build_generators(realization_spec_for(t, side));
  Collector c(t.order);
  for (int mu = 0; mu < t.dim; ++mu)
    c.note("x" + std::to_string(mu),
           first_difference_order(o.x_up[static_cast<size_t>(mu)], coordinate_realization(tw, mu, side)));
  return {t.label() + (side == Side::Left ? " left" : " right"), c.take()};
}

} // namespace kforge
