#include "kforge/lie_algebra.hpp"

#include <algorithm>

#include "kforge/errors.hpp"

namespace kforge {

namespace {

bool is_zero(const Vec &v) {
  return std::all_of(v.begin(), v.end(), [](const GaussRat &c) { return c.is_zero(); });
}

Vec add(Vec a, const Vec &b, const GaussRat &k = GaussRat(1)) {
  for (size_t i = 0; i < a.size(); ++i)
    a[i] += b[i] * k;
  return a;
}

// Row reduction of the augmented matrix [cols | rhs]; returns the pivot
// columns and leaves the matrix in reduced echelon form.
std::vector<size_t> reduce(std::vector<Vec> &rows, size_t ncols) {
  std::vector<size_t> pivots;
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
    size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero())
      ++p;
    if (p == rows.size())
      continue;
    std::swap(rows[r], rows[p]);
    const GaussRat inv = rows[r][c].inverse();
    for (auto &v : rows[r])
      v = v * inv;
    for (size_t q = 0; q < rows.size(); ++q)
      if (q != r && !rows[q][c].is_zero())
        rows[q] = add(rows[q], rows[r], -rows[q][c]);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::vector<Vec> to_rows(const std::vector<Vec> &cols, const Vec *rhs) {
  const size_t m = cols.empty() ? (rhs ? rhs->size() : 0) : cols[0].size();
  std::vector<Vec> rows(m, Vec(cols.size() + (rhs ? 1 : 0)));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < m; ++i)
      rows[i][j] = cols[j][i];
  if (rhs)
    for (size_t i = 0; i < m; ++i)
      rows[i][cols.size()] = (*rhs)[i];
  return rows;
}

} // namespace

LieAlgebra::LieAlgebra(std::vector<std::string> labels)
    : labels_(std::move(labels)),
      c_(labels_.size(), std::vector<Vec>(labels_.size(), Vec(labels_.size()))) {}

size_t LieAlgebra::index(const std::string &label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end())
    throw UnknownGenerator(label);
  return static_cast<size_t>(it - labels_.begin());
}

void LieAlgebra::set_bracket(size_t i, size_t j, const Vec &v) {
  if (v.size() != dim())
    throw DimMismatch("bracket vector size");
  c_[i][j] = v;
}

Vec LieAlgebra::basis_vector(size_t i) const {
  Vec v(dim());
  v[i] = GaussRat(1);
  return v;
}

Vec LieAlgebra::bracket(const Vec &x, const Vec &y) const {
  Vec out(dim());
  for (size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero())
      continue;
    for (size_t j = 0; j < dim(); ++j)
      if (!y[j].is_zero())
        out = add(out, c_[i][j], x[i] * y[j]);
  }
  return out;
}

bool LieAlgebra::is_antisymmetric() const {
  for (size_t i = 0; i < dim(); ++i)
    for (size_t j = 0; j < dim(); ++j)
      if (!is_zero(add(c_[i][j], c_[j][i])))
        return false;
  return true;
}

int LieAlgebra::jacobi_failures() const {
  int failures = 0;
  for (size_t i = 0; i < dim(); ++i)
    for (size_t j = i + 1; j < dim(); ++j)
      for (size_t k = j + 1; k < dim(); ++k) {
        const Vec ei = basis_vector(i), ej = basis_vector(j), ek = basis_vector(k);
        Vec s = bracket(ei, c_[j][k]);
        s = add(s, bracket(ej, c_[k][i]));
        s = add(s, bracket(ek, c_[i][j]));
        failures += !is_zero(s);
      }
  return failures;
}

namespace {

std::string pair_label(const std::string &name, int a, int b) {
  return name + std::to_string(a) + std::to_string(b);
}

// Coordinates of +-J_{ab} in a basis of J_{ab}, a < b.
Vec generator(const LieAlgebra &alg, const std::string &name, int a, int b, const GaussRat &k) {
  Vec v(alg.dim());
  if (a == b || k.is_zero())
    return v;
  if (a < b)
    v[alg.index(pair_label(name, a, b))] = k;
  else
    v[alg.index(pair_label(name, b, a))] = -k;
  return v;
}

// [J_mn, J_rl] = g_nr J_ml + g_ml J_nr - g_nl J_mr - g_mr J_nl.
Vec orthogonal_bracket(const LieAlgebra &alg, const std::string &name, const std::vector<int> &g,
                       int m, int n, int r, int l) {
  auto G = [&g](int p, int q) { return p == q ? GaussRat(g[static_cast<size_t>(p)]) : GaussRat(0); };
  Vec v = generator(alg, name, m, l, G(n, r));
  v = add(v, generator(alg, name, n, r, G(m, l)));
  v = add(v, generator(alg, name, m, r, G(n, l)), GaussRat(-1));
  v = add(v, generator(alg, name, n, l, G(m, r)), GaussRat(-1));
  return v;
}

std::vector<std::pair<int, int>> pairs(int n) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      out.emplace_back(a, b);
  return out;
}

} // namespace

LieAlgebra orthogonal_algebra(const std::vector<int> &metric) {
  const int n = static_cast<int>(metric.size());
  std::vector<std::string> labels;
  for (auto [a, b] : pairs(n))
    labels.push_back(pair_label("J", a, b));
  LieAlgebra alg(labels);
  const auto ps = pairs(n);
  for (size_t i = 0; i < ps.size(); ++i)
    for (size_t j = 0; j < ps.size(); ++j)
      alg.set_bracket(i, j,
                      orthogonal_bracket(alg, "J", metric, ps[i].first, ps[i].second, ps[j].first,
                                         ps[j].second));
  return alg;
}

LieAlgebra kappa_lorentz_algebra(int n, int tau, const Rational &a) {
  if (n < 2)
    throw InvalidSpec("dimension must be at least 2");
  std::vector<int> eta(static_cast<size_t>(n), 1);
  eta[0] = -1;
  std::vector<std::string> labels;
  const auto ps = pairs(n);
  for (auto [m, v] : ps)
    labels.push_back(pair_label("M", m, v));
  for (int m = 0; m < n; ++m)
    labels.push_back("x" + std::to_string(m));
  LieAlgebra alg(labels);
  const size_t nm = ps.size();
  auto x = [&](int m, const GaussRat &k) {
    Vec v(alg.dim());
    v[nm + static_cast<size_t>(m)] = k;
    return v;
  };
  auto G = [&eta](int p, int q) { return p == q ? GaussRat(eta[static_cast<size_t>(p)]) : GaussRat(0); };
  const GaussRat ia_tau = GaussRat::i() * GaussRat(a * Rational(tau));
  // i a_mu, a_mu = eta_{mu nu} a^nu with a^nu = (tau a, 0, ..., 0)
  auto i_a_low = [&](int m) { return m == 0 ? ia_tau * G(0, 0) : GaussRat(0); };

  for (size_t p = 0; p < nm; ++p) {
    auto [m, v] = ps[p];
    for (size_t q = 0; q < nm; ++q)
      alg.set_bracket(p, q, orthogonal_bracket(alg, "M", eta, m, v, ps[q].first, ps[q].second));
    for (int l = 0; l < n; ++l) {
      Vec b = add(x(m, G(v, l)), x(v, G(m, l)), GaussRat(-1));
      b = add(b, generator(alg, "M", v, l, i_a_low(m)), GaussRat(-1));
      b = add(b, generator(alg, "M", m, l, i_a_low(v)));
      alg.set_bracket(p, nm + static_cast<size_t>(l), b);
      alg.set_bracket(nm + static_cast<size_t>(l), p, add(Vec(alg.dim()), b, GaussRat(-1)));
    }
  }
  // [x^0, x^k] = i a tau x^k, so [x_0, x_k] = eta_00 i a tau x_k.
  for (int k = 1; k < n; ++k) {
    Vec b = x(k, ia_tau * G(0, 0));
    alg.set_bracket(nm, nm + static_cast<size_t>(k), b);
    alg.set_bracket(nm + static_cast<size_t>(k), nm, add(Vec(alg.dim()), b, GaussRat(-1)));
  }
  return alg;
}

std::optional<Vec> solve_linear(const std::vector<Vec> &cols, const Vec &rhs) {
  std::vector<Vec> rows = to_rows(cols, &rhs);
  const size_t k = cols.size();
  std::vector<size_t> piv = reduce(rows, k + 1);
  if (!piv.empty() && piv.back() == k)
    return std::nullopt;
  Vec t(k);
  for (size_t r = 0; r < piv.size(); ++r)
    t[piv[r]] = rows[r][k];
  return t;
}

int rank(const std::vector<Vec> &cols) {
  std::vector<Vec> rows = to_rows(cols, nullptr);
  return static_cast<int>(reduce(rows, cols.size()).size());
}

bool IsomorphismReport::pass() const {
  return antisymmetric && jacobi_failures == 0 && target_jacobi_failures == 0 && alpha && beta &&
         bijective && bracket_failures == 0;
}

namespace {

struct Substitution {
  LieAlgebra src, dst;
  // Images split as fixed + alpha * va + beta * vb.
  std::vector<Vec> fixed, va, vb;
};

Substitution make_substitution(int n, int tau, const Rational &a) {
  if (a.is_zero())
    throw InvalidSpec("the frozen value of a must be nonzero");
  if (tau != 1 && tau != -1)
    throw InvalidSpec("tau must be +1 or -1");
  std::vector<int> metric(static_cast<size_t>(n + 1), 1);
  metric[0] = -1;
  Substitution s{kappa_lorentz_algebra(n, tau, a), orthogonal_algebra(metric), {}, {}, {}};
  const size_t nm = static_cast<size_t>(n * (n - 1) / 2);
  const GaussRat one(1), ia_tau = GaussRat::i() * GaussRat(a * Rational(tau));
  s.fixed.assign(s.src.dim(), Vec(s.dst.dim()));
  s.va = s.vb = s.fixed;
  for (auto [m, v] : pairs(n))
    s.fixed[s.src.index(pair_label("M", m, v))] = generator(s.dst, "J", m, v, one);
  s.fixed[nm] = generator(s.dst, "J", 0, n, ia_tau);
  for (int k = 1; k < n; ++k) {
    s.va[nm + static_cast<size_t>(k)] = generator(s.dst, "J", 0, k, one);
    s.vb[nm + static_cast<size_t>(k)] = generator(s.dst, "J", k, n, one);
  }
  return s;
}

Vec image(const std::vector<Vec> &part, const Vec &x, size_t dim) {
  Vec out(dim);
  for (size_t j = 0; j < x.size(); ++j)
    if (!x[j].is_zero())
      out = add(out, part[j], x[j]);
  return out;
}

IsomorphismReport evaluate(const Substitution &s, int n, int tau, const Rational &a,
                           const GaussRat &alpha, const GaussRat &beta) {
  IsomorphismReport rep;
  rep.n = n;
  rep.tau = tau;
  rep.a = a;
  rep.antisymmetric = s.src.is_antisymmetric();
  rep.jacobi_failures = s.src.jacobi_failures();
  rep.target_jacobi_failures = s.dst.jacobi_failures();
  rep.alpha = alpha;
  rep.beta = beta;
  rep.printed_relative_sign = beta == -alpha;
  std::vector<Vec> phi(s.src.dim());
  for (size_t j = 0; j < s.src.dim(); ++j)
    phi[j] = add(add(s.fixed[j], s.va[j], alpha), s.vb[j], beta);
  rep.bijective = s.src.dim() == s.dst.dim() && rank(phi) == static_cast<int>(s.dst.dim());
  for (size_t p = 0; p < s.src.dim(); ++p)
    for (size_t q = p + 1; q < s.src.dim(); ++q) {
      ++rep.bracket_checks;
      Vec lhs = image(phi, s.src.bracket(p, q), s.dst.dim());
      if (!is_zero(add(lhs, s.dst.bracket(phi[p], phi[q]), GaussRat(-1))))
        ++rep.bracket_failures;
    }
  return rep;
}

} // namespace

IsomorphismReport check_so_n1_isomorphism(int n, int tau, const Rational &a) {
  const Substitution s = make_substitution(n, tau, a);
  const size_t D = s.dst.dim();
  // phi([X, Y]) = [phi X, phi Y] for X = M_01, Y = x_0 is linear in alpha
  // and beta; every bracket is then checked with the solution.
  const size_t X = s.src.index(pair_label("M", 0, 1)), Y = static_cast<size_t>(n * (n - 1) / 2);
  const Vec c = s.src.bracket(X, Y);
  const Vec rhs = add(s.dst.bracket(s.fixed[X], s.fixed[Y]), image(s.fixed, c, D), GaussRat(-1));
  auto sol = solve_linear({image(s.va, c, D), image(s.vb, c, D)}, rhs);
  if (!sol) {
    IsomorphismReport rep;
    rep.n = n;
    rep.tau = tau;
    rep.a = a;
    return rep;
  }
  return evaluate(s, n, tau, a, (*sol)[0], (*sol)[1]);
}

IsomorphismReport check_substitution(int n, int tau, const Rational &a, const GaussRat &alpha,
                                     const GaussRat &beta) {
  return evaluate(make_substitution(n, tau, a), n, tau, a, alpha, beta);
}

} // namespace kforge
