#include "kforge/weyl.hpp"

#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "kforge/errors.hpp"
#include "kforge/text.hpp"

namespace kforge {

int Monomial::x_degree() const {
  int s = 0;
  for (int mu = 0; mu < kMaxDim; ++mu)
    s += x(mu);
  return s;
}

int Monomial::d_degree() const {
  int s = 0;
  for (int mu = 0; mu < kMaxDim; ++mu)
    s += d(mu);
  return s;
}

bool Monomial::is_one() const {
  for (auto v : e)
    if (v != 0)
      return false;
  return true;
}

MultiIndex Monomial::x_part() const {
  MultiIndex m{};
  for (int mu = 0; mu < kMaxDim; ++mu)
    m[static_cast<size_t>(mu)] = x(mu);
  return m;
}

namespace {

std::string power_factor(const std::string &sym, int mu, int p) {
  std::string s = sym + std::to_string(mu);
  if (p > 1)
    s += "^" + std::to_string(p);
  return s;
}

std::string multi_index_str(const MultiIndex &m, int dim) {
  std::string out;
  for (int mu = 0; mu < dim; ++mu)
    if (m[static_cast<size_t>(mu)] > 0)
      out = join_factors(out, power_factor("x", mu, m[static_cast<size_t>(mu)]));
  return out;
}

int64_t binom(int n, int k) {
  int64_t r = 1;
  for (int j = 1; j <= k; ++j)
    r = r * (n - k + j) / j;
  return r;
}

struct PairKey {
  Monomial l, r;
  bool operator==(const PairKey &o) const { return l == o.l && r == o.r; }
};

struct PairHash {
  size_t operator()(const PairKey &k) const noexcept {
    MonomialHash h;
    return h(k.l) * 1000003u ^ h(k.r);
  }
};

} // namespace

std::string Monomial::str(int dim) const {
  std::string out = multi_index_str(x_part(), dim);
  for (int mu = 0; mu < dim; ++mu)
    if (d(mu) > 0)
      out = join_factors(out, power_factor("d", mu, d(mu)));
  return out;
}

size_t MonomialHash::operator()(const Monomial &m) const noexcept {
  uint64_t h = 1469598103934665603ull;
  for (auto v : m.e) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<size_t>(h);
}

const std::vector<MonomialTerm> &monomial_product(const Monomial &l,
                                                  const Monomial &r) {
  thread_local std::unordered_map<PairKey, std::vector<MonomialTerm>, PairHash>
      cache;
  PairKey key{l, r};
  auto it = cache.find(key);
  if (it != cache.end())
    return it->second;

  // Start from x^{a+c} d^{b+e} and contract k_i pairs in each direction.
  std::vector<MonomialTerm> out;
  Monomial base;
  for (int mu = 0; mu < kMaxDim; ++mu) {
    base.x(mu) = static_cast<uint8_t>(l.x(mu) + r.x(mu));
    base.d(mu) = static_cast<uint8_t>(l.d(mu) + r.d(mu));
  }
  out.push_back({base, 1});
  for (int mu = 0; mu < kMaxDim; ++mu) {
    int kmax = std::min(l.d(mu), r.x(mu));
    if (kmax == 0)
      continue;
    std::vector<MonomialTerm> next;
    for (const auto &t : out) {
      int64_t fact = 1;
      for (int k = 0; k <= kmax; ++k) {
        if (k > 0)
          fact *= k;
        MonomialTerm nt = t;
        nt.mono.x(mu) = static_cast<uint8_t>(nt.mono.x(mu) - k);
        nt.mono.d(mu) = static_cast<uint8_t>(nt.mono.d(mu) - k);
        nt.coeff *= binom(l.d(mu), k) * binom(r.x(mu), k) * fact;
        next.push_back(nt);
      }
    }
    out = std::move(next);
  }
  return cache.emplace(key, std::move(out)).first->second;
}

void require_same_shape(int dim_a, int order_a, int dim_b, int order_b) {
  if (dim_a != dim_b)
    throw DimMismatch("dimensions " + std::to_string(dim_a) + " and " +
                      std::to_string(dim_b));
  if (order_a != order_b)
    throw OrderMismatch("orders " + std::to_string(order_a) + " and " +
                        std::to_string(order_b));
}

// ---------------------------------------------------------------- Poly

Poly::Poly(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1 || dim > kMaxDim)
    throw InvalidSpec("dimension must be in 1.." + std::to_string(kMaxDim));
  if (order < 0)
    throw InvalidSpec("negative truncation order");
}

Poly Poly::constant(int dim, const Series &c) {
  Poly p(dim, c.order());
  p.add_term(MultiIndex{}, c);
  return p;
}

Poly Poly::variable(int dim, int order, int mu) {
  if (mu < 0 || mu >= dim)
    throw InvalidSpec("coordinate index out of range");
  Poly p(dim, order);
  MultiIndex m{};
  m[static_cast<size_t>(mu)] = 1;
  p.add_term(m, Series::constant(order, GaussRat(1)));
  return p;
}

int Poly::degree() const {
  int deg = -1;
  for (const auto &[m, c] : terms_) {
    int s = 0;
    for (auto v : m)
      s += v;
    deg = std::max(deg, s);
  }
  return deg;
}

void Poly::add_term(const MultiIndex &idx, const Series &c) {
  if (c.order() != order_)
    throw OrderMismatch("polynomial coefficient order");
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace(idx, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

const Series *Poly::coeff(const MultiIndex &idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? nullptr : &it->second;
}

Poly Poly::operator-() const {
  Poly r(dim_, order_);
  for (const auto &[m, c] : terms_)
    r.terms_.emplace(m, -c);
  return r;
}

Poly &Poly::operator+=(const Poly &o) {
  require_same_shape(dim_, order_, o.dim_, o.order_);
  for (const auto &[m, c] : o.terms_)
    add_term(m, c);
  return *this;
}

Poly &Poly::operator-=(const Poly &o) { return *this += -o; }

Poly operator*(const Poly &a, const Poly &b) {
  require_same_shape(a.dim_, a.order_, b.dim_, b.order_);
  Poly r(a.dim_, a.order_);
  for (const auto &[ma, ca] : a.terms_)
    for (const auto &[mb, cb] : b.terms_) {
      MultiIndex m{};
      for (size_t i = 0; i < m.size(); ++i)
        m[i] = static_cast<uint8_t>(ma[i] + mb[i]);
      r.add_term(m, ca * cb);
    }
  return r;
}

Poly operator*(const Series &c, const Poly &p) {
  Poly r(p.dim_, p.order_);
  for (const auto &[m, cp] : p.terms_)
    r.add_term(m, c * cp);
  return r;
}

bool operator==(const Poly &a, const Poly &b) {
  require_same_shape(a.dim_, a.order_, b.dim_, b.order_);
  return a.terms_ == b.terms_;
}

std::string Poly::str() const {
  TermWriter w;
  for (int k = 0; k <= order_; ++k)
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
      w.add(it->second[k], join_factors(a_power(k), multi_index_str(it->first, dim_)));
  return w.str();
}

// ---------------------------------------------------------------- DiffOp

DiffOp::DiffOp(int dim, int order) : dim_(dim), order_(order) {
  if (dim < 1 || dim > kMaxDim)
    throw InvalidSpec("dimension must be in 1.." + std::to_string(kMaxDim));
  if (order < 0)
    throw InvalidSpec("negative truncation order");
}

DiffOp DiffOp::one(int dim, int order) {
  return scalar(dim, order, GaussRat(1));
}

DiffOp DiffOp::constant(int dim, const Series &c) {
  DiffOp op(dim, c.order());
  op.add_term(Monomial{}, c);
  return op;
}

DiffOp DiffOp::scalar(int dim, int order, const GaussRat &c) {
  return constant(dim, Series::constant(order, c));
}

DiffOp DiffOp::x(int dim, int order, int mu) {
  if (mu < 0 || mu >= dim)
    throw InvalidSpec("coordinate index out of range");
  Monomial m;
  m.x(mu) = 1;
  return monomial(dim, m, Series::constant(order, GaussRat(1)));
}

DiffOp DiffOp::d(int dim, int order, int mu) {
  if (mu < 0 || mu >= dim)
    throw InvalidSpec("derivative index out of range");
  Monomial m;
  m.d(mu) = 1;
  return monomial(dim, m, Series::constant(order, GaussRat(1)));
}

DiffOp DiffOp::monomial(int dim, const Monomial &m, const Series &c) {
  DiffOp op(dim, c.order());
  op.add_term(m, c);
  return op;
}

DiffOp DiffOp::of_A(int dim, const Series &f) {
  const int n = f.order();
  DiffOp op(dim, n);
  GaussRat ipow(1);
  for (int m = 0; m <= n; ++m) {
    if (!f[m].is_zero()) {
      Monomial mono;
      mono.d(0) = static_cast<uint8_t>(m);
      op.add_term(mono, Series::monomial(n, m, f[m] * ipow));
    }
    ipow = ipow * GaussRat::i();
  }
  return op;
}

void DiffOp::check_degree(const Monomial &m) const {
  const int cap = 2 * order_ + 4;
  if (m.x_degree() > cap || m.d_degree() > cap)
    throw DegreeOverflow("monomial " + m.str(dim_) + " exceeds degree cap " +
                         std::to_string(cap));
}

void DiffOp::add_term(const Monomial &m, const Series &c) {
  if (c.order() != order_)
    throw OrderMismatch("operator coefficient order");
  if (c.is_zero())
    return;
  for (int mu = dim_; mu < kMaxDim; ++mu)
    if (m.x(mu) || m.d(mu))
      throw DimMismatch("monomial uses an index beyond the dimension");
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) {
    check_degree(m);
    return;
  }
  it->second += c;
  if (it->second.is_zero())
    terms_.erase(it);
}

int DiffOp::valuation() const {
  int v = -1;
  for (const auto &[m, c] : terms_) {
    int cv = c.valuation();
    if (v < 0 || cv < v)
      v = cv;
  }
  return v;
}

Series DiffOp::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Series(order_) : it->second;
}

DiffOp DiffOp::operator-() const {
  DiffOp r(dim_, order_);
  for (const auto &[m, c] : terms_)
    r.terms_.emplace(m, -c);
  return r;
}

DiffOp &DiffOp::operator+=(const DiffOp &o) {
  require_same_shape(dim_, order_, o.dim_, o.order_);
  for (const auto &[m, c] : o.terms_)
    add_term(m, c);
  return *this;
}

DiffOp &DiffOp::operator-=(const DiffOp &o) { return *this += -o; }

DiffOp &DiffOp::operator*=(const GaussRat &k) {
  if (k.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto &[m, c] : terms_)
    c *= k;
  return *this;
}

DiffOp operator*(const Series &c, const DiffOp &a) {
  DiffOp r(a.dim_, a.order_);
  for (const auto &[m, ca] : a.terms_)
    r.add_term(m, c * ca);
  return r;
}

bool operator==(const DiffOp &a, const DiffOp &b) {
  require_same_shape(a.dim_, a.order_, b.dim_, b.order_);
  return a.terms_ == b.terms_;
}

DiffOp DiffOp::with_order(int order) const {
  DiffOp r(dim_, order);
  for (const auto &[m, c] : terms_)
    r.add_term(m, c.with_order(order));
  return r;
}

DiffOp DiffOp::a_coefficient(int k) const {
  DiffOp r(dim_, 0);
  for (const auto &[m, c] : terms_)
    if (k <= order_ && !c[k].is_zero())
      r.add_term(m, Series::constant(0, c[k]));
  return r;
}

DiffOp DiffOp::adjoint() const {
  DiffOp r(dim_, order_);
  for (const auto &[m, c] : terms_) {
    Series cc(order_);
    for (int k = 0; k <= order_; ++k)
      cc.set(k, c[k].conj());
    if (m.d_degree() % 2 == 1)
      cc = -cc;
    Monomial dpart, xpart;
    for (int mu = 0; mu < kMaxDim; ++mu) {
      dpart.d(mu) = m.d(mu);
      xpart.x(mu) = m.x(mu);
    }
    for (const auto &t : monomial_product(dpart, xpart))
      r.add_term(t.mono, cc * GaussRat(t.coeff));
  }
  return r;
}

std::string DiffOp::str() const {
  TermWriter w;
  for (int k = 0; k <= order_; ++k)
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
      w.add(it->second[k], join_factors(a_power(k), it->first.str(dim_)));
  return w.str();
}

namespace {

using TermList = std::vector<std::pair<Monomial, const Series *>>;

TermList flatten(const DiffOp &a) {
  TermList out;
  out.reserve(a.size());
  for (const auto &[m, c] : a.terms())
    out.emplace_back(m, &c);
  return out;
}

void accumulate_row(const std::pair<Monomial, const Series *> &lt,
                    const TermList &rhs, int order,
                    std::map<Monomial, Series> &acc) {
  const int lv = lt.second->valuation();
  for (const auto &rt : rhs) {
    if (lv + rt.second->valuation() > order)
      continue;
    Series c = *lt.second * *rt.second;
    if (c.is_zero())
      continue;
    for (const auto &t : monomial_product(lt.first, rt.first)) {
      auto [it, inserted] = acc.try_emplace(t.mono, order);
      it->second += c * GaussRat(t.coeff);
    }
  }
}

DiffOp from_accumulator(int dim, int order, std::map<Monomial, Series> &acc) {
  DiffOp r(dim, order);
  for (auto &[m, c] : acc)
    r.add_term(m, c);
  return r;
}

} // namespace

DiffOp mul_serial(const DiffOp &a, const DiffOp &b) {
  require_same_shape(a.dim(), a.order(), b.dim(), b.order());
  auto lhs = flatten(a), rhs = flatten(b);
  std::map<Monomial, Series> acc;
  for (const auto &lt : lhs)
    accumulate_row(lt, rhs, a.order(), acc);
  return from_accumulator(a.dim(), a.order(), acc);
}

DiffOp mul_parallel(const DiffOp &a, const DiffOp &b) {
  require_same_shape(a.dim(), a.order(), b.dim(), b.order());
  auto lhs = flatten(a), rhs = flatten(b);
  std::map<Monomial, Series> acc;
#pragma omp parallel
  {
    std::map<Monomial, Series> local;
#pragma omp for schedule(dynamic) nowait
    for (long i = 0; i < static_cast<long>(lhs.size()); ++i)
      accumulate_row(lhs[static_cast<size_t>(i)], rhs, a.order(), local);
#pragma omp critical
    for (auto &[m, c] : local) {
      auto [it, inserted] = acc.try_emplace(m, a.order());
      it->second += c;
    }
  }
  return from_accumulator(a.dim(), a.order(), acc);
}

DiffOp operator*(const DiffOp &a, const DiffOp &b) {
  if (a.size() * b.size() >= 4096)
    return mul_parallel(a, b);
  return mul_serial(a, b);
}

DiffOp commutator(const DiffOp &a, const DiffOp &b) { return a * b - b * a; }

DiffOp power(const DiffOp &a, int k) {
  DiffOp r = DiffOp::one(a.dim(), a.order());
  for (int j = 0; j < k; ++j)
    r = r * a;
  return r;
}

DiffOp invert(const DiffOp &a) {
  Series c0 = a.constant_term();
  if (!c0.is_constant() || c0[0].is_zero())
    throw NonInvertibleConstantTerm("operator without invertible constant term");
  // a = c (1 + y) with y of positive valuation; (1+y)^{-1} = sum (-y)^k
  GaussRat cinv = c0[0].inverse();
  DiffOp y = a * cinv - DiffOp::one(a.dim(), a.order());
  if (!y.is_zero() && y.valuation() < 1)
    throw NonInvertibleConstantTerm("non-constant part of order a^0");
  DiffOp r = DiffOp::one(a.dim(), a.order());
  DiffOp term = r;
  for (int k = 1; k <= a.order(); ++k) {
    term = -(term * y);
    if (term.is_zero())
      break;
    r += term;
  }
  return r * cinv;
}

Poly apply(const DiffOp &op, const Poly &f) {
  require_same_shape(op.dim(), op.order(), f.dim(), f.order());
  Poly out(f.dim(), f.order());
  for (const auto &[m, c] : op.terms()) {
    for (const auto &[idx, fc] : f.terms()) {
      // d^beta x^idx = prod falling factorials, then multiply by x^alpha
      int64_t k = 1;
      MultiIndex res{};
      bool zero = false;
      for (int mu = 0; mu < f.dim() && !zero; ++mu) {
        int e = idx[static_cast<size_t>(mu)], b = m.d(mu);
        if (b > e) {
          zero = true;
          break;
        }
        for (int j = 0; j < b; ++j)
          k *= e - j;
        res[static_cast<size_t>(mu)] = static_cast<uint8_t>(e - b + m.x(mu));
      }
      if (zero)
        continue;
      out.add_term(res, c * fc * GaussRat(k));
    }
  }
  return out;
}

DiffOp multiplication_op(const Poly &f) {
  DiffOp op(f.dim(), f.order());
  for (const auto &[idx, c] : f.terms()) {
    Monomial m;
    for (int mu = 0; mu < kMaxDim; ++mu)
      m.x(mu) = idx[static_cast<size_t>(mu)];
    op.add_term(m, c);
  }
  return op;
}

int first_difference_order(const DiffOp &a, const DiffOp &b) {
  return (a - b).valuation();
}

} // namespace kforge
