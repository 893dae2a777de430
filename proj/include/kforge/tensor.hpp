#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "kforge/errors.hpp"
#include "kforge/text.hpp"
#include "kforge/weyl.hpp"

namespace kforge {

/// Element of the K-fold tensor power of the operator algebra, stored as a
/// map from K-tuples of normal-ordered monomials to series coefficients.
/// Multiplication is componentwise.
template <int K> class Tensor {
public:
  using Key = std::array<Monomial, K>;
  using Terms = std::map<Key, Series>;

  Tensor(int dim, int order) : dim_(dim), order_(order) {}

  static Tensor one(int dim, int order) {
    Tensor t(dim, order);
    t.add_term(Key{}, Series::constant(order, GaussRat(1)));
    return t;
  }

  /// ops[0] (x) ops[1] (x) ... (x) ops[K-1].
  static Tensor product_of(const std::array<DiffOp, K> &ops) {
    const int dim = ops[0].dim(), order = ops[0].order();
    for (const auto &op : ops)
      require_same_shape(dim, order, op.dim(), op.order());
    Tensor t(dim, order);
    std::vector<std::pair<Key, Series>> acc{{Key{}, Series::constant(order, GaussRat(1))}};
    for (int leg = 0; leg < K; ++leg) {
      std::vector<std::pair<Key, Series>> next;
      for (const auto &[key, c] : acc)
        for (const auto &[m, cm] : ops[static_cast<size_t>(leg)].terms()) {
          if (c.valuation() + cm.valuation() > order)
            continue;
          Key k = key;
          k[static_cast<size_t>(leg)] = m;
          Series s = c * cm;
          if (!s.is_zero())
            next.emplace_back(k, std::move(s));
        }
      acc = std::move(next);
    }
    for (const auto &[k, c] : acc)
      t.add_term(k, c);
    return t;
  }

  int dim() const { return dim_; }
  int order() const { return order_; }
  const Terms &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  void add_term(const Key &k, const Series &c) {
    if (c.order() != order_)
      throw OrderMismatch("tensor coefficient order");
    if (c.is_zero())
      return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero())
        terms_.erase(it);
    }
  }

  int valuation() const {
    int v = -1;
    for (const auto &[k, c] : terms_) {
      int cv = c.valuation();
      if (v < 0 || cv < v)
        v = cv;
    }
    return v;
  }

  Tensor operator-() const {
    Tensor r(dim_, order_);
    for (const auto &[k, c] : terms_)
      r.terms_.emplace(k, -c);
    return r;
  }
  Tensor &operator+=(const Tensor &o) {
    require_same_shape(dim_, order_, o.dim_, o.order_);
    for (const auto &[k, c] : o.terms_)
      add_term(k, c);
    return *this;
  }
  Tensor &operator-=(const Tensor &o) { return *this += -o; }
  Tensor &operator*=(const GaussRat &s) {
    if (s.is_zero())
      terms_.clear();
    for (auto &[k, c] : terms_)
      c *= s;
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor &b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor &b) { return a -= b; }
  friend Tensor operator*(Tensor a, const GaussRat &s) { return a *= s; }
  friend Tensor operator*(const Series &s, const Tensor &a) {
    Tensor r(a.dim_, a.order_);
    for (const auto &[k, c] : a.terms_)
      r.add_term(k, s * c);
    return r;
  }
  friend bool operator==(const Tensor &a, const Tensor &b) {
    require_same_shape(a.dim_, a.order_, b.dim_, b.order_);
    return a.terms_ == b.terms_;
  }

  /// Keeps only the coefficients of a^k, returned at order 0.
  Tensor a_coefficient(int k) const {
    Tensor r(dim_, 0);
    for (const auto &[key, c] : terms_)
      if (k <= order_ && !c[k].is_zero())
        r.add_term(key, Series::constant(0, c[k]));
    return r;
  }

  std::string str() const {
    // grouped by the first leg so that equal left factors print once
    std::map<Monomial, std::vector<const std::pair<const Key, Series> *>> groups;
    for (const auto &kv : terms_)
      groups[kv.first[0]].push_back(&kv);
    std::string out;
    for (auto g = groups.rbegin(); g != groups.rend(); ++g) {
      std::string left = g->first.is_one() ? "1" : g->first.str(dim_);
      TermWriter w;
      size_t count = 0;
      for (int p = 0; p <= order_; ++p)
        for (auto it = g->second.rbegin(); it != g->second.rend(); ++it) {
          const auto &[key, c] = **it;
          if (c[p].is_zero())
            continue;
          std::string rest;
          for (int leg = 1; leg < K; ++leg) {
            const auto &m = key[static_cast<size_t>(leg)];
            std::string ms = m.is_one() ? "1" : m.str(dim_);
            rest += (leg > 1 ? " ⊗ " : "") + ms;
          }
          if (K > 2)
            rest = "[" + rest + "]";
          w.add(c[p], join_factors(a_power(p), rest == "1" ? "" : rest));
          ++count;
        }
      std::string right = w.str();
      if (count > 1)
        right = "(" + right + ")";
      out += (out.empty() ? "" : " + ") + left + " ⊗ " + right;
    }
    return out.empty() ? "0" : out;
  }

private:
  int dim_;
  int order_;
  Terms terms_;
};

using Tensor2 = Tensor<2>;
using Tensor3 = Tensor<3>;

namespace detail {

template <int K>
void tensor_accumulate_row(const std::pair<const typename Tensor<K>::Key, Series> &lt,
                           const std::vector<const std::pair<const typename Tensor<K>::Key, Series> *> &rhs,
                           int order, std::map<typename Tensor<K>::Key, Series> &acc) {
  using Key = typename Tensor<K>::Key;
  const int lv = lt.second.valuation();
  for (const auto *rt : rhs) {
    if (lv + rt->second.valuation() > order)
      continue;
    Series c = lt.second * rt->second;
    if (c.is_zero())
      continue;
    std::array<const std::vector<MonomialTerm> *, K> parts;
    for (int leg = 0; leg < K; ++leg)
      parts[static_cast<size_t>(leg)] = &monomial_product(
          lt.first[static_cast<size_t>(leg)], rt->first[static_cast<size_t>(leg)]);
    std::array<size_t, K> pos{};
    while (true) {
      Key k;
      int64_t coeff = 1;
      for (int leg = 0; leg < K; ++leg) {
        const auto &t = (*parts[static_cast<size_t>(leg)])[pos[static_cast<size_t>(leg)]];
        k[static_cast<size_t>(leg)] = t.mono;
        coeff *= t.coeff;
      }
      auto [it, inserted] = acc.try_emplace(k, order);
      it->second += c * GaussRat(coeff);
      int leg = K - 1;
      while (leg >= 0) {
        auto &p = pos[static_cast<size_t>(leg)];
        if (++p < parts[static_cast<size_t>(leg)]->size())
          break;
        p = 0;
        --leg;
      }
      if (leg < 0)
        break;
    }
  }
}

template <int K>
std::vector<const std::pair<const typename Tensor<K>::Key, Series> *>
tensor_rows(const Tensor<K> &t) {
  std::vector<const std::pair<const typename Tensor<K>::Key, Series> *> out;
  out.reserve(t.size());
  for (const auto &kv : t.terms())
    out.push_back(&kv);
  return out;
}

} // namespace detail

/// Serial reference kernel for componentwise tensor multiplication.
template <int K> Tensor<K> tensor_mul_serial(const Tensor<K> &a, const Tensor<K> &b) {
  require_same_shape(a.dim(), a.order(), b.dim(), b.order());
  auto rhs = detail::tensor_rows(b);
  std::map<typename Tensor<K>::Key, Series> acc;
  for (const auto &lt : a.terms())
    detail::tensor_accumulate_row<K>(lt, rhs, a.order(), acc);
  Tensor<K> r(a.dim(), a.order());
  for (const auto &[k, c] : acc)
    r.add_term(k, c);
  return r;
}

/// OpenMP kernel; bit-identical to the serial one.
template <int K> Tensor<K> tensor_mul_parallel(const Tensor<K> &a, const Tensor<K> &b) {
  require_same_shape(a.dim(), a.order(), b.dim(), b.order());
  auto lhs = detail::tensor_rows(a);
  auto rhs = detail::tensor_rows(b);
  std::map<typename Tensor<K>::Key, Series> acc;
#pragma omp parallel
  {
    std::map<typename Tensor<K>::Key, Series> local;
#pragma omp for schedule(dynamic) nowait
    for (long i = 0; i < static_cast<long>(lhs.size()); ++i)
      detail::tensor_accumulate_row<K>(*lhs[static_cast<size_t>(i)], rhs, a.order(), local);
#pragma omp critical
    for (auto &[k, c] : local) {
      auto [it, inserted] = acc.try_emplace(k, a.order());
      it->second += c;
    }
  }
  Tensor<K> r(a.dim(), a.order());
  for (const auto &[k, c] : acc)
    r.add_term(k, c);
  return r;
}

template <int K> Tensor<K> operator*(const Tensor<K> &a, const Tensor<K> &b) {
  if (a.size() * b.size() >= 4096)
    return tensor_mul_parallel(a, b);
  return tensor_mul_serial(a, b);
}

/// Two-sided inverse of a tensor 1 (x) 1 + X with X of positive a-valuation.
template <int K> Tensor<K> tensor_invert(const Tensor<K> &t) {
  Tensor<K> one = Tensor<K>::one(t.dim(), t.order());
  Tensor<K> x = t - one;
  if (!x.is_zero() && x.valuation() < 1)
    throw NonInvertibleTensor("leading term is not 1 (x) 1");
  Tensor<K> r = one, term = one;
  for (int k = 1; k <= t.order(); ++k) {
    term = -(term * x);
    if (term.is_zero())
      break;
    r += term;
  }
  return r;
}

/// Primitive coproduct X (x) 1 + 1 (x) X of a Lie element.
Tensor2 primitive_coproduct(const DiffOp &x);
/// (Delta (x) id) Delta X for a Lie element.
Tensor3 primitive_coproduct2(const DiffOp &x);

Tensor2 tensor(const DiffOp &l, const DiffOp &r);
Tensor3 tensor(const DiffOp &l, const DiffOp &m, const DiffOp &r);

/// Swaps the two legs.
Tensor2 flip(const Tensor2 &t);
/// Places t on legs (0,1) or (1,2) of a three-fold tensor.
Tensor3 embed12(const Tensor2 &t);
Tensor3 embed23(const Tensor2 &t);

/// Multiplies the legs together: a (x) b -> a b.
DiffOp multiply_legs(const Tensor2 &t);
/// Counit on the left or right leg; on images of the enveloping algebra the
/// counit is the coefficient of the unit monomial.
DiffOp counit_left(const Tensor2 &t);
DiffOp counit_right(const Tensor2 &t);

/// Action f (x) g -> sum (l f)(r g).
Poly act_and_multiply(const Tensor2 &t, const Poly &f, const Poly &g);

template <int K> int first_difference_order(const Tensor<K> &a, const Tensor<K> &b) {
  return (a - b).valuation();
}

} // namespace kforge
