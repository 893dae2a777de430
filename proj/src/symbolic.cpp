#include "kforge/symbolic.hpp"

#include <utility>

namespace kforge {

namespace {

int64_t binom(int n, int k) {
  int64_t r = 1;
  for (int j = 1; j <= k; ++j)
    r = r * (n - k + j) / j;
  return r;
}

} // namespace

SymbolicTensor::SymbolicTensor(int dim, int order, std::vector<Alphabet> legs)
    : dim_(dim), order_(order), legs_(std::move(legs)) {
  for (const auto &alpha : legs_)
    for (const auto &s : alpha)
      require_same_shape(dim_, order_, s.op.dim(), s.op.order());
}

SymbolicTensor SymbolicTensor::one(int dim, int order, std::vector<Alphabet> legs) {
  SymbolicTensor t(dim, order, std::move(legs));
  t.add_term(Exponents(t.width(), 0), Series::constant(order, GaussRat(1)));
  return t;
}

size_t SymbolicTensor::offset(int leg) const {
  size_t off = 0;
  for (int j = 0; j < leg; ++j)
    off += legs_[static_cast<size_t>(j)].size();
  return off;
}

int SymbolicTensor::valuation() const {
  int v = -1;
  for (const auto &[e, c] : terms_) {
    int cv = c.valuation();
    if (v < 0 || cv < v)
      v = cv;
  }
  return v;
}

void SymbolicTensor::add_term(const Exponents &e, const Series &c) {
  if (e.size() != width())
    throw DimMismatch("exponent vector does not match the alphabets");
  if (c.order() != order_)
    throw OrderMismatch("symbolic tensor coefficient order");
  if (c.is_zero())
    return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero())
      terms_.erase(it);
  }
}

void SymbolicTensor::set_term(const Exponents &e, const Series &c) {
  terms_.erase(e);
  add_term(e, c);
}

void SymbolicTensor::require_compatible(const SymbolicTensor &o) const {
  require_same_shape(dim_, order_, o.dim_, o.order_);
  bool same = legs_.size() == o.legs_.size();
  for (size_t j = 0; same && j < legs_.size(); ++j) {
    same = legs_[j].size() == o.legs_[j].size();
    for (size_t s = 0; same && s < legs_[j].size(); ++s)
      same = legs_[j][s].name == o.legs_[j][s].name;
  }
  if (!same)
    throw DimMismatch("symbolic tensors over different alphabets");
}

SymbolicTensor SymbolicTensor::operator-() const {
  SymbolicTensor r(dim_, order_, legs_);
  for (const auto &[e, c] : terms_)
    r.terms_.emplace(e, -c);
  return r;
}

SymbolicTensor &SymbolicTensor::operator+=(const SymbolicTensor &o) {
  require_compatible(o);
  for (const auto &[e, c] : o.terms_)
    add_term(e, c);
  return *this;
}

SymbolicTensor &SymbolicTensor::operator-=(const SymbolicTensor &o) {
  return *this += -o;
}

SymbolicTensor operator*(const SymbolicTensor &a, const SymbolicTensor &b) {
  a.require_compatible(b);
  SymbolicTensor r(a.dim_, a.order_, a.legs_);
  for (const auto &[ea, ca] : a.terms_) {
    const int va = ca.valuation();
    for (const auto &[eb, cb] : b.terms_) {
      if (va + cb.valuation() > a.order_)
        continue;
      SymbolicTensor::Exponents e(ea.size());
      for (size_t i = 0; i < e.size(); ++i)
        e[i] = static_cast<uint8_t>(ea[i] + eb[i]);
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

SymbolicTensor operator*(const Series &s, const SymbolicTensor &a) {
  SymbolicTensor r(a.dim_, a.order_, a.legs_);
  for (const auto &[e, c] : a.terms_)
    r.add_term(e, s * c);
  return r;
}

bool operator==(const SymbolicTensor &a, const SymbolicTensor &b) {
  a.require_compatible(b);
  return a.terms_ == b.terms_;
}

SymbolicTensor SymbolicTensor::exp() const {
  if (!is_zero() && valuation() < 1)
    throw NonNilpotentArgument("exp of a tensor with an a^0 part");
  SymbolicTensor r = one(dim_, order_, legs_);
  SymbolicTensor term = r;
  for (int k = 1; k <= order_; ++k) {
    term = Series::constant(order_, GaussRat(Rational(1, k))) * (term * *this);
    if (term.is_zero())
      break;
    r += term;
  }
  return r;
}

SymbolicTensor SymbolicTensor::invert() const {
  SymbolicTensor unit = one(dim_, order_, legs_);
  SymbolicTensor x = *this - unit;
  if (!x.is_zero() && x.valuation() < 1)
    throw NonInvertibleTensor("leading term is not the unit");
  SymbolicTensor r = unit, term = unit;
  for (int k = 1; k <= order_; ++k) {
    term = -(term * x);
    if (term.is_zero())
      break;
    r += term;
  }
  return r;
}

SymbolicTensor SymbolicTensor::delta(int leg) const {
  std::vector<Alphabet> nl = legs_;
  nl.insert(nl.begin() + leg + 1, legs_[static_cast<size_t>(leg)]);
  SymbolicTensor r(dim_, order_, nl);
  const size_t off = offset(leg);
  const size_t w = legs_[static_cast<size_t>(leg)].size();
  for (const auto &[e, c] : terms_) {
    // enumerate every split f + (e - f) of the leg's exponents
    Exponents f(w, 0);
    while (true) {
      int64_t mult = 1;
      Exponents ne;
      ne.reserve(e.size() + w);
      ne.insert(ne.end(), e.begin(), e.begin() + static_cast<long>(off));
      for (size_t j = 0; j < w; ++j) {
        ne.push_back(f[j]);
        mult *= binom(e[off + j], f[j]);
      }
      for (size_t j = 0; j < w; ++j)
        ne.push_back(static_cast<uint8_t>(e[off + j] - f[j]));
      ne.insert(ne.end(), e.begin() + static_cast<long>(off + w), e.end());
      r.add_term(ne, c * GaussRat(mult));
      size_t j = 0;
      while (j < w) {
        if (f[j] < e[off + j]) {
          ++f[j];
          break;
        }
        f[j] = 0;
        ++j;
      }
      if (j == w)
        break;
    }
  }
  return r;
}

SymbolicTensor SymbolicTensor::antipode(int leg) const {
  SymbolicTensor r(dim_, order_, legs_);
  const size_t off = offset(leg), w = legs_[static_cast<size_t>(leg)].size();
  for (const auto &[e, c] : terms_) {
    int total = 0;
    for (size_t j = 0; j < w; ++j)
      total += e[off + j];
    r.add_term(e, total % 2 ? -c : c);
  }
  return r;
}

SymbolicTensor SymbolicTensor::counit(int leg) const {
  std::vector<Alphabet> nl = legs_;
  nl.erase(nl.begin() + leg);
  SymbolicTensor r(dim_, order_, nl);
  const size_t off = offset(leg), w = legs_[static_cast<size_t>(leg)].size();
  for (const auto &[e, c] : terms_) {
    bool zero_leg = true;
    for (size_t j = 0; j < w; ++j)
      zero_leg = zero_leg && e[off + j] == 0;
    if (!zero_leg)
      continue;
    Exponents ne(e.begin(), e.begin() + static_cast<long>(off));
    ne.insert(ne.end(), e.begin() + static_cast<long>(off + w), e.end());
    r.add_term(ne, c);
  }
  return r;
}

SymbolicTensor SymbolicTensor::insert_unit_leg(int pos) const {
  std::vector<Alphabet> nl = legs_;
  nl.insert(nl.begin() + pos, Alphabet{});
  SymbolicTensor r(dim_, order_, nl);
  r.terms_ = terms_;
  return r;
}

SymbolicTensor SymbolicTensor::permute(const std::vector<int> &perm) const {
  if (static_cast<int>(perm.size()) != legs())
    throw DimMismatch("permutation size");
  std::vector<Alphabet> nl;
  for (int p : perm)
    nl.push_back(legs_[static_cast<size_t>(p)]);
  SymbolicTensor r(dim_, order_, nl);
  for (const auto &[e, c] : terms_) {
    Exponents ne;
    for (int p : perm) {
      size_t off = offset(p), w = legs_[static_cast<size_t>(p)].size();
      ne.insert(ne.end(), e.begin() + static_cast<long>(off),
                e.begin() + static_cast<long>(off + w));
    }
    r.add_term(ne, c);
  }
  return r;
}

const DiffOp &SymbolicTensor::leg_power(int leg, const Exponents &e,
                                        std::map<Exponents, DiffOp> &cache) const {
  auto it = cache.find(e);
  if (it != cache.end())
    return it->second;
  size_t j = 0;
  while (j < e.size() && e[j] == 0)
    ++j;
  if (j == e.size())
    return cache.emplace(e, DiffOp::one(dim_, order_)).first->second;
  Exponents prev = e;
  --prev[j];
  DiffOp p = leg_power(leg, prev, cache) * legs_[static_cast<size_t>(leg)][j].op;
  return cache.emplace(e, std::move(p)).first->second;
}

template <int K> Tensor<K> SymbolicTensor::materialize() const {
  if (legs() != K)
    throw DimMismatch("materializing with the wrong number of legs");
  std::vector<std::map<Exponents, DiffOp>> caches(static_cast<size_t>(K));
  Tensor<K> out(dim_, order_);
  for (const auto &[e, c] : terms_) {
    auto ops = [&]<size_t... I>(std::index_sequence<I...>) {
      return std::array<DiffOp, K>{((void)I, DiffOp(dim_, order_))...};
    }(std::make_index_sequence<K>{});
    for (int leg = 0; leg < K; ++leg) {
      size_t off = offset(leg), w = legs_[static_cast<size_t>(leg)].size();
      Exponents slice(e.begin() + static_cast<long>(off),
                      e.begin() + static_cast<long>(off + w));
      ops[static_cast<size_t>(leg)] = leg_power(leg, slice, caches[static_cast<size_t>(leg)]);
    }
    ops[0] = c * ops[0];
    out += Tensor<K>::product_of(ops);
  }
  return out;
}

DiffOp SymbolicTensor::materialize1() const {
  if (legs() != 1)
    throw DimMismatch("materializing with the wrong number of legs");
  std::map<Exponents, DiffOp> cache;
  DiffOp out(dim_, order_);
  for (const auto &[e, c] : terms_)
    out += c * leg_power(0, e, cache);
  return out;
}

Tensor2 SymbolicTensor::materialize2() const { return materialize<2>(); }
Tensor3 SymbolicTensor::materialize3() const { return materialize<3>(); }

DiffOp SymbolicTensor::multiply_legs() const {
  if (legs() != 2)
    throw DimMismatch("multiply_legs needs two legs");
  std::map<Exponents, DiffOp> c0, c1;
  const size_t w0 = legs_[0].size();
  DiffOp out(dim_, order_);
  for (const auto &[e, c] : terms_) {
    Exponents l(e.begin(), e.begin() + static_cast<long>(w0));
    Exponents r(e.begin() + static_cast<long>(w0), e.end());
    out += c * (leg_power(0, l, c0) * leg_power(1, r, c1));
  }
  return out;
}

std::string SymbolicTensor::str() const {
  std::vector<std::string> parts;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto &[e, c] = *it;
    std::string key;
    for (int leg = 0; leg < legs(); ++leg) {
      std::string f;
      size_t off = offset(leg);
      for (size_t j = 0; j < legs_[static_cast<size_t>(leg)].size(); ++j) {
        int p = e[off + j];
        if (p == 0)
          continue;
        std::string s = legs_[static_cast<size_t>(leg)][j].name;
        if (p > 1)
          s += "^" + std::to_string(p);
        f = join_factors(f, s);
      }
      key += (leg ? " ⊗ " : "") + (f.empty() ? std::string("1") : f);
    }
    parts.push_back("(" + c.str("a") + ") " + key);
  }
  std::string out;
  for (const auto &p : parts)
    out += (out.empty() ? "" : " + ") + p;
  return out.empty() ? "0" : out;
}

} // namespace kforge
