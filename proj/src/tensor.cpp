#include "kforge/tensor.hpp"

namespace kforge {

Tensor2 tensor(const DiffOp &l, const DiffOp &r) {
  return Tensor2::product_of({l, r});
}

Tensor3 tensor(const DiffOp &l, const DiffOp &m, const DiffOp &r) {
  return Tensor3::product_of({l, m, r});
}

Tensor2 primitive_coproduct(const DiffOp &x) {
  DiffOp one = DiffOp::one(x.dim(), x.order());
  return tensor(x, one) + tensor(one, x);
}

Tensor3 primitive_coproduct2(const DiffOp &x) {
  DiffOp one = DiffOp::one(x.dim(), x.order());
  return tensor(x, one, one) + tensor(one, x, one) + tensor(one, one, x);
}

Tensor2 flip(const Tensor2 &t) {
  Tensor2 r(t.dim(), t.order());
  for (const auto &[k, c] : t.terms())
    r.add_term({k[1], k[0]}, c);
  return r;
}

Tensor3 embed12(const Tensor2 &t) {
  Tensor3 r(t.dim(), t.order());
  for (const auto &[k, c] : t.terms())
    r.add_term({k[0], k[1], Monomial{}}, c);
  return r;
}

Tensor3 embed23(const Tensor2 &t) {
  Tensor3 r(t.dim(), t.order());
  for (const auto &[k, c] : t.terms())
    r.add_term({Monomial{}, k[0], k[1]}, c);
  return r;
}

DiffOp multiply_legs(const Tensor2 &t) {
  DiffOp r(t.dim(), t.order());
  for (const auto &[k, c] : t.terms())
    for (const auto &p : monomial_product(k[0], k[1]))
      r.add_term(p.mono, c * GaussRat(p.coeff));
  return r;
}

DiffOp counit_left(const Tensor2 &t) {
  DiffOp r(t.dim(), t.order());
  for (const auto &[k, c] : t.terms())
    if (k[0].is_one())
      r.add_term(k[1], c);
  return r;
}

DiffOp counit_right(const Tensor2 &t) {
  DiffOp r(t.dim(), t.order());
  for (const auto &[k, c] : t.terms())
    if (k[1].is_one())
      r.add_term(k[0], c);
  return r;
}

Poly act_and_multiply(const Tensor2 &t, const Poly &f, const Poly &g) {
  require_same_shape(t.dim(), t.order(), f.dim(), f.order());
  require_same_shape(t.dim(), t.order(), g.dim(), g.order());
  Poly out(f.dim(), f.order());
  const Series one = Series::constant(t.order(), GaussRat(1));
  for (const auto &[k, c] : t.terms()) {
    Poly lf = apply(DiffOp::monomial(t.dim(), k[0], one), f);
    if (lf.is_zero())
      continue;
    Poly rg = apply(DiffOp::monomial(t.dim(), k[1], one), g);
    if (rg.is_zero())
      continue;
    out += c * (lf * rg);
  }
  return out;
}

} // namespace kforge
