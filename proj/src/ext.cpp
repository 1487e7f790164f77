#include "arq/ext.hpp"

#include <cassert>

namespace arq {

ExtClass::ExtClass(Rep base, Rep fiber, std::vector<Matrix> cocycle)
    : base_(std::move(base)), fiber_(std::move(fiber)), cocycle_(std::move(cocycle)) {
  const Quiver& q = *base_.quiver();
  if (*fiber_.quiver() != q || base_.modulus() != fiber_.modulus())
    throw PreconditionError("ExtClass: quiver/modulus mismatch");
  if (cocycle_.size() != q.num_arrows())
    throw PreconditionError("ExtClass: wrong cocycle length");
  for (size_t a = 0; a < q.num_arrows(); ++a) {
    size_t x = q.vertex_index(q.arrows()[a].src);
    size_t y = q.vertex_index(q.arrows()[a].tgt);
    if (cocycle_[a].rows() != fiber_.dim(y) || cocycle_[a].cols() != base_.dim(x))
      throw PreconditionError("ExtClass: cocycle shape mismatch at arrow " +
                              q.arrows()[a].id);
  }
}

ExtClass ExtClass::zero(const Rep& base, const Rep& fiber) {
  const Quiver& q = *base.quiver();
  std::vector<Matrix> z;
  for (size_t a = 0; a < q.num_arrows(); ++a) {
    size_t x = q.vertex_index(q.arrows()[a].src);
    size_t y = q.vertex_index(q.arrows()[a].tgt);
    z.emplace_back(fiber.dim(y), base.dim(x), base.modulus());
  }
  return ExtClass(base, fiber, std::move(z));
}

ExtClass ExtClass::operator+(const ExtClass& o) const {
  std::vector<Matrix> z;
  for (size_t a = 0; a < cocycle_.size(); ++a) z.push_back(cocycle_[a] + o.cocycle_[a]);
  return ExtClass(base_, fiber_, std::move(z));
}

ExtClass ExtClass::operator-(const ExtClass& o) const {
  std::vector<Matrix> z;
  for (size_t a = 0; a < cocycle_.size(); ++a) z.push_back(cocycle_[a] - o.cocycle_[a]);
  return ExtClass(base_, fiber_, std::move(z));
}

ExtClass ExtClass::scaled(uint32_t c) const {
  std::vector<Matrix> z;
  for (const Matrix& m : cocycle_) z.push_back(m.scaled(c));
  return ExtClass(base_, fiber_, std::move(z));
}

namespace {

// The coboundary map (h_x)_x |-> (A_alpha h_x - h_y C_alpha)_alpha as a
// matrix from vertexwise-Hom flat coordinates to cocycle flat coordinates.
Matrix coboundary_matrix(const Rep& base, const Rep& fiber,
                         const std::vector<size_t>& arrow_off, size_t flat_dim) {
  const Quiver& q = *base.quiver();
  uint32_t p = base.modulus();
  std::vector<size_t> hoff(q.num_vertices() + 1, 0);
  for (size_t x = 0; x < q.num_vertices(); ++x)
    hoff[x + 1] = hoff[x] + fiber.dim(x) * base.dim(x);
  Matrix cb(flat_dim, hoff.back(), p);
  for (size_t a = 0; a < q.num_arrows(); ++a) {
    size_t x = q.vertex_index(q.arrows()[a].src);
    size_t y = q.vertex_index(q.arrows()[a].tgt);
    const Matrix& fa = fiber.map(a);  // A_y x A_x
    const Matrix& ba = base.map(a);   // C_y x C_x
    // Output entry (i, j) at arrow a: sum_k fa(i,k) h_x(k,j) - sum_k h_y(i,k) ba(k,j).
    for (size_t i = 0; i < fiber.dim(y); ++i) {
      for (size_t j = 0; j < base.dim(x); ++j) {
        size_t row = arrow_off[a] + i * base.dim(x) + j;
        for (size_t k = 0; k < fiber.dim(x); ++k)
          cb.set(row, hoff[x] + k * base.dim(x) + j, fa.at(i, k));
        for (size_t k = 0; k < base.dim(y); ++k) {
          size_t idx = hoff[y] + i * base.dim(y) + k;
          cb.set(row, idx, sub_mod(cb.at(row, idx), ba.at(k, j), p));
        }
      }
    }
  }
  return cb;
}

std::vector<size_t> cocycle_offsets(const Rep& base, const Rep& fiber) {
  const Quiver& q = *base.quiver();
  std::vector<size_t> off(q.num_arrows() + 1, 0);
  for (size_t a = 0; a < q.num_arrows(); ++a) {
    size_t x = q.vertex_index(q.arrows()[a].src);
    size_t y = q.vertex_index(q.arrows()[a].tgt);
    off[a + 1] = off[a] + fiber.dim(y) * base.dim(x);
  }
  return off;
}

QuotientSpace build_quotient(const Rep& base, const Rep& fiber,
                             const std::vector<size_t>& off, size_t flat_dim) {
  uint32_t p = base.modulus();
  Matrix cb = coboundary_matrix(base, fiber, off, flat_dim);
  return QuotientSpace(Matrix::identity(flat_dim, p), image(cb));
}

}  // namespace

ExtSpace::ExtSpace(Rep base, Rep fiber)
    : base_(std::move(base)),
      fiber_(std::move(fiber)),
      arrow_offsets_(cocycle_offsets(base_, fiber_)),
      flat_dim_(arrow_offsets_.back()),
      quotient_(build_quotient(base_, fiber_, arrow_offsets_, flat_dim_)) {}

Matrix ExtSpace::flatten(const std::vector<Matrix>& cocycle) const {
  Matrix v(flat_dim_, 1, base_.modulus());
  const Quiver& q = *base_.quiver();
  for (size_t a = 0; a < q.num_arrows(); ++a) {
    const Matrix& m = cocycle[a];
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j)
        v.set(arrow_offsets_[a] + i * m.cols() + j, 0, m.at(i, j));
  }
  return v;
}

std::vector<Matrix> ExtSpace::unflatten(const Matrix& flat) const {
  const Quiver& q = *base_.quiver();
  std::vector<Matrix> cocycle;
  for (size_t a = 0; a < q.num_arrows(); ++a) {
    size_t x = q.vertex_index(q.arrows()[a].src);
    size_t y = q.vertex_index(q.arrows()[a].tgt);
    Matrix m(fiber_.dim(y), base_.dim(x), base_.modulus());
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j)
        m.set(i, j, flat.at(arrow_offsets_[a] + i * m.cols() + j, 0));
    cocycle.push_back(std::move(m));
  }
  return cocycle;
}

std::vector<ExtClass> ExtSpace::basis() const {
  std::vector<ExtClass> out;
  const Matrix& reps = quotient_.representatives();
  for (size_t k = 0; k < reps.cols(); ++k)
    out.emplace_back(base_, fiber_, unflatten(reps.col(k)));
  return out;
}

Matrix ExtSpace::coords_of(const ExtClass& cls) const {
  if (!cls.base().same_shape(base_) || !cls.fiber().same_shape(fiber_))
    throw PreconditionError("ExtSpace::coords_of: class from a different space");
  return quotient_.reduce(flatten(cls.cocycle()));
}

ExtClass ExtSpace::from_coords(const Matrix& coords) const {
  if (dim() == 0) return ExtClass::zero(base_, fiber_);
  return ExtClass(base_, fiber_, unflatten(quotient_.representatives() * coords));
}

bool ExtSpace::is_split(const ExtClass& cls) const { return coords_of(cls).is_zero(); }

bool ExtSpace::equal(const ExtClass& a, const ExtClass& b) const {
  return coords_of(a) == coords_of(b);
}

std::vector<ExtClass> ext_space_basis(const Rep& c, const Rep& a) {
  return ExtSpace(c, a).basis();
}

size_t ext_dim(const Rep& c, const Rep& a) { return ExtSpace(c, a).dim(); }

ExtClass pushout(const ExtClass& delta, const RepMorphism& a) {
  if (a.source() != delta.fiber())
    throw PreconditionError("pushout: morphism source differs from fiber");
  const Quiver& q = *delta.base().quiver();
  std::vector<Matrix> z;
  for (size_t ai = 0; ai < q.num_arrows(); ++ai) {
    size_t y = q.vertex_index(q.arrows()[ai].tgt);
    z.push_back(a.comp(y) * delta.cocycle()[ai]);
  }
  return ExtClass(delta.base(), a.target(), std::move(z));
}

ExtClass pullback(const ExtClass& delta, const RepMorphism& c) {
  if (c.target() != delta.base())
    throw PreconditionError("pullback: morphism target differs from base");
  const Quiver& q = *delta.base().quiver();
  std::vector<Matrix> z;
  for (size_t ai = 0; ai < q.num_arrows(); ++ai) {
    size_t x = q.vertex_index(q.arrows()[ai].src);
    z.push_back(delta.cocycle()[ai] * c.comp(x));
  }
  return ExtClass(c.source(), delta.fiber(), std::move(z));
}

ExtClass direct_sum_ext(const ExtClass& delta, const ExtClass& delta_prime) {
  DirectSum bsum = direct_sum({delta.base(), delta_prime.base()});
  DirectSum fsum = direct_sum({delta.fiber(), delta_prime.fiber()});
  const Quiver& q = *delta.base().quiver();
  std::vector<Matrix> z;
  for (size_t a = 0; a < q.num_arrows(); ++a) {
    size_t x = q.vertex_index(q.arrows()[a].src);
    size_t y = q.vertex_index(q.arrows()[a].tgt);
    Matrix m(fsum.sum.dim(y), bsum.sum.dim(x), delta.base().modulus());
    m.set_block(0, 0, delta.cocycle()[a]);
    m.set_block(delta.fiber().dim(y), delta.base().dim(x), delta_prime.cocycle()[a]);
    z.push_back(std::move(m));
  }
  return ExtClass(bsum.sum, fsum.sum, std::move(z));
}

bool is_split(const ExtClass& delta) {
  return ExtSpace(delta.base(), delta.fiber()).is_split(delta);
}

void STriangle::validate() const {
  if (!infl.vertexwise_injective())
    throw PreconditionError("STriangle: inflation not vertexwise injective");
  if (!defl.vertexwise_surjective())
    throw PreconditionError("STriangle: deflation not vertexwise surjective");
  if (!compose(defl, infl).is_zero())
    throw PreconditionError("STriangle: defl . infl nonzero");
  for (size_t x = 0; x < middle.quiver()->num_vertices(); ++x) {
    if (middle.dim(x) != fiber.dim(x) + base.dim(x))
      throw PreconditionError("STriangle: middle dimension mismatch");
  }
  ExtClass read = class_of(fiber, middle, base, infl, defl);
  if (!ExtSpace(base, fiber).equal(read, cls))
    throw PreconditionError("STriangle: stored class disagrees with the sequence");
}

STriangle realize(const ExtClass& delta) {
  const Rep& a = delta.fiber();
  const Rep& c = delta.base();
  const Quiver& q = *c.quiver();
  uint32_t p = c.modulus();
  std::vector<size_t> dims(q.num_vertices());
  for (size_t x = 0; x < dims.size(); ++x) dims[x] = a.dim(x) + c.dim(x);
  std::vector<Matrix> maps;
  for (size_t ai = 0; ai < q.num_arrows(); ++ai) {
    size_t x = q.vertex_index(q.arrows()[ai].src);
    size_t y = q.vertex_index(q.arrows()[ai].tgt);
    Matrix m(dims[y], dims[x], p);
    m.set_block(0, 0, a.map(ai));
    m.set_block(0, a.dim(x), delta.cocycle()[ai]);
    m.set_block(a.dim(y), a.dim(x), c.map(ai));
    maps.push_back(std::move(m));
  }
  Rep middle(c.quiver(), p, dims, std::move(maps));
  std::vector<Matrix> icomps, dcomps;
  for (size_t x = 0; x < q.num_vertices(); ++x) {
    Matrix ic(dims[x], a.dim(x), p);
    for (size_t i = 0; i < a.dim(x); ++i) ic.set(i, i, 1);
    Matrix dc(c.dim(x), dims[x], p);
    for (size_t i = 0; i < c.dim(x); ++i) dc.set(i, a.dim(x) + i, 1);
    icomps.push_back(std::move(ic));
    dcomps.push_back(std::move(dc));
  }
  STriangle t;
  t.fiber = a;
  t.middle = middle;
  t.base = c;
  t.infl = RepMorphism(a, middle, std::move(icomps));
  t.defl = RepMorphism(middle, c, std::move(dcomps));
  t.cls = delta;
  return t;
}

ExtClass class_of(const Rep& fiber, const Rep& middle, const Rep& base,
                  const RepMorphism& infl, const RepMorphism& defl) {
  const Quiver& q = *base.quiver();
  size_t nv = q.num_vertices();
  // Vertexwise right inverses s_x of defl (echelon-determined).
  std::vector<Matrix> s(nv);
  for (size_t x = 0; x < nv; ++x) {
    auto sol = solve(defl.comp(x), Matrix::identity(base.dim(x), base.modulus()));
    if (!sol) throw PreconditionError("class_of: deflation not vertexwise surjective");
    s[x] = *sol;
  }
  std::vector<Matrix> cocycle;
  for (size_t a = 0; a < q.num_arrows(); ++a) {
    size_t x = q.vertex_index(q.arrows()[a].src);
    size_t y = q.vertex_index(q.arrows()[a].tgt);
    // B_alpha s_x - s_y C_alpha lands in the image of the inflation.
    Matrix w = middle.map(a) * s[x] - s[y] * base.map(a);
    auto z = solve(infl.comp(y), w);
    if (!z) throw PreconditionError("class_of: sequence not exact at the middle");
    cocycle.push_back(*z);
  }
  return ExtClass(base, fiber, std::move(cocycle));
}

STriangle make_triangle(const Rep& fiber, const Rep& middle, const Rep& base,
                        const RepMorphism& infl, const RepMorphism& defl) {
  STriangle t;
  t.fiber = fiber;
  t.middle = middle;
  t.base = base;
  t.infl = infl;
  t.defl = defl;
  t.cls = class_of(fiber, middle, base, infl, defl);
  if (!infl.vertexwise_injective() || !defl.vertexwise_surjective() ||
      !compose(defl, infl).is_zero())
    throw PreconditionError("make_triangle: not a short exact sequence");
  for (size_t x = 0; x < middle.quiver()->num_vertices(); ++x)
    if (middle.dim(x) != fiber.dim(x) + base.dim(x))
      throw PreconditionError("make_triangle: not exact at the middle");
  return t;
}

std::optional<STriangleMorphism> complete_square(const STriangle& t,
                                                 const STriangle& t_prime,
                                                 const RepMorphism& a,
                                                 const RepMorphism& c) {
  if (a.source() != t.fiber || a.target() != t_prime.fiber ||
      c.source() != t.base || c.target() != t_prime.base)
    throw PreconditionError("complete_square: endpoint mismatch");
  ExtSpace es(t.base, t_prime.fiber);
  if (!es.equal(pushout(t.cls, a), pullback(t_prime.cls, c))) return std::nullopt;
  // Solve for b: middle -> middle' with b . infl = infl' . a and
  // defl' . b = c . defl, over the Hom space of the middles.
  HomSpace mids = hom_space(t.middle, t_prime.middle);
  RepMorphism lhs1 = compose(t_prime.infl, a);
  RepMorphism lhs2 = compose(c, t.defl);
  size_t rows1 = morphism_to_flat(lhs1).rows();
  size_t rows2 = morphism_to_flat(lhs2).rows();
  uint32_t p = t.base.modulus();
  Matrix system(rows1 + rows2, mids.dim(), p);
  for (size_t k = 0; k < mids.dim(); ++k) {
    Matrix top = morphism_to_flat(compose(mids.basis[k], t.infl));
    Matrix bot = morphism_to_flat(compose(t_prime.defl, mids.basis[k]));
    system.set_block(0, k, top);
    system.set_block(rows1, k, bot);
  }
  Matrix rhs = morphism_to_flat(lhs1).vstack(morphism_to_flat(lhs2));
  auto sol = solve(system, rhs);
  if (!sol)
    throw PreconditionError("complete_square: compatible pair admits no filler");
  STriangleMorphism out;
  out.a = a;
  out.b = mids.from_coords(*sol);
  out.c = c;
  return out;
}

bool is_section(const RepMorphism& f) {
  return factor_through_left(RepMorphism::identity(f.source()), f).has_value();
}

bool is_retraction(const RepMorphism& f) {
  return factor_through(RepMorphism::identity(f.target()), f).has_value();
}

std::optional<RepMorphism> factor_through(const RepMorphism& g, const RepMorphism& after) {
  if (g.target() != after.target())
    throw PreconditionError("factor_through: targets differ");
  HomSpace h = hom_space(g.source(), after.source());
  Matrix sys(morphism_to_flat(g).rows(), h.dim(), g.source().modulus());
  for (size_t k = 0; k < h.dim(); ++k)
    sys.set_block(0, k, morphism_to_flat(compose(after, h.basis[k])));
  auto sol = solve(sys, morphism_to_flat(g));
  if (!sol) return std::nullopt;
  return h.from_coords(*sol);
}

std::optional<RepMorphism> factor_through_left(const RepMorphism& g,
                                               const RepMorphism& before) {
  if (g.source() != before.source())
    throw PreconditionError("factor_through_left: sources differ");
  HomSpace h = hom_space(before.target(), g.target());
  Matrix sys(morphism_to_flat(g).rows(), h.dim(), g.source().modulus());
  for (size_t k = 0; k < h.dim(); ++k)
    sys.set_block(0, k, morphism_to_flat(compose(h.basis[k], before)));
  auto sol = solve(sys, morphism_to_flat(g));
  if (!sol) return std::nullopt;
  return h.from_coords(*sol);
}

std::optional<RepMorphism> factor_through_deflation(const RepMorphism& g,
                                                    const STriangle& t) {
  if (g.target() != t.base)
    throw PreconditionError("factor_through_deflation: target is not the base");
  auto witness = factor_through(g, t.defl);
  bool split = ExtSpace(g.source(), t.fiber).is_split(pullback(t.cls, g));
  if (witness.has_value() != split)
    throw PreconditionError(
        "factor_through_deflation: solve and pullback-split criteria disagree");
  return witness;
}

}  // namespace arq
