#include "arq/rep.hpp"

#include <algorithm>
#include <cassert>

namespace arq {

Rep::Rep(QuiverPtr q, uint32_t p, std::vector<size_t> dims, std::vector<Matrix> maps)
    : q_(std::move(q)), p_(p), dims_(std::move(dims)), maps_(std::move(maps)) {
  if (dims_.size() != q_->num_vertices() || maps_.size() != q_->num_arrows())
    throw PreconditionError("Rep: dims/maps length mismatch");
  for (size_t a = 0; a < maps_.size(); ++a) {
    const Arrow& ar = q_->arrows()[a];
    size_t ds = dims_[q_->vertex_index(ar.src)];
    size_t dt = dims_[q_->vertex_index(ar.tgt)];
    if (maps_[a].rows() != dt || maps_[a].cols() != ds || maps_[a].modulus() != p_)
      throw PreconditionError("Rep: map shape mismatch at arrow " + ar.id);
  }
}

Rep Rep::zero_rep(QuiverPtr q, uint32_t p) {
  std::vector<size_t> dims(q->num_vertices(), 0);
  std::vector<Matrix> maps;
  for (size_t a = 0; a < q->num_arrows(); ++a) maps.emplace_back(0, 0, p);
  return Rep(std::move(q), p, std::move(dims), std::move(maps));
}

size_t Rep::total_dim() const {
  size_t t = 0;
  for (size_t d : dims_) t += d;
  return t;
}

Matrix Rep::path_map(const Path& path) const {
  Matrix m = Matrix::identity(dims_[q_->vertex_index(path.src)], p_);
  for (size_t ai : path.arrows) m = maps_[ai] * m;
  return m;
}

bool Rep::same_shape(const Rep& o) const {
  return p_ == o.p_ && *q_ == *o.q_ && dims_ == o.dims_;
}

bool Rep::operator==(const Rep& o) const {
  return same_shape(o) && maps_ == o.maps_;
}

RepMorphism::RepMorphism(Rep source, Rep target, std::vector<Matrix> comps)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(comps)) {
  const Quiver& q = *source_.quiver();
  if (*target_.quiver() != q || source_.modulus() != target_.modulus())
    throw PreconditionError("RepMorphism: quiver/modulus mismatch");
  if (comps_.size() != q.num_vertices())
    throw PreconditionError("RepMorphism: wrong number of components");
  for (size_t x = 0; x < q.num_vertices(); ++x) {
    if (comps_[x].rows() != target_.dim(x) || comps_[x].cols() != source_.dim(x))
      throw PreconditionError("RepMorphism: component shape mismatch");
  }
  for (size_t a = 0; a < q.num_arrows(); ++a) {
    size_t x = q.vertex_index(q.arrows()[a].src);
    size_t y = q.vertex_index(q.arrows()[a].tgt);
    if (comps_[y] * source_.map(a) != target_.map(a) * comps_[x])
      throw PreconditionError("RepMorphism: intertwining law violated at arrow " +
                              q.arrows()[a].id);
  }
}

RepMorphism RepMorphism::zero(const Rep& source, const Rep& target) {
  std::vector<Matrix> comps;
  for (size_t x = 0; x < source.quiver()->num_vertices(); ++x)
    comps.emplace_back(target.dim(x), source.dim(x), source.modulus());
  return RepMorphism(source, target, std::move(comps));
}

RepMorphism RepMorphism::identity(const Rep& m) {
  std::vector<Matrix> comps;
  for (size_t x = 0; x < m.quiver()->num_vertices(); ++x)
    comps.push_back(Matrix::identity(m.dim(x), m.modulus()));
  return RepMorphism(m, m, std::move(comps));
}

bool RepMorphism::is_zero() const {
  for (const Matrix& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

bool RepMorphism::vertexwise_injective() const {
  for (const Matrix& c : comps_)
    if (rank(c) != c.cols()) return false;
  return true;
}

bool RepMorphism::vertexwise_surjective() const {
  for (const Matrix& c : comps_)
    if (rank(c) != c.rows()) return false;
  return true;
}

bool RepMorphism::is_iso() const {
  for (const Matrix& c : comps_)
    if (c.rows() != c.cols() || rank(c) != c.rows()) return false;
  return true;
}

RepMorphism RepMorphism::inverse() const {
  if (!is_iso()) throw PreconditionError("RepMorphism::inverse: not invertible");
  std::vector<Matrix> comps;
  for (const Matrix& c : comps_) {
    auto inv = solve(c, Matrix::identity(c.rows(), c.modulus()));
    comps.push_back(*inv);
  }
  return RepMorphism(target_, source_, std::move(comps));
}

RepMorphism RepMorphism::operator+(const RepMorphism& o) const {
  std::vector<Matrix> comps;
  for (size_t x = 0; x < comps_.size(); ++x) comps.push_back(comps_[x] + o.comps_[x]);
  return RepMorphism(source_, target_, std::move(comps));
}

RepMorphism RepMorphism::operator-(const RepMorphism& o) const {
  std::vector<Matrix> comps;
  for (size_t x = 0; x < comps_.size(); ++x) comps.push_back(comps_[x] - o.comps_[x]);
  return RepMorphism(source_, target_, std::move(comps));
}

RepMorphism RepMorphism::scaled(uint32_t c) const {
  std::vector<Matrix> comps;
  for (const Matrix& m : comps_) comps.push_back(m.scaled(c));
  return RepMorphism(source_, target_, std::move(comps));
}

bool RepMorphism::operator==(const RepMorphism& o) const {
  return source_ == o.source_ && target_ == o.target_ && comps_ == o.comps_;
}

RepMorphism compose(const RepMorphism& g, const RepMorphism& f) {
  if (f.target() != g.source())
    throw PreconditionError("compose: middle objects differ");
  std::vector<Matrix> comps;
  for (size_t x = 0; x < f.comps().size(); ++x) comps.push_back(g.comp(x) * f.comp(x));
  return RepMorphism(f.source(), g.target(), std::move(comps));
}

// ---- Hom spaces -----------------------------------------------------------

namespace {

// Offsets of each vertex component inside the flat coordinate vector.
std::vector<size_t> flat_offsets(const Rep& m, const Rep& n) {
  std::vector<size_t> off(m.quiver()->num_vertices() + 1, 0);
  for (size_t x = 0; x < m.quiver()->num_vertices(); ++x)
    off[x + 1] = off[x] + n.dim(x) * m.dim(x);
  return off;
}

}  // namespace

Matrix morphism_to_flat(const RepMorphism& f) {
  const Rep& m = f.source();
  const Rep& n = f.target();
  auto off = flat_offsets(m, n);
  Matrix v(off.back(), 1, m.modulus());
  for (size_t x = 0; x < m.quiver()->num_vertices(); ++x) {
    const Matrix& c = f.comp(x);
    for (size_t i = 0; i < c.rows(); ++i)
      for (size_t j = 0; j < c.cols(); ++j)
        v.set(off[x] + i * c.cols() + j, 0, c.at(i, j));
  }
  return v;
}

RepMorphism morphism_from_flat(const Rep& source, const Rep& target, const Matrix& flat) {
  auto off = flat_offsets(source, target);
  if (flat.rows() != off.back() || flat.cols() != 1)
    throw PreconditionError("morphism_from_flat: wrong length");
  std::vector<Matrix> comps;
  for (size_t x = 0; x < source.quiver()->num_vertices(); ++x) {
    Matrix c(target.dim(x), source.dim(x), source.modulus());
    for (size_t i = 0; i < c.rows(); ++i)
      for (size_t j = 0; j < c.cols(); ++j)
        c.set(i, j, flat.at(off[x] + i * c.cols() + j, 0));
    comps.push_back(std::move(c));
  }
  return RepMorphism(source, target, std::move(comps));
}

Matrix morphisms_to_columns(const Rep& source, const Rep& target,
                            const std::vector<RepMorphism>& fs) {
  auto off = flat_offsets(source, target);
  Matrix m(off.back(), fs.size(), source.modulus());
  for (size_t k = 0; k < fs.size(); ++k) m.set_block(0, k, morphism_to_flat(fs[k]));
  return m;
}

std::vector<RepMorphism> hom_basis(const Rep& m, const Rep& n) {
  if (*m.quiver() != *n.quiver() || m.modulus() != n.modulus())
    throw PreconditionError("hom_basis: quiver/modulus mismatch");
  const Quiver& q = *m.quiver();
  uint32_t p = m.modulus();
  auto off = flat_offsets(m, n);
  size_t unknowns = off.back();

  size_t eqs = 0;
  for (size_t a = 0; a < q.num_arrows(); ++a) {
    size_t x = q.vertex_index(q.arrows()[a].src);
    size_t y = q.vertex_index(q.arrows()[a].tgt);
    eqs += n.dim(y) * m.dim(x);
  }
  Matrix constraints(eqs, unknowns, p);
  size_t row = 0;
  for (size_t a = 0; a < q.num_arrows(); ++a) {
    size_t x = q.vertex_index(q.arrows()[a].src);
    size_t y = q.vertex_index(q.arrows()[a].tgt);
    const Matrix& ma = m.map(a);  // m.dim(y) x m.dim(x)
    const Matrix& na = n.map(a);  // n.dim(y) x n.dim(x)
    // Equation (i, j): sum_k comps[y](i,k) ma(k,j) - sum_k na(i,k) comps[x](k,j) = 0.
    for (size_t i = 0; i < n.dim(y); ++i) {
      for (size_t j = 0; j < m.dim(x); ++j) {
        for (size_t k = 0; k < m.dim(y); ++k)
          constraints.set(row, off[y] + i * m.dim(y) + k, ma.at(k, j));
        for (size_t k = 0; k < n.dim(x); ++k) {
          size_t idx = off[x] + k * m.dim(x) + j;
          constraints.set(row, idx,
                          sub_mod(constraints.at(row, idx), na.at(i, k), p));
        }
        ++row;
      }
    }
  }
  Matrix ns = nullspace(constraints);
  std::vector<RepMorphism> basis;
  for (size_t k = 0; k < ns.cols(); ++k)
    basis.push_back(morphism_from_flat(m, n, ns.col(k)));
  return basis;
}

RepMorphism HomSpace::from_coords(const Matrix& coords) const {
  if (coords.rows() != basis.size())
    throw PreconditionError("HomSpace::from_coords: wrong length");
  if (basis.empty()) return RepMorphism::zero(source, target);
  return morphism_from_flat(source, target, basis_cols * coords);
}

Matrix HomSpace::coords_of(const RepMorphism& f) const {
  Matrix flat = morphism_to_flat(f);
  if (basis.empty()) {
    if (!flat.is_zero())
      throw PreconditionError("HomSpace::coords_of: morphism outside zero Hom space");
    return Matrix(0, 1, source.modulus());
  }
  auto sol = solve(basis_cols, flat);
  if (!sol) throw PreconditionError("HomSpace::coords_of: morphism outside Hom space");
  return *sol;
}

HomSpace hom_space(const Rep& m, const Rep& n) {
  HomSpace h;
  h.source = m;
  h.target = n;
  h.basis = hom_basis(m, n);
  h.basis_cols = morphisms_to_columns(m, n, h.basis);
  return h;
}

uint64_t hom_count(uint32_t p, size_t dim, uint64_t cap) {
  uint64_t count = 1;
  for (size_t i = 0; i < dim; ++i) {
    count *= p;
    if (count > cap)
      throw CapExceeded("hom enumeration would need " + std::to_string(count) +
                        " > cap " + std::to_string(cap));
  }
  return count;
}

std::vector<RepMorphism> enumerate_hom(const HomSpace& h, uint64_t cap) {
  uint32_t p = h.source.modulus();
  uint64_t count = hom_count(p, h.dim(), cap);
  std::vector<RepMorphism> all;
  all.reserve(count);
  std::vector<uint32_t> digits(h.dim(), 0);
  for (uint64_t k = 0; k < count; ++k) {
    Matrix coords(h.dim(), 1, p);
    for (size_t i = 0; i < h.dim(); ++i) coords.set(i, 0, digits[i]);
    all.push_back(h.from_coords(coords));
    // odometer increment
    for (size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < p) break;
      digits[i] = 0;
    }
  }
  return all;
}

// ---- Structural representations -------------------------------------------

Rep simple_at(QuiverPtr q, uint32_t p, int vertex_id) {
  size_t vi = q->vertex_index(vertex_id);
  std::vector<size_t> dims(q->num_vertices(), 0);
  dims[vi] = 1;
  std::vector<Matrix> maps;
  for (size_t a = 0; a < q->num_arrows(); ++a) {
    size_t x = q->vertex_index(q->arrows()[a].src);
    size_t y = q->vertex_index(q->arrows()[a].tgt);
    maps.emplace_back(dims[y], dims[x], p);
  }
  return Rep(std::move(q), p, std::move(dims), std::move(maps));
}

Rep proj_at(QuiverPtr q, uint32_t p, int vertex_id) {
  q->vertex_index(vertex_id);
  // Basis of P_a at x: the paths a -> x; arrow alpha sends p to alpha p.
  std::vector<std::vector<Path>> basis(q->num_vertices());
  for (const Path& path : q->paths_from(vertex_id))
    basis[q->vertex_index(path.tgt)].push_back(path);
  std::vector<size_t> dims(q->num_vertices());
  for (size_t x = 0; x < dims.size(); ++x) dims[x] = basis[x].size();
  std::vector<Matrix> maps;
  for (size_t a = 0; a < q->num_arrows(); ++a) {
    size_t x = q->vertex_index(q->arrows()[a].src);
    size_t y = q->vertex_index(q->arrows()[a].tgt);
    Matrix m(dims[y], dims[x], p);
    for (size_t j = 0; j < basis[x].size(); ++j) {
      Path extended = basis[x][j];
      extended.arrows.push_back(a);
      extended.tgt = q->arrows()[a].tgt;
      for (size_t i = 0; i < basis[y].size(); ++i) {
        if (basis[y][i] == extended) {
          m.set(i, j, 1);
          break;
        }
      }
    }
    maps.push_back(std::move(m));
  }
  return Rep(std::move(q), p, std::move(dims), std::move(maps));
}

Rep inj_at(QuiverPtr q, uint32_t p, int vertex_id) {
  q->vertex_index(vertex_id);
  // Basis of I_a at x: the paths x -> a; arrow alpha: x -> y sends paths of
  // the form p alpha to p and kills paths that do not start with alpha.
  std::vector<std::vector<Path>> basis(q->num_vertices());
  for (int x : q->vertices())
    for (const Path& path : q->paths(x, vertex_id))
      basis[q->vertex_index(x)].push_back(path);
  std::vector<size_t> dims(q->num_vertices());
  for (size_t x = 0; x < dims.size(); ++x) dims[x] = basis[x].size();
  std::vector<Matrix> maps;
  for (size_t a = 0; a < q->num_arrows(); ++a) {
    size_t x = q->vertex_index(q->arrows()[a].src);
    size_t y = q->vertex_index(q->arrows()[a].tgt);
    Matrix m(dims[y], dims[x], p);
    for (size_t j = 0; j < basis[x].size(); ++j) {
      const Path& path = basis[x][j];
      if (path.arrows.empty() || path.arrows.front() != a) continue;
      Path rest;
      rest.src = q->arrows()[a].tgt;
      rest.tgt = path.tgt;
      rest.arrows.assign(path.arrows.begin() + 1, path.arrows.end());
      for (size_t i = 0; i < basis[y].size(); ++i) {
        if (basis[y][i] == rest) {
          m.set(i, j, 1);
          break;
        }
      }
    }
    maps.push_back(std::move(m));
  }
  return Rep(std::move(q), p, std::move(dims), std::move(maps));
}

RepMorphism morphism_from_projective_generator(const Rep& proj_a, int a, const Rep& n,
                                               const Matrix& gen) {
  const QuiverPtr& q = proj_a.quiver();
  if (gen.rows() != n.dim_at(a) || gen.cols() != 1)
    throw PreconditionError("morphism_from_projective_generator: bad generator shape");
  std::vector<std::vector<Path>> basis(q->num_vertices());
  for (const Path& path : q->paths_from(a))
    basis[q->vertex_index(path.tgt)].push_back(path);
  std::vector<Matrix> comps;
  for (size_t x = 0; x < q->num_vertices(); ++x) {
    Matrix c(n.dim(x), proj_a.dim(x), n.modulus());
    for (size_t j = 0; j < basis[x].size(); ++j)
      c.set_block(0, j, n.path_map(basis[x][j]) * gen);
    comps.push_back(std::move(c));
  }
  return RepMorphism(proj_a, n, std::move(comps));
}

// ---- Direct sums, sub/quotient representations ------------------------------

DirectSum direct_sum(const std::vector<Rep>& parts) {
  if (parts.empty()) throw PreconditionError("direct_sum: need at least one part");
  const QuiverPtr& q = parts[0].quiver();
  uint32_t p = parts[0].modulus();
  size_t nv = q->num_vertices();
  std::vector<size_t> dims(nv, 0);
  for (const Rep& r : parts) {
    if (*r.quiver() != *q || r.modulus() != p)
      throw PreconditionError("direct_sum: mixed quivers/moduli");
    for (size_t x = 0; x < nv; ++x) dims[x] += r.dim(x);
  }
  std::vector<Matrix> maps;
  for (size_t a = 0; a < q->num_arrows(); ++a) {
    size_t x = q->vertex_index(q->arrows()[a].src);
    size_t y = q->vertex_index(q->arrows()[a].tgt);
    Matrix m(dims[y], dims[x], p);
    size_t ro = 0, co = 0;
    for (const Rep& r : parts) {
      m.set_block(ro, co, r.map(a));
      ro += r.dim(y);
      co += r.dim(x);
    }
    maps.push_back(std::move(m));
  }
  Rep sum(q, p, dims, std::move(maps));

  DirectSum out;
  out.sum = sum;
  std::vector<size_t> offset(nv, 0);
  for (const Rep& r : parts) {
    std::vector<Matrix> inc, prj;
    for (size_t x = 0; x < nv; ++x) {
      Matrix in(sum.dim(x), r.dim(x), p);
      Matrix pr(r.dim(x), sum.dim(x), p);
      for (size_t i = 0; i < r.dim(x); ++i) {
        in.set(offset[x] + i, i, 1);
        pr.set(i, offset[x] + i, 1);
      }
      inc.push_back(std::move(in));
      prj.push_back(std::move(pr));
    }
    out.inclusions.emplace_back(r, sum, std::move(inc));
    out.projections.emplace_back(sum, r, std::move(prj));
    for (size_t x = 0; x < nv; ++x) offset[x] += r.dim(x);
  }
  return out;
}

RepMorphism direct_sum_morphism(const DirectSum& src, const DirectSum& tgt,
                                const std::vector<RepMorphism>& fs) {
  if (fs.size() != src.inclusions.size() || fs.size() != tgt.inclusions.size())
    throw PreconditionError("direct_sum_morphism: arity mismatch");
  RepMorphism total = RepMorphism::zero(src.sum, tgt.sum);
  for (size_t i = 0; i < fs.size(); ++i)
    total = total + compose(tgt.inclusions[i], compose(fs[i], src.projections[i]));
  return total;
}

SubRep sub_rep(const Rep& m, const std::vector<Matrix>& bases) {
  const QuiverPtr& q = m.quiver();
  uint32_t p = m.modulus();
  std::vector<size_t> dims(q->num_vertices());
  for (size_t x = 0; x < dims.size(); ++x) {
    if (bases[x].rows() != m.dim(x))
      throw PreconditionError("sub_rep: basis ambient dimension mismatch");
    if (rank(bases[x]) != bases[x].cols())
      throw PreconditionError("sub_rep: basis columns dependent");
    dims[x] = bases[x].cols();
  }
  std::vector<Matrix> maps;
  for (size_t a = 0; a < q->num_arrows(); ++a) {
    size_t x = q->vertex_index(q->arrows()[a].src);
    size_t y = q->vertex_index(q->arrows()[a].tgt);
    auto sol = solve(bases[y], m.map(a) * bases[x]);
    if (!sol) throw PreconditionError("sub_rep: subspaces not closed under maps");
    maps.push_back(*sol);
  }
  Rep sub(q, p, dims, std::move(maps));
  std::vector<Matrix> comps = bases;
  RepMorphism incl(sub, m, std::move(comps));
  return {std::move(sub), std::move(incl)};
}

QuotientRep quotient_rep(const Rep& m, const std::vector<Matrix>& bases) {
  const QuiverPtr& q = m.quiver();
  uint32_t p = m.modulus();
  size_t nv = q->num_vertices();
  std::vector<QuotientSpace> qs;
  qs.reserve(nv);
  for (size_t x = 0; x < nv; ++x)
    qs.emplace_back(Matrix::identity(m.dim(x), p), bases[x]);
  std::vector<size_t> dims(nv);
  for (size_t x = 0; x < nv; ++x) dims[x] = qs[x].dim();
  std::vector<Matrix> maps;
  for (size_t a = 0; a < q->num_arrows(); ++a) {
    size_t x = q->vertex_index(q->arrows()[a].src);
    size_t y = q->vertex_index(q->arrows()[a].tgt);
    Matrix ma(dims[y], dims[x], p);
    const Matrix& reps = qs[x].representatives();
    for (size_t j = 0; j < reps.cols(); ++j)
      ma.set_block(0, j, qs[y].reduce(m.map(a) * reps.col(j)));
    maps.push_back(std::move(ma));
  }
  Rep quot(q, p, dims, std::move(maps));
  std::vector<Matrix> comps;
  for (size_t x = 0; x < nv; ++x) {
    Matrix c(dims[x], m.dim(x), p);
    for (size_t j = 0; j < m.dim(x); ++j) {
      Matrix e(m.dim(x), 1, p);
      e.set(j, 0, 1);
      c.set_block(0, j, qs[x].reduce(e));
    }
    comps.push_back(std::move(c));
  }
  RepMorphism proj(m, quot, std::move(comps));
  return {std::move(quot), std::move(proj)};
}

SubRep kernel_rep(const RepMorphism& f) {
  std::vector<Matrix> bases;
  for (const Matrix& c : f.comps()) bases.push_back(nullspace(c));
  return sub_rep(f.source(), bases);
}

SubRep image_rep(const RepMorphism& f) {
  std::vector<Matrix> bases;
  for (const Matrix& c : f.comps()) bases.push_back(image(c));
  return sub_rep(f.target(), bases);
}

QuotientRep cokernel_rep(const RepMorphism& f) {
  std::vector<Matrix> bases;
  for (const Matrix& c : f.comps()) bases.push_back(image(c));
  return quotient_rep(f.target(), bases);
}

// ---- Duality ----------------------------------------------------------------

Rep dualize(const Rep& m, QuiverPtr opposite_quiver) {
  const Quiver& q = *m.quiver();
  const Quiver& qop = *opposite_quiver;
  if (q.num_vertices() != qop.num_vertices() || q.num_arrows() != qop.num_arrows())
    throw PreconditionError("dualize: quiver size mismatch");
  std::vector<size_t> dims(qop.num_vertices());
  for (int v : qop.vertices()) dims[qop.vertex_index(v)] = m.dim(q.vertex_index(v));
  std::vector<Matrix> maps;
  for (size_t a = 0; a < qop.num_arrows(); ++a) {
    const Arrow& ar = qop.arrows()[a];
    size_t orig = q.arrow_index(ar.id);
    if (q.arrows()[orig].src != ar.tgt || q.arrows()[orig].tgt != ar.src)
      throw PreconditionError("dualize: quivers are not opposite to each other");
    maps.push_back(m.map(orig).transposed());
  }
  return Rep(std::move(opposite_quiver), m.modulus(), std::move(dims), std::move(maps));
}

RepMorphism dualize(const RepMorphism& f, QuiverPtr opposite_quiver) {
  Rep dsrc = dualize(f.target(), opposite_quiver);
  Rep dtgt = dualize(f.source(), opposite_quiver);
  const Quiver& q = *f.source().quiver();
  const Quiver& qop = *opposite_quiver;
  std::vector<Matrix> comps(qop.num_vertices(), Matrix());
  for (int v : qop.vertices())
    comps[qop.vertex_index(v)] = f.comp(q.vertex_index(v)).transposed();
  return RepMorphism(std::move(dsrc), std::move(dtgt), std::move(comps));
}

// ---- Truncation support ------------------------------------------------------

Rep extend_rep(const InfiniteQuiverSpec& spec, const Rep& r, int n) {
  QuiverPtr big = spec.truncate(n);
  const Quiver& small = *r.quiver();
  for (int v : small.vertices())
    if (!big->has_vertex(v))
      throw PreconditionError("extend_rep: window does not contain the original one");
  std::vector<size_t> dims(big->num_vertices(), 0);
  for (int v : small.vertices())
    dims[big->vertex_index(v)] = r.dim(small.vertex_index(v));
  std::vector<Matrix> maps;
  for (size_t a = 0; a < big->num_arrows(); ++a) {
    const Arrow& ar = big->arrows()[a];
    size_t dt = dims[big->vertex_index(ar.tgt)];
    size_t ds = dims[big->vertex_index(ar.src)];
    bool in_small = small.has_vertex(ar.src) && small.has_vertex(ar.tgt);
    if (in_small) {
      maps.push_back(r.map(small.arrow_index(ar.id)));
    } else {
      maps.emplace_back(dt, ds, r.modulus());
    }
  }
  return Rep(std::move(big), r.modulus(), std::move(dims), std::move(maps));
}

// ---- Numerical invariants -----------------------------------------------------

int64_t euler_form(const Quiver& q, const std::vector<size_t>& d,
                   const std::vector<size_t>& e) {
  if (d.size() != q.num_vertices() || e.size() != q.num_vertices())
    throw PreconditionError("euler_form: dimension vector length mismatch");
  int64_t total = 0;
  for (size_t x = 0; x < q.num_vertices(); ++x)
    total += static_cast<int64_t>(d[x]) * static_cast<int64_t>(e[x]);
  for (const Arrow& a : q.arrows())
    total -= static_cast<int64_t>(d[q.vertex_index(a.src)]) *
             static_cast<int64_t>(e[q.vertex_index(a.tgt)]);
  return total;
}

// ---- Random sampling ----------------------------------------------------------

Rep random_rep(QuiverPtr q, uint32_t p, size_t max_dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<size_t> ddist(0, max_dim);
  std::uniform_int_distribution<uint32_t> edist(0, p - 1);
  for (;;) {
    std::vector<size_t> dims(q->num_vertices());
    for (size_t& d : dims) d = ddist(rng);
    size_t total = 0;
    for (size_t d : dims) total += d;
    if (total == 0) continue;
    std::vector<Matrix> maps;
    for (size_t a = 0; a < q->num_arrows(); ++a) {
      size_t x = q->vertex_index(q->arrows()[a].src);
      size_t y = q->vertex_index(q->arrows()[a].tgt);
      Matrix m(dims[y], dims[x], p);
      for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) m.set(i, j, edist(rng));
      maps.push_back(std::move(m));
    }
    return Rep(q, p, std::move(dims), std::move(maps));
  }
}

RepMorphism random_hom(const HomSpace& h, std::mt19937_64& rng) {
  uint32_t p = h.source.modulus();
  std::uniform_int_distribution<uint32_t> cdist(0, p - 1);
  Matrix coords(h.dim(), 1, p);
  for (size_t i = 0; i < h.dim(); ++i) coords.set(i, 0, cdist(rng));
  return h.from_coords(coords);
}

}  // namespace arq
