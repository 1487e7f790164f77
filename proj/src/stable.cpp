#include "arq/stable.hpp"

#include <algorithm>
#include <cassert>

namespace arq {

bool HomSubspace::contains(const RepMorphism& f) const {
  Matrix flat = morphism_to_flat(f);
  if (basis.empty()) return flat.is_zero();
  return in_column_space(basis_cols(), flat);
}

bool subspace_contains(const HomSubspace& outer, const HomSubspace& inner) {
  return subspace_leq(inner.basis_cols(), outer.basis_cols());
}

bool subspaces_equal(const HomSubspace& a, const HomSubspace& b) {
  return subspace_eq(a.basis_cols(), b.basis_cols());
}

// ---- Structural covers and envelopes ------------------------------------------

SubRep radical_subrep(const Rep& m) {
  const Quiver& q = *m.quiver();
  uint32_t p = m.modulus();
  std::vector<Matrix> bases;
  for (size_t y = 0; y < q.num_vertices(); ++y) {
    Matrix span(m.dim(y), 0, p);
    for (size_t a = 0; a < q.num_arrows(); ++a)
      if (q.vertex_index(q.arrows()[a].tgt) == y) span = span.hstack(m.map(a));
    bases.push_back(image(span));
  }
  return sub_rep(m, bases);
}

std::vector<size_t> top_dims(const Rep& m) {
  SubRep rad = radical_subrep(m);
  std::vector<size_t> t(m.dims().size());
  for (size_t x = 0; x < t.size(); ++x) t[x] = m.dim(x) - rad.sub.dim(x);
  return t;
}

SubRep socle_subrep(const Rep& m) {
  const Quiver& q = *m.quiver();
  uint32_t p = m.modulus();
  std::vector<Matrix> bases;
  for (size_t x = 0; x < q.num_vertices(); ++x) {
    Matrix stacked(0, m.dim(x), p);
    for (size_t a = 0; a < q.num_arrows(); ++a)
      if (q.vertex_index(q.arrows()[a].src) == x) stacked = stacked.vstack(m.map(a));
    bases.push_back(nullspace(stacked));
  }
  return sub_rep(m, bases);
}

ProjectiveCover projective_cover(const Rep& m) {
  const QuiverPtr& q = m.quiver();
  uint32_t p = m.modulus();
  SubRep rad = radical_subrep(m);
  ProjectiveCover out;
  std::vector<Rep> summands;
  std::vector<Matrix> generators;  // chosen lifts of a top basis
  for (int v : q->vertices()) {
    size_t x = q->vertex_index(v);
    // Coset representatives of rad_x inside m_x: standard basis vectors
    // extending the radical span, in index order.
    QuotientSpace qs(Matrix::identity(m.dim(x), p), rad.inclusion.comp(x));
    const Matrix& reps = qs.representatives();
    for (size_t k = 0; k < reps.cols(); ++k) {
      summands.push_back(proj_at(q, p, v));
      out.summand_vertices.push_back(v);
      generators.push_back(reps.col(k));
    }
  }
  if (summands.empty()) {
    out.p0 = Rep::zero_rep(q, p);
    out.cover = RepMorphism::zero(out.p0, m);
    return out;
  }
  DirectSum ds = direct_sum(summands);
  out.p0 = ds.sum;
  RepMorphism total = RepMorphism::zero(out.p0, m);
  for (size_t i = 0; i < summands.size(); ++i) {
    RepMorphism leg = morphism_from_projective_generator(
        summands[i], out.summand_vertices[i], m, generators[i]);
    total = total + compose(leg, ds.projections[i]);
  }
  out.cover = total;
  if (!out.cover.vertexwise_surjective())
    throw PreconditionError("projective_cover: cover not surjective");
  return out;
}

InjectiveEnvelope injective_envelope(const Rep& m) {
  // Dual of the cover over the opposite quiver.
  QuiverPtr qop = m.quiver()->opposite();
  Rep dm = dualize(m, qop);
  ProjectiveCover cover = projective_cover(dm);
  QuiverPtr q = qop->opposite();
  InjectiveEnvelope out;
  out.i0 = dualize(cover.p0, q);
  out.envelope = dualize(cover.cover, q);
  out.summand_vertices = cover.summand_vertices;
  // Sanity: dual of P_a over the opposite quiver is I_a over the original.
  if (!out.envelope.vertexwise_injective())
    throw PreconditionError("injective_envelope: envelope not injective");
  return out;
}

bool is_projective_object(const Rep& m) {
  for (int v : m.quiver()->vertices())
    if (ext_dim(m, simple_at(m.quiver(), m.modulus(), v)) != 0) return false;
  return true;
}

bool is_injective_object(const Rep& m) {
  for (int v : m.quiver()->vertices())
    if (ext_dim(simple_at(m.quiver(), m.modulus(), v), m) != 0) return false;
  return true;
}

// ---- The ideals P and I ---------------------------------------------------------

namespace {

// Independent subset of spanning morphisms, drawn in order.
std::vector<RepMorphism> independent_subset(const Rep& src, const Rep& tgt,
                                            const std::vector<RepMorphism>& span) {
  std::vector<RepMorphism> basis;
  Matrix cols(morphism_to_flat(RepMorphism::zero(src, tgt)).rows(), 0, src.modulus());
  size_t r = 0;
  for (const RepMorphism& f : span) {
    Matrix trial = cols.hstack(morphism_to_flat(f));
    if (rank(trial) > r) {
      cols = trial;
      basis.push_back(f);
      ++r;
    }
  }
  return basis;
}

}  // namespace

HomSubspace sproj_ideal(const Rep& c, const Rep& y) {
  ProjectiveCover pc = projective_cover(y);
  std::vector<RepMorphism> span;
  for (const RepMorphism& g : hom_basis(c, pc.p0)) span.push_back(compose(pc.cover, g));
  HomSubspace out;
  out.source = c;
  out.target = y;
  out.basis = independent_subset(c, y, span);
  out.closure = SubspaceClosure::None;
  return out;
}

HomSubspace sinj_ideal(const Rep& x, const Rep& a) {
  InjectiveEnvelope env = injective_envelope(x);
  std::vector<RepMorphism> span;
  for (const RepMorphism& g : hom_basis(env.i0, a)) span.push_back(compose(g, env.envelope));
  HomSubspace out;
  out.source = x;
  out.target = a;
  out.basis = independent_subset(x, a, span);
  out.closure = SubspaceClosure::None;
  return out;
}

bool is_sproj_morphism(const RepMorphism& f) {
  return sproj_ideal(f.source(), f.target()).contains(f);
}

bool is_sinj_morphism(const RepMorphism& f) {
  return sinj_ideal(f.source(), f.target()).contains(f);
}

Matrix StableHom::coords_of(const RepMorphism& f) const {
  return quotient.reduce(morphism_to_flat(f));
}

RepMorphism StableHom::rep_of_coords(const Matrix& coords) const {
  if (dim() == 0) return RepMorphism::zero(ambient.source, ambient.target);
  return morphism_from_flat(ambient.source, ambient.target,
                            quotient.representatives() * coords);
}

std::vector<RepMorphism> StableHom::coset_reps() const {
  std::vector<RepMorphism> out;
  const Matrix& reps = quotient.representatives();
  for (size_t k = 0; k < reps.cols(); ++k)
    out.push_back(morphism_from_flat(ambient.source, ambient.target, reps.col(k)));
  return out;
}

StableHom stable_hom(const Rep& c, const Rep& y) {
  HomSpace amb = hom_space(c, y);
  HomSubspace ideal = sproj_ideal(c, y);
  QuotientSpace q(amb.basis_cols, ideal.basis_cols());
  return {std::move(amb), std::move(ideal), std::move(q)};
}

StableHom costable_hom(const Rep& x, const Rep& a) {
  HomSpace amb = hom_space(x, a);
  HomSubspace ideal = sinj_ideal(x, a);
  QuotientSpace q(amb.basis_cols, ideal.basis_cols());
  return {std::move(amb), std::move(ideal), std::move(q)};
}

// ---- The radical ideal -----------------------------------------------------------

HomSubspace radical_end_indecomposable(const Rep& m, const DecomposeConfig& cfg,
                                       uint64_t enum_cap) {
  if (!is_indecomposable(m, cfg))
    throw PreconditionError("radical_end_indecomposable: input decomposes");
  HomSpace end = hom_space(m, m);
  // End is local, so the non-invertible elements are exactly the nilpotents
  // and they form the radical subspace. Collect them by full enumeration.
  std::vector<RepMorphism> nilpotents;
  for (const RepMorphism& f : enumerate_hom(end, enum_cap))
    if (!f.is_iso()) nilpotents.push_back(f);
  HomSubspace out;
  out.source = m;
  out.target = m;
  out.basis = independent_subset(m, m, nilpotents);
  out.closure = SubspaceClosure::None;
  return out;
}

HomSubspace radical(const Rep& x, const Rep& y, const DecomposeConfig& cfg,
                    uint64_t enum_cap) {
  HomSubspace out;
  out.source = x;
  out.target = y;
  if (x.is_zero_rep() || y.is_zero_rep()) return out;
  Decomposition dx = decompose(x, cfg);
  Decomposition dy = decompose(y, cfg);
  std::vector<RepMorphism> span;
  for (const SummandPart& px : dx.parts) {
    for (const SummandPart& py : dy.parts) {
      auto iso = find_iso(px.piece, py.piece, cfg);
      if (!iso) {
        // Non-isomorphic indecomposables: the whole component is radical.
        for (const RepMorphism& g : hom_basis(px.piece, py.piece))
          span.push_back(compose(py.inclusion, compose(g, px.projection)));
      } else {
        // Isomorphic summands: radical component = iso . rad End(source).
        HomSubspace rad_end = radical_end_indecomposable(px.piece, cfg, enum_cap);
        for (const RepMorphism& r : rad_end.basis)
          span.push_back(
              compose(py.inclusion, compose(*iso, compose(r, px.projection))));
      }
    }
  }
  out.basis = independent_subset(x, y, span);
  return out;
}

// ---- Minimal versions ---------------------------------------------------------------

namespace {

// Rebuild the remaining parts as a direct sum with fresh block inclusions.
struct PartsSum {
  DirectSum ds;
  std::vector<Rep> pieces;
};

PartsSum sum_of(const std::vector<Rep>& pieces, QuiverPtr q, uint32_t p) {
  PartsSum out;
  out.pieces = pieces;
  if (pieces.empty()) {
    Rep z = Rep::zero_rep(q, p);
    out.ds = direct_sum({z});
    out.pieces = {z};
  } else {
    out.ds = direct_sum(pieces);
  }
  return out;
}

}  // namespace

RightMinimalVersion right_minimal_version(const RepMorphism& f, const DecomposeConfig& cfg) {
  QuiverPtr q = f.source().quiver();
  uint32_t p = f.source().modulus();

  Decomposition d = decompose(f.source(), cfg);
  std::vector<Rep> pieces;
  for (const SummandPart& part : d.parts) pieces.push_back(part.piece);

  // Greedy drops: remove a summand whenever f factors through the restriction
  // to its complement. Krull-Schmidt makes the result right minimal.
  RepMorphism current = f;
  RepMorphism section = RepMorphism::identity(f.source());  // X' -> X
  RepMorphism factor = RepMorphism::identity(f.source());   // X -> X'
  {
    // Normalize to an explicit direct-sum presentation of the source.
    PartsSum ps = sum_of(pieces, q, p);
    RepMorphism iso = RepMorphism::zero(ps.ds.sum, f.source());
    if (!d.parts.empty()) {
      RepMorphism acc = RepMorphism::zero(ps.ds.sum, f.source());
      for (size_t i = 0; i < d.parts.size(); ++i)
        acc = acc + compose(d.parts[i].inclusion, ps.ds.projections[i]);
      iso = acc;
    }
    current = compose(f, iso);
    section = iso;
    factor = iso.inverse();
    pieces = ps.pieces;
  }

  bool changed = true;
  while (changed && !pieces.empty() && !current.source().is_zero_rep()) {
    changed = false;
    PartsSum ps = sum_of(pieces, q, p);
    for (size_t i = 0; i < pieces.size(); ++i) {
      if (pieces[i].is_zero_rep()) continue;
      std::vector<Rep> rest;
      for (size_t k = 0; k < pieces.size(); ++k)
        if (k != i) rest.push_back(pieces[k]);
      PartsSum comp = sum_of(rest, q, p);
      // Inclusion of the complement into the current source.
      RepMorphism incl = RepMorphism::zero(comp.ds.sum, current.source());
      {
        size_t j = 0;
        for (size_t k = 0; k < pieces.size(); ++k) {
          if (k == i) continue;
          incl = incl + compose(ps.ds.inclusions[k], comp.ds.projections[j]);
          ++j;
        }
      }
      RepMorphism restricted = compose(current, incl);
      auto h = factor_through(current, restricted);
      if (h) {
        // current = restricted . h; drop piece i.
        section = compose(section, incl);
        factor = compose(*h, factor);
        current = restricted;
        pieces = rest;
        changed = true;
        break;
      }
    }
  }

  RightMinimalVersion out{current, section, factor};
  // Certificate: {h in End(X') : f' h = 0} must lie in rad End(X').
  HomSpace end = hom_space(current.source(), current.source());
  {
    uint32_t pp = current.source().modulus();
    Matrix sys(morphism_to_flat(current).rows(), end.dim(), pp);
    for (size_t k = 0; k < end.dim(); ++k)
      sys.set_block(0, k, morphism_to_flat(compose(current, end.basis[k])));
    Matrix ns = nullspace(sys);
    HomSubspace rad_end = radical(current.source(), current.source(), cfg);
    Matrix rad_cols = rad_end.basis_cols();
    for (size_t k = 0; k < ns.cols(); ++k) {
      Matrix flat = end.basis_cols * ns.col(k);
      if (!(flat.is_zero() || in_column_space(rad_cols, flat)))
        throw PreconditionError(
            "right_minimal_version: certificate failed (kernel escapes the radical)");
    }
  }
  return out;
}

bool is_right_minimal(const RepMorphism& f, const DecomposeConfig& cfg) {
  HomSpace end = hom_space(f.source(), f.source());
  uint32_t p = f.source().modulus();
  Matrix sys(morphism_to_flat(f).rows(), end.dim(), p);
  for (size_t k = 0; k < end.dim(); ++k)
    sys.set_block(0, k, morphism_to_flat(compose(f, end.basis[k])));
  Matrix ns = nullspace(sys);
  if (ns.cols() == 0) return true;
  HomSubspace rad_end = radical(f.source(), f.source(), cfg);
  Matrix rad_cols = rad_end.basis_cols();
  for (size_t k = 0; k < ns.cols(); ++k) {
    Matrix flat = end.basis_cols * ns.col(k);
    if (!(flat.is_zero() || in_column_space(rad_cols, flat))) return false;
  }
  return true;
}

LeftMinimalVersion left_minimal_version(const RepMorphism& f, const DecomposeConfig& cfg) {
  QuiverPtr q = f.source().quiver();
  uint32_t p = f.source().modulus();

  Decomposition d = decompose(f.target(), cfg);
  std::vector<Rep> pieces;
  for (const SummandPart& part : d.parts) pieces.push_back(part.piece);

  RepMorphism current = f;
  RepMorphism retraction = RepMorphism::identity(f.target());  // Y -> Y'
  RepMorphism cofactor = RepMorphism::identity(f.target());    // Y' -> Y
  {
    PartsSum ps = sum_of(pieces, q, p);
    RepMorphism iso = RepMorphism::zero(f.target(), ps.ds.sum);
    if (!d.parts.empty()) {
      RepMorphism acc = RepMorphism::zero(f.target(), ps.ds.sum);
      for (size_t i = 0; i < d.parts.size(); ++i)
        acc = acc + compose(ps.ds.inclusions[i], d.parts[i].projection);
      iso = acc;
    }
    current = compose(iso, f);
    retraction = iso;
    cofactor = iso.inverse();
    pieces = ps.pieces;
  }

  bool changed = true;
  while (changed && !pieces.empty() && !current.target().is_zero_rep()) {
    changed = false;
    PartsSum ps = sum_of(pieces, q, p);
    for (size_t i = 0; i < pieces.size(); ++i) {
      if (pieces[i].is_zero_rep()) continue;
      std::vector<Rep> rest;
      for (size_t k = 0; k < pieces.size(); ++k)
        if (k != i) rest.push_back(pieces[k]);
      PartsSum comp = sum_of(rest, q, p);
      RepMorphism proj = RepMorphism::zero(current.target(), comp.ds.sum);
      {
        size_t j = 0;
        for (size_t k = 0; k < pieces.size(); ++k) {
          if (k == i) continue;
          proj = proj + compose(comp.ds.inclusions[j], ps.ds.projections[k]);
          ++j;
        }
      }
      RepMorphism restricted = compose(proj, current);
      auto u = factor_through_left(current, restricted);
      if (u) {
        retraction = compose(proj, retraction);
        cofactor = compose(cofactor, *u);
        current = restricted;
        pieces = rest;
        changed = true;
        break;
      }
    }
  }

  LeftMinimalVersion out{current, retraction, cofactor};
  // Certificate: {h in End(Y') : h f' = 0} must lie in rad End(Y').
  HomSpace end = hom_space(current.target(), current.target());
  uint32_t pp = current.target().modulus();
  Matrix sys(morphism_to_flat(current).rows(), end.dim(), pp);
  for (size_t k = 0; k < end.dim(); ++k)
    sys.set_block(0, k, morphism_to_flat(compose(end.basis[k], current)));
  Matrix ns = nullspace(sys);
  HomSubspace rad_end = radical(current.target(), current.target(), cfg);
  Matrix rad_cols = rad_end.basis_cols();
  for (size_t k = 0; k < ns.cols(); ++k) {
    Matrix flat = end.basis_cols * ns.col(k);
    if (!(flat.is_zero() || in_column_space(rad_cols, flat)))
      throw PreconditionError(
          "left_minimal_version: certificate failed (kernel escapes the radical)");
  }
  return out;
}

bool is_left_minimal(const RepMorphism& f, const DecomposeConfig& cfg) {
  HomSpace end = hom_space(f.target(), f.target());
  uint32_t p = f.target().modulus();
  Matrix sys(morphism_to_flat(f).rows(), end.dim(), p);
  for (size_t k = 0; k < end.dim(); ++k)
    sys.set_block(0, k, morphism_to_flat(compose(end.basis[k], f)));
  Matrix ns = nullspace(sys);
  if (ns.cols() == 0) return true;
  HomSubspace rad_end = radical(f.target(), f.target(), cfg);
  Matrix rad_cols = rad_end.basis_cols();
  for (size_t k = 0; k < ns.cols(); ++k) {
    Matrix flat = end.basis_cols * ns.col(k);
    if (!(flat.is_zero() || in_column_space(rad_cols, flat))) return false;
  }
  return true;
}

}  // namespace arq
