#include "arq/artheory.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace arq {

namespace {

// Reindex a representation onto a structurally equal quiver instance.
Rep rebase(const Rep& r, QuiverPtr q) {
  const Quiver& old = *r.quiver();
  if (old != *q) throw PreconditionError("rebase: quivers differ structurally");
  std::vector<size_t> dims(q->num_vertices());
  for (int v : q->vertices()) dims[q->vertex_index(v)] = r.dim(old.vertex_index(v));
  std::vector<Matrix> maps;
  for (size_t a = 0; a < q->num_arrows(); ++a)
    maps.push_back(r.map(old.arrow_index(q->arrows()[a].id)));
  return Rep(std::move(q), r.modulus(), std::move(dims), std::move(maps));
}

// Arrow indices agree between a quiver and its opposite by construction, so
// reversing a path only reverses the arrow sequence.
Path reverse_path(const Path& p) {
  Path out;
  out.src = p.tgt;
  out.tgt = p.src;
  out.arrows.assign(p.arrows.rbegin(), p.arrows.rend());
  return out;
}

}  // namespace

// ---- Minimal projective presentations ------------------------------------------------

ProjPresentation min_proj_presentation(const Rep& m) {
  const QuiverPtr& q = m.quiver();
  uint32_t p = m.modulus();
  ProjPresentation out;
  out.module = m;

  ProjectiveCover cover = projective_cover(m);
  out.p0 = cover.p0;
  out.cover = cover.cover;
  out.p0_vertices = cover.summand_vertices;

  SubRep ker = kernel_rep(cover.cover);
  // Minimality: the kernel lies in rad p0.
  {
    SubRep rad = radical_subrep(out.p0);
    for (size_t x = 0; x < q->num_vertices(); ++x) {
      if (!subspace_leq(ker.inclusion.comp(x), rad.inclusion.comp(x)))
        throw PreconditionError("min_proj_presentation: kernel escapes rad p0");
    }
  }
  // The kernel is projective (heredity); its cover is an isomorphism onto it.
  ProjectiveCover kcover = projective_cover(ker.sub);
  if (kcover.p0.total_dim() != ker.sub.total_dim())
    throw PreconditionError("min_proj_presentation: kernel is not projective");
  out.p1 = kcover.p0;
  out.p1_vertices = kcover.summand_vertices;
  out.differential = compose(ker.inclusion, kcover.cover);
  if (!out.differential.vertexwise_injective())
    throw PreconditionError("min_proj_presentation: differential not injective");

  // Extract the path-combination blocks of the differential.
  size_t n1 = out.p1_vertices.size();
  size_t n0 = out.p0_vertices.size();
  // Offsets of summands inside the sums, per vertex.
  auto summand_offsets = [&](const std::vector<int>& verts) {
    std::vector<std::vector<size_t>> off(verts.size(),
                                         std::vector<size_t>(q->num_vertices(), 0));
    std::vector<size_t> acc(q->num_vertices(), 0);
    for (size_t s = 0; s < verts.size(); ++s) {
      Rep pa = proj_at(q, p, verts[s]);
      for (size_t x = 0; x < q->num_vertices(); ++x) {
        off[s][x] = acc[x];
        acc[x] += pa.dim(x);
      }
    }
    return off;
  };
  auto off1 = summand_offsets(out.p1_vertices);
  auto off0 = summand_offsets(out.p0_vertices);

  out.entries.assign(n0, std::vector<PathComb>(n1));
  for (size_t i = 0; i < n1; ++i) {
    int a = out.p1_vertices[i];
    size_t va = q->vertex_index(a);
    // The generator of the i-th summand: trivial path, first basis vector of
    // its block at vertex a.
    size_t col = off1[i][va];
    Matrix image_col = out.differential.comp(va).col(col);
    for (size_t j = 0; j < n0; ++j) {
      int b = out.p0_vertices[j];
      std::vector<Path> basis;
      for (const Path& path : q->paths_from(b))
        if (path.tgt == a) basis.push_back(path);
      PathComb comb;
      for (size_t k = 0; k < basis.size(); ++k) {
        uint32_t cval = image_col.at(off0[j][va] + k, 0);
        if (cval != 0) comb.terms.push_back({basis[k], cval});
      }
      out.entries[j][i] = std::move(comb);
    }
  }
  return out;
}

Rep transpose_presentation(const ProjPresentation& pp) {
  if (pp.p1_vertices.empty())
    throw PreconditionError("transpose: projective module has no transpose");
  QuiverPtr q = pp.module.quiver();
  QuiverPtr qop = q->opposite();
  uint32_t p = pp.module.modulus();

  // Dualized differential: (+)_j P^op_{b_j} -> (+)_i P^op_{a_i}, block (i, j)
  // sending the generator of P^op_{b_j} to the reversed paths of entry (j, i).
  std::vector<Rep> sources, targets;
  for (int b : pp.p0_vertices) sources.push_back(proj_at(qop, p, b));
  for (int a : pp.p1_vertices) targets.push_back(proj_at(qop, p, a));
  DirectSum src = direct_sum(sources);
  DirectSum tgt = direct_sum(targets);

  RepMorphism dstar = RepMorphism::zero(src.sum, tgt.sum);
  for (size_t j = 0; j < sources.size(); ++j) {
    int b = pp.p0_vertices[j];
    size_t vb = qop->vertex_index(b);
    // Generator image inside (+)_i P^op_{a_i} at vertex b.
    Matrix gen(tgt.sum.dim(vb), 1, p);
    size_t block_off = 0;
    for (size_t i = 0; i < targets.size(); ++i) {
      int a = pp.p1_vertices[i];
      std::vector<Path> basis;
      for (const Path& path : qop->paths_from(a))
        if (path.tgt == b) basis.push_back(path);
      for (const auto& [path, cval] : pp.entries[j][i].terms) {
        Path rev = reverse_path(path);
        bool placed = false;
        for (size_t k = 0; k < basis.size(); ++k) {
          if (basis[k] == rev) {
            gen.set(block_off + k, 0, add_mod(gen.at(block_off + k, 0), cval, p));
            placed = true;
            break;
          }
        }
        if (!placed)
          throw PreconditionError("transpose: reversed path missing from the basis");
      }
      block_off += targets[i].dim(vb);
    }
    RepMorphism leg = morphism_from_projective_generator(sources[j], b, tgt.sum, gen);
    dstar = dstar + compose(leg, src.projections[j]);
  }
  return cokernel_rep(dstar).quotient;
}

Rep tau(const Rep& m, const ArConfig& cfg) {
  if (m.is_zero_rep()) throw PreconditionError("tau: zero representation");
  if (!is_indecomposable(m, cfg.decompose))
    throw PreconditionError("tau: input decomposes");
  if (is_projective_object(m))
    throw PreconditionError("tau: projective input");
  ProjPresentation pp = min_proj_presentation(m);
  Rep tr = transpose_presentation(pp);  // over Q^op
  QuiverPtr qop = tr.quiver();
  Rep dual = dualize(tr, qop->opposite());
  return rebase(dual, m.quiver());
}

Rep tau_minus(const Rep& m, const ArConfig& cfg) {
  if (m.is_zero_rep()) throw PreconditionError("tau_minus: zero representation");
  if (!is_indecomposable(m, cfg.decompose))
    throw PreconditionError("tau_minus: input decomposes");
  if (is_injective_object(m))
    throw PreconditionError("tau_minus: injective input");
  QuiverPtr qop = m.quiver()->opposite();
  Rep dm = dualize(m, qop);
  ProjPresentation pp = min_proj_presentation(dm);
  Rep tr = transpose_presentation(pp);  // over (Q^op)^op
  return rebase(tr, m.quiver());
}

Rep tau_minus_noninjective_part(const Rep& k, const ArConfig& cfg) {
  if (k.is_zero_rep()) return k;
  std::vector<Rep> translated;
  for (const SummandPart& part : decompose(k, cfg.decompose).parts)
    if (!is_injective_object(part.piece)) translated.push_back(tau_minus(part.piece, cfg));
  if (translated.empty()) return Rep::zero_rep(k.quiver(), k.modulus());
  return direct_sum(translated).sum;
}

Rep tau_nonprojective_part(const Rep& k, const ArConfig& cfg) {
  if (k.is_zero_rep()) return k;
  std::vector<Rep> translated;
  for (const SummandPart& part : decompose(k, cfg.decompose).parts)
    if (!is_projective_object(part.piece)) translated.push_back(tau(part.piece, cfg));
  if (translated.empty()) return Rep::zero_rep(k.quiver(), k.modulus());
  return direct_sum(translated).sum;
}

// ---- Almost split triangles -----------------------------------------------------------

namespace {

std::string dim_string(const Rep& r) {
  std::ostringstream os;
  os << "(";
  for (size_t x = 0; x < r.dims().size(); ++x) os << (x ? "," : "") << r.dim(x);
  os << ")";
  return os.str();
}

}  // namespace

AlmostSplitReport check_almost_split(const STriangle& t, const std::vector<Rep>& universe,
                                     const ArConfig& cfg, bool fail_fast) {
  AlmostSplitReport rep;
  rep.universe_size = universe.size();
  bool aborted = false;
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    rep.checks.push_back({name, pass, detail});
    if (!pass && fail_fast) aborted = true;
  };

  if (t.fiber.is_zero_rep() || t.base.is_zero_rep()) {
    rep.pass = false;
    rep.checks.push_back({"nonzero-ends", false, "zero fiber or base"});
    return rep;
  }
  ExtSpace cls_space(t.base, t.fiber);
  add("nonsplit", !cls_space.is_split(t.cls), "");
  if (aborted) {
    rep.pass = false;
    return rep;
  }
  add("fiber-indecomposable", is_indecomposable(t.fiber, cfg.decompose), "");
  if (aborted) {
    rep.pass = false;
    return rep;
  }
  add("base-indecomposable", is_indecomposable(t.base, cfg.decompose), "");
  if (aborted) {
    rep.pass = false;
    return rep;
  }

  // (AS1): a_star delta = 0 for every enumerated non-section out of the
  // fiber; non-sections also factor through the inflation.
  bool as1 = true, las = true;
  std::string as1_detail, las_detail;
  for (size_t u = 0; u < universe.size() && (as1 || las); ++u) {
    HomSpace h = hom_space(t.fiber, universe[u]);
    if (h.dim() == 0) continue;
    ExtSpace pushed(t.base, universe[u]);
    for (const RepMorphism& a : enumerate_hom(h, cfg.enum_cap)) {
      if (is_section(a)) continue;
      if (as1 && !pushed.is_split(pushout(t.cls, a))) {
        as1 = false;
        as1_detail = "non-section into universe[" + std::to_string(u) + "] " +
                     dim_string(universe[u]) + " with nonzero pushout";
      }
      if (las && !factor_through_left(a, t.infl).has_value()) {
        las = false;
        las_detail = "non-section into universe[" + std::to_string(u) +
                     "] does not extend along the inflation";
      }
      if (!as1 && !las) break;
    }
  }
  add("as1-pushout-vanishes", as1, as1_detail);
  add("left-almost-split-factorization", las, las_detail);
  if (aborted) {
    rep.pass = false;
    return rep;
  }

  // (AS2): c_star delta = 0 for every enumerated non-retraction into the
  // base; non-retractions lift through the deflation.
  bool as2 = true, ras = true;
  std::string as2_detail, ras_detail;
  for (size_t u = 0; u < universe.size() && (as2 || ras); ++u) {
    HomSpace h = hom_space(universe[u], t.base);
    if (h.dim() == 0) continue;
    ExtSpace pulled(universe[u], t.fiber);
    for (const RepMorphism& c : enumerate_hom(h, cfg.enum_cap)) {
      if (is_retraction(c)) continue;
      if (as2 && !pulled.is_split(pullback(t.cls, c))) {
        as2 = false;
        as2_detail = "non-retraction from universe[" + std::to_string(u) + "] " +
                     dim_string(universe[u]) + " with nonzero pullback";
      }
      if (ras && !factor_through(c, t.defl).has_value()) {
        ras = false;
        ras_detail = "non-retraction from universe[" + std::to_string(u) +
                     "] does not lift along the deflation";
      }
      if (!as2 && !ras) break;
    }
  }
  add("as2-pullback-vanishes", as2, as2_detail);
  add("right-almost-split-factorization", ras, ras_detail);
  if (aborted) {
    rep.pass = false;
    return rep;
  }

  // Consequences of the almost split property that the triangle must carry.
  add("inflation-left-minimal", is_left_minimal(t.infl, cfg.decompose), "");
  add("deflation-right-minimal", is_right_minimal(t.defl, cfg.decompose), "");

  rep.pass = true;
  for (const CheckItem& c : rep.checks) rep.pass = rep.pass && c.pass;
  return rep;
}

uint32_t AlmostSplitWitness::apply_gamma(const ExtSpace& space, const ExtClass& cls) const {
  Matrix coords = space.coords_of(cls);
  Matrix v = gamma * coords;
  return v.rows() == 1 && v.cols() == 1 ? v.at(0, 0) : 0;
}

namespace {

Matrix gamma_for(const ExtSpace& space, const ExtClass& eta) {
  Matrix coords = space.coords_of(eta);
  uint32_t p = space.base().modulus();
  for (size_t i = 0; i < coords.rows(); ++i) {
    if (coords.at(i, 0) != 0) {
      Matrix g(1, coords.rows(), p);
      g.set(0, i, inv_mod(coords.at(i, 0), p));
      return g;
    }
  }
  throw PreconditionError("gamma_for: class is split");
}

// Socle of E(base, fiber) under the chosen action; columns are coordinate
// vectors in the coset basis.
Matrix ext_socle(const ExtSpace& es, const std::vector<RepMorphism>& rad_basis,
                 bool act_by_pullback) {
  uint32_t p = es.base().modulus();
  size_t d = es.dim();
  if (rad_basis.empty()) return Matrix::identity(d, p);
  std::vector<ExtClass> basis = es.basis();
  Matrix stacked(0, d, p);
  for (const RepMorphism& f : rad_basis) {
    Matrix action(d, d, p);
    for (size_t j = 0; j < d; ++j) {
      ExtClass moved = act_by_pullback ? pullback(basis[j], f) : pushout(basis[j], f);
      action.set_block(0, j, es.coords_of(moved));
    }
    stacked = stacked.vstack(action);
  }
  return nullspace(stacked);
}

AlmostSplitWitness validate_candidates(const ExtSpace& es, const Matrix& socle,
                                       const std::vector<Rep>& universe,
                                       const ArConfig& cfg, const std::string& who) {
  uint32_t p = es.base().modulus();
  uint64_t count = 1;
  for (size_t i = 0; i < socle.cols(); ++i) {
    count *= p;
    if (count > cfg.enum_cap)
      throw CapExceeded(who + ": socle enumeration exceeds cap");
  }
  std::vector<uint32_t> digits(socle.cols(), 0);
  for (uint64_t k = 0; k < count; ++k) {
    bool nonzero = false;
    for (uint32_t dgt : digits) nonzero = nonzero || dgt != 0;
    if (nonzero) {
      Matrix combo(socle.cols(), 1, p);
      for (size_t i = 0; i < socle.cols(); ++i) combo.set(i, 0, digits[i]);
      ExtClass delta = es.from_coords(socle * combo);
      STriangle t = realize(delta);
      AlmostSplitReport report = check_almost_split(t, universe, cfg);
      if (report.pass) {
        AlmostSplitWitness w;
        w.tri = t;
        w.gamma = gamma_for(es, delta);
        w.report = report;
        return w;
      }
    }
    for (size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < p) break;
      digits[i] = 0;
    }
  }
  throw PreconditionError(who + ": no socle candidate passed exhaustive validation");
}

}  // namespace

AlmostSplitWitness almost_split_ending_at(const Rep& c, const std::vector<Rep>& universe,
                                          const ArConfig& cfg) {
  Rep tc = tau(c, cfg);
  ExtSpace es(c, tc);
  HomSubspace rad_end = radical(c, c, cfg.decompose, cfg.enum_cap);
  Matrix socle = ext_socle(es, rad_end.basis, /*act_by_pullback=*/true);
  return validate_candidates(es, socle, universe, cfg, "almost_split_ending_at");
}

AlmostSplitWitness almost_split_starting_at(const Rep& x, const std::vector<Rep>& universe,
                                            const ArConfig& cfg) {
  Rep tmx = tau_minus(x, cfg);
  ExtSpace es(tmx, x);
  HomSubspace rad_end = radical(x, x, cfg.decompose, cfg.enum_cap);
  Matrix socle = ext_socle(es, rad_end.basis, /*act_by_pullback=*/false);
  return validate_candidates(es, socle, universe, cfg, "almost_split_starting_at");
}

// ---- Witness table ----------------------------------------------------------------------

WitnessTable::WitnessTable(std::vector<Rep> universe, const ArConfig& cfg)
    : universe_(std::move(universe)), cfg_(cfg) {
  size_t n = universe_.size();
  projective_.resize(n);
  injective_.resize(n);
  tau_idx_.resize(n);
  tau_minus_idx_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    projective_[i] = is_projective_object(universe_[i]);
    injective_[i] = is_injective_object(universe_[i]);
  }
  for (size_t i = 0; i < n; ++i) {
    if (!projective_[i]) {
      AlmostSplitWitness w = almost_split_ending_at(universe_[i], universe_, cfg_);
      size_t fi = index_of(w.tri.fiber);
      // Canonicalize the fiber to the universe representative.
      auto iso = find_iso(w.tri.fiber, universe_[fi], cfg_.decompose);
      if (!iso) throw PreconditionError("WitnessTable: fiber iso witness missing");
      ExtClass eta = pushout(w.tri.cls, *iso);
      STriangle t = realize(eta);
      AlmostSplitReport report = check_almost_split(t, universe_, cfg_);
      if (!report.pass)
        throw PreconditionError("WitnessTable: canonicalized ending witness failed");
      AlmostSplitWitness canon{t, gamma_for(ExtSpace(t.base, t.fiber), eta), report};
      tau_idx_[i] = fi;
      ending_.emplace(i, std::move(canon));
    }
    if (!injective_[i]) {
      AlmostSplitWitness w = almost_split_starting_at(universe_[i], universe_, cfg_);
      size_t bi = index_of(w.tri.base);
      auto iso = find_iso(universe_[bi], w.tri.base, cfg_.decompose);
      if (!iso) throw PreconditionError("WitnessTable: base iso witness missing");
      ExtClass eta = pullback(w.tri.cls, *iso);
      STriangle t = realize(eta);
      AlmostSplitReport report = check_almost_split(t, universe_, cfg_);
      if (!report.pass)
        throw PreconditionError("WitnessTable: canonicalized starting witness failed");
      AlmostSplitWitness canon{t, gamma_for(ExtSpace(t.base, t.fiber), eta), report};
      tau_minus_idx_[i] = bi;
      starting_.emplace(i, std::move(canon));
    }
  }
}

const AlmostSplitWitness& WitnessTable::ending(size_t i) const {
  auto it = ending_.find(i);
  if (it == ending_.end())
    throw PreconditionError("WitnessTable::ending: no witness (projective object?)");
  return it->second;
}

const AlmostSplitWitness& WitnessTable::starting(size_t i) const {
  auto it = starting_.find(i);
  if (it == starting_.end())
    throw PreconditionError("WitnessTable::starting: no witness (injective object?)");
  return it->second;
}

size_t WitnessTable::index_of(const Rep& r) const {
  for (size_t i = 0; i < universe_.size(); ++i)
    if (is_isomorphic(universe_[i], r, cfg_.decompose)) return i;
  throw PreconditionError("WitnessTable::index_of: representation outside the universe");
}

// ---- Pairings ----------------------------------------------------------------------------

Matrix pairing_matrix_costable(const WitnessTable& wt, size_t y, const Rep& m) {
  const AlmostSplitWitness& w = wt.ending(y);
  const Rep& tau_y = w.tri.fiber;
  const Rep& yy = w.tri.base;
  uint32_t p = yy.modulus();
  StableHom ch = costable_hom(m, tau_y);
  ExtSpace em(yy, m);
  std::vector<RepMorphism> reps = ch.coset_reps();
  ExtSpace target(yy, tau_y);
  Matrix out(reps.size(), em.dim(), p);
  std::vector<ExtClass> basis = em.basis();
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = 0; j < basis.size(); ++j)
      out.set(i, j, w.apply_gamma(target, pushout(basis[j], reps[i])));
  if (out.rows() != out.cols() || rank(out) != out.rows())
    throw PreconditionError("pairing_matrix_costable: degenerate pairing");
  return out;
}

Matrix pairing_matrix_stable(const WitnessTable& wt, size_t y, const Rep& m) {
  const AlmostSplitWitness& w = wt.ending(y);
  const Rep& tau_y = w.tri.fiber;
  const Rep& yy = w.tri.base;
  uint32_t p = yy.modulus();
  StableHom sh = stable_hom(yy, m);
  ExtSpace em(m, tau_y);
  std::vector<RepMorphism> reps = sh.coset_reps();
  ExtSpace target(yy, tau_y);
  std::vector<ExtClass> basis = em.basis();
  Matrix out(basis.size(), reps.size(), p);
  for (size_t j = 0; j < basis.size(); ++j)
    for (size_t i = 0; i < reps.size(); ++i)
      out.set(j, i, w.apply_gamma(target, pullback(basis[j], reps[i])));
  if (out.rows() != out.cols() || rank(out) != out.rows())
    throw PreconditionError("pairing_matrix_stable: degenerate pairing");
  return out;
}

Matrix phi_matrix(const WitnessTable& wt, size_t y, const Rep& m) {
  // phi_{Y,M}(f)(mu) = gamma(pushout(mu, f)): rows over E(Y, M), columns
  // over the costable coset basis of Hom(M, tau Y).
  return pairing_matrix_costable(wt, y, m).transposed();
}

Matrix psi_matrix(const WitnessTable& wt, size_t y, const Rep& m) {
  // psi_{tauY,M}(g)(mu) = gamma(pullback(mu, g)): rows over E(M, tau Y),
  // columns over the stable coset basis of Hom(Y, M).
  return pairing_matrix_stable(wt, y, m);
}

Coset tau_on_morphism(const WitnessTable& wt, size_t i, size_t j, const RepMorphism& f) {
  const AlmostSplitWitness& wi = wt.ending(i);
  const AlmostSplitWitness& wj = wt.ending(j);
  const Rep& tau_i = wi.tri.fiber;
  const Rep& tau_j = wj.tri.fiber;
  if (f.source() != wt.object(i) || f.target() != wt.object(j))
    throw PreconditionError("tau_on_morphism: endpoints disagree with indices");
  // Solve phi_{Y_j, tau Y_i}(tau f) = (mu |-> gamma_i(pullback(mu, f))).
  Matrix a = phi_matrix(wt, j, tau_i);
  ExtSpace ej(wt.object(j), tau_i);
  ExtSpace ei(wt.object(i), tau_i);
  std::vector<ExtClass> basis = ej.basis();
  Matrix rhs(basis.size(), 1, f.source().modulus());
  for (size_t r = 0; r < basis.size(); ++r)
    rhs.set(r, 0, wi.apply_gamma(ei, pullback(basis[r], f)));
  auto sol = solve(a, rhs);
  if (!sol) throw PreconditionError("tau_on_morphism: Yoneda system inconsistent");
  StableHom ch = costable_hom(tau_i, tau_j);
  return {ch.rep_of_coords(*sol), *sol};
}

Coset tau_minus_on_morphism(const WitnessTable& wt, size_t i, size_t j,
                            const RepMorphism& g) {
  const AlmostSplitWitness& vi = wt.starting(i);
  const AlmostSplitWitness& vj = wt.starting(j);
  const Rep& tm_i = vi.tri.base;
  const Rep& tm_j = vj.tri.base;
  if (g.source() != wt.object(i) || g.target() != wt.object(j))
    throw PreconditionError("tau_minus_on_morphism: endpoints disagree with indices");
  // Solve psi_{X_i, tm_j}(tau^- g) = (mu |-> gamma_j(pushout(mu, g))).
  uint32_t p = g.source().modulus();
  StableHom sh = stable_hom(tm_i, tm_j);
  ExtSpace emu(tm_j, wt.object(i));
  ExtSpace etarget_i(tm_i, wt.object(i));
  ExtSpace etarget_j(tm_j, wt.object(j));
  std::vector<ExtClass> basis = emu.basis();
  std::vector<RepMorphism> reps = sh.coset_reps();
  Matrix a(basis.size(), reps.size(), p);
  for (size_t r = 0; r < basis.size(); ++r)
    for (size_t k = 0; k < reps.size(); ++k)
      a.set(r, k, vi.apply_gamma(etarget_i, pullback(basis[r], reps[k])));
  Matrix rhs(basis.size(), 1, p);
  for (size_t r = 0; r < basis.size(); ++r)
    rhs.set(r, 0, vj.apply_gamma(etarget_j, pushout(basis[r], g)));
  auto sol = solve(a, rhs);
  if (!sol) throw PreconditionError("tau_minus_on_morphism: Yoneda system inconsistent");
  return {sh.rep_of_coords(*sol), *sol};
}

Coset theta(const WitnessTable& wt, size_t i) {
  const AlmostSplitWitness& wi = wt.ending(i);
  size_t ti = *wt.tau_index(i);
  const AlmostSplitWitness& vt = wt.starting(ti);
  const Rep& z = vt.tri.base;  // tau^- tau Y
  const Rep& y = wt.object(i);
  uint32_t p = y.modulus();
  // Solve psi_{tauY, Y}(theta) = gamma_i as functionals on E(Y, tau Y).
  StableHom sh = stable_hom(z, y);
  ExtSpace ey(y, wt.object(ti));
  ExtSpace ez(z, wt.object(ti));
  std::vector<ExtClass> basis = ey.basis();
  std::vector<RepMorphism> reps = sh.coset_reps();
  Matrix a(basis.size(), reps.size(), p);
  for (size_t r = 0; r < basis.size(); ++r)
    for (size_t k = 0; k < reps.size(); ++k)
      a.set(r, k, vt.apply_gamma(ez, pullback(basis[r], reps[k])));
  Matrix rhs = wi.gamma.transposed();
  auto sol = solve(a, rhs);
  if (!sol) throw PreconditionError("theta: Yoneda system inconsistent");
  return {sh.rep_of_coords(*sol), *sol};
}

Coset xi(const WitnessTable& wt, size_t i) {
  const AlmostSplitWitness& vi = wt.starting(i);
  size_t mi = *wt.tau_minus_index(i);
  const AlmostSplitWitness& wm = wt.ending(mi);
  const Rep& x = wt.object(i);
  const Rep& t = wm.tri.fiber;  // tau tau^- X
  uint32_t p = x.modulus();
  // Solve phi_{tau^-X, X}(xi) = gamma'_i as functionals on E(tau^-X, X).
  StableHom ch = costable_hom(x, t);
  ExtSpace em(wt.object(mi), x);
  ExtSpace et(wt.object(mi), t);
  std::vector<ExtClass> basis = em.basis();
  std::vector<RepMorphism> reps = ch.coset_reps();
  Matrix a(basis.size(), reps.size(), p);
  for (size_t r = 0; r < basis.size(); ++r)
    for (size_t k = 0; k < reps.size(); ++k)
      a.set(r, k, wm.apply_gamma(et, pushout(basis[r], reps[k])));
  Matrix rhs = vi.gamma.transposed();
  auto sol = solve(a, rhs);
  if (!sol) throw PreconditionError("xi: Yoneda system inconsistent");
  return {ch.rep_of_coords(*sol), *sol};
}

// ---- Membership over truncations -----------------------------------------------------------

ObjectRef ObjectRef::parse(const std::string& name) {
  if (name.size() < 2)
    throw PreconditionError("ObjectRef::parse: expected S<k>, P<k> or I<k>");
  ObjectRef ref;
  char kind = name[0];
  if (kind == 'S')
    ref.kind = Kind::Simple;
  else if (kind == 'P')
    ref.kind = Kind::Projective;
  else if (kind == 'I')
    ref.kind = Kind::Injective;
  else
    throw PreconditionError("ObjectRef::parse: unknown object kind in " + name);
  ref.vertex = std::stoi(name.substr(1));
  return ref;
}

ObjectRef ObjectRef::of_rep(Rep r) {
  ObjectRef ref;
  ref.kind = Kind::Concrete;
  ref.concrete = std::move(r);
  return ref;
}

Rep ObjectRef::resolve(const InfiniteQuiverSpec& spec, int window, uint32_t p) const {
  QuiverPtr q = spec.truncate(window);
  switch (kind) {
    case Kind::Simple:
      return simple_at(q, p, vertex);
    case Kind::Projective:
      return proj_at(q, p, vertex);
    case Kind::Injective:
      return inj_at(q, p, vertex);
    case Kind::Concrete:
      return extend_rep(spec, *concrete, window);
  }
  throw PreconditionError("ObjectRef::resolve: bad kind");
}

std::string ObjectRef::label() const {
  switch (kind) {
    case Kind::Simple:
      return "S" + std::to_string(vertex);
    case Kind::Projective:
      return "P" + std::to_string(vertex);
    case Kind::Injective:
      return "I" + std::to_string(vertex);
    case Kind::Concrete:
      return "(rep)";
  }
  return "?";
}

std::optional<Rep> restrict_rep(const InfiniteQuiverSpec& spec, const Rep& r, int window) {
  QuiverPtr small = spec.truncate(window);
  const Quiver& big = *r.quiver();
  for (int v : big.vertices())
    if (!small->has_vertex(v) && r.dim(big.vertex_index(v)) != 0) return std::nullopt;
  std::vector<size_t> dims(small->num_vertices());
  for (int v : small->vertices()) dims[small->vertex_index(v)] = r.dim(big.vertex_index(v));
  std::vector<Matrix> maps;
  for (size_t a = 0; a < small->num_arrows(); ++a)
    maps.push_back(r.map(big.arrow_index(small->arrows()[a].id)));
  return Rep(small, r.modulus(), std::move(dims), std::move(maps));
}

namespace {

MembershipVerdict membership(const InfiniteQuiverSpec& spec, const ObjectRef& obj,
                             uint32_t p, int n0, int nmax, int step, const ArConfig& cfg,
                             bool tau_direction) {
  if (step < 1) throw PreconditionError("membership: step must be positive");
  MembershipVerdict v;
  v.object = obj.label();
  v.mode = tau_direction ? "r" : "l";
  v.max_window = nmax;

  std::optional<Rep> prev_value;
  int prev_window = 0;
  int agreements = 0;
  for (int n = n0; n <= nmax; n += step) {
    Rep m = obj.resolve(spec, n, p);
    if (m.is_zero_rep() || !is_indecomposable(m, cfg.decompose))
      throw PreconditionError("membership: object is zero or decomposes in window " +
                              std::to_string(n));
    if (tau_direction && is_projective_object(m))
      throw PreconditionError("membership: projective object has no tau");
    if (!tau_direction && is_injective_object(m))
      throw PreconditionError("membership: injective object has no tau^-");
    Rep value = tau_direction ? tau(m, cfg) : tau_minus(m, cfg);
    v.windows.push_back(n);
    v.translate_dims.push_back(value.dims());

    if (prev_value) {
      bool agree = false;
      if (auto cut = restrict_rep(spec, value, prev_window))
        agree = is_isomorphic(*cut, *prev_value, cfg.decompose);
      agreements = agree ? agreements + 1 : 0;
    }
    prev_value = value;
    prev_window = n;

    if (agreements >= 2) {
      v.member = true;
      v.stable_value = value;
      // Validate the almost split triangle inside the current window against
      // the full indecomposable universe.
      std::vector<Rep> universe = enumerate_indecomposables(m.quiver(), p);
      AlmostSplitWitness w = tau_direction
                                 ? almost_split_ending_at(m, universe, cfg)
                                 : almost_split_starting_at(m, universe, cfg);
      v.witness = std::move(w);
      v.note = "stabilized at window " + std::to_string(n);
      return v;
    }
  }
  v.member = false;
  v.note = "no evidence of stabilization up to window " + std::to_string(nmax);
  return v;
}

}  // namespace

MembershipVerdict cr_membership(const InfiniteQuiverSpec& spec, const ObjectRef& obj,
                                uint32_t p, int n0, int nmax, int step,
                                const ArConfig& cfg) {
  return membership(spec, obj, p, n0, nmax, step, cfg, /*tau_direction=*/true);
}

MembershipVerdict cl_membership(const InfiniteQuiverSpec& spec, const ObjectRef& obj,
                                uint32_t p, int n0, int nmax, int step,
                                const ArConfig& cfg) {
  return membership(spec, obj, p, n0, nmax, step, cfg, /*tau_direction=*/false);
}

}  // namespace arq
