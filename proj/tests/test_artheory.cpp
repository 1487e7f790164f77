#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "arq/artheory.hpp"
#include "arq/quiver.hpp"

using namespace arq;

namespace {

QuiverPtr a2() { return make_line_quiver(2); }
QuiverPtr a3() { return make_line_quiver(3); }
QuiverPtr a3zig() { return make_zigzag_quiver(3); }

// Interval module in line order, for fixtures where vertex ids are already
// the line order.
Rep interval(QuiverPtr q, uint32_t p, int lo, int hi) {
  std::vector<size_t> dims(q->num_vertices(), 0);
  for (int v = lo; v <= hi; ++v) dims[q->vertex_index(v)] = 1;
  std::vector<Matrix> maps;
  for (size_t a = 0; a < q->num_arrows(); ++a) {
    size_t dx = dims[q->vertex_index(q->arrows()[a].src)];
    size_t dy = dims[q->vertex_index(q->arrows()[a].tgt)];
    Matrix m(dy, dx, p);
    if (dx == 1 && dy == 1) m.set(0, 0, 1);
    maps.push_back(std::move(m));
  }
  return Rep(q, p, std::move(dims), std::move(maps));
}

// Independent oracle: search every universe member A and every nonzero class
// in E(c, A) for a triangle passing exhaustive validation.
std::optional<STriangle> brute_force_almost_split_ending_at(
    const Rep& c, const std::vector<Rep>& universe, const ArConfig& cfg = {}) {
  uint32_t p = c.modulus();
  for (const Rep& a : universe) {
    ExtSpace es(c, a);
    if (es.dim() == 0) continue;
    uint64_t count = 1;
    for (size_t i = 0; i < es.dim(); ++i) count *= p;
    std::vector<uint32_t> digits(es.dim(), 0);
    for (uint64_t k = 0; k < count; ++k) {
      bool nonzero = false;
      for (uint32_t d : digits) nonzero = nonzero || d != 0;
      if (nonzero) {
        Matrix coords(es.dim(), 1, p);
        for (size_t i = 0; i < es.dim(); ++i) coords.set(i, 0, digits[i]);
        STriangle t = realize(es.from_coords(coords));
        if (check_almost_split(t, universe, cfg).pass) return t;
      }
      for (size_t i = 0; i < digits.size(); ++i) {
        if (++digits[i] < p) break;
        digits[i] = 0;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("minimal presentation: projectives have empty p1") {
  auto q = a3();
  for (int v : q->vertices()) {
    ProjPresentation pp = min_proj_presentation(proj_at(q, 2, v));
    CHECK(pp.p1_vertices.empty());
    CHECK_THROWS_AS(transpose_presentation(pp), PreconditionError);
  }
}

TEST_CASE("minimal presentation of S1 on A2: 0 -> P2 -> P1 -> S1 -> 0") {
  auto q = a2();
  ProjPresentation pp = min_proj_presentation(simple_at(q, 2, 1));
  REQUIRE(pp.p0_vertices == std::vector<int>{1});
  REQUIRE(pp.p1_vertices == std::vector<int>{2});
  CHECK(pp.differential.vertexwise_injective());
  CHECK(pp.cover.vertexwise_surjective());
}

TEST_CASE("paper quiver: S4 is presented by 0 -> P5 -> P4 -> S4 -> 0") {
  auto spec = InfiniteQuiverSpec::preset("paper-ainf-zigzag");
  auto q = spec.truncate(8);
  ProjPresentation pp = min_proj_presentation(simple_at(q, 2, 4));
  CHECK(pp.p0_vertices == std::vector<int>{4});
  CHECK(pp.p1_vertices == std::vector<int>{5});
}

TEST_CASE("transpose of S1's presentation on A2 dualizes to S2") {
  auto q = a2();
  ProjPresentation pp = min_proj_presentation(simple_at(q, 2, 1));
  Rep tr = transpose_presentation(pp);  // over the opposite quiver
  Rep back = dualize(tr, tr.quiver()->opposite());
  CHECK(is_isomorphic(back, simple_at(back.quiver(), 2, 2)));
}

TEST_CASE("tau values on A2 and A3 (hand-computed AR quivers)") {
  auto q2 = a2();
  CHECK(is_isomorphic(tau(simple_at(q2, 2, 1)), simple_at(q2, 2, 2)));
  CHECK_THROWS_AS(tau(proj_at(q2, 2, 1)), PreconditionError);
  CHECK_THROWS_AS(tau_minus(inj_at(q2, 2, 2)), PreconditionError);
  // Same translate over a larger prime field.
  auto q5 = make_line_quiver(2);
  CHECK(is_isomorphic(tau(simple_at(q5, 5, 1)), simple_at(q5, 5, 2)));
  CHECK(is_isomorphic(tau_minus(simple_at(q5, 5, 2)), simple_at(q5, 5, 1)));

  auto q3 = a3();
  CHECK(is_isomorphic(tau(simple_at(q3, 2, 1)), simple_at(q3, 2, 2)));
  CHECK(is_isomorphic(tau(simple_at(q3, 2, 2)), simple_at(q3, 2, 3)));
  CHECK(is_isomorphic(tau(interval(q3, 2, 1, 2)), interval(q3, 2, 2, 3)));
}

TEST_CASE("double transpose is the identity on non-projective indecomposables (A3)") {
  auto q = a3();
  for (const Rep& m : enumerate_indecomposables(q, 2)) {
    if (is_projective_object(m)) continue;
    ProjPresentation pp = min_proj_presentation(m);
    Rep tr = transpose_presentation(pp);
    ProjPresentation pp2 = min_proj_presentation(tr);
    Rep trtr = transpose_presentation(pp2);
    CHECK(trtr.dims() == m.dims());
    CHECK(is_isomorphic(trtr,
                        Rep(m.quiver(), m.modulus(), trtr.dims(), trtr.maps())));
  }
}

TEST_CASE("tau and tau_minus are quasi-inverse on A3 and A3-zigzag") {
  for (auto q : {a3(), a3zig()}) {
    for (const Rep& m : enumerate_indecomposables(q, 2)) {
      if (!is_projective_object(m)) {
        Rep t = tau(m);
        CHECK(is_indecomposable(t));
        CHECK(!is_injective_object(t));
        CHECK(is_isomorphic(tau_minus(t), m));
      }
      if (!is_injective_object(m)) {
        Rep t = tau_minus(m);
        CHECK(is_indecomposable(t));
        CHECK(!is_projective_object(t));
        CHECK(is_isomorphic(tau(t), m));
      }
    }
  }
}

TEST_CASE("A2: the almost split triangle ending at S1 is S2 -> P1 -> S1") {
  auto q = a2();
  auto universe = enumerate_indecomposables(q, 2);
  AlmostSplitWitness w = almost_split_ending_at(simple_at(q, 2, 1), universe);
  CHECK(w.report.pass);
  CHECK(is_isomorphic(w.tri.fiber, simple_at(q, 2, 2)));
  CHECK(is_isomorphic(w.tri.middle, proj_at(q, 2, 1)));
  CHECK_THROWS_AS(almost_split_ending_at(proj_at(q, 2, 1), universe), PreconditionError);
}

TEST_CASE("A3-zigzag: the triangle ending at the (1,1,1) module has fiber S2") {
  auto q = a3zig();
  auto universe = enumerate_indecomposables(q, 2);
  Rep i2 = interval(q, 2, 1, 3);
  AlmostSplitWitness w = almost_split_ending_at(i2, universe);
  CHECK(w.report.pass);
  CHECK(is_isomorphic(w.tri.fiber, simple_at(q, 2, 2)));
  // Mesh middle: P1 + P3 with dimension vector (1,2,1).
  Rep mesh = direct_sum({proj_at(q, 2, 1), proj_at(q, 2, 3)}).sum;
  CHECK(is_isomorphic(w.tri.middle, mesh));
}

TEST_CASE("split and corrupted triangles fail validation with a witness") {
  auto q = a2();
  auto universe = enumerate_indecomposables(q, 2);
  Rep s1 = simple_at(q, 2, 1);
  Rep s2 = simple_at(q, 2, 2);
  STriangle split = realize(ExtClass::zero(s1, s2));
  AlmostSplitReport r1 = check_almost_split(split, universe);
  CHECK(!r1.pass);

  // Corrupt the middle: the direct sum sequence with a nonsplit class label
  // cannot arise, so corrupt by taking a nonsplit class whose base is not
  // indecomposable.
  DirectSum ds = direct_sum({s1, s1});
  ExtSpace es(ds.sum, s2);
  REQUIRE(es.dim() > 0);
  STriangle bad = realize(es.basis()[0]);
  AlmostSplitReport r2 = check_almost_split(bad, universe);
  CHECK(!r2.pass);
  bool found_witness = false;
  for (const auto& c : r2.checks)
    if (!c.pass) found_witness = true;
  CHECK(found_witness);
}

TEST_CASE("brute-force oracle agrees with the socle construction on A3 fixtures") {
  for (auto q : {a3(), a3zig()}) {
    auto universe = enumerate_indecomposables(q, 2);
    for (const Rep& c : universe) {
      if (is_projective_object(c)) continue;
      auto brute = brute_force_almost_split_ending_at(c, universe);
      REQUIRE(brute.has_value());
      AlmostSplitWitness w = almost_split_ending_at(c, universe);
      CHECK(w.report.pass);
      CHECK(is_isomorphic(brute->fiber, w.tri.fiber));
      CHECK(is_isomorphic(brute->fiber, tau(c)));
      CHECK(is_isomorphic(brute->middle, w.tri.middle));
    }
  }
}

TEST_CASE("witness table on A3: tau indices invert each other") {
  auto q = a3();
  WitnessTable wt(enumerate_indecomposables(q, 2));
  for (size_t i = 0; i < wt.size(); ++i) {
    if (auto ti = wt.tau_index(i)) {
      CHECK(!wt.injective(*ti));
      CHECK(wt.tau_minus_index(*ti) == i);
    }
    if (auto mi = wt.tau_minus_index(i)) {
      CHECK(!wt.projective(*mi));
      CHECK(wt.tau_index(*mi) == i);
    }
  }
}

TEST_CASE("pairings: full rank and the AR-duality dimension identities on A3") {
  auto q = a3();
  WitnessTable wt(enumerate_indecomposables(q, 2));
  for (size_t y = 0; y < wt.size(); ++y) {
    if (wt.projective(y)) continue;
    const Rep& tau_y = wt.ending(y).tri.fiber;
    for (size_t m = 0; m < wt.size(); ++m) {
      const Rep& mm = wt.object(m);
      Matrix p1 = pairing_matrix_costable(wt, y, mm);
      Matrix p2 = pairing_matrix_stable(wt, y, mm);
      CHECK(costable_hom(mm, tau_y).dim() == ext_dim(wt.object(y), mm));
      CHECK(stable_hom(wt.object(y), mm).dim() == ext_dim(mm, tau_y));
      CHECK(p1.rows() == p1.cols());
      CHECK(rank(p1) == p1.rows());
      CHECK(p2.rows() == p2.cols());
      CHECK(rank(p2) == p2.rows());
    }
  }
}

TEST_CASE("pairing at m = tauY sends the identity coset to gamma(eta) = 1") {
  auto q = a3();
  WitnessTable wt(enumerate_indecomposables(q, 2));
  for (size_t y = 0; y < wt.size(); ++y) {
    if (wt.projective(y)) continue;
    const AlmostSplitWitness& w = wt.ending(y);
    ExtSpace es(w.tri.base, w.tri.fiber);
    CHECK(w.apply_gamma(es, w.tri.cls) == 1);
    // phi_{Y, tauY}(Id)(eta) = gamma(pushout(eta, Id)) = gamma(eta) != 0.
    CHECK(w.apply_gamma(es, pushout(w.tri.cls,
                                    RepMorphism::identity(w.tri.fiber))) == 1);
  }
}

TEST_CASE("phi naturality on random triples (A3)") {
  auto q = a3();
  WitnessTable wt(enumerate_indecomposables(q, 2));
  std::mt19937_64 rng(2718);
  for (size_t y = 0; y < wt.size(); ++y) {
    if (wt.projective(y)) continue;
    const AlmostSplitWitness& w = wt.ending(y);
    const Rep& tau_y = w.tri.fiber;
    ExtSpace etau(w.tri.base, tau_y);
    for (int s = 0; s < 12; ++s) {
      Rep m = random_rep(q, 2, 2, rng);
      Rep m2 = random_rep(q, 2, 2, rng);
      RepMorphism g = random_hom(hom_space(m, m2), rng);
      // phi_{Y,m}(f' g) and phi_{Y,m2}(f') * (pushout by g) agree for every f'.
      StableHom ch2 = costable_hom(m2, tau_y);
      ExtSpace em(w.tri.base, m);
      for (const RepMorphism& f2 : ch2.coset_reps()) {
        for (const ExtClass& mu : em.basis()) {
          uint32_t lhs = w.apply_gamma(etau, pushout(mu, compose(f2, g)));
          uint32_t rhs = w.apply_gamma(etau, pushout(pushout(mu, g), f2));
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("psi naturality on random triples (A3)") {
  auto q = a3();
  WitnessTable wt(enumerate_indecomposables(q, 2));
  std::mt19937_64 rng(1618);
  for (size_t y = 0; y < wt.size(); ++y) {
    if (wt.projective(y)) continue;
    const AlmostSplitWitness& w = wt.ending(y);
    const Rep& tau_y = w.tri.fiber;
    ExtSpace etau(w.tri.base, tau_y);
    for (int s = 0; s < 12; ++s) {
      Rep m = random_rep(q, 2, 2, rng);
      Rep m2 = random_rep(q, 2, 2, rng);
      RepMorphism g = random_hom(hom_space(m, m2), rng);
      // psi_{tauY,m2}(g' . g-bar) against mu equals psi_{tauY,m}(g')(pullback by g):
      // gamma((g' g)* mu) = gamma(g*(g'* mu)) for every coset g' and mu.
      StableHom sh = stable_hom(w.tri.base, m);
      ExtSpace em2(m2, tau_y);
      for (const RepMorphism& gp : sh.coset_reps()) {
        for (const ExtClass& mu : em2.basis()) {
          uint32_t lhs = w.apply_gamma(etau, pullback(mu, compose(g, gp)));
          uint32_t rhs = w.apply_gamma(etau, pullback(pullback(mu, g), gp));
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("tau on morphisms: identity, s-projective kill, functoriality") {
  auto q = a3();
  WitnessTable wt(enumerate_indecomposables(q, 2));
  std::mt19937_64 rng(31415);
  std::vector<size_t> legal;
  for (size_t i = 0; i < wt.size(); ++i)
    if (!wt.projective(i)) legal.push_back(i);

  for (size_t i : legal) {
    Coset id_t = tau_on_morphism(wt, i, i, RepMorphism::identity(wt.object(i)));
    const Rep& ti = wt.ending(i).tri.fiber;
    StableHom ch = costable_hom(ti, ti);
    CHECK(id_t.coords == ch.coords_of(RepMorphism::identity(ti)));
  }

  // Morphisms factoring through projectives map to the zero coset.
  for (size_t i : legal) {
    for (size_t j : legal) {
      HomSubspace ideal = sproj_ideal(wt.object(i), wt.object(j));
      for (const RepMorphism& f : ideal.basis) {
        Coset tf = tau_on_morphism(wt, i, j, f);
        CHECK(tf.coords.is_zero());
      }
    }
  }

  // Functoriality tau(g f) = tau(g) tau(f) as costable cosets.
  for (int s = 0; s < 30; ++s) {
    size_t i = legal[rng() % legal.size()];
    size_t j = legal[rng() % legal.size()];
    size_t k = legal[rng() % legal.size()];
    RepMorphism f = random_hom(hom_space(wt.object(i), wt.object(j)), rng);
    RepMorphism g = random_hom(hom_space(wt.object(j), wt.object(k)), rng);
    Coset t_gf = tau_on_morphism(wt, i, k, compose(g, f));
    Coset t_f = tau_on_morphism(wt, i, j, f);
    Coset t_g = tau_on_morphism(wt, j, k, g);
    const Rep& ti = wt.ending(i).tri.fiber;
    const Rep& tk = wt.ending(k).tri.fiber;
    StableHom ch = costable_hom(ti, tk);
    CHECK(t_gf.coords == ch.coords_of(compose(t_g.representative, t_f.representative)));
  }
}

TEST_CASE("theta is invertible; triangle identities; naturality (A3)") {
  auto q = a3();
  WitnessTable wt(enumerate_indecomposables(q, 2));
  std::mt19937_64 rng(999);
  std::vector<size_t> nonproj, noninj;
  for (size_t i = 0; i < wt.size(); ++i) {
    if (!wt.projective(i)) nonproj.push_back(i);
    if (!wt.injective(i)) noninj.push_back(i);
  }

  // Invertibility of theta as a stable coset (left multiplication on the
  // stable endomorphism algebra is bijective).
  for (size_t i : nonproj) {
    CHECK(*wt.tau_minus_index(*wt.tau_index(i)) == i);
    Coset th = theta(wt, i);
    StableHom endo = stable_hom(wt.object(i), wt.object(i));
    REQUIRE(endo.dim() > 0);
    Matrix lmul(endo.dim(), endo.dim(), 2);
    for (size_t k = 0; k < endo.dim(); ++k) {
      RepMorphism ek = endo.rep_of_coords(
          [&] {
            Matrix c(endo.dim(), 1, 2);
            c.set(k, 0, 1);
            return c;
          }());
      lmul.set_block(0, k, endo.coords_of(compose(ek, th.representative)));
    }
    CHECK(rank(lmul) == endo.dim());
  }

  // Triangle identity (1): tau(theta_Y) . xi_{tau Y} = Id as costable cosets.
  for (size_t i : nonproj) {
    size_t ti = *wt.tau_index(i);
    Coset th = theta(wt, i);
    Coset tau_th = tau_on_morphism(wt, i, i, th.representative);
    Coset xi_t = xi(wt, ti);
    const Rep& t = wt.object(ti);
    StableHom ch = costable_hom(t, t);
    RepMorphism composite = compose(tau_th.representative, xi_t.representative);
    CHECK(ch.coords_of(composite) == ch.coords_of(RepMorphism::identity(t)));
  }

  // Triangle identity (2): theta_{tau^- X} . tau^-(xi_X) = Id as stable cosets.
  for (size_t i : noninj) {
    size_t mi = *wt.tau_minus_index(i);
    Coset xi_i = xi(wt, i);
    Coset tm_xi = tau_minus_on_morphism(wt, i, i, xi_i.representative);
    Coset th = theta(wt, mi);
    const Rep& z = wt.object(mi);
    StableHom sh = stable_hom(z, z);
    RepMorphism composite = compose(th.representative, tm_xi.representative);
    CHECK(sh.coords_of(composite) == sh.coords_of(RepMorphism::identity(z)));
  }

  // Naturality: f . theta_Y = theta_{Y'} . tau^- tau (f) as stable cosets.
  for (int s = 0; s < 50; ++s) {
    size_t i = nonproj[rng() % nonproj.size()];
    size_t j = nonproj[rng() % nonproj.size()];
    RepMorphism f = random_hom(hom_space(wt.object(i), wt.object(j)), rng);
    Coset tf = tau_on_morphism(wt, i, j, f);
    size_t ti = *wt.tau_index(i);
    size_t tj = *wt.tau_index(j);
    Coset tmtf = tau_minus_on_morphism(wt, ti, tj, tf.representative);
    Coset th_i = theta(wt, i);
    Coset th_j = theta(wt, j);
    StableHom sh = stable_hom(wt.object(i), wt.object(j));
    RepMorphism lhs = compose(f, th_i.representative);
    RepMorphism rhs = compose(th_j.representative, tmtf.representative);
    CHECK(sh.coords_of(lhs) == sh.coords_of(rhs));
  }
}

TEST_CASE("witness machinery over F3: pairings, triangle identities, existence sweep") {
  // Over F2 every nonzero scalar is 1, so this is the fixture that exercises
  // genuine inversions in gamma normalization and the Yoneda solves.
  auto q = a3();
  auto universe = enumerate_indecomposables(q, 3);
  WitnessTable wt(universe);
  for (size_t y = 0; y < wt.size(); ++y) {
    if (wt.projective(y)) continue;
    for (size_t m = 0; m < wt.size(); ++m) {
      Matrix v1 = pairing_matrix_costable(wt, y, wt.object(m));
      CHECK(rank(v1) == v1.rows());
    }
    // Triangle identity (1) at p = 3.
    size_t ti = *wt.tau_index(y);
    Coset th = theta(wt, y);
    Coset tau_th = tau_on_morphism(wt, y, y, th.representative);
    Coset xi_t = xi(wt, ti);
    const Rep& t = wt.object(ti);
    StableHom ch = costable_hom(t, t);
    CHECK(ch.coords_of(compose(tau_th.representative, xi_t.representative)) ==
          ch.coords_of(RepMorphism::identity(t)));
  }
}

TEST_CASE("paper 5.2: tau S1 stabilizes to the {2,3} interval, not the paper's S2") {
  auto spec = InfiniteQuiverSpec::preset("paper-ainf-zigzag");
  MembershipVerdict v =
      cr_membership(spec, ObjectRef::parse("S1"), 2, 8, 12, 2);
  CHECK(v.member);
  REQUIRE(v.stable_value.has_value());
  auto q12 = v.stable_value->quiver();
  Rep m23 = [&] {
    std::vector<size_t> dims(q12->num_vertices(), 0);
    dims[q12->vertex_index(2)] = 1;
    dims[q12->vertex_index(3)] = 1;
    std::vector<Matrix> maps;
    for (size_t a = 0; a < q12->num_arrows(); ++a) {
      size_t dx = dims[q12->vertex_index(q12->arrows()[a].src)];
      size_t dy = dims[q12->vertex_index(q12->arrows()[a].tgt)];
      Matrix mm(dy, dx, 2);
      if (dx == 1 && dy == 1) mm.set(0, 0, 1);
      maps.push_back(std::move(mm));
    }
    return Rep(q12, 2, dims, maps);
  }();
  CHECK(is_isomorphic(*v.stable_value, m23));
  CHECK(!is_isomorphic(*v.stable_value, simple_at(q12, 2, 2)));
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->report.pass);

  // The published candidate 0 -> S2 -> P1 -> S1 -> 0 fails (AS2) at the
  // window level: the (1,1,1,0,...) interval maps onto S1 but does not lift.
  auto q8 = spec.truncate(8);
  ExtSpace es(simple_at(q8, 2, 1), simple_at(q8, 2, 2));
  REQUIRE(es.dim() == 1);
  STriangle paper_candidate = realize(es.basis()[0]);
  CHECK(is_isomorphic(paper_candidate.middle, proj_at(q8, 2, 1)));
  AlmostSplitReport r = check_almost_split(
      paper_candidate, enumerate_indecomposables(q8, 2));
  CHECK(!r.pass);
  bool as2_failed = false;
  for (const auto& c : r.checks)
    if (!c.pass && (c.name == "as2-pullback-vanishes" ||
                    c.name == "right-almost-split-factorization"))
      as2_failed = true;
  CHECK(as2_failed);
}

TEST_CASE("paper 5.2: tau^- of P5 shows no stabilization up to window 12") {
  auto spec = InfiniteQuiverSpec::preset("paper-ainf-zigzag");
  MembershipVerdict v =
      cl_membership(spec, ObjectRef::parse("P5"), 2, 8, 12, 2);
  CHECK(!v.member);
  CHECK(v.windows.size() == 3);
  // The translate grows with the window: dims fill out {4 .. N-1}.
  CHECK(v.translate_dims[0] != v.translate_dims[1]);
}

TEST_CASE("finite quivers: membership always stabilizes (concrete object)") {
  auto spec = InfiniteQuiverSpec::preset("paper-ainf-zigzag");
  auto q6 = spec.truncate(6);
  // S1 as a concrete zero-padded rep stabilizes as well.
  MembershipVerdict v = cr_membership(
      spec, ObjectRef::of_rep(simple_at(q6, 2, 1)), 2, 6, 12, 2);
  CHECK(v.member);
}

TEST_CASE("membership rejects objects that decompose after extension") {
  auto spec = InfiniteQuiverSpec::preset("paper-ainf-zigzag");
  auto q6 = spec.truncate(6);
  Rep sum = direct_sum({simple_at(q6, 2, 1), simple_at(q6, 2, 1)}).sum;
  CHECK_THROWS_AS(cr_membership(spec, ObjectRef::of_rep(sum), 2, 6, 10, 2),
                  PreconditionError);
}
