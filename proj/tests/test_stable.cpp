#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "arq/decompose.hpp"
#include "arq/ext.hpp"
#include "arq/quiver.hpp"
#include "arq/stable.hpp"

using namespace arq;

namespace {

QuiverPtr a2() { return make_line_quiver(2); }
QuiverPtr a3() { return make_line_quiver(3); }

// Brute-force radical oracle: f lies in rad(X, Y) iff Id_Y - f g is
// invertible for every g: Y -> X.
bool radical_member_brute(const RepMorphism& f, uint64_t cap) {
  HomSpace back = hom_space(f.target(), f.source());
  RepMorphism id = RepMorphism::identity(f.target());
  for (const RepMorphism& g : enumerate_hom(back, cap)) {
    if (!(id - compose(f, g)).is_iso()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("projective cover: of P_a is P_a; of S1 in A2 is P1 with kernel S2") {
  auto q = a2();
  Rep p1 = proj_at(q, 2, 1);
  ProjectiveCover c1 = projective_cover(p1);
  CHECK(is_isomorphic(c1.p0, p1));
  CHECK(c1.cover.is_iso());

  Rep s1 = simple_at(q, 2, 1);
  ProjectiveCover c2 = projective_cover(s1);
  CHECK(is_isomorphic(c2.p0, p1));
  SubRep k = kernel_rep(c2.cover);
  CHECK(is_isomorphic(k.sub, simple_at(q, 2, 2)));
}

TEST_CASE("injective envelope: S1 in A2 embeds into I1") {
  auto q = a2();
  Rep s1 = simple_at(q, 2, 1);
  InjectiveEnvelope env = injective_envelope(s1);
  CHECK(is_isomorphic(env.i0, inj_at(q, 2, 1)));
  CHECK(env.envelope.vertexwise_injective());
  // S2 embeds into I2 = P1.
  Rep s2 = simple_at(q, 2, 2);
  InjectiveEnvelope env2 = injective_envelope(s2);
  CHECK(is_isomorphic(env2.i0, inj_at(q, 2, 2)));
}

TEST_CASE("projectivity/injectivity object tests") {
  auto q = a3();
  for (int v : q->vertices()) {
    CHECK(is_projective_object(proj_at(q, 2, v)));
    CHECK(is_injective_object(inj_at(q, 2, v)));
  }
  CHECK(!is_projective_object(simple_at(q, 2, 1)));
  CHECK(!is_injective_object(simple_at(q, 2, 3)));
}

TEST_CASE("sproj ideal: projective target absorbs the whole Hom space") {
  auto q = a3();
  std::mt19937_64 rng(5);
  for (int s = 0; s < 10; ++s) {
    Rep c = random_rep(q, 2, 2, rng);
    for (int v : q->vertices()) {
      Rep pv = proj_at(q, 2, v);
      HomSubspace ideal = sproj_ideal(c, pv);
      CHECK(ideal.dim() == hom_basis(c, pv).size());
    }
  }
}

TEST_CASE("sproj ideal on A2: Hom(S1, S1) has zero s-projective part") {
  auto q = a2();
  Rep s1 = simple_at(q, 2, 1);
  HomSubspace ideal = sproj_ideal(s1, s1);
  CHECK(ideal.dim() == 0);
  CHECK(hom_basis(s1, s1).size() == 1);
  StableHom sh = stable_hom(s1, s1);
  CHECK(sh.dim() == 1);
}

TEST_CASE("sproj ideal dimension is additive over direct sums") {
  auto q = a3();
  Rep s1 = simple_at(q, 2, 1);
  Rep s2 = simple_at(q, 2, 2);
  Rep m = direct_sum({s1, s2}).sum;
  Rep y = proj_at(q, 2, 2);
  CHECK(sproj_ideal(m, y).dim() ==
        sproj_ideal(s1, y).dim() + sproj_ideal(s2, y).dim());
}

TEST_CASE("lemma (arb): s-projective iff factors through every deflation onto the target") {
  auto q = a3();
  std::mt19937_64 rng(17);
  for (int s = 0; s < 60; ++s) {
    Rep c = random_rep(q, 2, 2, rng);
    Rep y = random_rep(q, 2, 2, rng);
    HomSpace h = hom_space(c, y);
    if (h.dim() == 0) continue;
    RepMorphism f = random_hom(h, rng);
    bool in_ideal = sproj_ideal(c, y).contains(f);

    // Route 2: factors through sampled deflations onto y (cover deflation
    // plus realized random classes).
    bool factors_all = true;
    ProjectiveCover cover = projective_cover(y);
    if (!factor_through(f, cover.cover)) factors_all = false;
    for (int k = 0; k < 3 && factors_all; ++k) {
      Rep a = random_rep(q, 2, 2, rng);
      for (const ExtClass& delta : ExtSpace(y, a).basis()) {
        STriangle t = realize(delta);
        if (!factor_through(f, t.defl).has_value()) {
          factors_all = false;
          break;
        }
      }
    }
    CHECK(in_ideal == factors_all);

    // Route 3: every pullback triangle along f splits. The cover sequence
    // class is decisive for the hereditary instance.
    bool kills_ext = true;
    {
      SubRep k = kernel_rep(cover.cover);
      if (!k.sub.is_zero_rep()) {
        ExtClass sigma = class_of(k.sub, cover.p0, y, k.inclusion, cover.cover);
        if (!is_split(pullback(sigma, f))) kills_ext = false;
      }
    }
    CHECK(in_ideal == kills_ext);
    // And s-projectivity kills every sampled class over simple fibers.
    if (in_ideal) {
      for (int v : q->vertices()) {
        Rep sv = simple_at(q, 2, v);
        for (const ExtClass& delta : ExtSpace(y, sv).basis())
          CHECK(is_split(pullback(delta, f)));
      }
    }
  }
}

TEST_CASE("lemma (ft.stable): plain factoring equals stable-coset factoring") {
  auto q = a3();
  std::mt19937_64 rng(29);
  for (int s = 0; s < 60; ++s) {
    Rep x = random_rep(q, 2, 2, rng);
    Rep y = random_rep(q, 2, 2, rng);
    Rep tt = random_rep(q, 2, 2, rng);
    HomSpace xy = hom_space(x, y);
    if (xy.dim() == 0) continue;
    RepMorphism alpha = random_hom(xy, rng);
    if (!alpha.vertexwise_surjective()) continue;
    RepMorphism f = random_hom(hom_space(tt, y), rng);

    bool plain = factor_through(f, alpha).has_value();
    // Stable side: exists g with f - alpha g inside P(T, Y).
    HomSpace tx = hom_space(tt, x);
    HomSubspace ideal = sproj_ideal(tt, y);
    Matrix cols(morphism_to_flat(f).rows(), 0, 2);
    for (size_t k = 0; k < tx.dim(); ++k)
      cols = cols.hstack(morphism_to_flat(compose(alpha, tx.basis[k])));
    cols = cols.hstack(ideal.basis_cols());
    bool stable = in_column_space(cols, morphism_to_flat(f));
    CHECK(plain == stable);
  }
}

TEST_CASE("radical: block description matches brute force on every A3 indec pair") {
  auto q = a3();
  auto univ = enumerate_indecomposables(q, 2);
  for (const Rep& x : univ) {
    for (const Rep& y : univ) {
      HomSubspace rad = radical(x, y);
      HomSpace h = hom_space(x, y);
      for (const RepMorphism& f : enumerate_hom(h, 1 << 16)) {
        CHECK(rad.contains(f) == radical_member_brute(f, 1 << 16));
      }
    }
  }
}

TEST_CASE("radical: brute force agreement on decomposable A3 fixtures") {
  auto q = a3();
  Rep s1 = simple_at(q, 2, 1);
  Rep p2 = proj_at(q, 2, 2);
  std::vector<Rep> objs = {direct_sum({s1, s1}).sum, direct_sum({s1, p2}).sum,
                           direct_sum({p2, p2}).sum};
  for (const Rep& x : objs) {
    for (const Rep& y : objs) {
      HomSubspace rad = radical(x, y);
      for (const RepMorphism& f : enumerate_hom(hom_space(x, y), 1 << 16))
        CHECK(rad.contains(f) == radical_member_brute(f, 1 << 16));
    }
  }
}

TEST_CASE("radical basics: non-isomorphic indecomposables give the full Hom") {
  auto q = a2();
  Rep s2 = simple_at(q, 2, 2);
  Rep p1 = proj_at(q, 2, 1);
  CHECK(radical(s2, p1).dim() == hom_basis(s2, p1).size());
  CHECK(radical(s2, s2).dim() == 0);  // rad End(S2) = 0
}

TEST_CASE("right minimal version: already minimal, and zero-component stripping") {
  auto q = a2();
  Rep s1 = simple_at(q, 2, 1);
  Rep p1 = proj_at(q, 2, 1);
  ProjectiveCover cover = projective_cover(s1);
  RepMorphism p = cover.cover;  // P1 ->> S1, already right minimal
  RightMinimalVersion rm = right_minimal_version(p);
  CHECK(rm.minimal.source() == cover.p0);
  CHECK(is_right_minimal(p));

  // f + (Z -> 0 component): stripping recovers a source isomorphic to P1.
  Rep z = simple_at(q, 2, 2);
  DirectSum ds = direct_sum({cover.p0, z});
  RepMorphism padded = compose(p, ds.projections[0]);
  RightMinimalVersion rm2 = right_minimal_version(padded);
  CHECK(is_isomorphic(rm2.minimal.source(), p1));
  CHECK(compose(rm2.minimal, rm2.factor) == padded);
  CHECK(compose(padded, rm2.section) == rm2.minimal);
}

TEST_CASE("the canonical cover P4 ->> S4 on the truncated preset is right minimal") {
  auto spec = InfiniteQuiverSpec::preset("paper-ainf-zigzag");
  for (int n : {6, 8}) {
    auto q = spec.truncate(n);
    ProjectiveCover cover = projective_cover(simple_at(q, 2, 4));
    CHECK(is_right_minimal(cover.cover));
    RightMinimalVersion rm = right_minimal_version(cover.cover);
    CHECK(rm.minimal.source() == cover.p0);
    CHECK(is_isomorphic(kernel_rep(rm.minimal).sub, proj_at(q, 2, 5)));
  }
}

TEST_CASE("right minimal version is idempotent up to isomorphism of sources") {
  auto q = a3();
  std::mt19937_64 rng(61);
  for (int s = 0; s < 40; ++s) {
    Rep x = random_rep(q, 2, 2, rng);
    Rep y = random_rep(q, 2, 2, rng);
    HomSpace h = hom_space(x, y);
    if (h.dim() == 0) continue;
    RepMorphism f = random_hom(h, rng);
    RightMinimalVersion rm = right_minimal_version(f);
    CHECK(is_right_minimal(rm.minimal));
    RightMinimalVersion rm2 = right_minimal_version(rm.minimal);
    CHECK(is_isomorphic(rm2.minimal.source(), rm.minimal.source()));
    // Right equivalence witnesses.
    CHECK(compose(rm.minimal, rm.factor) == f);
    CHECK(compose(f, rm.section) == rm.minimal);
  }
}

TEST_CASE("left minimal version mirrors the right one") {
  auto q = a3();
  std::mt19937_64 rng(67);
  for (int s = 0; s < 40; ++s) {
    Rep x = random_rep(q, 2, 2, rng);
    Rep y = random_rep(q, 2, 2, rng);
    HomSpace h = hom_space(x, y);
    if (h.dim() == 0) continue;
    RepMorphism f = random_hom(h, rng);
    LeftMinimalVersion lm = left_minimal_version(f);
    CHECK(is_left_minimal(lm.minimal));
    CHECK(compose(lm.retraction, f) == lm.minimal);
    CHECK(compose(lm.cofactor, lm.minimal) == f);
  }
}

TEST_CASE("stable hom: Hom(P_a, y) collapses; costable duality example") {
  auto q = a3();
  std::mt19937_64 rng(71);
  for (int s = 0; s < 10; ++s) {
    Rep y = random_rep(q, 2, 2, rng);
    for (int v : q->vertices()) CHECK(stable_hom(proj_at(q, 2, v), y).dim() == 0);
  }
  for (int s = 0; s < 10; ++s) {
    Rep x = random_rep(q, 2, 2, rng);
    for (int v : q->vertices()) CHECK(costable_hom(x, inj_at(q, 2, v)).dim() == 0);
  }
}
