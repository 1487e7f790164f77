// The ideals of s-projective and s-injective morphisms, the stable and
// costable Hom quotients, the radical ideal in its Krull-Schmidt block
// description, and right/left minimal versions of morphisms.

#pragma once

#include <cstdint>
#include <vector>

#include "arq/decompose.hpp"
#include "arq/ext.hpp"
#include "arq/rep.hpp"

namespace arq {

enum class SubspaceClosure { None, RightEndSource, LeftEndTarget };

// A subspace of a Hom space given by a linearly independent morphism basis.
struct HomSubspace {
  Rep source, target;
  std::vector<RepMorphism> basis;
  SubspaceClosure closure = SubspaceClosure::None;

  size_t dim() const { return basis.size(); }
  Matrix basis_cols() const { return morphisms_to_columns(source, target, basis); }
  bool contains(const RepMorphism& f) const;
};

bool subspaces_equal(const HomSubspace& a, const HomSubspace& b);
bool subspace_contains(const HomSubspace& outer, const HomSubspace& inner);

// ---- Structural covers and envelopes ------------------------------------------

struct ProjectiveCover {
  // cover: P0 ->> m with P0 = (+) P_a^{dim top_a}; summand vertices listed
  // with multiplicity in summand order.
  Rep p0;
  RepMorphism cover;
  std::vector<int> summand_vertices;
};

ProjectiveCover projective_cover(const Rep& m);

struct InjectiveEnvelope {
  Rep i0;
  RepMorphism envelope;  // m >-> I0
  std::vector<int> summand_vertices;
};

InjectiveEnvelope injective_envelope(const Rep& m);

// Radical subrepresentation (rad m)_y = sum_alpha image(m_alpha) and the top.
SubRep radical_subrep(const Rep& m);
std::vector<size_t> top_dims(const Rep& m);
// Socle: soc(m)_x = intersection of the kernels of the maps leaving x.
SubRep socle_subrep(const Rep& m);

// Object-level tests via vanishing of E against all simples; exact for the
// hereditary instance.
bool is_projective_object(const Rep& m);
bool is_injective_object(const Rep& m);

// ---- The ideals P and I and their quotients -------------------------------------

// P(c, y): morphisms factoring through the projective cover of y; equals the
// s-projective morphisms c -> y.
HomSubspace sproj_ideal(const Rep& c, const Rep& y);
// I(x, a): morphisms factoring through the injective envelope of x.
HomSubspace sinj_ideal(const Rep& x, const Rep& a);

bool is_sproj_morphism(const RepMorphism& f);
bool is_sinj_morphism(const RepMorphism& f);

// A Hom space together with an ideal subspace and the quotient machinery.
struct StableHom {
  HomSpace ambient;
  HomSubspace ideal;
  QuotientSpace quotient;

  size_t dim() const { return quotient.dim(); }
  // Coset coordinates of f in the chosen representative basis.
  Matrix coords_of(const RepMorphism& f) const;
  RepMorphism rep_of_coords(const Matrix& coords) const;
  std::vector<RepMorphism> coset_reps() const;
};

StableHom stable_hom(const Rep& c, const Rep& y);    // Hom / P
StableHom costable_hom(const Rep& x, const Rep& a);  // Hom / I

// ---- The radical ideal -----------------------------------------------------------

// rad End for an indecomposable: the subspace of non-invertible elements
// (computed by full enumeration; throws CapExceeded above the cap).
HomSubspace radical_end_indecomposable(const Rep& m, const DecomposeConfig& cfg = {},
                                       uint64_t enum_cap = 1 << 16);

// rad(x, y) via the Krull-Schmidt block description: a morphism is radical
// iff every component between isomorphic indecomposable summands is a
// non-isomorphism.
HomSubspace radical(const Rep& x, const Rep& y, const DecomposeConfig& cfg = {},
                    uint64_t enum_cap = 1 << 16);

// ---- Minimal versions ---------------------------------------------------------------

struct RightMinimalVersion {
  RepMorphism minimal;  // f': X' -> Y, right minimal
  RepMorphism section;  // X' -> X with f . section = f'
  RepMorphism factor;   // X -> X' with f' . factor = f
};

RightMinimalVersion right_minimal_version(const RepMorphism& f,
                                          const DecomposeConfig& cfg = {});
bool is_right_minimal(const RepMorphism& f, const DecomposeConfig& cfg = {});

struct LeftMinimalVersion {
  RepMorphism minimal;     // f': X -> Y', left minimal
  RepMorphism retraction;  // Y -> Y' with retraction . f = f'
  RepMorphism cofactor;    // Y' -> Y with cofactor . f' = f
};

LeftMinimalVersion left_minimal_version(const RepMorphism& f,
                                        const DecomposeConfig& cfg = {});
bool is_left_minimal(const RepMorphism& f, const DecomposeConfig& cfg = {});

}  // namespace arq
