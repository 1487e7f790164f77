// Representations of a finite acyclic quiver over F_p and their morphisms.
//
// A Rep stores one dimension per vertex and one matrix per arrow with shape
// dim(target) x dim(source). A RepMorphism stores one matrix per vertex and
// satisfies the intertwining law comps[y] * M_alpha = N_alpha * comps[x] for
// every arrow alpha: x -> y; the law is checked on construction.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "arq/matrix.hpp"
#include "arq/quiver.hpp"

namespace arq {

class Rep {
public:
  Rep() = default;
  Rep(QuiverPtr q, uint32_t p, std::vector<size_t> dims, std::vector<Matrix> maps);

  static Rep zero_rep(QuiverPtr q, uint32_t p);

  const QuiverPtr& quiver() const { return q_; }
  uint32_t modulus() const { return p_; }
  size_t dim(size_t vertex_idx) const { return dims_[vertex_idx]; }
  size_t dim_at(int vertex_id) const { return dims_[q_->vertex_index(vertex_id)]; }
  const std::vector<size_t>& dims() const { return dims_; }
  const Matrix& map(size_t arrow_idx) const { return maps_[arrow_idx]; }
  const std::vector<Matrix>& maps() const { return maps_; }
  size_t total_dim() const;
  bool is_zero_rep() const { return total_dim() == 0; }

  // Product of arrow maps along a path (identity for the trivial path).
  Matrix path_map(const Path& path) const;

  bool same_shape(const Rep& o) const;
  bool operator==(const Rep& o) const;
  bool operator!=(const Rep& o) const { return !(*this == o); }

private:
  QuiverPtr q_;
  uint32_t p_ = 2;
  std::vector<size_t> dims_;
  std::vector<Matrix> maps_;
};

class RepMorphism {
public:
  RepMorphism() = default;
  // Checks the intertwining law; throws PreconditionError when violated.
  RepMorphism(Rep source, Rep target, std::vector<Matrix> comps);

  static RepMorphism zero(const Rep& source, const Rep& target);
  static RepMorphism identity(const Rep& m);

  const Rep& source() const { return source_; }
  const Rep& target() const { return target_; }
  const Matrix& comp(size_t vertex_idx) const { return comps_[vertex_idx]; }
  const std::vector<Matrix>& comps() const { return comps_; }

  bool is_zero() const;
  bool vertexwise_injective() const;
  bool vertexwise_surjective() const;
  bool is_iso() const;  // all components square and invertible
  RepMorphism inverse() const;

  RepMorphism operator+(const RepMorphism& o) const;
  RepMorphism operator-(const RepMorphism& o) const;
  RepMorphism scaled(uint32_t c) const;

  bool operator==(const RepMorphism& o) const;

private:
  Rep source_, target_;
  std::vector<Matrix> comps_;
};

// g after f.
RepMorphism compose(const RepMorphism& g, const RepMorphism& f);

// ---- Hom spaces -----------------------------------------------------------

// Basis of Hom(m, n), computed as the nullspace of the intertwining
// constraints; deterministic for fixed inputs.
std::vector<RepMorphism> hom_basis(const Rep& m, const Rep& n);

// Flat coordinates of a morphism (components stacked row-major in vertex
// order), and the inverse.
Matrix morphism_to_flat(const RepMorphism& f);
RepMorphism morphism_from_flat(const Rep& source, const Rep& target, const Matrix& flat);
// Stack a list of morphisms as columns.
Matrix morphisms_to_columns(const Rep& source, const Rep& target,
                            const std::vector<RepMorphism>& fs);

// A Hom space with precomputed basis and flat-coordinate helpers.
struct HomSpace {
  Rep source, target;
  std::vector<RepMorphism> basis;
  Matrix basis_cols;  // columns = flat basis vectors

  size_t dim() const { return basis.size(); }
  RepMorphism from_coords(const Matrix& coords) const;  // coords: dim() x 1
  Matrix coords_of(const RepMorphism& f) const;
};

HomSpace hom_space(const Rep& m, const Rep& n);

// Enumerate every element of a Hom space (all F_p combinations of the
// basis); throws CapExceeded when p^dim exceeds cap.
std::vector<RepMorphism> enumerate_hom(const HomSpace& h, uint64_t cap);
uint64_t hom_count(uint32_t p, size_t dim, uint64_t cap);  // p^dim, capped

// ---- Structural representations -------------------------------------------

Rep simple_at(QuiverPtr q, uint32_t p, int vertex_id);
// Path-basis projective/injective at a vertex. Basis order matches
// Quiver::paths_from / paths_to.
Rep proj_at(QuiverPtr q, uint32_t p, int vertex_id);
Rep inj_at(QuiverPtr q, uint32_t p, int vertex_id);

// Morphism P_a -> n sending the trivial path to the column vector gen (an
// element of n at vertex a); the unique extension by n's path action.
RepMorphism morphism_from_projective_generator(const Rep& proj_a, int a, const Rep& n,
                                               const Matrix& gen);

// ---- Direct sums, sub- and quotient representations ------------------------

struct DirectSum {
  Rep sum;
  std::vector<RepMorphism> inclusions;
  std::vector<RepMorphism> projections;
};

DirectSum direct_sum(const std::vector<Rep>& parts);
// Block-diagonal sum of morphisms f_i: source_i -> target_i.
RepMorphism direct_sum_morphism(const DirectSum& src, const DirectSum& tgt,
                                const std::vector<RepMorphism>& fs);

struct SubRep {
  Rep sub;
  RepMorphism inclusion;
};

// bases[x]: columns spanning a subspace of m at vertex x, required to be
// closed under the arrow maps (throws otherwise). Columns must be linearly
// independent.
SubRep sub_rep(const Rep& m, const std::vector<Matrix>& bases);

struct QuotientRep {
  Rep quotient;
  RepMorphism projection;
};

// Quotient of m by the subrepresentation spanned by bases (same closure
// requirements as sub_rep, but the columns may be dependent).
QuotientRep quotient_rep(const Rep& m, const std::vector<Matrix>& bases);

SubRep kernel_rep(const RepMorphism& f);
SubRep image_rep(const RepMorphism& f);
QuotientRep cokernel_rep(const RepMorphism& f);

// ---- Duality ----------------------------------------------------------------

// Vector-space dual: a representation of the opposite quiver with the
// transposed matrices. Involutive up to the canonical identification.
Rep dualize(const Rep& m, QuiverPtr opposite_quiver);
// Contravariant on morphisms: Df: D(target) -> D(source).
RepMorphism dualize(const RepMorphism& f, QuiverPtr opposite_quiver);

// ---- Truncation support ------------------------------------------------------

// Re-interpret r (over a truncation of spec) over the larger window n,
// padding new vertices with zero spaces.
Rep extend_rep(const InfiniteQuiverSpec& spec, const Rep& r, int n);

// ---- Numerical invariants -----------------------------------------------------

// Euler form <d, e> = sum_x d_x e_x - sum_{alpha: x->y} d_x e_y.
int64_t euler_form(const Quiver& q, const std::vector<size_t>& d,
                   const std::vector<size_t>& e);

// ---- Random sampling (seeded; used by property suites) -------------------------

Rep random_rep(QuiverPtr q, uint32_t p, size_t max_dim, std::mt19937_64& rng);
RepMorphism random_hom(const HomSpace& h, std::mt19937_64& rng);

}  // namespace arq
