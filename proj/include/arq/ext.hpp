// The extension bifunctor E = Ext^1 on quiver representations, realized on
// cocycles, together with the triangle structure it generates.
//
// For C (base) and A (fiber), a cocycle is one matrix per arrow alpha: x -> y
// of shape dim A_y x dim C_x. Two cocycles define the same extension class
// iff their difference is a coboundary, i.e. lies in the image of
//   (h_x)_x  |->  (A_alpha h_x - h_y C_alpha)_alpha.
// The path algebra is hereditary, so this two-term model computes all of
// Ext^1 and pushout/pullback act by plain composition on cocycles.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arq/rep.hpp"

namespace arq {

class ExtClass {
public:
  ExtClass() = default;
  ExtClass(Rep base, Rep fiber, std::vector<Matrix> cocycle);

  static ExtClass zero(const Rep& base, const Rep& fiber);

  const Rep& base() const { return base_; }
  const Rep& fiber() const { return fiber_; }
  const std::vector<Matrix>& cocycle() const { return cocycle_; }

  ExtClass operator+(const ExtClass& o) const;
  ExtClass operator-(const ExtClass& o) const;
  ExtClass scaled(uint32_t c) const;

private:
  Rep base_, fiber_;
  std::vector<Matrix> cocycle_;  // per arrow
};

// The space E(base, fiber) with its coboundary quotient structure; caches
// the machinery needed for coset-canonical arithmetic on classes.
class ExtSpace {
public:
  ExtSpace(Rep base, Rep fiber);

  const Rep& base() const { return base_; }
  const Rep& fiber() const { return fiber_; }
  size_t dim() const { return quotient_.dim(); }

  // Echelon-determined basis of the quotient; classes with canonical coset
  // representative cocycles.
  std::vector<ExtClass> basis() const;

  // Coordinates of a class in the quotient basis.
  Matrix coords_of(const ExtClass& cls) const;
  ExtClass from_coords(const Matrix& coords) const;
  bool is_split(const ExtClass& cls) const;
  bool equal(const ExtClass& a, const ExtClass& b) const;

  Matrix flatten(const std::vector<Matrix>& cocycle) const;
  std::vector<Matrix> unflatten(const Matrix& flat) const;

private:
  Rep base_, fiber_;
  std::vector<size_t> arrow_offsets_;  // flat layout of cocycles
  size_t flat_dim_;
  QuotientSpace quotient_;
};

// ---- E as a bifunctor --------------------------------------------------------

// Basis of E(c, a); convenience wrapper around ExtSpace.
std::vector<ExtClass> ext_space_basis(const Rep& c, const Rep& a);
size_t ext_dim(const Rep& c, const Rep& a);

// a_star delta: replace the fiber along a morphism a: fiber -> A'.
ExtClass pushout(const ExtClass& delta, const RepMorphism& a);
// c_star delta: replace the base along a morphism c: C' -> base.
ExtClass pullback(const ExtClass& delta, const RepMorphism& c);
// delta (+) delta': the class of (delta, 0, 0, delta') over base (+) base'.
ExtClass direct_sum_ext(const ExtClass& delta, const ExtClass& delta_prime);

bool is_split(const ExtClass& delta);

// ---- Triangles -----------------------------------------------------------------

struct STriangle {
  Rep fiber, middle, base;
  RepMorphism infl;  // fiber -> middle, vertexwise injective
  RepMorphism defl;  // middle -> base, vertexwise surjective
  ExtClass cls;

  // Checks exactness (image(infl) = kernel(defl) vertexwise) and that cls is
  // the class of this extension.
  void validate() const;
};

// The standard realization of a class: middle has A_x (+) C_x with arrow
// maps [[A_alpha, z_alpha], [0, C_alpha]].
STriangle realize(const ExtClass& delta);

// Reads the class off an exact vertexwise-split presentation: choose
// vertexwise right inverses of defl by echelon pivoting; any choice gives
// the same coset.
ExtClass class_of(const Rep& fiber, const Rep& middle, const Rep& base,
                  const RepMorphism& infl, const RepMorphism& defl);
STriangle make_triangle(const Rep& fiber, const Rep& middle, const Rep& base,
                        const RepMorphism& infl, const RepMorphism& defl);

struct STriangleMorphism {
  RepMorphism a, b, c;
};

// Completes (a, c) to a morphism of triangles when a_star delta equals
// c_star delta'; nullopt when the compatibility fails.
std::optional<STriangleMorphism> complete_square(const STriangle& t,
                                                 const STriangle& t_prime,
                                                 const RepMorphism& a,
                                                 const RepMorphism& c);

// ---- Sections, retractions, factorizations -------------------------------------

bool is_section(const RepMorphism& f);     // exists g with g f = Id
bool is_retraction(const RepMorphism& f);  // exists g with f g = Id

// Witness h with after . h = g, solved inside Hom(g.source, after.source).
std::optional<RepMorphism> factor_through(const RepMorphism& g, const RepMorphism& after);
// Witness h with h . before = g.
std::optional<RepMorphism> factor_through_left(const RepMorphism& g,
                                               const RepMorphism& before);

// Factors g: T -> base through the deflation of t. Evaluates both criteria
// (linear solve against defl, and split test of the pullback g^star cls)
// and insists they agree.
std::optional<RepMorphism> factor_through_deflation(const RepMorphism& g,
                                                    const STriangle& t);

}  // namespace arq
