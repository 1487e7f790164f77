// Auslander-Reiten translates DTr / TrD, almost split triangles with
// exhaustive validation, the non-degenerate pairings they induce, the
// quasi-inverse functor pair on stable categories, and semi-decidable
// membership for objects over truncated infinite quivers.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arq/decompose.hpp"
#include "arq/ext.hpp"
#include "arq/quiver.hpp"
#include "arq/rep.hpp"
#include "arq/stable.hpp"

namespace arq {

struct ArConfig {
  uint64_t enum_cap = 1 << 16;  // morphism enumeration budget per Hom space
  DecomposeConfig decompose;
};

// ---- Minimal projective presentations and the transpose -------------------------

// A path-algebra element of Hom(P_a, P_b): the image of the generating
// trivial path, expanded over the paths b -> a.
struct PathComb {
  std::vector<std::pair<Path, uint32_t>> terms;
};

struct ProjPresentation {
  Rep module;                       // m
  std::vector<int> p0_vertices;     // cover summands, with multiplicity
  std::vector<int> p1_vertices;     // kernel summands, with multiplicity
  Rep p0, p1;                       // the projective sums themselves
  RepMorphism cover;                // p0 ->> m
  RepMorphism differential;         // p1 -> p0, image = ker(cover) <= rad p0
  // entries[j][i]: the (P_{p1[i]} -> P_{p0[j]}) block of the differential.
  std::vector<std::vector<PathComb>> entries;
};

// Exact minimal presentation 0 -> p1 -> p0 -> m -> 0; p1 is projective by
// heredity and identified summand-by-summand.
ProjPresentation min_proj_presentation(const Rep& m);

// Tr m over the opposite quiver: the cokernel of the dualized differential.
// Requires a nonempty p1 (the module must not be projective).
Rep transpose_presentation(const ProjPresentation& pp);

// tau = DTr and tau^- = TrD on indecomposable non-projective (respectively
// non-injective) representations. Results live over the original quiver.
Rep tau(const Rep& m, const ArConfig& cfg = {});
Rep tau_minus(const Rep& m, const ArConfig& cfg = {});

// tau^- applied summandwise after dropping injective summands (zero rep when
// nothing remains); dual helper for tau.
Rep tau_minus_noninjective_part(const Rep& k, const ArConfig& cfg = {});
Rep tau_nonprojective_part(const Rep& k, const ArConfig& cfg = {});

// ---- Almost split triangles -------------------------------------------------------

struct CheckItem {
  std::string name;
  bool pass = true;
  std::string detail;  // first counterexample, when failing
};

struct AlmostSplitReport {
  bool pass = false;
  size_t universe_size = 0;
  std::vector<CheckItem> checks;
};

// Exhaustively verifies that t is an almost split triangle relative to the
// universe: nonsplit class, indecomposable ends, (AS1)/(AS2) for every
// enumerated morphism, and the left/right almost split factorization form.
// With fail_fast the sweep stops at the first failing check (used by
// brute-force searches that discard bad candidates).
AlmostSplitReport check_almost_split(const STriangle& t, const std::vector<Rep>& universe,
                                     const ArConfig& cfg = {}, bool fail_fast = false);

// A validated almost split triangle together with a linear form gamma on
// E(base, fiber) normalized so that gamma(class) = 1. gamma is the pivot
// coordinate functional of the class in the echelon coset basis.
struct AlmostSplitWitness {
  STriangle tri;
  Matrix gamma;  // 1 x dim E(base, fiber)
  AlmostSplitReport report;

  uint32_t apply_gamma(const ExtSpace& space, const ExtClass& cls) const;
};

// Socle-generated candidates in E(c, tau c), validated against the universe.
// Throws when no candidate survives (an implementation fault on finite-type
// fixtures, not a mathematical outcome).
AlmostSplitWitness almost_split_ending_at(const Rep& c, const std::vector<Rep>& universe,
                                          const ArConfig& cfg = {});
AlmostSplitWitness almost_split_starting_at(const Rep& x, const std::vector<Rep>& universe,
                                            const ArConfig& cfg = {});

// ---- The witness table over a finite fixture ---------------------------------------

// Holds one validated ending and starting witness per legal universe member,
// with tau / tau^- canonicalized to universe indices so that functorial
// composites type-check on the nose.
class WitnessTable {
public:
  WitnessTable(std::vector<Rep> universe, const ArConfig& cfg = {});

  size_t size() const { return universe_.size(); }
  const std::vector<Rep>& universe() const { return universe_; }
  const Rep& object(size_t i) const { return universe_[i]; }
  const ArConfig& config() const { return cfg_; }

  bool projective(size_t i) const { return projective_[i]; }
  bool injective(size_t i) const { return injective_[i]; }

  // Indices of tau / tau^- values (present on the legal domains).
  std::optional<size_t> tau_index(size_t i) const { return tau_idx_[i]; }
  std::optional<size_t> tau_minus_index(size_t i) const { return tau_minus_idx_[i]; }

  const AlmostSplitWitness& ending(size_t i) const;    // ends at U_i
  const AlmostSplitWitness& starting(size_t i) const;  // starts at U_i

  // Index of the universe member isomorphic to r; throws when absent.
  size_t index_of(const Rep& r) const;

private:
  std::vector<Rep> universe_;
  ArConfig cfg_;
  std::vector<bool> projective_, injective_;
  std::vector<std::optional<size_t>> tau_idx_, tau_minus_idx_;
  std::map<size_t, AlmostSplitWitness> ending_, starting_;
};

// ---- Pairings and natural isomorphisms ----------------------------------------------

// Variant (1) of the induced pairing for the triangle ending at U_y:
//   costable Hom(m, tau Y) x E(Y, m) -> F_p, (f, mu) |-> gamma(pushout(mu, f)).
// Rows index the costable coset basis, columns the E(Y, m) basis. A
// non-square or singular result is an invariant violation and throws.
Matrix pairing_matrix_costable(const WitnessTable& wt, size_t y, const Rep& m);
// Variant (2): E(m, tau Y) x stable Hom(Y, m) -> F_p via pullback.
Matrix pairing_matrix_stable(const WitnessTable& wt, size_t y, const Rep& m);

// Matrices of phi_{Y,M}: costable Hom(M, tau Y) -> D E(Y, M) and
// psi_{tauY,M}: stable Hom(Y, M) -> D E(M, tau Y) in the coset bases.
Matrix phi_matrix(const WitnessTable& wt, size_t y, const Rep& m);
Matrix psi_matrix(const WitnessTable& wt, size_t y, const Rep& m);

// A coset in a stable or costable Hom space: coordinates plus the canonical
// representative morphism.
struct Coset {
  RepMorphism representative;
  Matrix coords;
};

// tau on morphisms: for f: U_i -> U_j (both non-projective), the costable
// coset tau(f): tau U_i -> tau U_j solving the Yoneda square; zero for
// s-projective f.
Coset tau_on_morphism(const WitnessTable& wt, size_t i, size_t j, const RepMorphism& f);
// tau^- on morphisms for non-injective endpoints.
Coset tau_minus_on_morphism(const WitnessTable& wt, size_t i, size_t j,
                            const RepMorphism& f);

// theta_Y: tau^- tau Y -> Y as a stable coset (Y = U_i non-projective), and
// xi_X: X -> tau tau^- X as a costable coset (X = U_i non-injective).
Coset theta(const WitnessTable& wt, size_t i);
Coset xi(const WitnessTable& wt, size_t i);

// ---- Membership for truncated infinite quivers ---------------------------------------

// An object handle that can be re-resolved inside growing truncation
// windows. Named structural objects (S_a, P_a, I_a) re-resolve per window;
// concrete representations extend by zero padding.
struct ObjectRef {
  enum class Kind { Simple, Projective, Injective, Concrete };
  Kind kind = Kind::Simple;
  int vertex = 1;
  std::optional<Rep> concrete;

  static ObjectRef parse(const std::string& name);  // "S1", "P4", "I2"
  static ObjectRef of_rep(Rep r);
  Rep resolve(const InfiniteQuiverSpec& spec, int window, uint32_t p) const;
  std::string label() const;
};

struct MembershipVerdict {
  bool member = false;
  std::string object;
  std::string mode;  // "r" (tau) or "l" (tau-minus)
  std::vector<int> windows;
  std::vector<std::vector<size_t>> translate_dims;  // per window
  std::optional<Rep> stable_value;                  // over the final window
  std::optional<AlmostSplitWitness> witness;        // validated in final window
  int max_window = 0;
  std::string note;
};

// Semi-decision for membership in C_r: tau stabilizes across consecutive
// windows (isomorphic on the common window, twice in a row). "member"
// carries the stable translate and a fully validated almost split triangle;
// otherwise the verdict is "no evidence up to max_window".
MembershipVerdict cr_membership(const InfiniteQuiverSpec& spec, const ObjectRef& obj,
                                uint32_t p, int n0, int nmax, int step = 2,
                                const ArConfig& cfg = {});
MembershipVerdict cl_membership(const InfiniteQuiverSpec& spec, const ObjectRef& obj,
                                uint32_t p, int n0, int nmax, int step = 2,
                                const ArConfig& cfg = {});

// Restrict a representation to a smaller nested window; requires all outside
// dimensions to vanish.
std::optional<Rep> restrict_rep(const InfiniteQuiverSpec& spec, const Rep& r, int window);

}  // namespace arq
