// Krull-Schmidt decomposition via Fitting splittings of the endomorphism
// algebra, isomorphism testing, and the type-A indecomposable universe.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "arq/rep.hpp"

namespace arq {

// Enumeration budget for endomorphism scans. Below `exhaustive_cap` elements
// the scan is a full enumeration and the verdict is certain; above it a
// seeded random sample of `sample_count` elements is used and the verdict is
// flagged uncertified.
struct DecomposeConfig {
  uint64_t exhaustive_cap = 4096;
  size_t sample_count = 512;
  uint64_t seed = 0x5eed;
};

struct SummandPart {
  Rep piece;
  RepMorphism inclusion;   // piece -> whole
  RepMorphism projection;  // whole -> piece
};

struct Decomposition {
  std::vector<SummandPart> parts;
  // False when some locality conclusion relied on sampling instead of a
  // full endomorphism enumeration.
  bool certified = true;
};

Decomposition decompose(const Rep& m, const DecomposeConfig& cfg = {});

// True iff End(m) is local. Requires m nonzero.
bool is_indecomposable(const Rep& m, const DecomposeConfig& cfg = {});

// Isomorphism test between reps with indecomposable-vs-indecomposable
// matching of decompositions; returns witness for indecomposable inputs.
std::optional<RepMorphism> find_iso(const Rep& m, const Rep& n,
                                    const DecomposeConfig& cfg = {});
bool is_isomorphic(const Rep& m, const Rep& n, const DecomposeConfig& cfg = {});

// The decomposition grouped into isomorphism classes.
struct IsoClassCount {
  Rep representative;
  size_t multiplicity = 0;
};
std::vector<IsoClassCount> decompose_multiset(const Rep& m, const DecomposeConfig& cfg = {});

// True iff some summand of m is isomorphic to piece.
bool has_summand(const Rep& m, const Rep& piece, const DecomposeConfig& cfg = {});
// True iff the multiset of summands of `piece_source` embeds into that of m.
bool is_summand_multiset(const Rep& sub, const Rep& whole, const DecomposeConfig& cfg = {});

// One representative per isomorphism class of indecomposables for a quiver
// whose underlying graph is a type-A line: the interval modules, ordered by
// (left endpoint, right endpoint) in line order. Throws for other shapes.
std::vector<Rep> enumerate_indecomposables(QuiverPtr q, uint32_t p);

}  // namespace arq
