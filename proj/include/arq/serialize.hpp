// JSON encodings for representations, morphisms, extensions, triangles, and
// checker reports. Keys are emitted in insertion order so reruns with the
// same configuration are byte-identical.

#pragma once

#include <json.hpp>

#include "arq/artheory.hpp"
#include "arq/determiners.hpp"
#include "arq/ext.hpp"
#include "arq/rep.hpp"
#include "arq/stable.hpp"

namespace arq {

using Json = nlohmann::ordered_json;

Json to_json(const Matrix& m);  // row-major nested arrays
Json to_json(const Rep& r);     // {"dims": {vertex: n}, "maps": {arrow: matrix}}
Json to_json(const RepMorphism& f);
Json to_json(const ExtClass& c);
Json to_json(const STriangle& t);
Json to_json(const HomSubspace& s);
Json to_json(const AlmostSplitReport& r);
Json to_json(const AlmostSplitWitness& w);
Json to_json(const DeterminerReport& r);
Json to_json(const MembershipVerdict& v);
Json to_json(const SixConditionsReport& r);
Json to_json(const ConstructionResult& r);

// Loads a representation from {"dims": {...}, "maps": {...}}; entries are
// reduced mod p. Missing vertices/arrows default to zero.
Rep rep_from_json(const Json& j, QuiverPtr q, uint32_t p);
// Loads {"source": rep, "target": rep, "comps": {vertex: matrix}}.
RepMorphism morphism_from_json(const Json& j, QuiverPtr q, uint32_t p);

Rep load_rep_file(const std::string& path, QuiverPtr q, uint32_t p);
RepMorphism load_morphism_file(const std::string& path, QuiverPtr q, uint32_t p);

}  // namespace arq
