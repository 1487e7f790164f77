#include "arq/serialize.hpp"

#include <fstream>

namespace arq {

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Rep& r) {
  const Quiver& q = *r.quiver();
  Json dims = Json::object();
  for (int v : q.vertices()) dims[std::to_string(v)] = r.dim(q.vertex_index(v));
  Json maps = Json::object();
  for (size_t a = 0; a < q.num_arrows(); ++a)
    maps[q.arrows()[a].id] = to_json(r.map(a));
  return Json{{"dims", std::move(dims)}, {"maps", std::move(maps)}};
}

Json to_json(const RepMorphism& f) {
  const Quiver& q = *f.source().quiver();
  Json comps = Json::object();
  for (int v : q.vertices()) comps[std::to_string(v)] = to_json(f.comp(q.vertex_index(v)));
  return Json{{"source", to_json(f.source())},
              {"target", to_json(f.target())},
              {"comps", std::move(comps)}};
}

Json to_json(const ExtClass& c) {
  const Quiver& q = *c.base().quiver();
  Json cocycle = Json::object();
  for (size_t a = 0; a < q.num_arrows(); ++a)
    cocycle[q.arrows()[a].id] = to_json(c.cocycle()[a]);
  return Json{{"base", to_json(c.base())},
              {"fiber", to_json(c.fiber())},
              {"cocycle", std::move(cocycle)}};
}

Json to_json(const STriangle& t) {
  return Json{{"fiber", to_json(t.fiber)},   {"middle", to_json(t.middle)},
              {"base", to_json(t.base)},     {"infl", to_json(t.infl)},
              {"defl", to_json(t.defl)},     {"class", to_json(t.cls)}};
}

Json to_json(const HomSubspace& s) {
  Json basis = Json::array();
  for (const RepMorphism& f : s.basis) basis.push_back(to_json(f));
  const char* closure = s.closure == SubspaceClosure::RightEndSource ? "right-end-source"
                        : s.closure == SubspaceClosure::LeftEndTarget ? "left-end-target"
                                                                      : "none";
  return Json{{"source", to_json(s.source)},
              {"target", to_json(s.target)},
              {"closure", closure},
              {"basis", std::move(basis)}};
}

Json to_json(const AlmostSplitReport& r) {
  Json checks = Json::array();
  for (const CheckItem& c : r.checks) {
    Json item{{"kind", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) item["detail"] = c.detail;
    checks.push_back(std::move(item));
  }
  return Json{{"pass", r.pass},
              {"universeSize", r.universe_size},
              {"checks", std::move(checks)}};
}

Json to_json(const AlmostSplitWitness& w) {
  return Json{{"triangle", to_json(w.tri)},
              {"gamma", to_json(w.gamma)},
              {"validation", to_json(w.report)}};
}

Json to_json(const DeterminerReport& r) {
  Json out{{"determined", r.determined},
           {"universeSize", r.universe_size},
           {"cap", r.cap},
           {"determinerDims", r.determiner_dims}};
  if (r.counterexample) {
    out["counterexample"] = Json{{"universeIndex", r.counterexample->universe_index},
                                 {"g", to_json(r.counterexample->g)}};
  }
  return out;
}

Json to_json(const MembershipVerdict& v) {
  Json out{{"object", v.object},       {"mode", v.mode},
           {"member", v.member},       {"windows", v.windows},
           {"translateDims", v.translate_dims}, {"maxWindow", v.max_window},
           {"note", v.note}};
  if (v.stable_value) out["stableValue"] = to_json(*v.stable_value);
  if (v.witness) out["witness"] = to_json(*v.witness);
  return out;
}

Json to_json(const SixConditionsReport& r) {
  Json conds = Json::array();
  for (size_t i = 0; i < 6; ++i)
    conds.push_back(Json{{"condition", i + 1}, {"holds", r.holds[i]}, {"note", r.notes[i]}});
  return Json{{"allTrue", r.all_true()},
              {"allEquivalent", r.all_equivalent()},
              {"conditions", std::move(conds)}};
}

Json to_json(const ConstructionResult& r) {
  return Json{{"triangle", to_json(r.triangle)},
              {"numGenerators", r.num_generators},
              {"kernelInAddTauC", r.kernel_in_add_tau_c},
              {"imageEqualsH", r.image_equals_h},
              {"rightDetermined", r.right_determined},
              {"certified", r.certified()}};
}

namespace {

Matrix matrix_from_json(const Json& j, size_t rows, size_t cols, uint32_t p) {
  Matrix m(rows, cols, p);
  if (j.size() != rows) throw PreconditionError("matrix JSON: row count mismatch");
  for (size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw PreconditionError("matrix JSON: column count mismatch");
    for (size_t k = 0; k < cols; ++k)
      m.set_signed(i, k, j[i][k].get<int64_t>());
  }
  return m;
}

}  // namespace

Rep rep_from_json(const Json& j, QuiverPtr q, uint32_t p) {
  std::vector<size_t> dims(q->num_vertices(), 0);
  if (j.contains("dims")) {
    for (auto it = j["dims"].begin(); it != j["dims"].end(); ++it)
      dims[q->vertex_index(std::stoi(it.key()))] = it.value().get<size_t>();
  }
  std::vector<Matrix> maps;
  for (size_t a = 0; a < q->num_arrows(); ++a) {
    const Arrow& ar = q->arrows()[a];
    size_t rows = dims[q->vertex_index(ar.tgt)];
    size_t cols = dims[q->vertex_index(ar.src)];
    if (j.contains("maps") && j["maps"].contains(ar.id)) {
      maps.push_back(matrix_from_json(j["maps"][ar.id], rows, cols, p));
    } else {
      maps.emplace_back(rows, cols, p);
    }
  }
  return Rep(std::move(q), p, std::move(dims), std::move(maps));
}

RepMorphism morphism_from_json(const Json& j, QuiverPtr q, uint32_t p) {
  Rep source = rep_from_json(j.at("source"), q, p);
  Rep target = rep_from_json(j.at("target"), q, p);
  std::vector<Matrix> comps;
  for (int v : q->vertices()) {
    size_t x = q->vertex_index(v);
    std::string key = std::to_string(v);
    if (j.contains("comps") && j["comps"].contains(key)) {
      comps.push_back(matrix_from_json(j["comps"][key], target.dim(x), source.dim(x), p));
    } else {
      comps.emplace_back(target.dim(x), source.dim(x), p);
    }
  }
  return RepMorphism(std::move(source), std::move(target), std::move(comps));
}

Rep load_rep_file(const std::string& path, QuiverPtr q, uint32_t p) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open rep file: " + path);
  Json j = Json::parse(in);
  return rep_from_json(j, std::move(q), p);
}

RepMorphism load_morphism_file(const std::string& path, QuiverPtr q, uint32_t p) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open morphism file: " + path);
  Json j = Json::parse(in);
  return morphism_from_json(j, std::move(q), p);
}

}  // namespace arq
