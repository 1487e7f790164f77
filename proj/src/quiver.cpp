#include "arq/quiver.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace arq {

Quiver::Quiver(std::vector<int> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  for (size_t i = 0; i < vertices_.size(); ++i) {
    if (!vindex_.emplace(vertices_[i], i).second)
      throw PreconditionError("Quiver: duplicate vertex id");
  }
  for (size_t i = 0; i < arrows_.size(); ++i) {
    const Arrow& a = arrows_[i];
    if (!vindex_.count(a.src) || !vindex_.count(a.tgt))
      throw PreconditionError("Quiver: arrow endpoint is not a declared vertex: " + a.id);
    if (!aindex_.emplace(a.id, i).second)
      throw PreconditionError("Quiver: duplicate arrow id: " + a.id);
  }
  check_acyclic();
}

void Quiver::check_acyclic() const {
  // Kahn topological sort; leftover vertices mean a directed cycle.
  std::map<int, int> indeg;
  for (int v : vertices_) indeg[v] = 0;
  for (const Arrow& a : arrows_) indeg[a.tgt]++;
  std::vector<int> queue;
  for (int v : vertices_)
    if (indeg[v] == 0) queue.push_back(v);
  size_t seen = 0;
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    ++seen;
    for (const Arrow& a : arrows_)
      if (a.src == v && --indeg[a.tgt] == 0) queue.push_back(a.tgt);
  }
  if (seen != vertices_.size())
    throw PreconditionError("Quiver: directed cycle detected");
}

size_t Quiver::vertex_index(int v) const {
  auto it = vindex_.find(v);
  if (it == vindex_.end())
    throw PreconditionError("Quiver: unknown vertex " + std::to_string(v));
  return it->second;
}

bool Quiver::has_vertex(int v) const { return vindex_.count(v) != 0; }

size_t Quiver::arrow_index(const std::string& id) const {
  auto it = aindex_.find(id);
  if (it == aindex_.end()) throw PreconditionError("Quiver: unknown arrow " + id);
  return it->second;
}

std::vector<Path> Quiver::paths_from(int a) const {
  vertex_index(a);
  // BFS by length; acyclicity bounds path length by num_arrows.
  std::vector<Path> result;
  std::vector<Path> frontier = {Path{a, a, {}}};
  while (!frontier.empty()) {
    for (const Path& p : frontier) result.push_back(p);
    std::vector<Path> next;
    for (const Path& p : frontier) {
      for (size_t ai = 0; ai < arrows_.size(); ++ai) {
        if (arrows_[ai].src != p.tgt) continue;
        Path q = p;
        q.arrows.push_back(ai);
        q.tgt = arrows_[ai].tgt;
        next.push_back(q);
      }
    }
    frontier = std::move(next);
  }
  // Stable order: by target vertex position, then length, then lexicographic.
  std::stable_sort(result.begin(), result.end(), [this](const Path& x, const Path& y) {
    size_t tx = vertex_index(x.tgt), ty = vertex_index(y.tgt);
    if (tx != ty) return tx < ty;
    if (x.length() != y.length()) return x.length() < y.length();
    return x.arrows < y.arrows;
  });
  return result;
}

std::vector<Path> Quiver::paths(int a, int b) const {
  std::vector<Path> result;
  for (const Path& p : paths_from(a))
    if (p.tgt == b) result.push_back(p);
  return result;
}

std::vector<Path> Quiver::paths_to(int b) const {
  std::vector<Path> result;
  for (int a : vertices_)
    for (const Path& p : paths(a, b)) result.push_back(p);
  return result;
}

std::shared_ptr<const Quiver> Quiver::opposite() const {
  std::vector<Arrow> rev;
  rev.reserve(arrows_.size());
  for (const Arrow& a : arrows_) rev.push_back({a.id, a.tgt, a.src});
  return std::make_shared<Quiver>(vertices_, rev);
}

std::optional<std::vector<int>> Quiver::line_order() const {
  if (vertices_.empty()) return std::nullopt;
  if (vertices_.size() == 1) return std::vector<int>{vertices_[0]};
  if (arrows_.size() != vertices_.size() - 1) return std::nullopt;
  std::map<int, std::vector<int>> adj;
  for (const Arrow& a : arrows_) {
    if (a.src == a.tgt) return std::nullopt;
    adj[a.src].push_back(a.tgt);
    adj[a.tgt].push_back(a.src);
  }
  std::vector<int> endpoints;
  for (int v : vertices_) {
    size_t deg = adj.count(v) ? adj[v].size() : 0;
    if (deg > 2 || deg == 0) return std::nullopt;
    if (deg == 1) endpoints.push_back(v);
  }
  if (endpoints.size() != 2) return std::nullopt;
  int start = std::min(endpoints[0], endpoints[1]);
  std::vector<int> order = {start};
  std::set<int> seen = {start};
  int cur = start;
  while (order.size() < vertices_.size()) {
    int next = -1;
    for (int w : adj[cur]) {
      if (!seen.count(w)) {
        next = w;
        break;
      }
    }
    if (next == -1) return std::nullopt;
    order.push_back(next);
    seen.insert(next);
    cur = next;
  }
  return order;
}

bool Quiver::operator==(const Quiver& o) const {
  if (vertices_ != o.vertices_) return false;
  if (arrows_.size() != o.arrows_.size()) return false;
  for (size_t i = 0; i < arrows_.size(); ++i) {
    if (arrows_[i].id != o.arrows_[i].id || arrows_[i].src != o.arrows_[i].src ||
        arrows_[i].tgt != o.arrows_[i].tgt)
      return false;
  }
  return true;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

QuiverPtr parse_quiver(const std::string& text) {
  std::vector<int> vertices;
  std::vector<Arrow> arrows;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw == "vertex") {
      int v;
      while (ls >> v) vertices.push_back(v);
    } else if (kw == "arrow") {
      // arrow <id>: <src> -> <tgt>
      std::string rest;
      std::getline(ls, rest);
      size_t colon = rest.find(':');
      size_t arr = rest.find("->");
      if (colon == std::string::npos || arr == std::string::npos || arr < colon)
        throw PreconditionError("quiver parse error at line " + std::to_string(lineno));
      Arrow a;
      a.id = trim(rest.substr(0, colon));
      a.src = std::stoi(trim(rest.substr(colon + 1, arr - colon - 1)));
      a.tgt = std::stoi(trim(rest.substr(arr + 2)));
      if (a.id.empty())
        throw PreconditionError("quiver parse error: empty arrow id at line " +
                                std::to_string(lineno));
      arrows.push_back(a);
    } else {
      throw PreconditionError("quiver parse error: unknown keyword '" + kw +
                              "' at line " + std::to_string(lineno));
    }
  }
  return std::make_shared<Quiver>(std::move(vertices), std::move(arrows));
}

QuiverPtr load_quiver_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open quiver file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_quiver(ss.str());
}

QuiverPtr make_line_quiver(int n) {
  if (n < 1) throw PreconditionError("make_line_quiver: n >= 1 required");
  std::vector<int> vs;
  std::vector<Arrow> as;
  for (int i = 1; i <= n; ++i) vs.push_back(i);
  for (int i = 1; i < n; ++i)
    as.push_back({"a" + std::to_string(i), i, i + 1});
  return std::make_shared<Quiver>(std::move(vs), std::move(as));
}

QuiverPtr make_zigzag_quiver(int n) {
  if (n < 1) throw PreconditionError("make_zigzag_quiver: n >= 1 required");
  std::vector<int> vs;
  std::vector<Arrow> as;
  for (int i = 1; i <= n; ++i) vs.push_back(i);
  for (int i = 1; i < n; ++i) {
    // Odd i points right, even i points left: 1 -> 2 <- 3 -> 4 <- ...
    if (i % 2 == 1)
      as.push_back({"a" + std::to_string(i), i, i + 1});
    else
      as.push_back({"a" + std::to_string(i), i + 1, i});
  }
  return std::make_shared<Quiver>(std::move(vs), std::move(as));
}

QuiverPtr InfiniteQuiverSpec::truncate(int n) const {
  if (n < min_window_)
    throw PreconditionError("InfiniteQuiverSpec::truncate: window below minimum for " + name_);
  return truncator_(n);
}

InfiniteQuiverSpec InfiniteQuiverSpec::preset(const std::string& name) {
  if (name == "paper-ainf-zigzag") {
    // 1 -> 2 <- 3 -> 4 -> 5 -> ...
    auto gen = [](int n) -> QuiverPtr {
      std::vector<int> vs;
      std::vector<Arrow> as;
      for (int i = 1; i <= n; ++i) vs.push_back(i);
      as.push_back({"a1", 1, 2});
      if (n >= 3) as.push_back({"a2", 3, 2});
      for (int i = 3; i < n; ++i)
        as.push_back({"a" + std::to_string(i), i, i + 1});
      return std::make_shared<Quiver>(std::move(vs), std::move(as));
    };
    return InfiniteQuiverSpec(name, gen, 3);
  }
  if (name == "ainf-line") {
    auto gen = [](int n) -> QuiverPtr { return make_line_quiver(n); };
    return InfiniteQuiverSpec(name, gen, 1);
  }
  throw PreconditionError("unknown infinite quiver preset: " + name);
}

}  // namespace arq
