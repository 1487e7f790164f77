// Finite acyclic quivers, path enumeration, a small text format, and the
// truncation machinery for the infinite quivers handled by this toolkit.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arq/matrix.hpp"

namespace arq {

struct Arrow {
  std::string id;
  int src = 0;
  int tgt = 0;
};

// A path is a composable sequence of arrow indices, listed source-to-target
// (first arrow leaves the path's source). An empty sequence is the trivial
// path at a vertex it is paired with externally.
struct Path {
  int src = 0;
  int tgt = 0;
  std::vector<size_t> arrows;

  size_t length() const { return arrows.size(); }
  bool operator==(const Path& o) const {
    return src == o.src && tgt == o.tgt && arrows == o.arrows;
  }
};

class Quiver {
public:
  Quiver(std::vector<int> vertices, std::vector<Arrow> arrows);

  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  size_t num_vertices() const { return vertices_.size(); }
  size_t num_arrows() const { return arrows_.size(); }

  size_t vertex_index(int v) const;  // throws on unknown vertex
  bool has_vertex(int v) const;
  size_t arrow_index(const std::string& id) const;

  // All paths from a to b, shortest first, lexicographic by arrow index
  // within a length class. Includes the trivial path when a == b.
  std::vector<Path> paths(int a, int b) const;
  // All paths starting at a, grouped per target in vertex order.
  std::vector<Path> paths_from(int a) const;
  std::vector<Path> paths_to(int b) const;

  std::shared_ptr<const Quiver> opposite() const;

  // Type-A check: connected, underlying graph is a simple path. Returns the
  // vertex ids in line order when so (endpoint with smaller id first).
  std::optional<std::vector<int>> line_order() const;

  bool operator==(const Quiver& o) const;
  bool operator!=(const Quiver& o) const { return !(*this == o); }

private:
  std::vector<int> vertices_;
  std::vector<Arrow> arrows_;
  std::map<int, size_t> vindex_;
  std::map<std::string, size_t> aindex_;

  void check_acyclic() const;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

// Parses the quiver text format:
//   vertex 1 2 3
//   arrow a: 1 -> 2
// Blank lines and lines starting with '#' are skipped.
QuiverPtr parse_quiver(const std::string& text);
QuiverPtr load_quiver_file(const std::string& path);

QuiverPtr make_line_quiver(int n);    // 1 -> 2 -> ... -> n
QuiverPtr make_zigzag_quiver(int n);  // 1 -> 2 <- 3 -> 4 <- ...

// A level-indexed generator for an infinite quiver; truncations are nested
// finite acyclic quivers.
class InfiniteQuiverSpec {
public:
  InfiniteQuiverSpec(std::string name, std::function<QuiverPtr(int)> truncator,
                     int min_window)
      : name_(std::move(name)), truncator_(std::move(truncator)), min_window_(min_window) {}

  const std::string& name() const { return name_; }
  int min_window() const { return min_window_; }
  QuiverPtr truncate(int n) const;

  // Named presets. "paper-ainf-zigzag" is 1 -> 2 <- 3 -> 4 -> 5 -> ...
  static InfiniteQuiverSpec preset(const std::string& name);

private:
  std::string name_;
  std::function<QuiverPtr(int)> truncator_;
  int min_window_;
};

}  // namespace arq
