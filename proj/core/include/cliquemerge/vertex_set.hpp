#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <vector>

#include "cliquemerge/graph.hpp"

namespace cliquemerge {

// Sorted ascending, no duplicates.
using VertexSet = std::vector<Vertex>;

inline VertexSet make_vertex_set(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

inline std::size_t intersection_size(const VertexSet& a, const VertexSet& b) {
  std::size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

inline std::size_t union_size(const VertexSet& a, const VertexSet& b) {
  return a.size() + b.size() - intersection_size(a, b);
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

inline bool is_subset(const VertexSet& a, const VertexSet& of) {
  return std::includes(of.begin(), of.end(), a.begin(), a.end());
}

inline bool contains(const VertexSet& s, Vertex v) {
  return std::binary_search(s.begin(), s.end(), v);
}

// Canonical clique order: larger first, then lexicographic.
inline bool canonical_clique_less(const VertexSet& a, const VertexSet& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return a < b;
}

}  // namespace cliquemerge
