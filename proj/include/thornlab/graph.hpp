#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace thornlab {

// One undirected edge; stored normalized with u < v.
struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Malformed textual input (edge lists, config files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable simple undirected graph: dense 0-based vertex ids, canonical
// (sorted, deduplicated) edge list, cached degrees. Self-loops and duplicate
// endpoints are rejected at construction; all operations are pure, so values
// can be shared freely across threads.
class Graph {
 public:
  Graph() = default;
  Graph(std::uint32_t n, std::vector<Edge> edges);

  std::uint32_t order() const { return n_; }                  // n
  std::size_t size() const { return edges_.size(); }          // m
  std::span<const Edge> edges() const { return edges_; }
  const std::vector<std::uint32_t>& degrees() const { return degrees_; }

  std::uint32_t degree(std::uint32_t v) const;                // throws std::out_of_range
  bool connected() const;
  std::vector<std::vector<std::uint32_t>> adjacency() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::uint32_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> degrees_;
};

// Deterministic generators. Structural roles are fixed by vertex id so that
// downstream constructions are reproducible: a path's initial vertex is 0, a
// complete bipartite graph's r-side is [0, r), a star's center is 0.
Graph make_path(int k);                        // k >= 1, edges 0-1-...-(k-1)
Graph make_cycle(int k);                       // k >= 3
Graph make_complete(int k);                    // k >= 1
Graph make_complete_bipartite(int r, int s);   // r, s >= 1
Graph make_star(int k);                        // k >= 1 vertices, center 0

// Edge-list text: one "u v" pair per line, '#' comments, optional leading
// "n <count>" header declaring isolated vertices. Duplicate edges are merged.
Graph read_edge_list(std::string_view text);

// Canonical form: header only when needed for isolated vertices, then edges
// ascending by (min id, max id). read_edge_list(write_edge_list(g)) == g.
std::string write_edge_list(const Graph& g);

// Undirected DOT block with one statement per canonical edge; isolated
// vertices appear as bare node statements.
std::string write_dot(const Graph& g);

}  // namespace thornlab
