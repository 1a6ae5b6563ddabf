#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "thornlab/graph.hpp"

namespace thornlab {

// The seven attachment constructions. Types I-IV identify a base vertex with
// a vertex of every attached gadget; Types V-VII join each gadget to the base
// vertex by a single bridge edge.
enum class ThornType { I = 1, II, III, IV, V, VI, VII };

int min_r(ThornType type);     // smallest legal gadget order parameter
bool uses_s(ThornType type);   // true for the bipartite types IV and VII

std::string_view to_string(ThornType type);
std::optional<ThornType> thorn_type_from_string(std::string_view name);

// Construction descriptor: gadget parameters plus one attachment count per
// base vertex. thorns[i] == 0 attaches nothing at vertex i.
struct ThornSpec {
  ThornType type = ThornType::I;
  int r = 0;
  int s = 0;                 // only types IV and VII; must be 0 otherwise
  std::vector<int> thorns;   // length must equal the base order

  static ThornSpec uniform(ThornType type, std::uint32_t n, int t, int r, int s = 0);
};

// Throws std::invalid_argument when the descriptor violates its invariants
// for the given base (r below the type minimum, bad s, wrong vector length,
// negative counts).
void validate_spec(const Graph& base, const ThornSpec& spec);

// Result of a construction. Vertices [0, base_order) are the original base
// vertices with their original edges; all fresh gadget vertices get ids
// >= base_order, assigned in ascending base-vertex order, then copy index,
// then a fixed within-copy order.
struct DecoratedGraph {
  Graph graph;
  std::uint32_t base_order = 0;
};

DecoratedGraph build_type1(const Graph& base, const ThornSpec& spec);  // paths, v_i is the initial vertex
DecoratedGraph build_type2(const Graph& base, const ThornSpec& spec);  // cycles, v_i is a cycle vertex
DecoratedGraph build_type3(const Graph& base, const ThornSpec& spec);  // cliques, v_i is a clique vertex
DecoratedGraph build_type4(const Graph& base, const ThornSpec& spec);  // K_{r,s}, v_i is an r-side vertex
DecoratedGraph build_type5(const Graph& base, const ThornSpec& spec);  // cycles joined by a bridge
DecoratedGraph build_type6(const Graph& base, const ThornSpec& spec);  // cliques joined by a bridge
DecoratedGraph build_type7(const Graph& base, const ThornSpec& spec);  // K_{r,s} joined by a bridge to an r-side vertex

DecoratedGraph build(const Graph& base, const ThornSpec& spec);

// Pendant-edge decoration: t thorns at every vertex, i.e. type I with r = 2.
DecoratedGraph t_thorn(const Graph& base, int t);

}  // namespace thornlab
