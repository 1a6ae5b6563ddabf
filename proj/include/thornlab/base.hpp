#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "thornlab/graph.hpp"

namespace thornlab {

// Named base-graph families. Declaration order defines the canonical report
// ordering of base descriptors.
enum class BaseFamily { Path, Cycle, Complete, CompleteBipartite, Star, Random, File };

std::string_view to_string(BaseFamily family);
std::optional<BaseFamily> base_family_from_string(std::string_view name);

// A concrete base graph together with its canonical descriptor and the
// numeric keys used for deterministic ordering.
struct BaseInstance {
  BaseFamily family = BaseFamily::Path;
  std::string desc;
  long long key0 = 0;
  long long key1 = 0;
  Graph graph;
};

// Base mini-language: path:n, cycle:n, complete:n, bipartite:r:s, star:n,
// file:<path>. Throws std::invalid_argument on a malformed spec and
// ParseError on unreadable or malformed file content.
BaseInstance make_base(std::string_view spec);

}  // namespace thornlab
