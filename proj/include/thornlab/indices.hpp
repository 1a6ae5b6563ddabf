#pragma once

#include <optional>
#include <string_view>

#include "thornlab/exact.hpp"
#include "thornlab/graph.hpp"

namespace thornlab {

// Degree-based topological indices, each computed directly from its defining
// sum over the graph. These direct sums are the ground truth the audit engine
// compares closed-form expressions against.
enum class IndexKind { M1, M2, HM, F, EM1, EM2 };

Int m1(const Graph& g);       // sum over vertices of d(v)^2
Int m2(const Graph& g);       // sum over edges of d(u)*d(v)
Int hm(const Graph& g);       // sum over edges of (d(u)+d(v))^2
Int f_index(const Graph& g);  // sum over vertices of d(v)^3
Int em1(const Graph& g);      // sum over edges of (d(u)+d(v)-2)^2
Int em2(const Graph& g);      // sum over adjacent edge pairs of d(e)*d(f)

Int compute(const Graph& g, IndexKind kind);

std::string_view to_string(IndexKind kind);
std::optional<IndexKind> index_kind_from_string(std::string_view name);

}  // namespace thornlab
