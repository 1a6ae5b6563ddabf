#include "thornlab/indices.hpp"

#include <vector>

namespace thornlab {

Int m1(const Graph& g) {
  Int total = 0;
  for (std::uint32_t d : g.degrees()) total += Int(d) * d;
  return total;
}

Int m2(const Graph& g) {
  const auto& deg = g.degrees();
  Int total = 0;
  for (const Edge& e : g.edges()) total += Int(deg[e.u]) * deg[e.v];
  return total;
}

Int hm(const Graph& g) {
  const auto& deg = g.degrees();
  Int total = 0;
  for (const Edge& e : g.edges()) {
    Int s = static_cast<long long>(deg[e.u]) + deg[e.v];
    total += s * s;
  }
  return total;
}

Int f_index(const Graph& g) {
  Int total = 0;
  for (std::uint32_t d : g.degrees()) total += Int(d) * d * d;
  return total;
}

Int em1(const Graph& g) {
  const auto& deg = g.degrees();
  Int total = 0;
  for (const Edge& e : g.edges()) {
    Int d = static_cast<long long>(deg[e.u]) + deg[e.v] - 2;
    total += d * d;
  }
  return total;
}

Int em2(const Graph& g) {
  const auto& deg = g.degrees();
  // Two distinct edges of a simple graph share at most one endpoint, so
  // grouping incident edge degrees per vertex counts each adjacent pair
  // exactly once.
  std::vector<std::vector<long long>> incident(g.order());
  for (const Edge& e : g.edges()) {
    long long d = static_cast<long long>(deg[e.u]) + deg[e.v] - 2;
    incident[e.u].push_back(d);
    incident[e.v].push_back(d);
  }
  Int total = 0;
  for (const auto& list : incident)
    for (std::size_t i = 0; i < list.size(); ++i)
      for (std::size_t j = i + 1; j < list.size(); ++j)
        total += Int(list[i]) * list[j];
  return total;
}

Int compute(const Graph& g, IndexKind kind) {
  switch (kind) {
    case IndexKind::M1: return m1(g);
    case IndexKind::M2: return m2(g);
    case IndexKind::HM: return hm(g);
    case IndexKind::F: return f_index(g);
    case IndexKind::EM1: return em1(g);
    case IndexKind::EM2: return em2(g);
  }
  throw std::invalid_argument("compute: unknown index kind");
}

std::string_view to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::M1: return "m1";
    case IndexKind::M2: return "m2";
    case IndexKind::HM: return "hm";
    case IndexKind::F: return "f";
    case IndexKind::EM1: return "em1";
    case IndexKind::EM2: return "em2";
  }
  return "?";
}

std::optional<IndexKind> index_kind_from_string(std::string_view name) {
  if (name == "m1") return IndexKind::M1;
  if (name == "m2") return IndexKind::M2;
  if (name == "hm") return IndexKind::HM;
  if (name == "f") return IndexKind::F;
  if (name == "em1") return IndexKind::EM1;
  if (name == "em2") return IndexKind::EM2;
  return std::nullopt;
}

}  // namespace thornlab
