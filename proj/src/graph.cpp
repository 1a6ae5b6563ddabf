#include "thornlab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <queue>

namespace thornlab {

namespace {

// Largest usable vertex id; keeps n = id + 1 inside uint32.
constexpr std::uint64_t kMaxVertexId = 0xFFFFFFFEull;
// Refuse constructions that would not fit in memory at desk scale anyway.
constexpr std::uint64_t kMaxEdges = 100'000'000ull;

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::uint64_t parse_id(std::string_view tok, std::size_t line_no, std::uint64_t max,
                       const char* what) {
  std::uint64_t value = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range || (ec == std::errc() && value > max))
    throw ParseError("line " + std::to_string(line_no) + ": " + what + " overflow: '" +
                     std::string(tok) + "'");
  if (ec != std::errc() || ptr != last)
    throw ParseError("line " + std::to_string(line_no) + ": malformed " + what + " '" +
                     std::string(tok) + "'");
  return value;
}

}  // namespace

Graph::Graph(std::uint32_t n, std::vector<Edge> edges) : n_(n) {
  for (Edge& e : edges) {
    if (e.u == e.v)
      throw std::invalid_argument("Graph: self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= n_)
      throw std::invalid_argument("Graph: endpoint " + std::to_string(e.v) +
                                  " out of range for order " + std::to_string(n_));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
  degrees_.assign(n_, 0);
  for (const Edge& e : edges_) {
    ++degrees_[e.u];
    ++degrees_[e.v];
  }
}

std::uint32_t Graph::degree(std::uint32_t v) const {
  if (v >= n_)
    throw std::out_of_range("Graph::degree: vertex " + std::to_string(v) +
                            " out of range for order " + std::to_string(n_));
  return degrees_[v];
}

std::vector<std::vector<std::uint32_t>> Graph::adjacency() const {
  std::vector<std::vector<std::uint32_t>> adj(n_);
  for (const Edge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

bool Graph::connected() const {
  if (n_ <= 1) return true;
  auto adj = adjacency();
  std::vector<bool> seen(n_, false);
  std::queue<std::uint32_t> queue;
  queue.push(0);
  seen[0] = true;
  std::uint32_t visited = 1;
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop();
    for (std::uint32_t w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++visited;
        queue.push(w);
      }
    }
  }
  return visited == n_;
}

Graph make_path(int k) {
  if (k < 1) throw std::invalid_argument("make_path: order must be >= 1");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(k - 1));
  for (std::uint32_t i = 0; i + 1 < static_cast<std::uint32_t>(k); ++i)
    edges.push_back({i, i + 1});
  return Graph(static_cast<std::uint32_t>(k), std::move(edges));
}

Graph make_cycle(int k) {
  if (k < 3) throw std::invalid_argument("make_cycle: length must be >= 3");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(k));
  for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(k); ++i)
    edges.push_back({i, (i + 1) % static_cast<std::uint32_t>(k)});
  return Graph(static_cast<std::uint32_t>(k), std::move(edges));
}

Graph make_complete(int k) {
  if (k < 1) throw std::invalid_argument("make_complete: order must be >= 1");
  std::uint64_t m = static_cast<std::uint64_t>(k) * (k - 1) / 2;
  if (m > kMaxEdges) throw std::invalid_argument("make_complete: graph too large");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(k); ++i)
    for (std::uint32_t j = i + 1; j < static_cast<std::uint32_t>(k); ++j)
      edges.push_back({i, j});
  return Graph(static_cast<std::uint32_t>(k), std::move(edges));
}

Graph make_complete_bipartite(int r, int s) {
  if (r < 1 || s < 1)
    throw std::invalid_argument("make_complete_bipartite: both sides must be >= 1");
  std::uint64_t m = static_cast<std::uint64_t>(r) * s;
  if (m > kMaxEdges || static_cast<std::uint64_t>(r) + s > kMaxVertexId)
    throw std::invalid_argument("make_complete_bipartite: graph too large");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(r); ++i)
    for (std::uint32_t j = 0; j < static_cast<std::uint32_t>(s); ++j)
      edges.push_back({i, static_cast<std::uint32_t>(r) + j});
  return Graph(static_cast<std::uint32_t>(r + s), std::move(edges));
}

Graph make_star(int k) {
  if (k < 1) throw std::invalid_argument("make_star: order must be >= 1");
  if (k == 1) return Graph(1, {});
  return make_complete_bipartite(1, k - 1);
}

Graph read_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::uint64_t declared = 0;
  bool have_declared = false;
  bool saw_data = false;
  std::uint64_t max_id = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, (nl == std::string_view::npos ? text.size() : nl) - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto toks = split_ws(line);
    if (toks.empty() || toks[0].front() == '#') continue;
    if (!saw_data && toks[0] == "n") {
      if (toks.size() != 2)
        throw ParseError("line " + std::to_string(line_no) + ": header must be 'n <count>'");
      declared = parse_id(toks[1], line_no, kMaxVertexId + 1, "vertex count");
      have_declared = true;
      saw_data = true;
      continue;
    }
    saw_data = true;
    if (toks.size() != 2)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected two whitespace-separated vertex ids");
    std::uint64_t u = parse_id(toks[0], line_no, kMaxVertexId, "vertex id");
    std::uint64_t v = parse_id(toks[1], line_no, kMaxVertexId, "vertex id");
    if (u == v)
      throw ParseError("line " + std::to_string(line_no) + ": self-loop at vertex " +
                       std::to_string(u));
    max_id = std::max({max_id, u, v});
    edges.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)});
  }
  std::uint64_t n = edges.empty() ? 0 : max_id + 1;
  if (have_declared) {
    if (!edges.empty() && max_id >= declared)
      throw ParseError("vertex id " + std::to_string(max_id) +
                       " exceeds declared vertex count " + std::to_string(declared));
    n = declared;
  }
  return Graph(static_cast<std::uint32_t>(n), std::move(edges));
}

std::string write_edge_list(const Graph& g) {
  std::uint32_t used = 0;
  for (const Edge& e : g.edges()) used = std::max(used, e.v + 1);
  std::string out;
  if (g.order() > used) out += "n " + std::to_string(g.order()) + "\n";
  for (const Edge& e : g.edges())
    out += std::to_string(e.u) + " " + std::to_string(e.v) + "\n";
  return out;
}

std::string write_dot(const Graph& g) {
  std::string out = "graph G {\n";
  for (std::uint32_t v = 0; v < g.order(); ++v)
    if (g.degrees()[v] == 0) out += "  " + std::to_string(v) + ";\n";
  for (const Edge& e : g.edges())
    out += "  " + std::to_string(e.u) + " -- " + std::to_string(e.v) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace thornlab
