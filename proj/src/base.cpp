#include "thornlab/base.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace thornlab {

std::string_view to_string(BaseFamily family) {
  switch (family) {
    case BaseFamily::Path: return "path";
    case BaseFamily::Cycle: return "cycle";
    case BaseFamily::Complete: return "complete";
    case BaseFamily::CompleteBipartite: return "complete_bipartite";
    case BaseFamily::Star: return "star";
    case BaseFamily::Random: return "random";
    case BaseFamily::File: return "file";
  }
  return "?";
}

std::optional<BaseFamily> base_family_from_string(std::string_view name) {
  if (name == "path") return BaseFamily::Path;
  if (name == "cycle") return BaseFamily::Cycle;
  if (name == "complete") return BaseFamily::Complete;
  if (name == "complete_bipartite" || name == "bipartite") return BaseFamily::CompleteBipartite;
  if (name == "star") return BaseFamily::Star;
  if (name == "random") return BaseFamily::Random;
  if (name == "file") return BaseFamily::File;
  return std::nullopt;
}

namespace {

int parse_param(std::string_view tok, std::string_view spec) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw std::invalid_argument("base spec '" + std::string(spec) +
                                "': malformed parameter '" + std::string(tok) + "'");
  return value;
}

}  // namespace

BaseInstance make_base(std::string_view spec) {
  std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("base spec '" + std::string(spec) +
                                "': expected <family>:<params>");
  std::string_view head = spec.substr(0, colon);
  std::string_view rest = spec.substr(colon + 1);

  if (head == "file") {
    if (rest.empty())
      throw std::invalid_argument("base spec 'file:': missing path");
    std::ifstream in{std::string(rest), std::ios::binary};
    if (!in) throw ParseError("cannot open graph file '" + std::string(rest) + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    BaseInstance base;
    base.family = BaseFamily::File;
    base.desc = "file:" + std::string(rest);
    base.graph = read_edge_list(buf.str());
    return base;
  }

  std::vector<std::string_view> params;
  while (true) {
    std::size_t next = rest.find(':');
    params.push_back(rest.substr(0, next));
    if (next == std::string_view::npos) break;
    rest.remove_prefix(next + 1);
  }

  auto one = [&](Graph (*gen)(int), BaseFamily family, std::string_view name) {
    if (params.size() != 1)
      throw std::invalid_argument("base spec '" + std::string(spec) +
                                  "': expected " + std::string(name) + ":<n>");
    int n = parse_param(params[0], spec);
    BaseInstance base;
    base.family = family;
    base.desc = std::string(name) + ":" + std::to_string(n);
    base.key0 = n;
    base.graph = gen(n);
    return base;
  };

  if (head == "path") return one(&make_path, BaseFamily::Path, "path");
  if (head == "cycle") return one(&make_cycle, BaseFamily::Cycle, "cycle");
  if (head == "complete") return one(&make_complete, BaseFamily::Complete, "complete");
  if (head == "star") return one(&make_star, BaseFamily::Star, "star");
  if (head == "bipartite") {
    if (params.size() != 2)
      throw std::invalid_argument("base spec '" + std::string(spec) +
                                  "': expected bipartite:<r>:<s>");
    int r = parse_param(params[0], spec);
    int s = parse_param(params[1], spec);
    BaseInstance base;
    base.family = BaseFamily::CompleteBipartite;
    base.desc = "bipartite:" + std::to_string(r) + ":" + std::to_string(s);
    base.key0 = r;
    base.key1 = s;
    base.graph = make_complete_bipartite(r, s);
    return base;
  }
  throw std::invalid_argument("base spec '" + std::string(spec) + "': unknown family '" +
                              std::string(head) + "'");
}

}  // namespace thornlab
