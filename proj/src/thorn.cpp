#include "thornlab/thorn.hpp"

#include <stdexcept>
#include <string>

namespace thornlab {

int min_r(ThornType type) {
  switch (type) {
    case ThornType::I: return 2;
    case ThornType::II:
    case ThornType::III:
    case ThornType::V: return 3;
    case ThornType::IV:
    case ThornType::VI:
    case ThornType::VII: return 1;
  }
  return 1;
}

bool uses_s(ThornType type) {
  return type == ThornType::IV || type == ThornType::VII;
}

std::string_view to_string(ThornType type) {
  switch (type) {
    case ThornType::I: return "I";
    case ThornType::II: return "II";
    case ThornType::III: return "III";
    case ThornType::IV: return "IV";
    case ThornType::V: return "V";
    case ThornType::VI: return "VI";
    case ThornType::VII: return "VII";
  }
  return "?";
}

std::optional<ThornType> thorn_type_from_string(std::string_view name) {
  if (name == "I") return ThornType::I;
  if (name == "II") return ThornType::II;
  if (name == "III") return ThornType::III;
  if (name == "IV") return ThornType::IV;
  if (name == "V") return ThornType::V;
  if (name == "VI") return ThornType::VI;
  if (name == "VII") return ThornType::VII;
  return std::nullopt;
}

ThornSpec ThornSpec::uniform(ThornType type, std::uint32_t n, int t, int r, int s) {
  return ThornSpec{type, r, s, std::vector<int>(n, t)};
}

void validate_spec(const Graph& base, const ThornSpec& spec) {
  if (spec.r < min_r(spec.type))
    throw std::invalid_argument("thorn type " + std::string(to_string(spec.type)) +
                                " requires r >= " + std::to_string(min_r(spec.type)));
  if (uses_s(spec.type)) {
    if (spec.s < 1)
      throw std::invalid_argument("thorn type " + std::string(to_string(spec.type)) +
                                  " requires s >= 1");
  } else if (spec.s != 0) {
    throw std::invalid_argument("thorn type " + std::string(to_string(spec.type)) +
                                " takes no s parameter");
  }
  if (spec.thorns.size() != base.order())
    throw std::invalid_argument("thorn vector has length " +
                                std::to_string(spec.thorns.size()) + ", base order is " +
                                std::to_string(base.order()));
  for (int t : spec.thorns)
    if (t < 0) throw std::invalid_argument("thorn counts must be non-negative");
}

namespace {

using U128 = unsigned __int128;

constexpr std::uint64_t kMaxOrder = 0xFFFFFFFFull;
constexpr std::uint64_t kMaxEdges = 100'000'000ull;

// Per-copy size of the attached gadget, including the bridge edge for the
// joined types.
void copy_sizes(const ThornSpec& spec, std::uint64_t& vertices, std::uint64_t& edges) {
  std::uint64_t r = static_cast<std::uint64_t>(spec.r);
  std::uint64_t s = static_cast<std::uint64_t>(spec.s);
  switch (spec.type) {
    case ThornType::I: vertices = r - 1; edges = r - 1; break;
    case ThornType::II: vertices = r - 1; edges = r; break;
    case ThornType::III: vertices = r - 1; edges = r * (r - 1) / 2; break;
    case ThornType::IV: vertices = r + s - 1; edges = r * s; break;
    case ThornType::V: vertices = r; edges = r + 1; break;
    case ThornType::VI: vertices = r; edges = r * (r - 1) / 2 + 1; break;
    case ThornType::VII: vertices = r + s; edges = r * s + 1; break;
  }
}

struct Assembler {
  std::vector<Edge> edges;
  std::uint64_t next;

  Assembler(const Graph& base, const ThornSpec& spec) : next(base.order()) {
    U128 total_t = 0;
    for (int t : spec.thorns) total_t += static_cast<std::uint64_t>(t);
    std::uint64_t pv = 0, pe = 0;
    copy_sizes(spec, pv, pe);
    U128 n2 = static_cast<U128>(base.order()) + total_t * pv;
    U128 m2 = static_cast<U128>(base.size()) + total_t * pe;
    if (n2 > kMaxOrder || m2 > kMaxEdges)
      throw std::invalid_argument("thorn construction exceeds supported graph size");
    edges.assign(base.edges().begin(), base.edges().end());
    edges.reserve(static_cast<std::size_t>(m2));
  }

  std::uint32_t fresh() { return static_cast<std::uint32_t>(next++); }

  void link(std::uint32_t a, std::uint32_t b) { edges.push_back({a, b}); }

  DecoratedGraph finish(const Graph& base) {
    return DecoratedGraph{Graph(static_cast<std::uint32_t>(next), std::move(edges)),
                          base.order()};
  }
};

void expect_type(const ThornSpec& spec, ThornType type) {
  if (spec.type != type)
    throw std::invalid_argument("thorn spec has type " + std::string(to_string(spec.type)) +
                                ", builder expects " + std::string(to_string(type)));
}

}  // namespace

DecoratedGraph build_type1(const Graph& base, const ThornSpec& spec) {
  expect_type(spec, ThornType::I);
  validate_spec(base, spec);
  Assembler a(base, spec);
  for (std::uint32_t v = 0; v < base.order(); ++v)
    for (int c = 0; c < spec.thorns[v]; ++c) {
      std::uint32_t prev = v;
      for (int j = 0; j + 1 < spec.r; ++j) {
        std::uint32_t w = a.fresh();
        a.link(prev, w);
        prev = w;
      }
    }
  return a.finish(base);
}

DecoratedGraph build_type2(const Graph& base, const ThornSpec& spec) {
  expect_type(spec, ThornType::II);
  validate_spec(base, spec);
  Assembler a(base, spec);
  for (std::uint32_t v = 0; v < base.order(); ++v)
    for (int c = 0; c < spec.thorns[v]; ++c) {
      std::uint32_t prev = v;
      for (int j = 0; j + 1 < spec.r; ++j) {
        std::uint32_t w = a.fresh();
        a.link(prev, w);
        prev = w;
      }
      a.link(prev, v);  // close the cycle back through v
    }
  return a.finish(base);
}

DecoratedGraph build_type3(const Graph& base, const ThornSpec& spec) {
  expect_type(spec, ThornType::III);
  validate_spec(base, spec);
  Assembler a(base, spec);
  std::vector<std::uint32_t> members;
  for (std::uint32_t v = 0; v < base.order(); ++v)
    for (int c = 0; c < spec.thorns[v]; ++c) {
      members.clear();
      members.push_back(v);
      for (int j = 0; j + 1 < spec.r; ++j) members.push_back(a.fresh());
      for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
          a.link(members[i], members[j]);
    }
  return a.finish(base);
}

DecoratedGraph build_type4(const Graph& base, const ThornSpec& spec) {
  expect_type(spec, ThornType::IV);
  validate_spec(base, spec);
  Assembler a(base, spec);
  std::vector<std::uint32_t> r_side, s_side;
  for (std::uint32_t v = 0; v < base.order(); ++v)
    for (int c = 0; c < spec.thorns[v]; ++c) {
      r_side.clear();
      s_side.clear();
      r_side.push_back(v);
      for (int j = 0; j + 1 < spec.r; ++j) r_side.push_back(a.fresh());
      for (int j = 0; j < spec.s; ++j) s_side.push_back(a.fresh());
      for (std::uint32_t x : r_side)
        for (std::uint32_t y : s_side) a.link(x, y);
    }
  return a.finish(base);
}

DecoratedGraph build_type5(const Graph& base, const ThornSpec& spec) {
  expect_type(spec, ThornType::V);
  validate_spec(base, spec);
  Assembler a(base, spec);
  for (std::uint32_t v = 0; v < base.order(); ++v)
    for (int c = 0; c < spec.thorns[v]; ++c) {
      std::uint32_t first = a.fresh();
      a.link(v, first);  // bridge to the lowest-id fresh vertex
      std::uint32_t prev = first;
      for (int j = 1; j < spec.r; ++j) {
        std::uint32_t w = a.fresh();
        a.link(prev, w);
        prev = w;
      }
      a.link(prev, first);
    }
  return a.finish(base);
}

DecoratedGraph build_type6(const Graph& base, const ThornSpec& spec) {
  expect_type(spec, ThornType::VI);
  validate_spec(base, spec);
  Assembler a(base, spec);
  std::vector<std::uint32_t> members;
  for (std::uint32_t v = 0; v < base.order(); ++v)
    for (int c = 0; c < spec.thorns[v]; ++c) {
      members.clear();
      for (int j = 0; j < spec.r; ++j) members.push_back(a.fresh());
      a.link(v, members.front());
      for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
          a.link(members[i], members[j]);
    }
  return a.finish(base);
}

DecoratedGraph build_type7(const Graph& base, const ThornSpec& spec) {
  expect_type(spec, ThornType::VII);
  validate_spec(base, spec);
  Assembler a(base, spec);
  std::vector<std::uint32_t> r_side, s_side;
  for (std::uint32_t v = 0; v < base.order(); ++v)
    for (int c = 0; c < spec.thorns[v]; ++c) {
      r_side.clear();
      s_side.clear();
      for (int j = 0; j < spec.r; ++j) r_side.push_back(a.fresh());
      for (int j = 0; j < spec.s; ++j) s_side.push_back(a.fresh());
      a.link(v, r_side.front());  // bridge lands on an r-side vertex
      for (std::uint32_t x : r_side)
        for (std::uint32_t y : s_side) a.link(x, y);
    }
  return a.finish(base);
}

DecoratedGraph build(const Graph& base, const ThornSpec& spec) {
  switch (spec.type) {
    case ThornType::I: return build_type1(base, spec);
    case ThornType::II: return build_type2(base, spec);
    case ThornType::III: return build_type3(base, spec);
    case ThornType::IV: return build_type4(base, spec);
    case ThornType::V: return build_type5(base, spec);
    case ThornType::VI: return build_type6(base, spec);
    case ThornType::VII: return build_type7(base, spec);
  }
  throw std::invalid_argument("build: unknown thorn type");
}

DecoratedGraph t_thorn(const Graph& base, int t) {
  if (t < 0) throw std::invalid_argument("t_thorn: t must be non-negative");
  return build_type1(base, ThornSpec::uniform(ThornType::I, base.order(), t, 2));
}

}  // namespace thornlab
