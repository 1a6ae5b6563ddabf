#include "thornlab/audit.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <limits>
#include <random>
#include <set>
#include <thread>

#include <json.hpp>

#include "thornlab/indices.hpp"
#include "thornlab/version.hpp"

namespace thornlab {

namespace {

using json = nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) { return splitmix64(a ^ splitmix64(b)); }

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

// Unbiased draw in [0, k); rejection sampling keeps the stream portable.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t k) {
  if (k <= 1) return 0;
  std::uint64_t limit = ~0ull - (~0ull % k);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % k;
}

Graph random_connected_graph(std::mt19937_64& rng, int n_lo, int n_hi) {
  int n = n_lo + static_cast<int>(bounded(rng, static_cast<std::uint64_t>(n_hi - n_lo + 1)));
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  // Random recursive tree backbone, then a few extra edges.
  for (std::uint32_t v = 1; v < static_cast<std::uint32_t>(n); ++v) {
    std::uint32_t u = static_cast<std::uint32_t>(bounded(rng, v));
    seen.insert({u, v});
  }
  std::uint64_t extra = bounded(rng, static_cast<std::uint64_t>(n) + 1);
  for (std::uint64_t k = 0; k < extra; ++k) {
    std::uint32_t a = static_cast<std::uint32_t>(bounded(rng, static_cast<std::uint64_t>(n)));
    std::uint32_t b = static_cast<std::uint32_t>(bounded(rng, static_cast<std::uint64_t>(n)));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    seen.insert({a, b});
  }
  std::vector<Edge> edges;
  edges.reserve(seen.size());
  for (auto [u, v] : seen) edges.push_back({u, v});
  return Graph(static_cast<std::uint32_t>(n), std::move(edges));
}

int family_rank(BaseFamily family) { return static_cast<int>(family); }

bool record_less(const AuditRecord& a, const AuditRecord& b) {
  if (a.meta->fid != b.meta->fid) return a.meta->fid < b.meta->fid;
  const AuditPoint& p = a.point;
  const AuditPoint& q = b.point;
  if (family_rank(p.family) != family_rank(q.family))
    return family_rank(p.family) < family_rank(q.family);
  if (p.base_key0 != q.base_key0) return p.base_key0 < q.base_key0;
  if (p.base_key1 != q.base_key1) return p.base_key1 < q.base_key1;
  if (p.base != q.base) return p.base < q.base;
  if (p.n != q.n) return p.n < q.n;
  if (p.r != q.r) return p.r < q.r;
  if (p.s != q.s) return p.s < q.s;
  return p.thorns < q.thorns;
}

// ---- JSON helpers -------------------------------------------------------

long long get_ll(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    long long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec == std::errc() && ptr == s.data() + s.size()) return value;
  }
  throw ConfigError(where + ": expected an integer");
}

int get_int(const json& j, const std::string& where) {
  long long value = get_ll(j, where);
  if (value < std::numeric_limits<int>::min() || value > std::numeric_limits<int>::max())
    throw ConfigError(where + ": value out of range");
  return static_cast<int>(value);
}

std::pair<int, int> get_range(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(where + ": expected [lo, hi]");
  return {get_int(j[0], where), get_int(j[1], where)};
}

void append_escaped(std::string& out, std::string_view text) {
  out += '"';
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void append_int_string(std::string& out, long long value) {
  out += '"';
  out += std::to_string(value);
  out += '"';
}

void append_range(std::string& out, const char* key, int lo, int hi) {
  out += '"';
  out += key;
  out += "\":[";
  append_int_string(out, lo);
  out += ',';
  append_int_string(out, hi);
  out += ']';
}

}  // namespace

std::string_view to_string(AuditStatus status) {
  switch (status) {
    case AuditStatus::Match: return "MATCH";
    case AuditStatus::Mismatch: return "MISMATCH";
    case AuditStatus::Inapplicable: return "INAPPLICABLE";
  }
  return "?";
}

std::optional<AuditStatus> audit_status_from_string(std::string_view name) {
  if (name == "MATCH") return AuditStatus::Match;
  if (name == "MISMATCH") return AuditStatus::Mismatch;
  if (name == "INAPPLICABLE") return AuditStatus::Inapplicable;
  return std::nullopt;
}

std::optional<ReportFormat> report_format_from_string(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "markdown") return ReportFormat::Markdown;
  return std::nullopt;
}

bool AuditReport::has_mismatch() const {
  for (const FormulaSummary& s : summary)
    if (s.mismatched > 0) return true;
  return false;
}

// ---- configuration ------------------------------------------------------

GridConfig GridConfig::default_grid() {
  GridConfig cfg;
  cfg.bases = {
      {BaseFamily::Path, 3, 8, 0, 0, 0, 0, 0, {}},
      {BaseFamily::Cycle, 3, 8, 0, 0, 0, 0, 0, {}},
      {BaseFamily::Complete, 3, 6, 0, 0, 0, 0, 0, {}},
      {BaseFamily::CompleteBipartite, 0, 0, 1, 4, 1, 4, 0, {}},
      {BaseFamily::Random, 4, 8, 0, 0, 0, 0, 20, {}},
  };
  cfg.types = {ThornType::I, ThornType::II, ThornType::III, ThornType::IV,
               ThornType::V, ThornType::VI, ThornType::VII};
  cfg.r_lo = 1;
  cfg.r_hi = 6;
  cfg.s_lo = 1;
  cfg.s_hi = 4;
  TMode uniform;
  uniform.kind = TMode::Kind::Uniform;
  uniform.values = {0, 1, 2, 3};
  TMode random_vectors;
  random_vectors.kind = TMode::Kind::Random;
  random_vectors.count = 5;
  random_vectors.max = 3;
  cfg.t_modes = {uniform, random_vectors};
  cfg.require_connected = true;
  cfg.seed = 42;
  return cfg;
}

void validate(const GridConfig& cfg) {
  for (const BaseConfig& b : cfg.bases) {
    switch (b.family) {
      case BaseFamily::Path:
      case BaseFamily::Complete:
      case BaseFamily::Star:
        if (b.n_lo < 1 || b.n_lo > b.n_hi)
          throw ConfigError("base " + std::string(to_string(b.family)) +
                            ": n_range must satisfy 1 <= lo <= hi");
        break;
      case BaseFamily::Cycle:
        if (b.n_lo < 3 || b.n_lo > b.n_hi)
          throw ConfigError("base cycle: n_range must satisfy 3 <= lo <= hi");
        break;
      case BaseFamily::CompleteBipartite:
        if (b.r_lo < 1 || b.r_lo > b.r_hi || b.s_lo < 1 || b.s_lo > b.s_hi)
          throw ConfigError("base complete_bipartite: r_range/s_range must satisfy 1 <= lo <= hi");
        break;
      case BaseFamily::Random:
        if (b.count < 1) throw ConfigError("base random: count must be >= 1");
        if (b.n_lo < 1 || b.n_lo > b.n_hi)
          throw ConfigError("base random: n_range must satisfy 1 <= lo <= hi");
        break;
      case BaseFamily::File:
        if (b.path.empty()) throw ConfigError("base file: path must be non-empty");
        break;
    }
  }
  if (cfg.r_lo > cfg.r_hi) throw ConfigError("r_range must satisfy lo <= hi");
  if (cfg.s_lo < 1 || cfg.s_lo > cfg.s_hi)
    throw ConfigError("s_range must satisfy 1 <= lo <= hi");
  for (ThornType type : cfg.types) {
    int lo = std::max(cfg.r_lo, min_r(type));
    if (lo > cfg.r_hi)
      throw ConfigError("r_range yields no valid r for type " + std::string(to_string(type)) +
                        " (minimum " + std::to_string(min_r(type)) + ")");
  }
  for (const TMode& mode : cfg.t_modes) {
    switch (mode.kind) {
      case TMode::Kind::Uniform:
        if (mode.values.empty()) throw ConfigError("uniform t mode: values must be non-empty");
        for (int v : mode.values)
          if (v < 0) throw ConfigError("uniform t mode: values must be non-negative");
        break;
      case TMode::Kind::Explicit:
        if (mode.vectors.empty()) throw ConfigError("explicit t mode: vectors must be non-empty");
        for (const auto& vec : mode.vectors)
          for (int v : vec)
            if (v < 0) throw ConfigError("explicit t mode: entries must be non-negative");
        break;
      case TMode::Kind::Random:
        if (mode.count < 1) throw ConfigError("random t mode: count must be >= 1");
        if (mode.max < 0) throw ConfigError("random t mode: max must be non-negative");
        break;
    }
  }
  for (const std::string& id : cfg.formulas)
    if (!find_formula(id)) throw ConfigError("unknown formula id '" + id + "'");
}

GridConfig GridConfig::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  GridConfig cfg = default_grid();
  for (const auto& [key, value] : doc.items()) {
    if (key == "bases") {
      if (!value.is_array()) throw ConfigError("bases: expected an array");
      cfg.bases.clear();
      for (const json& bj : value) {
        if (!bj.is_object() || !bj.contains("family"))
          throw ConfigError("bases[]: expected an object with a 'family' key");
        auto family = base_family_from_string(bj.at("family").get<std::string>());
        if (!family) throw ConfigError("bases[]: unknown family '" +
                                       bj.at("family").get<std::string>() + "'");
        BaseConfig b;
        b.family = *family;
        switch (*family) {
          case BaseFamily::Path:
          case BaseFamily::Cycle:
          case BaseFamily::Complete:
          case BaseFamily::Star:
            std::tie(b.n_lo, b.n_hi) = get_range(bj.at("n_range"), "bases[].n_range");
            break;
          case BaseFamily::CompleteBipartite:
            std::tie(b.r_lo, b.r_hi) = get_range(bj.at("r_range"), "bases[].r_range");
            std::tie(b.s_lo, b.s_hi) = get_range(bj.at("s_range"), "bases[].s_range");
            break;
          case BaseFamily::Random:
            b.count = get_int(bj.at("count"), "bases[].count");
            std::tie(b.n_lo, b.n_hi) = get_range(bj.at("n_range"), "bases[].n_range");
            break;
          case BaseFamily::File:
            b.path = bj.at("path").get<std::string>();
            break;
        }
        cfg.bases.push_back(std::move(b));
      }
    } else if (key == "types") {
      if (!value.is_array()) throw ConfigError("types: expected an array");
      cfg.types.clear();
      for (const json& tj : value) {
        auto type = thorn_type_from_string(tj.get<std::string>());
        if (!type) throw ConfigError("types[]: unknown thorn type '" +
                                     tj.get<std::string>() + "'");
        cfg.types.push_back(*type);
      }
    } else if (key == "r_range") {
      std::tie(cfg.r_lo, cfg.r_hi) = get_range(value, "r_range");
    } else if (key == "s_range") {
      std::tie(cfg.s_lo, cfg.s_hi) = get_range(value, "s_range");
    } else if (key == "t_modes") {
      if (!value.is_array()) throw ConfigError("t_modes: expected an array");
      cfg.t_modes.clear();
      for (const json& mj : value) {
        if (!mj.is_object() || !mj.contains("mode"))
          throw ConfigError("t_modes[]: expected an object with a 'mode' key");
        std::string mode = mj.at("mode").get<std::string>();
        TMode m;
        if (mode == "uniform") {
          m.kind = TMode::Kind::Uniform;
          for (const json& vj : mj.at("values"))
            m.values.push_back(get_int(vj, "t_modes[].values"));
        } else if (mode == "explicit") {
          m.kind = TMode::Kind::Explicit;
          for (const json& vecj : mj.at("vectors")) {
            std::vector<int> vec;
            for (const json& vj : vecj)
              vec.push_back(get_int(vj, "t_modes[].vectors"));
            m.vectors.push_back(std::move(vec));
          }
        } else if (mode == "random") {
          m.kind = TMode::Kind::Random;
          m.count = get_int(mj.at("count"), "t_modes[].count");
          m.max = get_int(mj.at("max"), "t_modes[].max");
        } else {
          throw ConfigError("t_modes[]: unknown mode '" + mode + "'");
        }
        cfg.t_modes.push_back(std::move(m));
      }
    } else if (key == "formulas") {
      if (!value.is_array()) throw ConfigError("formulas: expected an array");
      cfg.formulas.clear();
      for (const json& fj : value) cfg.formulas.push_back(fj.get<std::string>());
    } else if (key == "require_connected") {
      if (!value.is_boolean()) throw ConfigError("require_connected: expected a boolean");
      cfg.require_connected = value.get<bool>();
    } else if (key == "seed") {
      long long seed = get_ll(value, "seed");
      if (seed < 0) throw ConfigError("seed: must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(seed);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  validate(cfg);
  return cfg;
}

std::string GridConfig::to_json() const {
  std::string out = "{\"bases\":[";
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const BaseConfig& b = bases[i];
    if (i) out += ',';
    out += "{\"family\":";
    append_escaped(out, to_string(b.family));
    switch (b.family) {
      case BaseFamily::Path:
      case BaseFamily::Cycle:
      case BaseFamily::Complete:
      case BaseFamily::Star:
        out += ',';
        append_range(out, "n_range", b.n_lo, b.n_hi);
        break;
      case BaseFamily::CompleteBipartite:
        out += ',';
        append_range(out, "r_range", b.r_lo, b.r_hi);
        out += ',';
        append_range(out, "s_range", b.s_lo, b.s_hi);
        break;
      case BaseFamily::Random:
        out += ",\"count\":";
        append_int_string(out, b.count);
        out += ',';
        append_range(out, "n_range", b.n_lo, b.n_hi);
        break;
      case BaseFamily::File:
        out += ",\"path\":";
        append_escaped(out, b.path);
        break;
    }
    out += '}';
  }
  out += "],\"types\":[";
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (i) out += ',';
    append_escaped(out, to_string(types[i]));
  }
  out += "],";
  append_range(out, "r_range", r_lo, r_hi);
  out += ',';
  append_range(out, "s_range", s_lo, s_hi);
  out += ",\"t_modes\":[";
  for (std::size_t i = 0; i < t_modes.size(); ++i) {
    const TMode& m = t_modes[i];
    if (i) out += ',';
    switch (m.kind) {
      case TMode::Kind::Uniform:
        out += "{\"mode\":\"uniform\",\"values\":[";
        for (std::size_t j = 0; j < m.values.size(); ++j) {
          if (j) out += ',';
          append_int_string(out, m.values[j]);
        }
        out += "]}";
        break;
      case TMode::Kind::Explicit:
        out += "{\"mode\":\"explicit\",\"vectors\":[";
        for (std::size_t j = 0; j < m.vectors.size(); ++j) {
          if (j) out += ',';
          out += '[';
          for (std::size_t k = 0; k < m.vectors[j].size(); ++k) {
            if (k) out += ',';
            append_int_string(out, m.vectors[j][k]);
          }
          out += ']';
        }
        out += "]}";
        break;
      case TMode::Kind::Random:
        out += "{\"mode\":\"random\",\"count\":";
        append_int_string(out, m.count);
        out += ",\"max\":";
        append_int_string(out, m.max);
        out += '}';
        break;
    }
  }
  out += "],\"formulas\":[";
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    if (i) out += ',';
    append_escaped(out, formulas[i]);
  }
  out += "],\"require_connected\":";
  out += require_connected ? "true" : "false";
  out += ",\"seed\":";
  append_int_string(out, static_cast<long long>(seed));
  out += '}';
  return out;
}

// ---- grid expansion -----------------------------------------------------

std::vector<BaseInstance> materialize_bases(const GridConfig& cfg) {
  validate(cfg);
  std::vector<BaseInstance> out;
  std::set<std::string> seen;
  int random_index = 0;
  auto add = [&](BaseInstance base) {
    if (seen.insert(base.desc).second) out.push_back(std::move(base));
  };
  for (const BaseConfig& b : cfg.bases) {
    switch (b.family) {
      case BaseFamily::Path:
      case BaseFamily::Cycle:
      case BaseFamily::Complete:
      case BaseFamily::Star: {
        const char* name = b.family == BaseFamily::Path      ? "path"
                           : b.family == BaseFamily::Cycle   ? "cycle"
                           : b.family == BaseFamily::Complete ? "complete"
                                                              : "star";
        for (int n = b.n_lo; n <= b.n_hi; ++n) {
          BaseInstance base;
          base.family = b.family;
          base.desc = std::string(name) + ":" + std::to_string(n);
          base.key0 = n;
          base.graph = b.family == BaseFamily::Path      ? make_path(n)
                       : b.family == BaseFamily::Cycle   ? make_cycle(n)
                       : b.family == BaseFamily::Complete ? make_complete(n)
                                                          : make_star(n);
          add(std::move(base));
        }
        break;
      }
      case BaseFamily::CompleteBipartite:
        for (int r = b.r_lo; r <= b.r_hi; ++r)
          for (int s = b.s_lo; s <= b.s_hi; ++s) {
            BaseInstance base;
            base.family = b.family;
            base.desc = "bipartite:" + std::to_string(r) + ":" + std::to_string(s);
            base.key0 = r;
            base.key1 = s;
            base.graph = make_complete_bipartite(r, s);
            add(std::move(base));
          }
        break;
      case BaseFamily::Random:
        for (int i = 0; i < b.count; ++i, ++random_index) {
          std::mt19937_64 rng(mix(cfg.seed, 0xB55E0000ull + static_cast<std::uint64_t>(random_index)));
          BaseInstance base;
          base.family = BaseFamily::Random;
          base.desc = "random:" + std::to_string(random_index);
          base.key0 = random_index;
          base.graph = random_connected_graph(rng, b.n_lo, b.n_hi);
          add(std::move(base));
        }
        break;
      case BaseFamily::File: {
        BaseInstance base;
        try {
          base = make_base("file:" + b.path);
        } catch (const std::exception& e) {
          throw ConfigError(std::string("base file '") + b.path + "': " + e.what());
        }
        add(std::move(base));
        break;
      }
    }
  }
  if (cfg.require_connected)
    for (const BaseInstance& base : out)
      if (!base.graph.connected())
        throw ConfigError("base " + base.desc +
                          " is disconnected but require_connected is set");
  return out;
}

std::vector<std::vector<int>> thorn_vectors(const GridConfig& cfg, const BaseInstance& base) {
  std::vector<std::vector<int>> out;
  std::set<std::vector<int>> seen;
  auto add = [&](std::vector<int> vec) {
    if (seen.insert(vec).second) out.push_back(std::move(vec));
  };
  std::uint32_t n = base.graph.order();
  int random_index = 0;
  for (const TMode& mode : cfg.t_modes) {
    switch (mode.kind) {
      case TMode::Kind::Uniform:
        for (int v : mode.values) add(std::vector<int>(n, v));
        break;
      case TMode::Kind::Explicit:
        for (const auto& vec : mode.vectors)
          if (vec.size() == n) add(vec);
        break;
      case TMode::Kind::Random:
        for (int j = 0; j < mode.count; ++j, ++random_index) {
          std::mt19937_64 rng(mix(mix(cfg.seed, fnv1a(base.desc)),
                                  0x7E100000ull + static_cast<std::uint64_t>(random_index)));
          std::vector<int> vec(n);
          for (std::uint32_t i = 0; i < n; ++i)
            vec[i] = static_cast<int>(bounded(rng, static_cast<std::uint64_t>(mode.max) + 1));
          add(std::move(vec));
        }
        break;
    }
  }
  return out;
}

// ---- comparison ---------------------------------------------------------

namespace {

AuditPoint make_point(const BaseInstance& base, const ThornSpec& spec) {
  AuditPoint point;
  point.base = base.desc;
  point.family = base.family;
  point.base_key0 = base.key0;
  point.base_key1 = base.key1;
  point.n = static_cast<int>(base.graph.order());
  point.r = spec.r;
  point.s = spec.s;
  point.thorns = spec.thorns;
  return point;
}

AuditRecord make_record(const FormulaMeta& meta, const BaseInstance& base,
                        const ThornSpec& spec, const Int* shared_oracle) {
  AuditRecord rec;
  rec.meta = &meta;
  rec.point = make_point(base, spec);
  if (!applicable(meta, base.family, spec.thorns, spec.r, spec.s)) {
    rec.status = AuditStatus::Inapplicable;
    return rec;
  }
  rec.closed = evaluate(meta, base.graph, base.family, spec.thorns, spec.r, spec.s);
  rec.oracle = shared_oracle ? *shared_oracle : hm(build(base.graph, spec).graph);
  rec.delta = *rec.closed - *rec.oracle;
  rec.status = (*rec.delta == 0) ? AuditStatus::Match : AuditStatus::Mismatch;
  return rec;
}

}  // namespace

AuditRecord compare(const FormulaMeta& meta, const BaseInstance& base, const ThornSpec& spec) {
  if (meta.type != spec.type)
    throw std::invalid_argument("compare: formula " + std::string(meta.id) +
                                " is about thorn type " + std::string(to_string(meta.type)) +
                                ", spec has type " + std::string(to_string(spec.type)));
  validate_spec(base.graph, spec);
  return make_record(meta, base, spec, nullptr);
}

AuditRecord compare(std::string_view formula_id, const BaseInstance& base,
                    const ThornSpec& spec) {
  const FormulaMeta* meta = find_formula(formula_id);
  if (!meta)
    throw std::invalid_argument("compare: unknown formula id '" + std::string(formula_id) + "'");
  return compare(*meta, base, spec);
}

// ---- grid sweep ---------------------------------------------------------

namespace {

struct Task {
  std::size_t base_index;
  ThornType type;
  int r;
  int s;
  std::size_t tvec_index;
};

int env_worker_cap() {
  const char* env = std::getenv("THORNLAB_WORKERS");
  if (!env || !*env) return 0;
  int value = 0;
  auto [ptr, ec] = std::from_chars(env, env + std::string_view(env).size(), value);
  if (ec != std::errc() || *ptr != '\0' || value < 1) return 0;  // ignore malformed values
  return value;
}

int resolve_workers(int requested, std::size_t jobs) {
  int workers = requested > 0 ? requested
                              : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (int cap = env_worker_cap(); cap > 0) workers = std::min(workers, cap);
  if (jobs < static_cast<std::size_t>(workers)) workers = static_cast<int>(std::max<std::size_t>(jobs, 1));
  return workers;
}

}  // namespace

AuditReport run(const GridConfig& cfg, int workers) {
  validate(cfg);

  std::vector<const FormulaMeta*> active;
  if (cfg.formulas.empty()) {
    for (const FormulaMeta& meta : list_formulas()) active.push_back(&meta);
  } else {
    for (const std::string& id : cfg.formulas) active.push_back(find_formula(id));
    std::sort(active.begin(), active.end(),
              [](const FormulaMeta* a, const FormulaMeta* b) { return a->fid < b->fid; });
    active.erase(std::unique(active.begin(), active.end()), active.end());
  }
  std::vector<std::vector<const FormulaMeta*>> by_type(8);
  for (const FormulaMeta* meta : active)
    by_type[static_cast<std::size_t>(meta->type)].push_back(meta);

  std::vector<BaseInstance> bases = materialize_bases(cfg);
  std::vector<std::vector<std::vector<int>>> tvecs;
  tvecs.reserve(bases.size());
  for (const BaseInstance& base : bases) tvecs.push_back(thorn_vectors(cfg, base));

  std::vector<Task> tasks;
  for (std::size_t bi = 0; bi < bases.size(); ++bi)
    for (ThornType type : cfg.types) {
      if (by_type[static_cast<std::size_t>(type)].empty()) continue;
      int lo = std::max(cfg.r_lo, min_r(type));
      for (int r = lo; r <= cfg.r_hi; ++r) {
        if (uses_s(type)) {
          for (int s = cfg.s_lo; s <= cfg.s_hi; ++s)
            for (std::size_t ti = 0; ti < tvecs[bi].size(); ++ti)
              tasks.push_back({bi, type, r, s, ti});
        } else {
          for (std::size_t ti = 0; ti < tvecs[bi].size(); ++ti)
            tasks.push_back({bi, type, r, 0, ti});
        }
      }
    }

  std::vector<std::vector<AuditRecord>> results(tasks.size());
  auto eval_task = [&](std::size_t index) {
    const Task& task = tasks[index];
    const BaseInstance& base = bases[task.base_index];
    ThornSpec spec{task.type, task.r, task.s, tvecs[task.base_index][task.tvec_index]};
    const auto& formulas = by_type[static_cast<std::size_t>(task.type)];
    // One oracle evaluation per construction point, shared by the records of
    // every formula paired with it; computed lazily so fully inapplicable
    // points never build the graph.
    std::optional<Int> oracle;
    std::vector<AuditRecord>& out = results[index];
    out.reserve(formulas.size());
    for (const FormulaMeta* meta : formulas) {
      if (applicable(*meta, base.family, spec.thorns, spec.r, spec.s) && !oracle)
        oracle = hm(build(base.graph, spec).graph);
      out.push_back(make_record(*meta, base, spec, oracle ? &*oracle : nullptr));
    }
  };

  int worker_count = resolve_workers(workers, tasks.size());
  if (worker_count <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) eval_task(i);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(worker_count));
    for (int w = 0; w < worker_count; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = cursor.fetch_add(1); i < tasks.size(); i = cursor.fetch_add(1))
          eval_task(i);
      });
    for (std::thread& t : pool) t.join();
  }

  AuditReport report;
  report.version = kVersion;
  report.registry = registry_hash();
  report.config = cfg;
  std::size_t total = 0;
  for (const auto& chunk : results) total += chunk.size();
  report.records.reserve(total);
  for (auto& chunk : results)
    for (AuditRecord& rec : chunk) report.records.push_back(std::move(rec));
  std::sort(report.records.begin(), report.records.end(), record_less);

  report.summary.reserve(active.size());
  for (const FormulaMeta* meta : active) {
    FormulaSummary s;
    s.meta = meta;
    report.summary.push_back(s);
  }
  std::vector<FormulaSummary*> by_fid(list_formulas().size(), nullptr);
  for (FormulaSummary& s : report.summary)
    by_fid[static_cast<std::size_t>(s.meta->fid)] = &s;
  for (const AuditRecord& rec : report.records) {
    FormulaSummary& s = *by_fid[static_cast<std::size_t>(rec.meta->fid)];
    switch (rec.status) {
      case AuditStatus::Match:
        ++s.tested;
        ++s.matched;
        break;
      case AuditStatus::Mismatch:
        ++s.tested;
        ++s.mismatched;
        if (!s.first_counterexample)
          s.first_counterexample = Counterexample{rec.point, *rec.closed, *rec.oracle, *rec.delta};
        break;
      case AuditStatus::Inapplicable:
        ++s.inapplicable;
        break;
    }
  }
  return report;
}

std::optional<Counterexample> first_counterexample(std::string_view formula_id,
                                                   const GridConfig& config) {
  if (!find_formula(formula_id))
    throw std::invalid_argument("first_counterexample: unknown formula id '" +
                                std::string(formula_id) + "'");
  GridConfig restricted = config;
  restricted.formulas = {std::string(formula_id)};
  AuditReport report = run(restricted);
  for (const FormulaSummary& s : report.summary)
    if (s.first_counterexample) return s.first_counterexample;
  return std::nullopt;
}

// ---- rendering ----------------------------------------------------------

namespace {

void append_point(std::string& out, const AuditPoint& point) {
  out += "{\"base\":";
  append_escaped(out, point.base);
  out += ",\"n\":";
  append_int_string(out, point.n);
  out += ",\"r\":";
  append_int_string(out, point.r);
  out += ",\"s\":";
  append_int_string(out, point.s);
  out += ",\"t\":[";
  for (std::size_t i = 0; i < point.thorns.size(); ++i) {
    if (i) out += ',';
    append_int_string(out, point.thorns[i]);
  }
  out += "]}";
}

void append_opt_value(std::string& out, const std::optional<Int>& value) {
  if (value) {
    out += '"';
    out += to_decimal(*value);
    out += '"';
  } else {
    out += "null";
  }
}

std::string render_json(const AuditReport& report) {
  std::string out;
  out.reserve(256 + report.records.size() * 192);
  out += "{\"version\":";
  append_escaped(out, report.version);
  out += ",\"registry\":";
  append_escaped(out, report.registry);
  out += ",\"config\":";
  out += report.config.to_json();
  out += ",\"records\":[";
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const AuditRecord& rec = report.records[i];
    out += i ? ",\n" : "\n";
    out += "{\"formula\":";
    append_escaped(out, rec.meta->id);
    out += ",\"point\":";
    append_point(out, rec.point);
    out += ",\"closed\":";
    append_opt_value(out, rec.closed);
    out += ",\"oracle\":";
    append_opt_value(out, rec.oracle);
    out += ",\"delta\":";
    append_opt_value(out, rec.delta);
    out += ",\"status\":";
    append_escaped(out, to_string(rec.status));
    out += '}';
  }
  if (!report.records.empty()) out += '\n';
  out += "],\"summary\":[";
  for (std::size_t i = 0; i < report.summary.size(); ++i) {
    const FormulaSummary& s = report.summary[i];
    out += i ? ",\n" : "\n";
    out += "{\"formula\":";
    append_escaped(out, s.meta->id);
    out += ",\"tested\":";
    append_int_string(out, s.tested);
    out += ",\"matched\":";
    append_int_string(out, s.matched);
    out += ",\"mismatched\":";
    append_int_string(out, s.mismatched);
    if (s.first_counterexample) {
      out += ",\"first_counterexample\":{\"point\":";
      append_point(out, s.first_counterexample->point);
      out += ",\"closed\":\"";
      out += to_decimal(s.first_counterexample->closed);
      out += "\",\"oracle\":\"";
      out += to_decimal(s.first_counterexample->oracle);
      out += "\",\"delta\":\"";
      out += to_decimal(s.first_counterexample->delta);
      out += "\"}";
    }
    out += '}';
  }
  if (!report.summary.empty()) out += '\n';
  out += "]}\n";
  return out;
}

void append_csv_field(std::string& out, std::string_view field) {
  if (field.find_first_of(",\"\n") != std::string_view::npos) {
    out += '"';
    for (char c : field) {
      if (c == '"') out += '"';
      out += c;
    }
    out += '"';
  } else {
    out += field;
  }
}

std::string render_csv(const AuditReport& report) {
  std::string out = "formula,base,n,r,s,t,closed,oracle,delta,status\n";
  for (const AuditRecord& rec : report.records) {
    append_csv_field(out, rec.meta->id);
    out += ',';
    append_csv_field(out, rec.point.base);
    out += ',';
    out += std::to_string(rec.point.n);
    out += ',';
    out += std::to_string(rec.point.r);
    out += ',';
    out += std::to_string(rec.point.s);
    out += ',';
    std::string tfield;
    for (std::size_t i = 0; i < rec.point.thorns.size(); ++i) {
      if (i) tfield += ';';
      tfield += std::to_string(rec.point.thorns[i]);
    }
    append_csv_field(out, tfield);
    out += ',';
    if (rec.closed) out += to_decimal(*rec.closed);
    out += ',';
    if (rec.oracle) out += to_decimal(*rec.oracle);
    out += ',';
    if (rec.delta) out += to_decimal(*rec.delta);
    out += ',';
    out += to_string(rec.status);
    out += '\n';
  }
  return out;
}

std::string describe_point(const AuditPoint& point) {
  std::string out = "base=" + point.base + ", n=" + std::to_string(point.n) +
                    ", r=" + std::to_string(point.r) + ", s=" + std::to_string(point.s) +
                    ", t=[";
  for (std::size_t i = 0; i < point.thorns.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(point.thorns[i]);
  }
  out += ']';
  return out;
}

std::string render_markdown(const AuditReport& report) {
  std::string out = "# Audit report\n\nversion " + report.version + ", formula registry " +
                    report.registry + "\n\n";
  out += "| formula | tested | matched | mismatched | first counterexample |\n";
  out += "|---|---:|---:|---:|---|\n";
  for (const FormulaSummary& s : report.summary) {
    out += "| ";
    out += s.meta->id;
    out += " | " + std::to_string(s.tested);
    out += " | " + std::to_string(s.matched);
    out += " | " + std::to_string(s.mismatched);
    out += " | ";
    if (s.first_counterexample) {
      std::string cell = describe_point(s.first_counterexample->point) +
                         ", closed=" + to_decimal(s.first_counterexample->closed) +
                         ", oracle=" + to_decimal(s.first_counterexample->oracle) +
                         ", delta=" + to_decimal(s.first_counterexample->delta);
      for (char c : cell) {
        if (c == '|') out += "\\|";
        else out += c;
      }
    } else {
      out += "(none)";
    }
    out += " |\n";
  }
  return out;
}

}  // namespace

std::string render(const AuditReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::Json: return render_json(report);
    case ReportFormat::Csv: return render_csv(report);
    case ReportFormat::Markdown: return render_markdown(report);
  }
  throw std::invalid_argument("render: unknown report format");
}

// ---- parsing ------------------------------------------------------------

namespace {

BaseFamily family_from_desc(std::string_view desc) {
  std::size_t colon = desc.find(':');
  auto family = base_family_from_string(desc.substr(0, colon));
  if (!family) throw ParseError("report: unknown base family in descriptor '" +
                                std::string(desc) + "'");
  return *family;
}

std::pair<long long, long long> keys_from_desc(std::string_view desc, BaseFamily family) {
  if (family == BaseFamily::File) return {0, 0};
  long long k0 = 0, k1 = 0;
  std::size_t first = desc.find(':');
  if (first == std::string_view::npos) return {0, 0};
  std::string_view rest = desc.substr(first + 1);
  std::size_t second = rest.find(':');
  auto parse = [](std::string_view tok) {
    long long value = 0;
    std::from_chars(tok.data(), tok.data() + tok.size(), value);
    return value;
  };
  k0 = parse(rest.substr(0, second));
  if (second != std::string_view::npos) k1 = parse(rest.substr(second + 1));
  return {k0, k1};
}

AuditPoint parse_point(const json& j) {
  AuditPoint point;
  point.base = j.at("base").get<std::string>();
  point.family = family_from_desc(point.base);
  std::tie(point.base_key0, point.base_key1) = keys_from_desc(point.base, point.family);
  point.n = get_int(j.at("n"), "report point.n");
  point.r = get_int(j.at("r"), "report point.r");
  point.s = get_int(j.at("s"), "report point.s");
  for (const json& tj : j.at("t"))
    point.thorns.push_back(get_int(tj, "report point.t"));
  return point;
}

std::optional<Int> parse_opt_value(const json& j) {
  if (j.is_null()) return std::nullopt;
  if (j.is_string()) return parse_decimal(j.get_ref<const std::string&>());
  if (j.is_number_integer()) return Int(j.get<long long>());
  throw ParseError("report: expected a decimal string or null");
}

}  // namespace

AuditReport parse_report_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what());
  }
  AuditReport report;
  report.version = doc.at("version").get<std::string>();
  report.registry = doc.at("registry").get<std::string>();
  report.config = GridConfig::from_json(doc.at("config").dump());
  for (const json& rj : doc.at("records")) {
    AuditRecord rec;
    std::string id = rj.at("formula").get<std::string>();
    rec.meta = find_formula(id);
    if (!rec.meta) throw ParseError("report: unknown formula id '" + id + "'");
    rec.point = parse_point(rj.at("point"));
    rec.closed = parse_opt_value(rj.at("closed"));
    rec.oracle = parse_opt_value(rj.at("oracle"));
    rec.delta = parse_opt_value(rj.at("delta"));
    auto status = audit_status_from_string(rj.at("status").get<std::string>());
    if (!status) throw ParseError("report: unknown status");
    rec.status = *status;
    report.records.push_back(std::move(rec));
  }
  for (const json& sj : doc.at("summary")) {
    FormulaSummary s;
    std::string id = sj.at("formula").get<std::string>();
    s.meta = find_formula(id);
    if (!s.meta) throw ParseError("report: unknown formula id '" + id + "'");
    s.tested = get_ll(sj.at("tested"), "report summary.tested");
    s.matched = get_ll(sj.at("matched"), "report summary.matched");
    s.mismatched = get_ll(sj.at("mismatched"), "report summary.mismatched");
    if (sj.contains("first_counterexample")) {
      const json& cj = sj.at("first_counterexample");
      Counterexample ce;
      ce.point = parse_point(cj.at("point"));
      ce.closed = *parse_opt_value(cj.at("closed"));
      ce.oracle = *parse_opt_value(cj.at("oracle"));
      ce.delta = *parse_opt_value(cj.at("delta"));
      s.first_counterexample = std::move(ce);
    }
    report.summary.push_back(std::move(s));
  }
  return report;
}

}  // namespace thornlab
